//! Normal crossing divisor configurations: components, open intersection
//! strata with their β values, and jacobian multiplicity vectors.
//!
//! File schema (JSON):
//!
//! ```json
//! {
//!   "n": 2,
//!   "components": [{"id": "E1", "nu": 1}],
//!   "strata": [{"J": ["E1"], "beta": ["1","1"], "origin": true}],
//!   "nu_prime": {"E1": 2}
//! }
//! ```
//!
//! `beta` is either the polynomial interchange array or a set expression
//! string such as `"RP(1)"`. Files are always written with the array form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::beta::{beta_eval, catalog_beta, Atom, SetExpr};
use crate::poly::{Degree, Poly};

/// Index of a component in [`DivisorConfiguration::components`].
pub type ComponentIndex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    /// Component indices of `J`, ascending.
    pub support: Vec<ComponentIndex>,
    /// β of the open stratum E̊_J.
    pub beta: Poly,
    pub maps_to_origin: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorConfiguration {
    pub n: u32,
    pub components: Vec<String>,
    pub strata: Vec<Stratum>,
}

impl DivisorConfiguration {
    pub fn component_index(&self, id: &str) -> Option<ComponentIndex> {
        self.components.iter().position(|c| c == id)
    }

    pub fn stratum(&self, support: &[ComponentIndex]) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.support == support)
    }

    /// Strata over the origin with nonzero β; these carry all admissible contact indices.
    pub fn origin_strata(&self) -> impl Iterator<Item = &Stratum> {
        self.strata
            .iter()
            .filter(|s| s.maps_to_origin && !s.beta.is_zero())
    }

    pub fn support_label(&self, support: &[ComponentIndex]) -> String {
        let ids: Vec<&str> = support
            .iter()
            .map(|&i| self.components[i].as_str())
            .collect();
        format!("{{{}}}", ids.join(","))
    }

    /// Resolves `id=value` pairs into a multiplicity vector in component order.
    pub fn multiplicities_from_pairs<'a>(
        &self,
        pairs: impl IntoIterator<Item = (&'a str, u64)>,
    ) -> Result<MultiplicityVector, ConfigError> {
        let mut values: Vec<Option<u64>> = vec![None; self.components.len()];
        for (id, v) in pairs {
            let idx = self
                .component_index(id)
                .ok_or_else(|| ConfigError::UnknownComponent(id.to_string()))?;
            if values[idx].replace(v).is_some() {
                return Err(ConfigError::DuplicateAssignment(id.to_string()));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| ConfigError::MissingMultiplicity(self.components[i].clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let nu = MultiplicityVector::new(values);
        let violations = validate_multiplicities(self, &nu);
        if violations.is_empty() {
            Ok(nu)
        } else {
            Err(ConfigError::Validation(violations))
        }
    }
}

/// Jacobian multiplicities ν_i, aligned with the configuration's components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MultiplicityVector(Vec<u64>);

impl MultiplicityVector {
    pub fn new(values: Vec<u64>) -> Self {
        MultiplicityVector(values)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: ComponentIndex) -> u64 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &MultiplicityVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// Contact orders `j_i` of an arc with each component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u64>);

impl MultiIndex {
    pub fn new(values: Vec<u64>) -> Self {
        MultiIndex(values)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    /// `J(j) = { i : j_i != 0 }`.
    pub fn support(&self) -> Vec<ComponentIndex> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// `s_j`.
    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `<nu, j>`.
    pub fn pairing(&self, nu: &MultiplicityVector) -> u64 {
        self.0.iter().zip(nu.values()).map(|(j, n)| j * n).sum()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    AmbientDimension,
    NoComponents,
    DuplicateComponent,
    EmptySupport,
    UnknownComponent,
    DuplicateSupport,
    DegreeMismatch,
    NonpositiveLeading,
    OriginMonotonicity,
    NoOriginStratum,
    MultiplicityArity,
    NonpositiveMultiplicity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let code = serde_json::to_value(self.code).unwrap_or_default();
        write!(f, "{}: {}", code.as_str().unwrap_or("?"), self.message)
    }
}

fn violation(code: ViolationCode, message: String) -> Violation {
    Violation { code, message }
}

/// Every structural violation of `c`. An empty list means the configuration is valid.
pub fn validate_config(c: &DivisorConfiguration) -> Vec<Violation> {
    use ViolationCode::*;
    let mut out = Vec::new();
    if c.n == 0 {
        out.push(violation(
            AmbientDimension,
            "ambient dimension n must be positive".into(),
        ));
    }
    if c.components.is_empty() {
        out.push(violation(
            NoComponents,
            "at least one component is required".into(),
        ));
    }
    let mut seen_ids = BTreeSet::new();
    for id in &c.components {
        if !seen_ids.insert(id.as_str()) {
            out.push(violation(
                DuplicateComponent,
                format!("component {id} listed twice"),
            ));
        }
    }

    let mut seen_supports = BTreeSet::new();
    for s in &c.strata {
        let label = if s.support.iter().all(|&i| i < c.components.len()) {
            c.support_label(&s.support)
        } else {
            format!("{:?}", s.support)
        };
        if s.support.is_empty() {
            out.push(violation(EmptySupport, "stratum with empty J".into()));
            continue;
        }
        if s.support.iter().any(|&i| i >= c.components.len()) {
            out.push(violation(
                UnknownComponent,
                format!("stratum {label} names an unknown component"),
            ));
            continue;
        }
        if !seen_supports.insert(s.support.clone()) {
            out.push(violation(
                DuplicateSupport,
                format!("stratum {label} listed twice"),
            ));
        }
        if s.beta.is_zero() {
            continue;
        }
        let expected = c.n as i64 - s.support.len() as i64;
        let matches = match s.beta.degree() {
            Degree::Finite(d) => d as i64 == expected,
            Degree::MinusInfinity => false,
        };
        if !matches {
            out.push(violation(
                DegreeMismatch,
                format!(
                    "stratum {label}: deg beta = {} but n - |J| = {expected}",
                    s.beta.degree()
                ),
            ));
        }
        if s.beta.leading_sign() != std::cmp::Ordering::Greater {
            out.push(violation(
                NonpositiveLeading,
                format!(
                    "stratum {label}: beta = {} has nonpositive leading coefficient",
                    s.beta
                ),
            ));
        }
    }

    let live: Vec<&Stratum> = c
        .strata
        .iter()
        .filter(|s| !s.beta.is_zero() && !s.support.is_empty())
        .filter(|s| s.support.iter().all(|&i| i < c.components.len()))
        .collect();
    for a in &live {
        if !a.maps_to_origin {
            continue;
        }
        for b in &live {
            let contains = a.support.iter().all(|i| b.support.contains(i));
            if contains && a.support != b.support && !b.maps_to_origin {
                out.push(violation(
                    OriginMonotonicity,
                    format!(
                        "stratum {} maps to the origin but {} does not",
                        c.support_label(&a.support),
                        c.support_label(&b.support)
                    ),
                ));
            }
        }
    }
    if !c.strata.iter().any(|s| s.maps_to_origin) {
        out.push(violation(
            NoOriginStratum,
            "no stratum maps to the origin".into(),
        ));
    }
    out
}

pub fn validate_multiplicities(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
) -> Vec<Violation> {
    let mut out = Vec::new();
    if nu.len() != c.components.len() {
        out.push(violation(
            ViolationCode::MultiplicityArity,
            format!(
                "{} multiplicities for {} components",
                nu.len(),
                c.components.len()
            ),
        ));
    }
    for (id, &v) in c.components.iter().zip(nu.values()) {
        if v == 0 {
            out.push(violation(
                ViolationCode::NonpositiveMultiplicity,
                format!("multiplicity of {id} must be at least 1"),
            ));
        }
    }
    out
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("IO_ERROR: {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("PARSE_ERROR: {path}:{line}:{column}: at `{field}`: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    #[error("VALIDATION_ERROR: {}", join_violations(.0))]
    Validation(Vec<Violation>),
    #[error("UNKNOWN_BUILTIN: {0}")]
    UnknownBuiltin(String),
    #[error("INVALID_BUILTIN: {0}")]
    InvalidBuiltin(String),
    #[error("unknown component {0}")]
    UnknownComponent(String),
    #[error("component {0} assigned twice")]
    DuplicateAssignment(String),
    #[error("no multiplicity given for component {0}")]
    MissingMultiplicity(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// A configuration together with the multiplicities read alongside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedConfig {
    pub config: DivisorConfiguration,
    pub nu: MultiplicityVector,
    pub nu_prime: Option<MultiplicityVector>,
}

pub const BUILTIN_NAMES: &[&str] = &["blowup_point_R2", "blowup_point_R3", "blowup_point_Rn(n)"];

/// Blow-up of the origin of R^n: one exceptional component `E1` ≅ RP^{n-1}
/// with jacobian multiplicity n − 1.
pub fn blowup_point(n: u32) -> Result<(DivisorConfiguration, MultiplicityVector), ConfigError> {
    if n < 2 {
        return Err(ConfigError::InvalidBuiltin(format!(
            "blowup_point_Rn needs n >= 2, got {n}"
        )));
    }
    let config = DivisorConfiguration {
        n,
        components: vec!["E1".into()],
        strata: vec![Stratum {
            support: vec![0],
            beta: catalog_beta(Atom::ProjSpace(n - 1)),
            maps_to_origin: true,
        }],
    };
    Ok((config, MultiplicityVector::new(vec![n as u64 - 1])))
}

/// Accepts `blowup_point_R<n>` and `blowup_point_Rn(<n>)`.
pub fn builtin_config(
    name: &str,
) -> Result<(DivisorConfiguration, MultiplicityVector), ConfigError> {
    let unknown = || ConfigError::UnknownBuiltin(name.to_string());
    let rest = name.strip_prefix("blowup_point_R").ok_or_else(unknown)?;
    let digits = rest
        .strip_prefix("n(")
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(rest);
    let n: u32 = digits.trim().parse().map_err(|_| unknown())?;
    blowup_point(n)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentRecord {
    id: String,
    nu: u64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum BetaField {
    Coeffs(Poly),
    Expr(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StratumRecord {
    #[serde(rename = "J")]
    support: Vec<String>,
    beta: BetaField,
    origin: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n: u32,
    components: Vec<ComponentRecord>,
    strata: Vec<StratumRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nu_prime: Option<BTreeMap<String, u64>>,
}

fn structural_error(path: &str, field: &str, message: String) -> ConfigError {
    ConfigError::Parse {
        path: path.to_string(),
        line: 0,
        column: 0,
        field: field.to_string(),
        message,
    }
}

/// The error text without serde_json's trailing position, which callers report separately.
pub(crate) fn json_error_message(e: &serde_json::Error) -> String {
    let text = e.to_string();
    let suffix = format!(" at line {} column {}", e.line(), e.column());
    text.strip_suffix(&suffix)
        .map(str::to_string)
        .unwrap_or(text)
}

/// Parses and validates configuration text. `origin` names the source in errors.
pub fn parse_config(text: &str, origin: &str) -> Result<LoadedConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: ConfigFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        ConfigError::Parse {
            path: origin.to_string(),
            line: inner.line(),
            column: inner.column(),
            field,
            message: json_error_message(&inner),
        }
    })?;

    let components: Vec<String> = file.components.iter().map(|c| c.id.clone()).collect();
    let mut strata = Vec::with_capacity(file.strata.len());
    for (si, rec) in file.strata.iter().enumerate() {
        let mut support = Vec::with_capacity(rec.support.len());
        for (ji, id) in rec.support.iter().enumerate() {
            let idx = components.iter().position(|c| c == id).ok_or_else(|| {
                structural_error(
                    origin,
                    &format!("strata[{si}].J[{ji}]"),
                    format!("unknown component {id:?}"),
                )
            })?;
            support.push(idx);
        }
        support.sort_unstable();
        let before = support.len();
        support.dedup();
        if support.len() != before {
            return Err(structural_error(
                origin,
                &format!("strata[{si}].J"),
                "component repeated within J".into(),
            ));
        }
        let beta = match &rec.beta {
            BetaField::Coeffs(p) => p.clone(),
            BetaField::Expr(s) => {
                let expr: SetExpr = s.parse().map_err(|e| {
                    structural_error(origin, &format!("strata[{si}].beta"), format!("{e}"))
                })?;
                beta_eval(&expr)
            }
        };
        strata.push(Stratum {
            support,
            beta,
            maps_to_origin: rec.origin,
        });
    }
    let config = DivisorConfiguration {
        n: file.n,
        components,
        strata,
    };
    let nu = MultiplicityVector::new(file.components.iter().map(|c| c.nu).collect());

    let mut violations = validate_config(&config);
    violations.extend(validate_multiplicities(&config, &nu));
    if !violations.is_empty() {
        return Err(ConfigError::Validation(violations));
    }
    let nu_prime = match file.nu_prime {
        None => None,
        Some(map) => {
            Some(config.multiplicities_from_pairs(map.iter().map(|(k, v)| (k.as_str(), *v)))?)
        }
    };
    Ok(LoadedConfig {
        config,
        nu,
        nu_prime,
    })
}

pub fn load_config(path: &Path) -> Result<LoadedConfig, ConfigError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_config(&text, &shown)
}

/// Canonical JSON text: schema field order, strata in stored order,
/// `nu_prime` keys sorted.
pub fn serialize_config(
    c: &DivisorConfiguration,
    nu: &MultiplicityVector,
    nu_prime: Option<&MultiplicityVector>,
) -> String {
    let file = ConfigFile {
        n: c.n,
        components: c
            .components
            .iter()
            .zip(nu.values())
            .map(|(id, &nu)| ComponentRecord { id: id.clone(), nu })
            .collect(),
        strata: c
            .strata
            .iter()
            .map(|s| StratumRecord {
                support: s.support.iter().map(|&i| c.components[i].clone()).collect(),
                beta: BetaField::Coeffs(s.beta.clone()),
                origin: s.maps_to_origin,
            })
            .collect(),
        nu_prime: nu_prime.map(|np| {
            c.components
                .iter()
                .cloned()
                .zip(np.values().iter().copied())
                .collect()
        }),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("config serializes");
    text.push('\n');
    text
}
