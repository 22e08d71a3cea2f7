//! Probe spec files for `jetstrat oracle`.
//!
//! ```json
//! {
//!   "seed": 7,
//!   "probes": [
//!     {"kind": "order", "poly": "x", "arc": {"order": 8, "coeffs": [[0,0,0,1], [1,1]]}},
//!     {"kind": "multiplicity", "map": ["x","x*y"], "equations": ["x"], "nu": [1], "j": [2],
//!      "arc": {"order": 8, "coeffs": [[0,0,1], [1,1]]}},
//!     {"kind": "multiplicity_grid", "map": ["x","x*y"], "equations": ["x"], "nu": [1],
//!      "max_j": 5, "arcs_per_j": 50},
//!     {"kind": "chain_rule", "sigma": ["x","x*y"], "sigma_prime": ["x","x^3*y"],
//!      "f": ["x","x^2*y"], "arc": {"order": 8, "coeffs": [[0,1], [1]]}},
//!     {"kind": "fiber", "map": ["x","x*y"], "k": 6, "target": {"order": 6, "coeffs": [[0,0,1], [0,0,1,1]]}},
//!     {"kind": "fiber_grid", "map": ["x","x*y"], "equations": ["x"], "nu": [1], "max_j": 5}
//!   ]
//! }
//! ```
//!
//! Coefficients are integers or rational strings such as `"-3/4"`. `vars`
//! may be given on any probe; the default is `x, y, z, w`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    chain_rule_check, default_vars, fiber_dimension_probe, multiplicity_check, ord_along_arc,
    random_arc, ArcGerm, MPoly, OracleError, PolyMap, TruncatedSeries,
};
use crate::config::{MultiIndex, MultiplicityVector};
use crate::parallel::Schedule;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Int(i64),
    Text(String),
}

impl Coef {
    fn value(&self) -> Result<BigRational, OracleError> {
        match self {
            Coef::Int(i) => Ok(BigRational::from_integer(BigInt::from(*i))),
            Coef::Text(s) => {
                let s = s.trim();
                let (num, den) = s.split_once('/').unwrap_or((s, "1"));
                let num: BigInt = num
                    .trim()
                    .parse()
                    .map_err(|_| OracleError::Parse(format!("bad coefficient {s:?}")))?;
                let den: BigInt = den
                    .trim()
                    .parse()
                    .map_err(|_| OracleError::Parse(format!("bad coefficient {s:?}")))?;
                if den == BigInt::from(0) {
                    return Err(OracleError::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(BigRational::new(num, den))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcSpec {
    pub order: usize,
    pub coeffs: Vec<Vec<Coef>>,
}

impl ArcSpec {
    pub fn to_arc(&self) -> Result<ArcGerm, OracleError> {
        let comps = self
            .coeffs
            .iter()
            .map(|c| {
                if c.len() > self.order + 1 {
                    return Err(OracleError::Parse(format!(
                        "arc component has {} coefficients but order is {}",
                        c.len(),
                        self.order
                    )));
                }
                let v = c.iter().map(Coef::value).collect::<Result<Vec<_>, _>>()?;
                Ok(TruncatedSeries::new(v, self.order))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ArcGerm::new(comps)
    }
}

fn default_samples() -> usize {
    3
}

fn default_extra_k() -> usize {
    6
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProbeSpec {
    Order {
        #[serde(default)]
        vars: Option<Vec<String>>,
        poly: String,
        arc: ArcSpec,
    },
    Multiplicity {
        #[serde(default)]
        vars: Option<Vec<String>>,
        map: Vec<String>,
        equations: Vec<String>,
        nu: Vec<u64>,
        j: Vec<u64>,
        arc: ArcSpec,
    },
    MultiplicityGrid {
        #[serde(default)]
        vars: Option<Vec<String>>,
        map: Vec<String>,
        equations: Vec<String>,
        nu: Vec<u64>,
        max_j: u64,
        arcs_per_j: usize,
        #[serde(default)]
        order: Option<usize>,
    },
    ChainRule {
        #[serde(default)]
        vars: Option<Vec<String>>,
        sigma: Vec<String>,
        sigma_prime: Vec<String>,
        #[serde(default)]
        f: Option<Vec<String>>,
        arc: ArcSpec,
    },
    Fiber {
        #[serde(default)]
        vars: Option<Vec<String>>,
        map: Vec<String>,
        k: usize,
        target: ArcSpec,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    FiberGrid {
        #[serde(default)]
        vars: Option<Vec<String>>,
        map: Vec<String>,
        equations: Vec<String>,
        nu: Vec<u64>,
        max_j: u64,
        #[serde(default = "default_extra_k")]
        extra_k: usize,
        #[serde(default = "default_samples")]
        samples: usize,
    },
}

impl ProbeSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ProbeSpec::Order { .. } => "order",
            ProbeSpec::Multiplicity { .. } => "multiplicity",
            ProbeSpec::MultiplicityGrid { .. } => "multiplicity_grid",
            ProbeSpec::ChainRule { .. } => "chain_rule",
            ProbeSpec::Fiber { .. } => "fiber",
            ProbeSpec::FiberGrid { .. } => "fiber_grid",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeFile {
    #[serde(default)]
    pub seed: u64,
    pub probes: Vec<ProbeSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProbeStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeError {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub index: usize,
    pub kind: &'static str,
    pub seed: u64,
    pub status: ProbeStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ProbeError>,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub probes: Vec<ProbeResult>,
}

impl ProbeReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.errors == 0
    }
}

fn vars_for(vars: &Option<Vec<String>>, n: usize) -> Vec<String> {
    vars.clone().unwrap_or_else(|| default_vars(n))
}

fn parse_map(comps: &[String], vars: &Option<Vec<String>>) -> Result<PolyMap, OracleError> {
    PolyMap::parse(comps, Some(vars_for(vars, comps.len())))
}

fn parse_equations(eqs: &[String], vars: &[String]) -> Result<Vec<MPoly>, OracleError> {
    eqs.iter().map(|e| MPoly::parse(e, vars)).collect()
}

/// Variable index of an equation of the form `c * x_v`.
fn coordinate_of(eq: &MPoly) -> Result<usize, OracleError> {
    let mut terms = eq.terms();
    if let (Some((e, _)), None) = (terms.next(), terms.next()) {
        if e.iter().sum::<u32>() == 1 {
            return Ok(e.iter().position(|&p| p == 1).unwrap());
        }
    }
    Err(OracleError::Parse(
        "grid probes need each component equation to be a coordinate variable".into(),
    ))
}

/// All nonzero contact vectors with entries in `0..=max_j`.
fn contact_grid(m: usize, max_j: u64) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max_j).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x > 0));
    out
}

fn grid_arc(rng: &mut ChaCha8Rng, n: usize, coords: &[usize], j: &[u64], order: usize) -> ArcGerm {
    let mut contacts = vec![None; n];
    for (&v, &x) in coords.iter().zip(j) {
        contacts[v] = Some(x as usize);
    }
    random_arc(rng, &contacts, order)
}

fn summarize(results: Vec<(bool, Value)>) -> (bool, Value) {
    let cases = results.len();
    let passed = results.iter().filter(|(ok, _)| *ok).count();
    let failures: Vec<Value> = results
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, v)| v)
        .take(5)
        .collect();
    (
        passed == cases,
        json!({ "cases": cases, "passed": passed, "first_failures": failures }),
    )
}

fn run_probe(
    spec: &ProbeSpec,
    seed: u64,
    schedule: Schedule,
) -> Result<(bool, Value), OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match spec {
        ProbeSpec::Order { vars, poly, arc } => {
            let arc = arc.to_arc()?;
            let vars = vars_for(vars, arc.dim());
            let p = MPoly::parse(poly, &vars)?;
            let ord = ord_along_arc(&p, &arc)?;
            Ok((true, json!({ "order": ord })))
        }
        ProbeSpec::Multiplicity {
            vars,
            map,
            equations,
            nu,
            j,
            arc,
        } => {
            let m = parse_map(map, vars)?;
            let eqs = parse_equations(equations, m.vars())?;
            let out = multiplicity_check(
                &m,
                &arc.to_arc()?,
                &eqs,
                &MultiIndex::new(j.clone()),
                &MultiplicityVector::new(nu.clone()),
            )?;
            Ok((out.pass, serde_json::to_value(&out).unwrap()))
        }
        ProbeSpec::MultiplicityGrid {
            vars,
            map,
            equations,
            nu,
            max_j,
            arcs_per_j,
            order,
        } => {
            let m = parse_map(map, vars)?;
            let eqs = parse_equations(equations, m.vars())?;
            let coords = eqs
                .iter()
                .map(coordinate_of)
                .collect::<Result<Vec<_>, _>>()?;
            let nu = MultiplicityVector::new(nu.clone());
            let mut cases = Vec::new();
            for j in contact_grid(eqs.len(), *max_j) {
                let j = MultiIndex::new(j);
                let expected = j.pairing(&nu) as usize;
                let k = order.unwrap_or((4 * expected).max(4));
                for _ in 0..*arcs_per_j {
                    cases.push((
                        j.clone(),
                        grid_arc(&mut rng, m.dim(), &coords, j.values(), k),
                    ));
                }
            }
            let results = schedule.map(cases, |(j, arc)| {
                match multiplicity_check(&m, &arc, &eqs, &j, &nu) {
                    Ok(out) => (out.pass, json!({ "j": j, "outcome": out })),
                    Err(e) => (
                        false,
                        json!({ "j": j, "error": e.code(), "message": e.to_string() }),
                    ),
                }
            });
            Ok(summarize(results))
        }
        ProbeSpec::ChainRule {
            vars,
            sigma,
            sigma_prime,
            f,
            arc,
        } => {
            let s = parse_map(sigma, vars)?;
            let sp = parse_map(sigma_prime, vars)?;
            let f = f.as_ref().map(|f| parse_map(f, vars)).transpose()?;
            let out = chain_rule_check(&s, &sp, f.as_ref(), &arc.to_arc()?)?;
            Ok((out.pass, serde_json::to_value(&out).unwrap()))
        }
        ProbeSpec::Fiber {
            vars,
            map,
            k,
            target,
            samples,
        } => {
            let m = parse_map(map, vars)?;
            let out = fiber_dimension_probe(&m, *k, &target.to_arc()?, *samples, &mut rng)?;
            Ok((out.pass, serde_json::to_value(&out).unwrap()))
        }
        ProbeSpec::FiberGrid {
            vars,
            map,
            equations,
            nu,
            max_j,
            extra_k,
            samples,
        } => {
            let m = parse_map(map, vars)?;
            let eqs = parse_equations(equations, m.vars())?;
            let coords = eqs
                .iter()
                .map(coordinate_of)
                .collect::<Result<Vec<_>, _>>()?;
            let nu = MultiplicityVector::new(nu.clone());
            let mut cases = Vec::new();
            for j in contact_grid(eqs.len(), *max_j) {
                let j = MultiIndex::new(j);
                let e = j.pairing(&nu) as usize;
                for k in 2 * e..=2 * e + extra_k {
                    let arc = grid_arc(&mut rng, m.dim(), &coords, j.values(), k);
                    cases.push((j.clone(), e, k, arc, rng.gen::<u64>()));
                }
            }
            let results = schedule.map(cases, |(j, e, k, arc, item_seed)| {
                let target = m.apply_to_arc(&arc);
                let mut item_rng = ChaCha8Rng::seed_from_u64(item_seed);
                match fiber_dimension_probe(&m, k, &target, *samples, &mut item_rng) {
                    Ok(out) => (
                        out.pass && out.measured == e,
                        json!({ "j": j, "k": k, "expected": e, "outcome": out }),
                    ),
                    Err(err) => (
                        false,
                        json!({ "j": j, "k": k, "expected": e, "error": err.code(), "message": err.to_string() }),
                    ),
                }
            });
            Ok(summarize(results))
        }
    }
}

/// Runs every probe. Probe `i` uses seed `file.seed + i`.
pub fn run_probes(file: &ProbeFile, schedule: Schedule) -> ProbeReport {
    let probes: Vec<ProbeResult> = file
        .probes
        .iter()
        .enumerate()
        .map(|(index, spec)| {
            let seed = file.seed.wrapping_add(index as u64);
            let (status, error, detail) = match run_probe(spec, seed, schedule) {
                Ok((true, d)) => (ProbeStatus::Pass, None, d),
                Ok((false, d)) => (ProbeStatus::Fail, None, d),
                Err(e) => (
                    ProbeStatus::Error,
                    Some(ProbeError {
                        code: e.code(),
                        message: e.to_string(),
                    }),
                    Value::Null,
                ),
            };
            ProbeResult {
                index,
                kind: spec.kind(),
                seed,
                status,
                error,
                detail,
            }
        })
        .collect();
    let count = |s: ProbeStatus| probes.iter().filter(|p| p.status == s).count();
    ProbeReport {
        seed: file.seed,
        passed: count(ProbeStatus::Pass),
        failed: count(ProbeStatus::Fail),
        errors: count(ProbeStatus::Error),
        probes,
    }
}
