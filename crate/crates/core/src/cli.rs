//! The `jetstrat` command line.
//!
//! [`run`] does all the work and returns the exit code with the captured
//! stdout and stderr, so the binary is a thin wrapper and tests can drive the
//! commands in-process.
//!
//! Exit codes: 0 report produced, 2 invalid input, 3 engine inconsistency
//! (`NEGATIVE_EXPONENT`), 4 oracle probe failure.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::beta::{evaluate, SetExpr, ATOM_SYNTAX};
use crate::compare::{
    lipschitz_verdict, thm1_verdict, CompareError, ComparisonReport, PerK, DEFAULT_STABILITY_WINDOW,
};
use crate::config::{
    builtin_config, json_error_message, load_config, ConfigError, DivisorConfiguration,
    LoadedConfig, MultiplicityVector, BUILTIN_NAMES,
};
use crate::oracle::probe::{run_probes, ProbeFile, ProbeStatus};
use crate::parallel::Schedule;
use crate::strata::{stratify_sweep, sweep_csv, JetStratification, StrataError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_PROBE_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "jetstrat",
    version,
    about = "Jet-space stratification and multiplicity comparison"
)]
pub struct Cli {
    /// Emit the report as JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the CSV projection of the report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Suppress the human-readable report.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Run per-k and per-probe work on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Builtin configuration, e.g. blowup_point_R2 or blowup_point_Rn(5).
    #[arg(long)]
    pub builtin: Option<String>,
    /// Configuration file (JSON).
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Jacobian,
    Lipschitz,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List builtin configurations and set atoms.
    Catalog {
        /// List only the set atoms.
        #[arg(long)]
        atoms: bool,
        /// Evaluate a set expression such as `X(RP(1),A(2))`.
        #[arg(long, value_name = "EXPR")]
        eval: Option<String>,
    },
    /// Check a configuration for structural errors.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Stratify the k-jets for one k or a range of k.
    Stratify {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "k_range", required_unless_present = "k_range")]
        k: Option<u64>,
        /// Inclusive range `A:B`.
        #[arg(long, value_name = "A:B")]
        k_range: Option<String>,
    },
    /// Compare two multiplicity vectors on one configuration.
    Compare {
        #[command(flatten)]
        source: Source,
        /// Override ν, as `ID=VALUE` pairs.
        #[arg(long, value_name = "ID=VALUE", value_delimiter = ',')]
        nu: Vec<String>,
        /// ν′ as `ID=VALUE` pairs; defaults to the file's `nu_prime`.
        #[arg(long, value_name = "ID=VALUE", value_delimiter = ',')]
        nu_prime: Vec<String>,
        #[arg(long, value_enum, default_value = "jacobian")]
        mode: ModeArg,
        #[arg(long, default_value_t = 12)]
        k_max: u64,
        /// Number of trailing k over which c_k must be constant (jacobian mode).
        #[arg(long, default_value_t = DEFAULT_STABILITY_WINDOW)]
        window: usize,
    },
    /// Run arc-level oracle probes from a spec file.
    Oracle {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
    },
}

/// Identifies a run. Two runs with equal manifests print identical reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub source: Option<String>,
    pub params: BTreeMap<&'static str, Value>,
    pub tool_version: &'static str,
    /// Taken from `SOURCE_DATE_EPOCH` when set, otherwise null.
    pub timestamp: Option<String>,
}

impl RunManifest {
    fn new(subcommand: &'static str, source: Option<String>) -> Self {
        RunManifest {
            subcommand,
            source,
            params: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp: std::env::var("SOURCE_DATE_EPOCH").ok(),
        }
    }

    fn param(mut self, key: &'static str, value: impl Serialize) -> Self {
        self.params
            .insert(key, serde_json::to_value(value).expect("param serializes"));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn input(kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            kind,
            message: message.into(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        let kind = match &e {
            ConfigError::Io { .. } => "IO_ERROR",
            ConfigError::Parse { .. } => "PARSE_ERROR",
            ConfigError::Validation(_) => "VALIDATION_ERROR",
            ConfigError::UnknownBuiltin(_) => "UNKNOWN_BUILTIN",
            ConfigError::InvalidBuiltin(_) => "INVALID_BUILTIN",
            ConfigError::UnknownComponent(_)
            | ConfigError::DuplicateAssignment(_)
            | ConfigError::MissingMultiplicity(_) => "MULTIPLICITY_ERROR",
        };
        Failure::input(kind, e.to_string())
    }
}

impl From<StrataError> for Failure {
    fn from(e: StrataError) -> Self {
        match e {
            StrataError::NegativeExponent { .. } => Failure {
                code: EXIT_INCONSISTENT,
                kind: "NEGATIVE_EXPONENT",
                message: e.to_string(),
            },
            StrataError::ZeroK => Failure::input("INVALID_K", e.to_string()),
        }
    }
}

impl From<CompareError> for Failure {
    fn from(e: CompareError) -> Self {
        match e {
            CompareError::Strata(s) => s.into(),
            CompareError::PreconditionOrder(_) => {
                Failure::input("PRECONDITION_ORDER", e.to_string())
            }
            CompareError::ScanTooShort(_) | CompareError::ZeroWindow => {
                Failure::input("INVALID_SCAN", e.to_string())
            }
        }
    }
}

/// A finished command: its JSON payload, text rendering, optional CSV and exit code.
struct Report {
    payload: Value,
    text: String,
    csv: Option<String>,
    code: i32,
}

impl Report {
    fn ok(payload: Value, text: String) -> Self {
        Report {
            payload,
            text,
            csv: None,
            code: EXIT_OK,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Output {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Output {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Output {
    let schedule = if cli.sequential {
        Schedule::Sequential
    } else {
        Schedule::Auto
    };
    let manifest = manifest_for(&cli.command);
    let result = match &cli.command {
        Command::Catalog { atoms, eval } => cmd_catalog(*atoms, eval.as_deref()),
        Command::Validate { source } => cmd_validate(source),
        Command::Stratify { source, k, k_range } => {
            cmd_stratify(source, *k, k_range.as_deref(), schedule)
        }
        Command::Compare {
            source,
            nu,
            nu_prime,
            mode,
            k_max,
            window,
        } => cmd_compare(source, nu, nu_prime, *mode, *k_max, *window, schedule),
        Command::Oracle { spec } => cmd_oracle(spec, schedule),
    };
    let mut out = Output::default();
    match result {
        Ok(report) => {
            if let (Some(path), Some(csv)) = (&cli.csv, &report.csv) {
                if let Err(e) = std::fs::write(path, csv) {
                    out.code = EXIT_INPUT;
                    out.stderr = format!("error: IO_ERROR: {}: {e}\n", path.display());
                    return out;
                }
            }
            if cli.json {
                let doc = json!({ "manifest": manifest, "report": report.payload });
                out.stdout = to_json(&doc);
            } else if !cli.quiet {
                out.stdout = report.text;
            }
            out.code = report.code;
        }
        Err(f) => {
            if cli.json {
                let doc = json!({
                    "manifest": manifest,
                    "error": { "code": f.kind, "message": f.message },
                });
                out.stdout = to_json(&doc);
            }
            out.stderr = format!("error: {}\n", f.message);
            out.code = f.code;
        }
    }
    out
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn source_label(s: &Source) -> Option<String> {
    s.builtin
        .clone()
        .or_else(|| s.file.as_ref().map(|p| p.display().to_string()))
}

fn manifest_for(cmd: &Command) -> RunManifest {
    match cmd {
        Command::Catalog { atoms, eval } => RunManifest::new("catalog", None)
            .param("atoms", atoms)
            .param("eval", eval),
        Command::Validate { source } => RunManifest::new("validate", source_label(source)),
        Command::Stratify { source, k, k_range } => {
            RunManifest::new("stratify", source_label(source))
                .param("k", k)
                .param("k_range", k_range)
        }
        Command::Compare {
            source,
            nu,
            nu_prime,
            mode,
            k_max,
            window,
        } => RunManifest::new("compare", source_label(source))
            .param("nu", nu)
            .param("nu_prime", nu_prime)
            .param("mode", mode)
            .param("k_max", k_max)
            .param("window", window),
        Command::Oracle { spec } => {
            let seed = std::fs::read_to_string(spec)
                .ok()
                .and_then(|t| serde_json::from_str::<Value>(&t).ok())
                .and_then(|v| v.get("seed").and_then(Value::as_u64))
                .unwrap_or(0);
            RunManifest::new("oracle", Some(spec.display().to_string())).param("seed", seed)
        }
    }
}

fn load_source(s: &Source) -> Result<LoadedConfig, Failure> {
    match (&s.builtin, &s.file) {
        (Some(name), _) => {
            let (config, nu) = builtin_config(name)?;
            Ok(LoadedConfig {
                config,
                nu,
                nu_prime: None,
            })
        }
        (None, Some(path)) => Ok(load_config(path)?),
        (None, None) => Err(Failure::input(
            "NO_SOURCE",
            "one of --builtin or --file is required",
        )),
    }
}

fn cmd_catalog(atoms_only: bool, eval: Option<&str>) -> Result<Report, Failure> {
    if let Some(text) = eval {
        let expr: SetExpr = text
            .parse()
            .map_err(|e| Failure::input("PARSE_ERROR", format!("{e}")))?;
        let ev = evaluate(&expr);
        let mut out = format!("{}  ->  {}\n", ev.expr, ev.beta);
        for s in &ev.asserted_subsets {
            let _ = writeln!(out, "  assumes {s}");
        }
        if ev.suspicious {
            out.push_str(
                "  warning: leading coefficient is not positive; check the subset assumptions\n",
            );
        }
        return Ok(Report::ok(serde_json::to_value(&ev).unwrap(), out));
    }
    let atoms: Vec<Value> = ATOM_SYNTAX
        .iter()
        .map(|(syntax, meaning, beta)| json!({ "syntax": syntax, "space": meaning, "beta": beta }))
        .collect();
    let mut text = String::new();
    let mut payload = json!({ "atoms": atoms });
    if !atoms_only {
        let builtins: Vec<Value> = BUILTIN_NAMES
            .iter()
            .map(|name| {
                let probe = name.replace("(n)", "(4)");
                let (c, nu) = builtin_config(&probe).expect("builtin resolves");
                let shown_n = if name.ends_with("(n)") {
                    json!("n")
                } else {
                    json!(c.n)
                };
                json!({ "name": name, "n": shown_n, "components": c.components, "nu": if name.ends_with("(n)") { json!(["n-1"]) } else { json!(nu) } })
            })
            .collect();
        text.push_str("builtin configurations:\n");
        for name in BUILTIN_NAMES {
            let _ = writeln!(text, "  {name}");
        }
        payload["builtins"] = Value::Array(builtins);
        text.push('\n');
    }
    text.push_str("set atoms:\n");
    for (syntax, meaning, beta) in ATOM_SYNTAX {
        let _ = writeln!(text, "  {syntax:<8} {meaning:<30} beta = {beta}");
    }
    text.push_str(
        "  combinators: U(a,b,..) disjoint union, X(a,b,..) product, D(a,b) difference\n",
    );
    Ok(Report::ok(payload, text))
}

fn config_summary(c: &DivisorConfiguration, nu: &MultiplicityVector) -> Value {
    let strata: Vec<Value> = c
        .strata
        .iter()
        .map(|s| json!({ "J": c.support_label(&s.support), "beta": s.beta, "origin": s.maps_to_origin }))
        .collect();
    json!({ "n": c.n, "components": c.components, "nu": nu, "strata": strata })
}

fn cmd_validate(source: &Source) -> Result<Report, Failure> {
    match load_source(source) {
        Ok(loaded) => {
            let mut summary = config_summary(&loaded.config, &loaded.nu);
            summary["valid"] = json!(true);
            summary["violations"] = json!([]);
            let text = format!(
                "valid: n = {}, {} component(s), {} stratum record(s)\n",
                loaded.config.n,
                loaded.config.components.len(),
                loaded.config.strata.len()
            );
            Ok(Report::ok(summary, text))
        }
        Err(f) => Err(f),
    }
}

fn parse_k_range(text: &str) -> Result<Vec<u64>, Failure> {
    let bad = || {
        Failure::input(
            "INVALID_K",
            format!("--k-range expects A:B with 1 <= A <= B, got {text:?}"),
        )
    };
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn render_stratification(c: &DivisorConfiguration, s: &JetStratification, out: &mut String) {
    let verdict = if s.bound_ok { "ok" } else { "VIOLATED" };
    let _ = writeln!(
        out,
        "k = {}: residual {}  (degree {} vs bound {}: {verdict})",
        s.k, s.residual_beta, s.residual_degree, s.bound
    );
    for r in &s.strata {
        let _ = writeln!(
            out,
            "  j = {} on {}: dim {}, beta {}",
            r.j,
            c.support_label(&r.j.support()),
            r.dim,
            r.beta
        );
    }
    for w in &s.warnings {
        let _ = writeln!(
            out,
            "  warning: {}",
            serde_json::to_value(w).unwrap().as_str().unwrap_or("?")
        );
    }
}

fn cmd_stratify(
    source: &Source,
    k: Option<u64>,
    k_range: Option<&str>,
    schedule: Schedule,
) -> Result<Report, Failure> {
    let ks = match (k, k_range) {
        (Some(k), _) => vec![k],
        (None, Some(r)) => parse_k_range(r)?,
        (None, None) => {
            return Err(Failure::input(
                "INVALID_K",
                "one of --k or --k-range is required",
            ))
        }
    };
    let loaded = load_source(source)?;
    let sweep = stratify_sweep(&loaded.config, &loaded.nu, ks, schedule)?;
    let mut text = String::new();
    for s in &sweep {
        render_stratification(&loaded.config, s, &mut text);
    }
    let payload = json!({
        "config": config_summary(&loaded.config, &loaded.nu),
        "stratifications": sweep,
    });
    Ok(Report {
        payload,
        text,
        csv: Some(sweep_csv(&sweep)),
        code: EXIT_OK,
    })
}

fn parse_pairs(c: &DivisorConfiguration, pairs: &[String]) -> Result<MultiplicityVector, Failure> {
    let parsed = pairs
        .iter()
        .map(|p| {
            let (id, v) = p.split_once('=').ok_or_else(|| {
                Failure::input("PARSE_ERROR", format!("expected ID=VALUE, got {p:?}"))
            })?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Failure::input("PARSE_ERROR", format!("bad multiplicity in {p:?}")))?;
            Ok((id.trim(), v))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(c.multiplicities_from_pairs(parsed)?)
}

fn render_comparison(r: &ComparisonReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mode: {:?}", r.mode);
    let _ = writeln!(
        out,
        "nu = {:?}, nu' = {:?}",
        r.nu.values(),
        r.nu_prime.values()
    );
    match &r.per_k {
        PerK::Jacobian(rs) => {
            for x in rs {
                let ck = x.c_k.map_or("none".to_string(), |c| c.to_string());
                let _ = writeln!(
                    out,
                    "k = {:>3}: deg P = {}, c_k = {ck}, bound {}{}",
                    x.k,
                    x.deg_p,
                    x.bound,
                    if x.contradiction {
                        "  contradiction"
                    } else {
                        ""
                    }
                );
            }
        }
        PerK::Lipschitz(rs) => {
            for x in rs {
                let _ = writeln!(
                    out,
                    "k = {:>3}: |A'| = {}, |A''| = {}, bounds {} / {}{}",
                    x.k,
                    x.a_prime.len(),
                    x.a_double_prime.len(),
                    x.bound_sigma,
                    x.bound_sigma_prime,
                    if x.contradiction {
                        "  contradiction"
                    } else {
                        ""
                    }
                );
            }
        }
    }
    let _ = writeln!(out, "verdict: {}", r.verdict);
    out
}

fn cmd_compare(
    source: &Source,
    nu_pairs: &[String],
    nu_prime_pairs: &[String],
    mode: ModeArg,
    k_max: u64,
    window: usize,
    schedule: Schedule,
) -> Result<Report, Failure> {
    let loaded = load_source(source)?;
    let c = &loaded.config;
    let nu = if nu_pairs.is_empty() {
        loaded.nu.clone()
    } else {
        parse_pairs(c, nu_pairs)?
    };
    let nu_prime = if !nu_prime_pairs.is_empty() {
        parse_pairs(c, nu_prime_pairs)?
    } else {
        loaded.nu_prime.clone().ok_or_else(|| {
            Failure::input(
                "MULTIPLICITY_ERROR",
                "no nu' given: pass --nu-prime or set nu_prime in the file",
            )
        })?
    };
    let report = match mode {
        ModeArg::Jacobian => thm1_verdict(c, &nu, &nu_prime, k_max, window, schedule)?,
        ModeArg::Lipschitz => lipschitz_verdict(c, &nu, &nu_prime, k_max, schedule)?,
    };
    Ok(Report {
        payload: serde_json::to_value(&report).unwrap(),
        text: render_comparison(&report),
        csv: Some(report.csv()),
        code: EXIT_OK,
    })
}

fn read_probe_file(path: &Path) -> Result<ProbeFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input("IO_ERROR", format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        Failure::input(
            "PARSE_ERROR",
            format!(
                "{}:{}:{}: at `{}`: {}",
                path.display(),
                inner.line(),
                inner.column(),
                e.path(),
                json_error_message(inner)
            ),
        )
    })
}

fn cmd_oracle(spec: &Path, schedule: Schedule) -> Result<Report, Failure> {
    let file = read_probe_file(spec)?;
    let report = run_probes(&file, schedule);
    let mut text = String::new();
    for p in &report.probes {
        let status = match p.status {
            ProbeStatus::Pass => "PASS",
            ProbeStatus::Fail => "FAIL",
            ProbeStatus::Error => "ERROR",
        };
        let _ = write!(
            text,
            "[{}] {:<18} seed {:<6} {status}",
            p.index, p.kind, p.seed
        );
        if let Some(e) = &p.error {
            let _ = write!(text, "  {}", e.message);
        }
        text.push('\n');
    }
    let _ = writeln!(
        text,
        "{} passed, {} failed, {} errors",
        report.passed, report.failed, report.errors
    );
    let csv = {
        let mut s = String::from("index,kind,seed,status\n");
        for p in &report.probes {
            let status = serde_json::to_value(p.status).unwrap();
            let _ = writeln!(
                s,
                "{},{},{},{}",
                p.index,
                p.kind,
                p.seed,
                status.as_str().unwrap_or("?")
            );
        }
        s
    };
    let code = if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_PROBE_FAILED
    };
    Ok(Report {
        payload: serde_json::to_value(&report).unwrap(),
        text,
        csv: Some(csv),
        code,
    })
}
