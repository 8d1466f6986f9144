//! Configuration, subcommand dispatch and JSON reports for the `superell` binary.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{ln_rational, parse_rational, Rational};
use crate::bounds::{
    theorem_hyper_bound, theorem_st_bound, theorem_super_bound, BoundInputs, ExactInvariants,
    LogBound,
};
use crate::field::{FieldElement, FieldSpec, KPoly, NumberField};
use crate::places::{h_hat, PrimeChoice, SSpec};
use crate::solver::{self, Problem, VerifyMode};
use crate::Error;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_M_CAP: u32 = 64;
pub const DEFAULT_TOL: f64 = 1e-12;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    BoundSuper,
    BoundHyper,
    BoundSt,
    Solve,
    Verify,
    Selftest,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::BoundSuper => "bound-super",
            Mode::BoundHyper => "bound-hyper",
            Mode::BoundSt => "bound-st",
            Mode::Solve => "solve",
            Mode::Verify => "verify",
            Mode::Selftest => "selftest",
        }
    }
}

/// A coefficient: a rational string, or power-basis coordinates over `K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Rational(String),
    Coords(Vec<String>),
}

/// `height_cap`: a natural-log value, or `"log:N"` for `log N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HeightCap {
    Value(f64),
    Spec(String),
}

impl HeightCap {
    pub fn resolve(&self) -> Result<f64, String> {
        match self {
            HeightCap::Value(v) => Ok(*v),
            HeightCap::Spec(s) => {
                let arg = s
                    .strip_prefix("log:")
                    .ok_or_else(|| format!("expected a number or \"log:N\", got {s:?}"))?
                    .trim();
                let n: Rational = match parse_rational(arg) {
                    Ok(q) => q,
                    Err(_) => {
                        let v: f64 = arg.parse().map_err(|_| format!("cannot parse {arg:?}"))?;
                        Rational::from_float(v).ok_or_else(|| format!("cannot parse {arg:?}"))?
                    }
                };
                if n < Rational::from_integer(1.into()) {
                    return Err(format!("log:N needs N >= 1, got {arg}"));
                }
                Ok(ln_rational(&n))
            }
        }
    }

    fn parse_flag(s: &str) -> HeightCap {
        s.parse::<f64>().map(HeightCap::Value).unwrap_or_else(|_| HeightCap::Spec(s.to_string()))
    }
}

/// The input file, TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<PrimeChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Coeff>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height_cap: Option<HeightCap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactInvariants>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            let key = msg
                .split('`')
                .nth(1)
                .map(str::to_string)
                .unwrap_or_else(|| "config".to_string());
            CliError::input(&key, format!("invalid config: {msg}"))
        })
    }
}

/// Error payload with the offending config key.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    pub key: Option<String>,
    pub message: String,
    #[serde(skip)]
    pub exit: i32,
}

impl CliError {
    pub fn input(key: &str, message: impl Into<String>) -> Self {
        CliError { key: Some(key.to_string()), message: message.into(), exit: EXIT_INPUT }
    }

    fn to_json(&self) -> Value {
        json!({ "schema_version": SCHEMA_VERSION, "error": self })
    }
}

fn at(key: &'static str) -> impl Fn(Error) -> CliError {
    move |e| CliError::input(key, e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "superell", version, about = "Explicit bounds and desk-scale searches for superelliptic equations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Error target for heights.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads for the search.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Largest exponent tried by the exponent search.
    #[arg(long = "m-cap", global = true)]
    pub m_cap: Option<u32>,
    /// Height cap on x: a natural-log value or "log:N".
    #[arg(long = "height-cap", global = true)]
    pub height_cap: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a theorem bound.
    Bound {
        #[arg(long, value_enum)]
        kind: Option<BoundKind>,
    },
    /// Search for solutions at a fixed exponent.
    Solve,
    /// Search and check the findings against the theorems.
    Verify,
    /// Run the embedded invariant suite.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Super,
    Hyper,
    St,
}

/// Parses arguments, runs, and returns the exit code with the JSON document to print.
pub fn run_cli<I, T>(args: I) -> (i32, Value)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let err = CliError::input("args", e.to_string().trim().to_string());
            return (EXIT_INPUT, err.to_json());
        }
        Err(e) => return (EXIT_OK, json!({ "message": e.to_string() })),
    };
    match build_config(&cli).and_then(|c| run(&c)) {
        Ok((code, report)) => (code, report),
        Err(e) => (e.exit, e.to_json()),
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::input("config", format!("{}: {e}", path.display())))?;
            RunConfig::from_toml(&text)?
        }
        None => RunConfig::from_toml("")?,
    };
    let mode = match cli.command {
        Command::Bound { kind } => match (kind, cfg.mode) {
            (Some(BoundKind::Super), _) => Mode::BoundSuper,
            (Some(BoundKind::Hyper), _) => Mode::BoundHyper,
            (Some(BoundKind::St), _) => Mode::BoundSt,
            (None, Some(m @ (Mode::BoundSuper | Mode::BoundHyper | Mode::BoundSt))) => m,
            (None, _) => {
                return Err(CliError::input(
                    "mode",
                    "bound needs --kind or mode = bound-super | bound-hyper | bound-st",
                ))
            }
        },
        Command::Solve => Mode::Solve,
        Command::Verify => Mode::Verify,
        Command::Selftest => Mode::Selftest,
    };
    cfg.mode = Some(mode);
    if let Some(t) = cli.tol {
        cfg.tol = Some(t);
    }
    if let Some(w) = cli.workers {
        cfg.workers = Some(w);
    }
    if let Some(m) = cli.m_cap {
        cfg.m_cap = Some(m);
    }
    if let Some(h) = &cli.height_cap {
        cfg.height_cap = Some(HeightCap::parse_flag(h));
    }
    Ok(cfg)
}

/// Checked inputs shared by every mode except selftest.
struct Setup {
    field: Arc<NumberField>,
    s: SSpec,
    f: KPoly,
    b: FieldElement,
    tol: f64,
    workers: Option<usize>,
}

fn parse_coeff(k: &Arc<NumberField>, c: &Coeff, key: &'static str) -> Result<FieldElement, CliError> {
    let q = |s: &str| parse_rational(s).map_err(|e| CliError::input(key, e.to_string()));
    match c {
        Coeff::Rational(s) => Ok(FieldElement::from_rational(k, q(s)?)),
        Coeff::Coords(v) => {
            if v.len() != k.degree() {
                return Err(CliError::input(
                    key,
                    format!("expected {} coordinates, got {}", k.degree(), v.len()),
                ));
            }
            Ok(FieldElement::new(k, v.iter().map(|s| q(s)).collect::<Result<_, _>>()?))
        }
    }
}

fn setup(cfg: &RunConfig) -> Result<Setup, CliError> {
    let field = match &cfg.field {
        Some(spec) => spec.build().map_err(at("field"))?,
        None => NumberField::rationals(),
    };
    let s = SSpec::from_choices(&field, &cfg.primes).map_err(at("primes"))?;
    let coeffs = cfg.f.as_ref().ok_or_else(|| CliError::input("f", "missing key f"))?;
    let coeffs = coeffs
        .iter()
        .map(|c| parse_coeff(&field, c, "f"))
        .collect::<Result<Vec<_>, _>>()?;
    let f = KPoly::new(&field, coeffs).map_err(at("f"))?;
    if f.degree() < 2 {
        return Err(CliError::input("f", "deg f must be at least 2"));
    }
    let b = parse_coeff(&field, cfg.b.as_ref().ok_or_else(|| CliError::input("b", "missing key b"))?, "b")?;
    if b.is_zero() {
        return Err(CliError::input("b", Error::ZeroB.to_string()));
    }
    let tol = cfg.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::input("tol", format!("tol must lie in (0, 1), got {tol}")));
    }
    if cfg.workers == Some(0) {
        return Err(CliError::input("workers", "workers must be at least 1"));
    }
    Ok(Setup { field, s, f, b, tol, workers: cfg.workers })
}

fn h_hat_of(st: &Setup) -> Result<f64, CliError> {
    h_hat(&st.f, &st.b, &st.s, st.tol).map(|c| c.value).map_err(|e| {
        let key = match &e {
            Error::NotSInteger(what) if what.starts_with("b ") => "b",
            Error::ZeroB => "b",
            _ => "f",
        };
        CliError::input(key, e.to_string())
    })
}

fn require_m(cfg: &RunConfig) -> Result<u32, CliError> {
    let m = cfg.m.ok_or_else(|| CliError::input("m", "missing key m"))?;
    if m < 2 {
        return Err(CliError::input("m", Error::InvalidExponent(m as i64).to_string()));
    }
    Ok(m)
}

fn bound_inputs(st: &Setup, m: u32, exact: Option<ExactInvariants>) -> Result<BoundInputs, CliError> {
    let f = st.f.to_rational();
    if st.field.is_rational() {
        let f = f.expect("rational field");
        if !crate::poly::is_squarefree(&f) {
            return Err(CliError::input("f", Error::NotSquarefree.to_string()));
        }
    }
    Ok(BoundInputs {
        n: st.f.degree() as u32,
        m,
        d: st.field.degree() as u32,
        s: st.s.s() as u32,
        t: st.s.t() as u32,
        abs_disc: st.field.discriminant().magnitude().clone().into(),
        q_s: st.s.q_s(),
        p_s: st.s.p_s(),
        h_hat: h_hat_of(st)?,
        exact,
    })
}

fn problem(st: &Setup) -> Result<Problem, CliError> {
    if !st.field.is_rational() {
        return Err(CliError::input("field", Error::NonRationalField.to_string()));
    }
    let f = st.f.to_rational().expect("rational field");
    let b = st.b.as_rational().expect("rational field");
    Problem::new(f, b, st.s.clone()).map_err(|e| {
        let key = match &e {
            Error::ZeroB => "b",
            Error::NotSInteger(w) if w.starts_with("b ") => "b",
            _ => "f",
        };
        CliError::input(key, e.to_string())
    })
}

fn height_cap(cfg: &RunConfig) -> Result<f64, CliError> {
    let cap = cfg
        .height_cap
        .as_ref()
        .ok_or_else(|| CliError::input("height_cap", "missing key height_cap"))?
        .resolve()
        .map_err(|e| CliError::input("height_cap", e))?;
    if !(cap >= 0.0 && cap.is_finite()) {
        return Err(CliError::input("height_cap", format!("height_cap must be >= 0, got {cap}")));
    }
    Ok(cap)
}

fn report(cfg: &RunConfig, mode: Mode) -> serde_json::Map<String, Value> {
    let mut r = serde_json::Map::new();
    r.insert("schema_version".into(), json!(SCHEMA_VERSION));
    r.insert("mode".into(), json!(mode.name()));
    r.insert("inputs".into(), serde_json::to_value(cfg).expect("serializable config"));
    r.insert("bound".into(), Value::Null);
    r.insert("solutions".into(), json!([]));
    r.insert("max_exponent".into(), Value::Null);
    r.insert("all_pass".into(), Value::Null);
    r
}

fn field_summary(k: &NumberField, s: &SSpec) -> Value {
    json!({
        "degree": k.degree(),
        "discriminant": k.discriminant().to_string(),
        "r1": k.r1(),
        "r2": k.r2(),
        "s": s.s(),
        "q_s": s.q_s().to_string(),
        "p_s": s.p_s().to_string(),
        "primes": s.primes(),
    })
}

/// Executes a validated config.
pub fn run(cfg: &RunConfig) -> Result<(i32, Value), CliError> {
    let mode = cfg.mode.ok_or_else(|| CliError::input("mode", "missing key mode"))?;
    let mut r = report(cfg, mode);
    if mode == Mode::Selftest {
        let st = crate::selftest::run_selftest();
        let pass = st.failed == 0;
        r.insert("all_pass".into(), json!(pass));
        r.insert("selftest".into(), serde_json::to_value(&st).expect("serializable"));
        return Ok((if pass { EXIT_OK } else { EXIT_VERIFY_FAILED }, Value::Object(r)));
    }
    let st = setup(cfg)?;
    r.insert("field".into(), field_summary(&st.field, &st.s));
    let hyp = |e: Error| match e {
        Error::Hypothesis(_) => CliError::input("mode", e.to_string()),
        other => CliError::input("config", other.to_string()),
    };
    match mode {
        Mode::BoundSuper | Mode::BoundHyper | Mode::BoundSt => {
            let m = match mode {
                Mode::BoundSuper => require_m(cfg)?,
                Mode::BoundHyper => 2,
                _ => cfg.m.unwrap_or(0),
            };
            let inputs = bound_inputs(&st, m, cfg.exact)?;
            let bound: LogBound = match mode {
                Mode::BoundSuper => theorem_super_bound(&inputs),
                Mode::BoundHyper => theorem_hyper_bound(&inputs),
                _ => theorem_st_bound(&inputs),
            }
            .map_err(hyp)?;
            r.insert("bound".into(), serde_json::to_value(&bound).expect("serializable"));
            Ok((EXIT_OK, Value::Object(r)))
        }
        Mode::Solve => {
            let m = require_m(cfg)?;
            let cap = height_cap(cfg)?;
            let p = problem(&st)?;
            let sols = solver::solve_superelliptic(&p, m, cap, st.workers).map_err(at("height_cap"))?;
            r.insert("h_hat".into(), json!(p.h_hat().map_err(at("f"))?));
            r.insert("solutions".into(), serde_json::to_value(&sols).expect("serializable"));
            Ok((EXIT_OK, Value::Object(r)))
        }
        Mode::Verify => {
            let cap = height_cap(cfg)?;
            let p = problem(&st)?;
            let vmode = match cfg.m {
                Some(m) if m < 2 => {
                    return Err(CliError::input("m", Error::InvalidExponent(m as i64).to_string()))
                }
                Some(m) => VerifyMode::Exponent(m),
                None => {
                    let cap = cfg.m_cap.unwrap_or(DEFAULT_M_CAP);
                    if cap < 3 {
                        return Err(CliError::input("m_cap", format!("m_cap must be at least 3, got {cap}")));
                    }
                    VerifyMode::MaxExponent(cap)
                }
            };
            let v = solver::verify_bounds(&p, vmode, cap, st.workers).map_err(at("height_cap"))?;
            r.insert("bound".into(), serde_json::to_value(&v.theorem_bound).expect("serializable"));
            r.insert("solutions".into(), serde_json::to_value(&v.solutions).expect("serializable"));
            r.insert("max_exponent".into(), serde_json::to_value(&v.max_exponent).expect("serializable"));
            r.insert("all_pass".into(), json!(v.all_pass));
            r.insert("verification".into(), serde_json::to_value(&v).expect("serializable"));
            let code = if v.all_pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok((code, Value::Object(r)))
        }
        Mode::Selftest => unreachable!(),
    }
}
