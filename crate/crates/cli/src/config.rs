//! Experiment documents: raw JSON shape, validation into a typed [`Experiment`].

use std::path::PathBuf;

use ddl_core::catalog;
use ddl_core::curve::CurveDocument;
use ddl_core::exactalg::{format_rational, int, parse_rational};
use ddl_core::flow::{power_grid, uniform_grid, SiegelSpec, DEFAULT_EPSILONS};
use ddl_core::{MatrixCurve, Poly, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SEED_VAR: &str = "DDL_SEED";
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckGeneric,
    ReduceStandard,
    CheckPencil,
    DirichletScan,
    Siegel,
    Escape,
    Vwa,
    RepVerify,
    Cgood,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckGeneric => "check-generic",
            Command::ReduceStandard => "reduce-standard",
            Command::CheckPencil => "check-pencil",
            Command::DirichletScan => "dirichlet-scan",
            Command::Siegel => "siegel",
            Command::Escape => "escape",
            Command::Vwa => "vwa",
            Command::RepVerify => "rep-verify",
            Command::Cgood => "cgood",
        }
    }
}

/// A rational written as `"p/q"`, `"-3"`, or a JSON integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    pub fn parse(&self) -> Result<Rational, String> {
        match self {
            RationalText::Int(k) => Ok(int(*k)),
            RationalText::Text(t) => parse_rational(t).map_err(|e| e.to_string()),
        }
    }
}

impl From<&str> for RationalText {
    fn from(s: &str) -> Self {
        RationalText::Text(s.to_string())
    }
}

/// `"catalog:NAME"`, a path to a curve document, or the document inline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveSpec {
    Reference(String),
    Inline(CurveDocument),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SGridSpec {
    pub count: usize,
    /// Endpoints; the curve interval when absent.
    pub a: Option<RationalText>,
    pub b: Option<RationalText>,
}

/// `N = base^j` for `lo <= j <= hi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NGridSpec {
    pub base: RationalText,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[RationalText; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_grid: Option<SGridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_grid: Option<NGridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<RationalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<RationalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r1: Option<RationalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r2: Option<RationalText>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<RationalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<RationalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilons: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: Outputs,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig {
            command,
            curve: None,
            interval: None,
            s_grid: None,
            n_grid: None,
            mu: None,
            at: None,
            max_dim: None,
            r1: None,
            r2: None,
            big_n: None,
            samples: None,
            delta: None,
            p_bound: None,
            dims: None,
            trials: None,
            degrees: None,
            function: None,
            epsilons: None,
            seed: None,
            output: Outputs::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Task {
    CheckGeneric,
    ReduceStandard { at: Rational },
    CheckPencil { max_dim: usize },
    DirichletScan { mu: Rational, s_grid: Vec<Rational>, n_grid: Vec<Rational> },
    Siegel(SiegelSpec),
    Escape { at: Rational, n_grid: Vec<Rational> },
    Vwa { at: Rational, delta: Rational, p_bound: u64 },
    RepVerify { dims: (usize, usize), trials: usize, seed: u64, degrees: Vec<usize> },
    Cgood { function: Poly, a: Rational, b: Rational, samples: usize, epsilons: Vec<f64> },
}

/// A validated configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub curve: Option<MatrixCurve>,
    pub task: Task,
}

pub fn parse_config(document: &str) -> Result<Experiment, CliError> {
    let config: ExperimentConfig = serde_json::from_str(document).map_err(|e| CliError::Parse(e.to_string()))?;
    validate(config)
}

/// The seed from the config, else `DDL_SEED`, else the default.
pub fn resolve_seed(explicit: Option<u64>) -> Result<u64, String> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(text) => text.trim().parse().map_err(|_| format!("{SEED_VAR} must be an unsigned integer, got {text:?}")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

pub fn load_curve(spec: &CurveSpec) -> Result<MatrixCurve, String> {
    match spec {
        CurveSpec::Inline(doc) => doc.to_curve().map_err(|e| e.to_string()),
        CurveSpec::Reference(r) => match r.strip_prefix("catalog:") {
            Some(name) => catalog::curve(name).map_err(|e| e.to_string()),
            None => {
                let text = std::fs::read_to_string(r).map_err(|e| format!("cannot read curve file {r}: {e}"))?;
                MatrixCurve::from_json(&text).map_err(|e| e.to_string())
            }
        },
    }
}

/// Collects every problem instead of stopping at the first.
struct Checker {
    errors: Vec<String>,
}

impl Checker {
    fn rational(&mut self, field: &str, value: &Option<RationalText>) -> Option<Rational> {
        let v = value.as_ref()?;
        match v.parse() {
            Ok(r) => Some(r),
            Err(e) => {
                self.errors.push(format!("{field}: {e}"));
                None
            }
        }
    }

    fn required(&mut self, field: &str, value: &Option<RationalText>) -> Option<Rational> {
        if value.is_none() {
            self.errors.push(format!("{field} is required"));
        }
        self.rational(field, value)
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.errors.push(msg.into());
    }
}

fn default_n_grid(lo: i64, hi: i64) -> NGridSpec {
    NGridSpec { base: RationalText::Int(2), lo, hi }
}

pub fn validate(config: ExperimentConfig) -> Result<Experiment, CliError> {
    let mut ck = Checker { errors: Vec::new() };
    let interval = config.interval.as_ref().and_then(|[a, b]| {
        let a = ck.rational("interval[0]", &Some(a.clone()));
        let b = ck.rational("interval[1]", &Some(b.clone()));
        match (a, b) {
            (Some(a), Some(b)) if a < b => Some((a, b)),
            (Some(a), Some(b)) => {
                ck.fail(format!("interval: a < b required, got [{}, {}]", format_rational(&a), format_rational(&b)));
                None
            }
            _ => None,
        }
    });
    let needs_curve = !matches!(config.command, Command::RepVerify | Command::Cgood);
    let curve = match &config.curve {
        Some(spec) => match load_curve(spec) {
            Ok(c) => match &interval {
                Some((a, b)) => c.with_interval(a.clone(), b.clone()).map_err(|e| ck.fail(e.to_string())).ok(),
                None => Some(c),
            },
            Err(e) => {
                ck.fail(format!("curve: {e}"));
                None
            }
        },
        None => {
            if needs_curve {
                ck.fail(format!("curve is required for {}", config.command.name()));
            }
            None
        }
    };
    let n_grid = |ck: &mut Checker, fallback: NGridSpec| -> Option<Vec<Rational>> {
        let spec = config.n_grid.clone().unwrap_or(fallback);
        let base = ck.rational("n_grid.base", &Some(spec.base.clone()))?;
        if base <= Rational::one() {
            ck.fail("n_grid.base must exceed 1");
            return None;
        }
        if spec.lo > spec.hi || spec.lo < 0 {
            ck.fail(format!("n_grid: need 0 <= lo <= hi, got {}..{}", spec.lo, spec.hi));
            return None;
        }
        Some(power_grid(&base, spec.lo, spec.hi))
    };
    let seed = resolve_seed(config.seed).map_err(|e| ck.fail(e)).unwrap_or(DEFAULT_SEED);

    let task = match config.command {
        Command::CheckGeneric => Some(Task::CheckGeneric),
        Command::ReduceStandard => ck.required("at", &config.at).map(|at| Task::ReduceStandard { at }),
        Command::CheckPencil => {
            let max_dim = config.max_dim.or(curve.as_ref().map(|c| c.m() + c.n())).unwrap_or(0);
            if config.max_dim == Some(0) {
                ck.fail("max_dim must be positive");
            }
            Some(Task::CheckPencil { max_dim })
        }
        Command::DirichletScan => {
            let mu = ck.required("mu", &config.mu);
            if let Some(mu) = &mu {
                if !mu.is_positive() || *mu >= Rational::one() {
                    ck.fail(format!("mu must be in (0, 1), got {}", format_rational(mu)));
                }
            }
            let s_spec = config.s_grid.clone().unwrap_or(SGridSpec { count: 64, a: None, b: None });
            if s_spec.count == 0 {
                ck.fail("s_grid.count must be positive");
            }
            let ends = curve.as_ref().map(|c| (c.interval().0.clone(), c.interval().1.clone()));
            let a = ck.rational("s_grid.a", &s_spec.a).or(ends.as_ref().map(|e| e.0.clone()));
            let b = ck.rational("s_grid.b", &s_spec.b).or(ends.as_ref().map(|e| e.1.clone()));
            let s_grid = match (a, b) {
                (Some(a), Some(b)) if a <= b => Some(uniform_grid(&a, &b, s_spec.count)),
                (Some(_), Some(_)) => {
                    ck.fail("s_grid: a <= b required");
                    None
                }
                _ => None,
            };
            let n_grid = n_grid(&mut ck, default_n_grid(1, 20));
            match (mu, s_grid, n_grid) {
                (Some(mu), Some(s_grid), Some(n_grid)) => Some(Task::DirichletScan { mu, s_grid, n_grid }),
                _ => None,
            }
        }
        Command::Siegel => {
            let r1 = ck.required("r1", &config.r1);
            let r2 = ck.required("r2", &config.r2);
            let big_n = ck.required("N", &config.big_n);
            if let (Some(r1), Some(r2)) = (&r1, &r2) {
                if !r1.is_positive() || r1 >= r2 {
                    ck.fail(format!("annulus needs 0 < r1 < r2, got [{}, {}]", format_rational(r1), format_rational(r2)));
                }
            }
            if big_n.as_ref().is_some_and(|n| !n.is_positive()) {
                ck.fail("N must be positive");
            }
            let samples = config.samples.unwrap_or(200);
            if samples == 0 {
                ck.fail("samples must be positive");
            }
            match (r1, r2, big_n) {
                (Some(r1), Some(r2), Some(big_n)) => Some(Task::Siegel(SiegelSpec { r1, r2, big_n, samples, seed })),
                _ => None,
            }
        }
        Command::Escape => {
            let at = ck.required("at", &config.at);
            let grid = n_grid(&mut ck, default_n_grid(4, 16));
            if grid.as_ref().is_some_and(|g| g.len() < 3) {
                ck.fail("escape needs at least 3 values of N");
            }
            match (at, grid) {
                (Some(at), Some(n_grid)) => Some(Task::Escape { at, n_grid }),
                _ => None,
            }
        }
        Command::Vwa => {
            let at = ck.required("at", &config.at);
            let delta = ck.required("delta", &config.delta);
            if delta.as_ref().is_some_and(|d| d.is_negative()) {
                ck.fail("delta must be nonnegative");
            }
            let p_bound = config.p_bound.unwrap_or(100);
            if p_bound == 0 {
                ck.fail("p_bound must be positive");
            }
            match (at, delta) {
                (Some(at), Some(delta)) => Some(Task::Vwa { at, delta, p_bound }),
                _ => None,
            }
        }
        Command::RepVerify => {
            let [lo, hi] = config.dims.unwrap_or([1, 8]);
            if lo == 0 || lo > hi {
                ck.fail(format!("dims: need 1 <= lo <= hi, got {lo}..{hi}"));
            }
            let trials = config.trials.unwrap_or(1000);
            let degrees = config.degrees.clone().unwrap_or_else(|| vec![1]);
            if degrees.is_empty() || degrees.contains(&0) {
                ck.fail("degrees must be a nonempty list of positive integers");
            }
            Some(Task::RepVerify { dims: (lo, hi), trials, seed, degrees })
        }
        Command::Cgood => {
            let function = match &config.function {
                Some(text) => Poly::parse(text).map_err(|e| ck.fail(format!("function: {e}"))).ok(),
                None => {
                    ck.fail("function is required for cgood");
                    None
                }
            };
            let (a, b) = interval
                .clone()
                .or(curve.as_ref().map(|c| (c.interval().0.clone(), c.interval().1.clone())))
                .unwrap_or((Rational::zero(), Rational::one()));
            let samples = config.samples.unwrap_or(10_000);
            if samples < 100 {
                ck.fail(format!("samples must be at least 100, got {samples}"));
            }
            let epsilons = config.epsilons.clone().unwrap_or_else(|| DEFAULT_EPSILONS.to_vec());
            if epsilons.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
                ck.fail("epsilons must be positive");
            }
            function.map(|function| Task::Cgood { function, a, b, samples, epsilons })
        }
    };
    match task {
        Some(task) if ck.errors.is_empty() => Ok(Experiment { config, curve, task }),
        _ => Err(CliError::Validation(ck.errors)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let ok = r#"{"command":"check-generic","curve":{"m":1,"n":2,"interval":[0,1],"entries":[["s","s^2"]]}}"#;
        assert!(parse_config(ok).is_ok());
        let bad_mu = r#"{"command":"dirichlet-scan","curve":"catalog:parabola","mu":"3/2"}"#;
        assert!(matches!(parse_config(bad_mu), Err(CliError::Validation(e)) if e.iter().any(|m| m.contains("mu"))));
        let bad_interval = r#"{"command":"check-generic","curve":"catalog:parabola","interval":[1,1]}"#;
        assert!(matches!(parse_config(bad_interval), Err(CliError::Validation(e)) if e.iter().any(|m| m.contains("a < b"))));
    }

    #[test]
    fn errors_are_aggregated() {
        let doc = r#"{"command":"siegel","curve":"catalog:nope","r1":"2","r2":"1"}"#;
        let Err(CliError::Validation(errors)) = parse_config(doc) else { panic!() };
        assert_eq!(errors.len(), 3, "{errors:?}");
    }

    #[test]
    fn unknown_fields_are_parse_errors() {
        assert!(matches!(parse_config(r#"{"command":"vwa","colour":1}"#), Err(CliError::Parse(_))));
        assert!(matches!(parse_config(r#"{"command":"fly"}"#), Err(CliError::Parse(_))));
    }
}
