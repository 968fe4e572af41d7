//! A registry of closed-form identities, each evaluated as two independently
//! computed sides, and a parallel runner that reports on them.

mod catalog;
mod report;

use std::fmt;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

pub use catalog::{catalog, find, test_polynomial};
pub use report::{format_number, reports_to_csv, suite_from_json, suite_to_json};

/// Tolerance of the default context; identity tolerances scale with
/// `ctx.tol_abs / REFERENCE_TOL`.
pub const REFERENCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
    Complex(Complex64),
    Label(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(n) => write!(f, "{n}"),
            ParamValue::Real(x) => write!(f, "{x}"),
            ParamValue::Complex(z) => {
                if z.im < 0.0 {
                    write!(f, "{}-{}i", z.re, -z.im)
                } else {
                    write!(f, "{}+{}i", z.re, z.im)
                }
            }
            ParamValue::Label(s) => write!(f, "{s}"),
        }
    }
}

impl ParamValue {
    pub fn parse(text: &str) -> ParamValue {
        if let Ok(n) = text.parse::<i64>() {
            return ParamValue::Int(n);
        }
        if let Ok(x) = text.parse::<f64>() {
            return ParamValue::Real(x);
        }
        if let Some(body) = text.strip_suffix('i') {
            // split at the last sign that is not an exponent sign
            let bytes = body.as_bytes();
            for idx in (1..bytes.len()).rev() {
                let ch = bytes[idx];
                if (ch == b'+' || ch == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                    let re = body[..idx].parse::<f64>();
                    let im = body[idx..].trim_start_matches('+').parse::<f64>();
                    if let (Ok(re), Ok(im)) = (re, im) {
                        return ParamValue::Complex(Complex64::new(re, im));
                    }
                }
            }
        }
        ParamValue::Label(text.to_string())
    }
}

/// Ordered named parameters, written `n=3,z=1+1i`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params(Vec<(String, ParamValue)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, name: &str, value: ParamValue) -> Self {
        self.0.push((name.to_string(), value));
        self
    }

    pub fn int(self, name: &str, v: i64) -> Self {
        self.with(name, ParamValue::Int(v))
    }

    pub fn real(self, name: &str, v: f64) -> Self {
        self.with(name, ParamValue::Real(v))
    }

    pub fn complex(self, name: &str, v: Complex64) -> Self {
        self.with(name, ParamValue::Complex(v))
    }

    pub fn label(self, name: &str, v: &str) -> Self {
        self.with(name, ParamValue::Label(v.to_string()))
    }

    /// Parses `a=1,b=0.5,z=2-1i,P=B_3`. An empty string gives no parameters.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Params::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let Some((k, v)) = part.split_once('=') else {
                return Err(Error::domain("params", format!("`{part}` is not name=value")));
            };
            out = out.with(k.trim(), ParamValue::parse(v.trim()));
        }
        Ok(out)
    }

    fn lookup(&self, name: &str) -> Result<&ParamValue> {
        self.0
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v)
            .ok_or_else(|| Error::domain("params", format!("missing parameter `{name}`")))
    }

    pub fn get_int(&self, name: &str) -> Result<i64> {
        match self.lookup(name)? {
            ParamValue::Int(n) => Ok(*n),
            other => Err(Error::domain("params", format!("`{name}={other}` is not an integer"))),
        }
    }

    pub fn get_real(&self, name: &str) -> Result<f64> {
        match self.lookup(name)? {
            ParamValue::Int(n) => Ok(*n as f64),
            ParamValue::Real(x) => Ok(*x),
            other => Err(Error::domain("params", format!("`{name}={other}` is not real"))),
        }
    }

    pub fn get_complex(&self, name: &str) -> Result<Complex64> {
        match self.lookup(name)? {
            ParamValue::Int(n) => Ok(Complex64::new(*n as f64, 0.0)),
            ParamValue::Real(x) => Ok(Complex64::new(*x, 0.0)),
            ParamValue::Complex(z) => Ok(*z),
            other => Err(Error::domain("params", format!("`{name}={other}` is not a number"))),
        }
    }

    pub fn get_label(&self, name: &str) -> Result<&str> {
        match self.lookup(name)? {
            ParamValue::Label(s) => Ok(s),
            other => Err(Error::domain("params", format!("`{name}={other}` is not a label"))),
        }
    }

    /// A label parameter, or `default` when absent.
    pub fn label_or<'a>(&'a self, name: &str, default: &'a str) -> Result<&'a str> {
        if self.0.iter().any(|(k, _)| k == name) {
            self.get_label(name)
        } else {
            Ok(default)
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// The two sides of one identity instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl Comparison {
    pub fn real(lhs: f64, rhs: f64) -> Self {
        Comparison {
            lhs: Complex64::new(lhs, 0.0),
            rhs: Complex64::new(rhs, 0.0),
        }
    }
}

type Evaluator = fn(&Params, &PrecisionContext) -> Result<Comparison>;

/// A registered identity family.
pub struct IdentitySpec {
    pub id: &'static str,
    /// The identity, written out.
    pub source: &'static str,
    pub parameter_domain: &'static str,
    pub default_tol: f64,
    /// Which routes compute each side.
    pub method_notes: &'static str,
    grid: fn() -> Vec<Params>,
    eval: Evaluator,
}

impl IdentitySpec {
    pub fn default_grid(&self) -> Vec<Params> {
        (self.grid)()
    }

    pub fn evaluate(&self, params: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
        (self.eval)(params, ctx)
    }

    /// Pass threshold under `ctx`.
    pub fn tolerance(&self, ctx: &PrecisionContext) -> f64 {
        self.default_tol * (ctx.tol_abs / REFERENCE_TOL)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Outcome of one identity instance. Sides are absent when evaluation failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub source: String,
    pub params: String,
    pub lhs_value: Option<Complex64>,
    pub rhs_value: Option<Complex64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub tol: f64,
    pub status: Status,
    pub elapsed_ms: f64,
    pub method_notes: String,
}

impl IdentityReport {
    /// Equality ignoring the timing field.
    pub fn same_outcome(&self, other: &IdentityReport) -> bool {
        let mut a = self.clone();
        a.elapsed_ms = other.elapsed_ms;
        &a == other
    }
}

fn build_report(
    spec: &IdentitySpec,
    params: &Params,
    outcome: Result<Comparison>,
    tol: f64,
    elapsed_ms: f64,
) -> IdentityReport {
    let mut report = IdentityReport {
        id: spec.id.to_string(),
        source: spec.source.to_string(),
        params: params.to_string(),
        lhs_value: None,
        rhs_value: None,
        abs_err: None,
        rel_err: None,
        tol,
        status: Status::Fail,
        elapsed_ms,
        method_notes: spec.method_notes.to_string(),
    };
    match outcome {
        Ok(cmp) => {
            let abs_err = (cmp.lhs - cmp.rhs).norm();
            let scale = cmp.lhs.norm().max(cmp.rhs.norm());
            let rel_err = if scale > 0.0 { abs_err / scale } else { 0.0 };
            report.lhs_value = Some(cmp.lhs);
            report.rhs_value = Some(cmp.rhs);
            report.abs_err = Some(abs_err);
            report.rel_err = Some(rel_err);
            report.status = if abs_err <= tol || rel_err <= tol {
                Status::Pass
            } else {
                Status::Fail
            };
        }
        Err(e) => {
            report.method_notes = format!("{}; evaluation failed: {e}", spec.method_notes);
        }
    }
    report
}

/// Evaluates one identity instance.
pub fn run_identity(id: &str, params: &Params, ctx: &PrecisionContext) -> Result<IdentityReport> {
    ctx.validate()?;
    let spec = find(id)?;
    let start = Instant::now();
    let cmp = spec.evaluate(params, ctx)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    Ok(build_report(spec, params, Ok(cmp), spec.tolerance(ctx), elapsed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub families: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub reports: Vec<IdentityReport>,
    pub summary: SuiteSummary,
}

impl SuiteResult {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Runs every family whose id matches the glob `filter` over its default
/// grid. `jobs` caps the worker threads; `None` uses the global pool.
pub fn run_suite(filter: &str, ctx: &PrecisionContext, jobs: Option<usize>) -> Result<SuiteResult> {
    ctx.validate()?;
    let pattern = if filter.is_empty() { "*" } else { filter };
    let pattern = glob::Pattern::new(pattern)
        .map_err(|e| Error::domain("run_suite", format!("bad filter `{filter}`: {e}")))?;
    let specs: Vec<&IdentitySpec> = catalog().iter().filter(|s| pattern.matches(s.id)).collect();
    let work: Vec<(&IdentitySpec, Params)> = specs
        .iter()
        .flat_map(|s| s.default_grid().into_iter().map(move |p| (*s, p)))
        .collect();

    let run = || -> Vec<IdentityReport> {
        work.par_iter()
            .map(|(spec, params)| {
                let start = Instant::now();
                let outcome = spec.evaluate(params, ctx);
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                build_report(spec, params, outcome, spec.tolerance(ctx), elapsed)
            })
            .collect()
    };
    let reports = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::domain("run_suite", e.to_string()))?
            .install(run),
        None => run(),
    };
    let count = |st: Status| reports.iter().filter(|r| r.status == st).count();
    let summary = SuiteSummary {
        families: specs.len(),
        total: reports.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
    };
    Ok(SuiteResult { reports, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_round_trip_through_text() {
        let p = Params::new()
            .int("n", 3)
            .real("r", 0.05)
            .complex("z", Complex64::new(1.0, -2.5))
            .label("P", "B_5");
        let text = p.to_string();
        assert_eq!(text, "n=3,r=0.05,z=1-2.5i,P=B_5");
        assert_eq!(Params::parse(&text).unwrap(), p);
        let q = Params::parse("z=1e-3+2e+1i").unwrap();
        assert_eq!(q.get_complex("z").unwrap(), Complex64::new(1e-3, 20.0));
        assert!(Params::parse("oops").is_err());
        assert!(p.get_int("missing").is_err());
    }

    #[test]
    fn unknown_identity() {
        let ctx = PrecisionContext::default();
        assert!(matches!(run_identity("NOPE", &Params::new(), &ctx), Err(Error::NotFound(_))));
    }

    #[test]
    fn lemma_instance() {
        let ctx = PrecisionContext::default();
        let r = run_identity("LEMMA1", &Params::new().int("n", 3), &ctx).unwrap();
        assert_eq!(r.status, Status::Pass);
        let rhs = r.rhs_value.unwrap().re;
        assert!((rhs + 23.0 / 45.0).abs() < 1e-15);
        assert!(run_identity("LEMMA1", &Params::new().int("n", 0), &ctx).is_err());
    }

    #[test]
    fn ids_are_unique_and_numerous() {
        let mut ids: Vec<_> = catalog().iter().map(|s| s.id).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
        assert!(n >= 30);
    }
}
