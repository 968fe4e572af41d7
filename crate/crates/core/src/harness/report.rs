use num_complex::Complex64;

use super::{IdentityReport, SuiteResult};
use crate::error::{Error, Result};

/// `x` with `digits` significant digits in scientific notation.
pub fn format_number(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
}

fn format_complex(z: Complex64, digits: usize) -> String {
    if z.im == 0.0 {
        return format_number(z.re, digits);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", format_number(z.re, digits), format_number(z.im.abs(), digits))
}

const DIGITS: usize = 17;

fn io_error(e: impl std::fmt::Display) -> Error {
    Error::Domain { op: "report", detail: e.to_string() }
}

/// One CSV row per report: id, params, lhs, rhs, abs_err, rel_err, status, ms.
pub fn reports_to_csv(reports: &[IdentityReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "params", "lhs", "rhs", "abs_err", "rel_err", "status", "ms"])
        .map_err(io_error)?;
    let opt_c = |z: Option<Complex64>| z.map(|z| format_complex(z, DIGITS)).unwrap_or_default();
    let opt_r = |x: Option<f64>| x.map(|x| format_number(x, 3)).unwrap_or_default();
    for r in reports {
        w.write_record([
            r.id.clone(),
            r.params.clone(),
            opt_c(r.lhs_value),
            opt_c(r.rhs_value),
            opt_r(r.abs_err),
            opt_r(r.rel_err),
            r.status.to_string(),
            format!("{:.3}", r.elapsed_ms),
        ])
        .map_err(io_error)?;
    }
    let bytes = w.into_inner().map_err(io_error)?;
    String::from_utf8(bytes).map_err(io_error)
}

pub fn suite_to_json(suite: &SuiteResult) -> Result<String> {
    serde_json::to_string_pretty(suite).map_err(io_error)
}

pub fn suite_from_json(text: &str) -> Result<SuiteResult> {
    serde_json::from_str(text).map_err(io_error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_suite, Status};
    use crate::PrecisionContext;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.5, 3), "5.00e-1");
        assert_eq!(format_number(0.0, 17), "0");
        assert_eq!(format_complex(Complex64::new(1.0, -2.0), 2), "1.0e0-2.0e0i");
        let x = std::f64::consts::PI;
        assert_eq!(format_number(x, 17).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn json_and_csv_round_trip() {
        let ctx = PrecisionContext::default();
        let suite = run_suite("CHEN", &ctx, Some(1)).unwrap();
        assert_eq!(suite.reports.len(), 1);
        assert_eq!(suite.reports[0].status, Status::Pass);
        let back = suite_from_json(&suite_to_json(&suite).unwrap()).unwrap();
        assert_eq!(back, suite);
        let csv = reports_to_csv(&suite.reports).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("CHEN,,"));
        assert!(lines[1].contains(",pass,"));
    }
}
