use std::fmt::Write as _;

use clap::ValueEnum;
use hzeta::harness::{format_number, reports_to_csv, suite_to_json, SuiteResult};
use num_complex::Complex64;

use crate::eval::EvalOutput;
use crate::table::{Cell, Table};
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

const HUMAN_DIGITS: usize = 12;
const MACHINE_DIGITS: usize = 17;

fn human(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        return "0".into();
    }
    if (1e-4..1e12).contains(&a) {
        let decimals = HUMAN_DIGITS as i32 - 1 - a.log10().floor() as i32;
        format!("{x:.*}", decimals.max(0) as usize)
    } else {
        format_number(x, HUMAN_DIGITS)
    }
}

fn complex_text(z: Complex64, fmt: fn(f64) -> String) -> String {
    if z.im == 0.0 {
        fmt(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", fmt(z.re), fmt(-z.im))
    } else {
        format!("{}+{}i", fmt(z.re), fmt(z.im))
    }
}

fn machine(x: f64) -> String {
    format_number(x, MACHINE_DIGITS)
}

fn csv_string(rows: Vec<Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Usage(e.to_string()))
}

fn json_string<T: serde::Serialize>(v: &T) -> CliResult<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Usage(e.to_string()))
}

pub fn eval_output(v: &EvalOutput, format: Format) -> CliResult<String> {
    match format {
        Format::Text => Ok(format!(
            "{}({}) = {}  (error <= {:.1e}, method {})\n",
            v.function,
            v.args.join(", "),
            complex_text(v.value, human),
            v.error,
            v.method
        )),
        Format::Json => json_string(v),
        Format::Csv => csv_string(vec![
            vec!["function".into(), "args".into(), "re".into(), "im".into(), "error".into(), "method".into()],
            vec![
                v.function.into(),
                v.args.join(" "),
                machine(v.value.re),
                machine(v.value.im),
                machine(v.error),
                v.method.into(),
            ],
        ]),
    }
}

pub fn summary_line(suite: &SuiteResult) -> String {
    let s = &suite.summary;
    format!(
        "families: {}, instances: {}, passed: {}, failures: {}, skipped: {}",
        s.families, s.total, s.passed, s.failed, s.skipped
    )
}

pub fn suite_output(suite: &SuiteResult, format: Format) -> CliResult<String> {
    match format {
        Format::Json => Ok(suite_to_json(suite)? + "\n"),
        Format::Csv => Ok(reports_to_csv(&suite.reports)?),
        Format::Text => {
            let mut out = String::new();
            for r in &suite.reports {
                let err = r.abs_err.map_or("-".to_string(), |e| format!("{e:.2e}"));
                let _ = write!(out, "{:<6} {:<16} {:<24} abs_err {:<9} tol {:.0e}", r.status, r.id, r.params, err, r.tol);
                if r.lhs_value.is_none() {
                    let _ = write!(out, "  {}", r.method_notes);
                }
                out.push('\n');
            }
            out.push_str(&summary_line(suite));
            out.push('\n');
            Ok(out)
        }
    }
}

fn cell_text(c: &Cell, fmt: fn(f64) -> String) -> String {
    match c {
        Cell::Int(n) => n.to_string(),
        Cell::Num(x) => fmt(*x),
        Cell::Text(s) => s.clone(),
        Cell::Empty => "-".into(),
    }
}

pub fn table_output(t: &Table, format: Format) -> CliResult<String> {
    match format {
        Format::Json => json_string(t),
        Format::Csv => {
            let mut rows = vec![t.columns.iter().map(|c| c.to_string()).collect()];
            rows.extend(t.rows.iter().map(|r| {
                r.iter()
                    .map(|c| match c {
                        Cell::Empty => String::new(),
                        c => cell_text(c, machine),
                    })
                    .collect()
            }));
            csv_string(rows)
        }
        Format::Text => {
            let body: Vec<Vec<String>> =
                t.rows.iter().map(|r| r.iter().map(|c| cell_text(c, human)).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|j| body.iter().map(|r| r[j].chars().count()).chain([t.columns[j].len()]).max().unwrap_or(0))
                .collect();
            let mut out = String::new();
            let line = |cells: Vec<&str>, out: &mut String| {
                let parts: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}", w = *w)).collect();
                out.push_str(parts.join("  ").trim_end());
                out.push('\n');
            };
            line(t.columns.to_vec(), &mut out);
            for r in &body {
                line(r.iter().map(String::as_str).collect(), &mut out);
            }
            Ok(out)
        }
    }
}
