use clap::ValueEnum;
use hzeta::continuation::{alpha, beta, pole_info, recursion_residual, zeta_h};
use hzeta::h_series::{zeta_h_even_closed_form, zeta_h_series};
use hzeta::quadrature::T;
use hzeta::PrecisionContext;
use num_complex::Complex64;
use serde::Serialize;

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    #[value(name = "zeta_h_even")]
    ZetaHEven,
    #[value(name = "alpha_beta")]
    AlphaBeta,
    #[value(name = "residues")]
    Residues,
    #[value(name = "T_curve")]
    TCurve,
    #[value(name = "critical_line")]
    CriticalLine,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub kind: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// `a..b` into its two ends.
fn parse_range(text: &str) -> CliResult<(f64, f64)> {
    let bad = || CliError::Usage(format!("range `{text}` must look like a..b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(a <= b) {
        return Err(CliError::Usage(format!("range `{text}` is empty")));
    }
    Ok((a, b))
}

fn int_range(range: Option<&str>, default: (i64, i64), min: i64, max: i64) -> CliResult<Vec<i64>> {
    let (a, b) = match range {
        Some(r) => parse_range(r)?,
        None => (default.0 as f64, default.1 as f64),
    };
    if a.fract() != 0.0 || b.fract() != 0.0 || a < min as f64 || b > max as f64 {
        return Err(CliError::Usage(format!("range must be integers within {min}..{max}")));
    }
    Ok((a as i64..=b as i64).collect())
}

/// Uniform grid from a to b; the last point is b itself.
fn real_grid(range: Option<&str>, step: Option<f64>, default: (f64, f64, f64)) -> CliResult<Vec<f64>> {
    let (a, b) = match range {
        Some(r) => parse_range(r)?,
        None => (default.0, default.1),
    };
    let h = step.unwrap_or(default.2);
    if !(h > 0.0) {
        return Err(CliError::Usage("--step must be positive".into()));
    }
    let n = ((b - a) / h + 1e-9).floor() as usize;
    if n > 1_000_000 {
        return Err(CliError::Usage("grid has more than a million points".into()));
    }
    let mut grid: Vec<f64> = (0..=n).map(|j| a + j as f64 * h).collect();
    if let Some(last) = grid.last_mut() {
        if (b - *last).abs() < 1e-9 * h {
            *last = b;
        }
    }
    Ok(grid)
}

pub fn build(kind: TableKind, range: Option<&str>, step: Option<f64>, ctx: &PrecisionContext) -> CliResult<Table> {
    let mut rows = Vec::new();
    let (name, columns) = match kind {
        TableKind::ZetaHEven => {
            for m in int_range(range, (1, 5), 1, 60)? {
                let series = zeta_h_series(Complex64::new(2.0 * m as f64, 0.0), ctx)?.value.re;
                let closed = zeta_h_even_closed_form(m as u32)?;
                rows.push(vec![Cell::Int(2 * m), Cell::Num(series), Cell::Num(closed), Cell::Num((series - closed).abs())]);
            }
            ("zeta_h_even", vec!["s", "series", "closed_form", "abs_diff"])
        }
        TableKind::AlphaBeta => {
            for n in int_range(range, (1, 8), 1, 60)? {
                let n32 = n as u32;
                let residual = if n >= 2 { Cell::Num(recursion_residual(n32, ctx)?) } else { Cell::Empty };
                rows.push(vec![Cell::Int(n), Cell::Num(alpha(n32, ctx)?), Cell::Num(beta(n32, ctx)?), residual]);
            }
            ("alpha_beta", vec!["n", "alpha", "beta", "residual"])
        }
        TableKind::Residues => {
            for k in int_range(range, (0, 5), 0, 30)? {
                let p = pole_info(k as u32, ctx)?;
                let (leading, exact) = if p.order == 2 {
                    (Cell::Num(p.leading_coefficient), Cell::Text("log2+γ/2".into()))
                } else {
                    let text = p.residue_exact.as_ref().map_or(String::new(), |r| r.to_string());
                    (Cell::Empty, Cell::Text(text))
                };
                rows.push(vec![
                    Cell::Int(p.location.re as i64),
                    Cell::Int(p.order as i64),
                    leading,
                    exact,
                    Cell::Num(p.residue),
                    Cell::Num(p.numeric_residue),
                ]);
            }
            ("residues", vec!["s", "order", "leading", "residue_exact", "residue", "numeric_residue"])
        }
        TableKind::TCurve => {
            for r in real_grid(range, step, (0.0, 0.5, 0.01))? {
                rows.push(vec![Cell::Num(r), Cell::Num(T(r, ctx)?)]);
            }
            ("T_curve", vec!["r", "T"])
        }
        TableKind::CriticalLine => {
            for t in real_grid(range, step, (0.0, 30.0, 0.5))? {
                let z = zeta_h(Complex64::new(0.5, t), ctx)?;
                rows.push(vec![Cell::Num(t), Cell::Num(z.re), Cell::Num(z.im)]);
            }
            ("critical_line", vec!["t", "re", "im"])
        }
    };
    Ok(Table { kind: name, columns, rows })
}
