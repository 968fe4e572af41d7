use std::f64::consts::PI;

use clap::ValueEnum;
use hzeta::continuation::{g_estimate, zeta_h_value, Method};
use hzeta::harness::ParamValue;
use hzeta::quadrature::{log_tangent_integral, sine_mode, t_estimate};
use hzeta::special::{hurwitz_zeta_estimate, riemann_zeta_estimate};
use hzeta::{h_series, PrecisionContext};
use num_complex::Complex64;
use serde::Serialize;

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    #[value(name = "zeta_h")]
    ZetaH,
    #[value(name = "zeta")]
    Zeta,
    #[value(name = "hurwitz_zeta")]
    HurwitzZeta,
    #[value(name = "T")]
    T,
    #[value(name = "G")]
    G,
    #[value(name = "L_sin")]
    LSin,
    #[value(name = "w")]
    W,
}

impl Function {
    fn name(self) -> &'static str {
        match self {
            Function::ZetaH => "zeta_h",
            Function::Zeta => "zeta",
            Function::HurwitzZeta => "hurwitz_zeta",
            Function::T => "T",
            Function::G => "G",
            Function::LSin => "L_sin",
            Function::W => "w",
        }
    }

    fn arity(self) -> usize {
        match self {
            Function::HurwitzZeta => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalOutput {
    pub function: &'static str,
    pub args: Vec<String>,
    pub value: Complex64,
    pub error: f64,
    pub method: &'static str,
    pub warning: Option<String>,
}

fn complex_arg(text: &str) -> CliResult<Complex64> {
    match ParamValue::parse(text) {
        ParamValue::Int(n) => Ok(Complex64::new(n as f64, 0.0)),
        ParamValue::Real(x) => Ok(Complex64::new(x, 0.0)),
        ParamValue::Complex(z) => Ok(z),
        ParamValue::Label(_) => Err(CliError::Usage(format!("`{text}` is not a number"))),
    }
}

fn real_arg(text: &str) -> CliResult<f64> {
    let z = complex_arg(text)?;
    if z.im != 0.0 {
        return Err(CliError::Usage(format!("`{text}` must be real")));
    }
    Ok(z.re)
}

pub fn evaluate(f: Function, args: &[String], ctx: &PrecisionContext) -> CliResult<EvalOutput> {
    if args.len() != f.arity() {
        return Err(CliError::Usage(format!(
            "{} takes {} argument(s), got {}",
            f.name(),
            f.arity(),
            args.len()
        )));
    }
    let real = |c: f64| Complex64::new(c, 0.0);
    let mut warning = None;
    let (value, error, method) = match f {
        Function::ZetaH => {
            let v = zeta_h_value(complex_arg(&args[0])?, ctx)?;
            warning = v.warning;
            let method = match v.method {
                Method::Series => "series",
                Method::MellinSplit => "mellin_split",
                Method::EulerMaclaurin => "euler_maclaurin",
            };
            (v.value, v.error, method)
        }
        Function::Zeta => {
            let s = complex_arg(&args[0])?;
            let e = riemann_zeta_estimate(s, ctx)?;
            let method = if s.re < 0.0 { "functional_equation" } else { "euler_maclaurin" };
            (e.value, e.error, method)
        }
        Function::HurwitzZeta => {
            let s = complex_arg(&args[0])?;
            let e = hurwitz_zeta_estimate(s, real_arg(&args[1])?, ctx)?;
            let method = if s.re < -2.0 { "fourier" } else { "euler_maclaurin" };
            (e.value, e.error, method)
        }
        Function::T => {
            let e = t_estimate(real_arg(&args[0])?, ctx)?;
            (real(e.value), e.error, "tanh_sinh")
        }
        Function::G => {
            let z = complex_arg(&args[0])?;
            let e = g_estimate(z, ctx)?;
            let method = if z.re < 0.75 { "hurwitz_quadrature" } else { "taylor_split" };
            (e.value, e.error, method)
        }
        Function::LSin => {
            let n = real_arg(&args[0])?;
            if n.fract() != 0.0 || !(1.0..=1e6).contains(&n) {
                return Err(hzeta::Error::Domain {
                    op: "L_sin",
                    detail: format!("n={n} must be an integer in 1..=1000000"),
                }
                .into());
            }
            let e = log_tangent_integral(&sine_mode(n as u32), ctx)?;
            (real(e.value), e.error, "tanh_sinh")
        }
        Function::W => {
            let y = real_arg(&args[0])?;
            if !(y >= 0.0) {
                return Err(hzeta::Error::Domain {
                    op: "w",
                    detail: format!("y={y} must be nonnegative"),
                }
                .into());
            }
            let q = (y / (2.0 * PI)).powi(2);
            let r = h_series::w_sum(real(q), ctx)?;
            (real(r.value.re), r.error, "series")
        }
    };
    Ok(EvalOutput {
        function: f.name(),
        args: args.to_vec(),
        value,
        error,
        method,
        warning,
    })
}
