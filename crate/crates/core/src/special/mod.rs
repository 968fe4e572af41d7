//! Special functions: gamma, digamma, Hurwitz and Riemann zeta, unit-circle
//! polylogarithms and a few constants.

pub mod constants;
pub mod gamma;
pub mod polylog;
pub mod zeta;

use std::sync::OnceLock;

use crate::exact::{bernoulli_number, to_f64};

pub use constants::{catalan_constant, euler_gamma, Constants};
pub use gamma::{cos_pi, cos_pi_c, digamma, digamma_real, gamma, gamma_real, rgamma, sin_pi, sin_pi_c};
pub use polylog::{polylog_unit_circle, polylog_unit_circle_direct};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_estimate, riemann_zeta, riemann_zeta_estimate, riemann_zeta_real, zeta_int};

const BERNOULLI_TABLE: usize = 130;

/// B_n as a double; n must be below 130.
pub(crate) fn bernoulli_f64(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (0..BERNOULLI_TABLE).map(|k| to_f64(&bernoulli_number(k))).collect())[n]
}
