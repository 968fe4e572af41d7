//! Polylogarithm of integer order on the unit circle.
//!
//! For Li_m(e^{i theta}) one of the two parts is a Bernoulli polynomial in
//! theta/(2 pi); the other (the Clausen-type part) comes from the expansion
//! around mu = i theta,
//!
//!   Li_m(e^mu) = mu^{m-1}/(m-1)! [H_{m-1} - ln(-mu)] + sum_{k != m-1} zeta(m-k) mu^k/k!,
//!
//! which converges for |mu| < 2 pi; theta is first reduced into (-pi, pi].

use std::f64::consts::PI;

use num_complex::Complex64;

use super::zeta::zeta_int;
use crate::error::{Error, Result};
use crate::exact::bernoulli_polynomial;
use crate::precision::{Estimate, PrecisionContext};

fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

fn factorial_f64(n: u32) -> f64 {
    (1..=n).fold(1.0, |a, k| a * k as f64)
}

/// The closed-form part: Re Li_m for even m, Im Li_m for odd m.
fn bernoulli_part(m: u32, theta: f64) -> f64 {
    let x = (theta / (2.0 * PI)).rem_euclid(1.0);
    let b = bernoulli_polynomial(m as usize).eval_f64(x);
    let j = m / 2;
    let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
    sign * (2.0 * PI).powi(m as i32) * b / (2.0 * factorial_f64(m))
}

fn log_series(m: u32, theta: f64) -> Complex64 {
    let mu = Complex64::new(0.0, theta);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    let mut fact = 1.0;
    let m1 = (m - 1) as u64;
    let mut prev_small = false;
    for k in 0u64..400 {
        if k > 0 {
            pow *= mu;
            fact *= k as f64;
        }
        let term = if k == m1 {
            let harmonic: f64 = (1..=m1).map(|i| 1.0 / i as f64).sum();
            let ln_neg_mu = Complex64::new(theta.abs().ln(), -0.5 * PI * theta.signum());
            pow / fact * (harmonic - ln_neg_mu)
        } else {
            pow / fact * zeta_int(m as i64 - k as i64)
        };
        sum += term;
        // zeta vanishes at the negative even integers, so look at two terms
        let small = term.norm() < 1e-18 * sum.norm().max(1e-300);
        if k > m1 + 2 && small && prev_small {
            break;
        }
        prev_small = small;
    }
    sum
}

/// Li_m(e^{i theta}) = sum_{k>=1} e^{i k theta}/k^m for integer m >= 2.
pub fn polylog_unit_circle(m: i32, theta: f64, ctx: &PrecisionContext) -> Result<Complex64> {
    let _ = ctx;
    if m < 2 {
        return Err(Error::domain("polylog_unit_circle", format!("order m={m} must be >= 2")));
    }
    let m = m as u32;
    let theta = reduce_angle(theta);
    if theta == 0.0 {
        return Ok(Complex64::new(zeta_int(m as i64), 0.0));
    }
    let closed = bernoulli_part(m, theta);
    let series = log_series(m, theta);
    Ok(if m % 2 == 0 {
        Complex64::new(closed, series.im)
    } else {
        Complex64::new(series.re, closed)
    })
}

/// Direct partial sum over k <= n_terms with the tail bound
/// |tail| <= 1/((m-1) N^{m-1}).
pub fn polylog_unit_circle_direct(m: i32, theta: f64, n_terms: u64) -> Result<Estimate<Complex64>> {
    if m < 2 {
        return Err(Error::domain("polylog_unit_circle", format!("order m={m} must be >= 2")));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for k in (1..=n_terms).rev() {
        let kf = k as f64;
        let phase = reduce_angle(kf * reduce_angle(theta));
        sum += Complex64::from_polar(kf.powi(-m), phase);
    }
    let bound = 1.0 / ((m - 1) as f64 * (n_terms as f64).powi(m - 1));
    Ok(Estimate::new(sum, bound))
}
