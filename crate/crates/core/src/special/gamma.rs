//! Complex gamma and digamma.
//!
//! Both shift the argument until |z| >= 20 and then apply the Stirling
//! (resp. digamma) asymptotic series, truncated at the smallest term. The
//! left half-plane goes through the reflection formulas.

use std::f64::consts::PI;

use num_complex::Complex64;

use std::sync::OnceLock;

use super::bernoulli_f64;
use super::constants::pi_dd;
use crate::precision::DoubleDouble;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

const SHIFT_THRESHOLD: f64 = 20.0;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `Some(s)` as an integer when `s` is exactly 0, -1, -2, ...
pub fn nonpositive_integer(s: Complex64) -> Option<i64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        Some(s.re as i64)
    } else {
        None
    }
}

/// sin(pi x) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    let (r, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let v = if r == 0.0 {
        0.0
    } else if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    sign * v
}

/// cos(pi x) with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

pub fn sin_pi_c(s: Complex64) -> Complex64 {
    let y = PI * s.im;
    Complex64::new(sin_pi(s.re) * y.cosh(), cos_pi(s.re) * y.sinh())
}

pub fn cos_pi_c(s: Complex64) -> Complex64 {
    let y = PI * s.im;
    Complex64::new(cos_pi(s.re) * y.cosh(), -sin_pi(s.re) * y.sinh())
}

fn shift_count(z: Complex64) -> usize {
    if z.norm() >= SHIFT_THRESHOLD {
        return 0;
    }
    let need = (SHIFT_THRESHOLD * SHIFT_THRESHOLD - z.im * z.im).max(0.0).sqrt() - z.re;
    need.ceil().max(0.0) as usize
}

/// Stirling series for ln Gamma(w), |w| >= 20, Re w > 0.
fn ln_gamma_asymptotic(w: Complex64) -> Complex64 {
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + stirling_series(w)
}

/// sum_k B_2k / (2k (2k-1) w^{2k-1}), truncated at the smallest term.
fn stirling_series(w: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut prev = f64::INFINITY;
    for k in 1..=30 {
        let term = pow * (bernoulli_f64(2 * k) / ((2 * k) * (2 * k - 1)) as f64);
        let mag = term.norm();
        if mag > prev {
            break;
        }
        sum += term;
        if mag < 1e-20 * sum.norm() {
            break;
        }
        prev = mag;
        pow *= inv2;
    }
    sum
}

/// Real Gamma(x) for x >= 1/2, with the shift product and the exponential
/// carried in double-double.
fn gamma_right_real(x: f64) -> f64 {
    static LN_SQRT_2PI_DD: OnceLock<DoubleDouble> = OnceLock::new();
    let c = *LN_SQRT_2PI_DD.get_or_init(|| (pi_dd().mul_f64(2.0)).ln().mul_f64(0.5));
    let n = shift_count(Complex64::new(x, 0.0));
    let mut prod = DoubleDouble::ONE;
    for k in 0..n {
        prod = prod.mul_f64(x + k as f64);
    }
    let w = x + n as f64;
    let wd = DoubleDouble::from_f64(w);
    let head = wd.add_f64(-0.5) * wd.ln() - wd + c;
    let tail = stirling_series(Complex64::new(w, 0.0)).re;
    (head.add_f64(tail).exp() / prod).to_f64()
}

/// Gamma(z) for Re z >= 1/2.
fn gamma_right(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(gamma_right_real(z.re), 0.0);
    }
    let n = shift_count(z);
    let mut prod = Complex64::new(1.0, 0.0);
    for k in 0..n {
        prod *= z + k as f64;
    }
    ln_gamma_asymptotic(z + n as f64).exp() / prod
}

pub fn gamma(s: Complex64, ctx: &PrecisionContext) -> Result<Complex64> {
    let _ = ctx;
    if let Some(n) = nonpositive_integer(s) {
        return Err(Error::Pole {
            op: "gamma",
            location: n.to_string(),
            order: 1,
            residue: format!("(-1)^{}/{}!", -n, -n),
        });
    }
    if s.re < 0.5 {
        Ok(PI / (sin_pi_c(s) * gamma_right(1.0 - s)))
    } else {
        Ok(gamma_right(s))
    }
}

pub fn gamma_real(x: f64, ctx: &PrecisionContext) -> Result<f64> {
    gamma(Complex64::new(x, 0.0), ctx).map(|z| z.re)
}

/// 1/Gamma(s), entire; exactly zero at the nonpositive integers.
pub fn rgamma(s: Complex64) -> Complex64 {
    if nonpositive_integer(s).is_some() {
        return Complex64::new(0.0, 0.0);
    }
    if s.re < 0.5 {
        sin_pi_c(s) * gamma_right(1.0 - s) / PI
    } else {
        gamma_right(s).inv()
    }
}

fn digamma_right(z: Complex64) -> Complex64 {
    let n = shift_count(z);
    let mut correction = Complex64::new(0.0, 0.0);
    for k in 0..n {
        correction += (z + k as f64).inv();
    }
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut sum = w.ln() - 0.5 * inv;
    let mut pow = inv2;
    let mut prev = f64::INFINITY;
    for k in 1..=30 {
        let term = pow * (bernoulli_f64(2 * k) / (2 * k) as f64);
        let mag = term.norm();
        if mag > prev {
            break;
        }
        sum -= term;
        if mag < 1e-18 * sum.norm().max(1e-300) {
            break;
        }
        prev = mag;
        pow *= inv2;
    }
    sum - correction
}

pub fn digamma(s: Complex64, ctx: &PrecisionContext) -> Result<Complex64> {
    let _ = ctx;
    if let Some(n) = nonpositive_integer(s) {
        return Err(Error::Pole {
            op: "digamma",
            location: n.to_string(),
            order: 1,
            residue: "-1".into(),
        });
    }
    if s.re < 0.5 {
        // psi(s) = psi(1-s) - pi cot(pi s)
        let cot = cos_pi_c(s) / sin_pi_c(s);
        Ok(digamma_right(1.0 - s) - PI * cot)
    } else {
        Ok(digamma_right(s))
    }
}

pub fn digamma_real(x: f64, ctx: &PrecisionContext) -> Result<f64> {
    digamma(Complex64::new(x, 0.0), ctx).map(|z| z.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::constants::euler_gamma;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn gamma_trivial_values() {
        let close = |x: f64, want: f64| {
            let got = gamma_real(x, &ctx()).unwrap();
            assert!((got / want - 1.0).abs() < 4e-15, "Gamma({x}) = {got}, want {want}");
        };
        close(1.0, 1.0);
        close(0.5, PI.sqrt());
        close(5.0, 24.0);
        close(-0.5, -2.0 * PI.sqrt());
        close(2.5, 0.75 * PI.sqrt());
    }

    #[test]
    fn gamma_poles_are_reported() {
        match gamma(c(-3.0, 0.0), &ctx()) {
            Err(Error::Pole { location, .. }) => assert_eq!(location, "-3"),
            other => panic!("expected pole, got {other:?}"),
        }
        assert_eq!(rgamma(c(-3.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn gamma_factorial_growth() {
        let g = gamma_real(21.0, &ctx()).unwrap();
        assert!((g / 2.432_902_008_176_64e18 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gamma_on_imaginary_axis() {
        // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
        for t in [0.3, 2.0, 10.0, 40.0] {
            let g = gamma(c(0.5, t), &ctx()).unwrap();
            let expect = PI / (PI * t).cosh();
            assert!((g.norm_sqr() / expect - 1.0).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn digamma_values() {
        let g = euler_gamma();
        assert!((digamma_real(1.0, &ctx()).unwrap() + g).abs() < 1e-15);
        let half = digamma_real(0.5, &ctx()).unwrap();
        assert!((half + g + 2.0 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn digamma_matches_series_definition() {
        // psi(x) = -1/x - gamma + sum_k (1/k - 1/(x+k)), tail ~ (x)/K
        let x = 0.5;
        let mut s = -1.0 / x - euler_gamma();
        let kmax = 2_000_000u64;
        for k in 1..=kmax {
            let k = k as f64;
            s += 1.0 / k - 1.0 / (x + k);
        }
        // tail of sum x/(k(k+x)) beyond kmax is about x/kmax
        s += x / kmax as f64;
        assert!((s - digamma_real(x, &ctx()).unwrap()).abs() < 1e-11);
    }

    #[test]
    fn digamma_half_integers_give_odd_harmonics() {
        let base = digamma_real(0.5, &ctx()).unwrap();
        let mut h = 0.0;
        for n in 1..=20 {
            h += 1.0 / (2 * n - 1) as f64;
            let d = digamma_real(n as f64 + 0.5, &ctx()).unwrap() - base;
            assert!((d - 2.0 * h).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn sin_pi_is_exact_at_integers() {
        for k in -5..=5 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert_eq!(cos_pi(0.5), 0.0);
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
    }
}
