//! Riemann and Hurwitz zeta functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli_f64;
use super::gamma::{gamma, nonpositive_integer, sin_pi_c};
use crate::error::{Error, Result};
use super::constants::pi_dd;
use crate::exact::{bernoulli_polynomial, to_dd, zeta_even_exact};
use crate::precision::{Accumulator, Estimate, PrecisionContext};

const EM_CORRECTIONS: usize = 30;

/// Real part below which the Hurwitz function switches to its Fourier
/// expansion; above it Euler-Maclaurin loses at most ~1e-12 absolute.
const HURWITZ_FOURIER_BELOW: f64 = -2.0;

fn pole_at_one(op: &'static str) -> Error {
    Error::Pole {
        op,
        location: "1".into(),
        order: 1,
        residue: "1".into(),
    }
}

fn em_cutoff(s: Complex64) -> usize {
    if s.re >= 0.0 {
        50usize.max(s.im.abs().ceil() as usize)
    } else {
        // keep the cancelling head short; the correction ratio stays below 1/2
        let by_ratio = ((s.norm() + 2.0 * EM_CORRECTIONS as f64) / PI).ceil() as usize;
        20usize.max(s.im.abs().ceil() as usize).max(by_ratio)
    }
}

/// Euler-Maclaurin evaluation of zeta(s, x).
fn hurwitz_em(s: Complex64, x: f64, ctx: &PrecisionContext) -> Estimate<Complex64> {
    let n = em_cutoff(s);
    let mut acc = Accumulator::new(ctx);
    let mut abs_sum = 0.0;
    for k in 0..n {
        let t = Complex64::new(k as f64 + x, 0.0).powc(-s);
        abs_sum += t.norm();
        acc.add(t);
    }
    let a = n as f64 + x;
    let a_pow = Complex64::new(a, 0.0).powc(-s);
    acc.add(a_pow * a / (s - 1.0));
    acc.add(0.5 * a_pow);
    abs_sum += (a_pow * a / (s - 1.0)).norm();

    // B_{2k}/(2k)! (s)_{2k-1} a^{-s-2k+1}
    let inv_a = 1.0 / a;
    let mut rising = s;
    let mut pow = a_pow * inv_a;
    let mut fact = 2.0;
    let mut last = f64::INFINITY;
    for k in 1..=EM_CORRECTIONS {
        let term = rising * pow * (bernoulli_f64(2 * k) / fact);
        let mag = term.norm();
        if mag > last {
            break;
        }
        acc.add(term);
        last = mag;
        if mag <= 1e-18 * acc.value().norm() {
            break;
        }
        let j = 2 * k as u32;
        rising *= (s + (j - 1) as f64) * (s + j as f64);
        pow *= inv_a * inv_a;
        fact *= ((j + 1) * (j + 2)) as f64;
    }
    let value = acc.value();
    Estimate::new(value, last + 4.0 * f64::EPSILON * abs_sum)
}

/// Hurwitz's Fourier expansion for Re s < 0 and 0 < x <= 1.
fn hurwitz_fourier(s: Complex64, x: f64, ctx: &PrecisionContext) -> Result<Estimate<Complex64>> {
    let one_minus = 1.0 - s;
    let pre = 2.0 * gamma(one_minus, ctx)? / Complex64::new(2.0 * PI, 0.0).powc(one_minus);
    let sin_half = sin_pi_c(s * 0.5);
    let cos_half = sin_pi_c(s * 0.5 + 0.5);
    let mut acc = Accumulator::new(ctx);
    let decay = one_minus.re;
    let mut n = 1u64;
    let bound = loop {
        let nf = n as f64;
        let p = Complex64::new(nf, 0.0).powc(-one_minus);
        let theta = 2.0 * PI * (nf * x).fract();
        acc.add(p * (sin_half * theta.cos() + cos_half * theta.sin()));
        // sum_{k>n} k^{-decay} <= n^{1-decay}/(decay-1)
        let tail = nf.powf(1.0 - decay) / (decay - 1.0) * (sin_half.norm() + cos_half.norm());
        if tail * pre.norm() < 1e-13 || n >= ctx.max_terms {
            break tail * pre.norm();
        }
        n += 1;
    };
    if bound > ctx.tol_abs.max(1e-10) {
        return Err(Error::Accuracy {
            op: "hurwitz_zeta",
            best: (pre * acc.value()).re,
            estimate: bound,
        });
    }
    Ok(Estimate::new(pre * acc.value(), bound))
}

/// zeta(s, x) with its error estimate.
pub fn hurwitz_zeta_estimate(
    s: Complex64,
    x: f64,
    ctx: &PrecisionContext,
) -> Result<Estimate<Complex64>> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(pole_at_one("hurwitz_zeta"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("hurwitz_zeta", format!("x={x} must be positive")));
    }
    if let Some(n) = nonpositive_integer(s) {
        // zeta(-n, x) = -B_{n+1}(x)/(n+1)
        let m = (-n) as usize + 1;
        let b = bernoulli_polynomial(m).eval_f64(x);
        return Ok(Estimate::new(Complex64::new(-b / m as f64, 0.0), 1e-15 * b.abs()));
    }
    if s.re < HURWITZ_FOURIER_BELOW {
        if x == 1.0 {
            return riemann_zeta_estimate(s, ctx);
        }
        if x > 1.0 {
            let head = Complex64::new(x - 1.0, 0.0).powc(-s);
            return hurwitz_fourier(s, x - 1.0, ctx).map(|e| e.map(|v| v - head));
        }
        return hurwitz_fourier(s, x, ctx);
    }
    Ok(hurwitz_em(s, x, ctx))
}

pub fn hurwitz_zeta(s: Complex64, x: f64, ctx: &PrecisionContext) -> Result<Complex64> {
    hurwitz_zeta_estimate(s, x, ctx).map(|e| e.value)
}

pub fn riemann_zeta_estimate(s: Complex64, ctx: &PrecisionContext) -> Result<Estimate<Complex64>> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(pole_at_one("riemann_zeta"));
    }
    if s == Complex64::new(0.0, 0.0) {
        return Ok(Estimate::new(Complex64::new(-0.5, 0.0), 0.0));
    }
    if s.re < 0.0 {
        // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
        let mirror = hurwitz_em(1.0 - s, 1.0, ctx);
        let factor = Complex64::new(2.0, 0.0).powc(s)
            * Complex64::new(PI, 0.0).powc(s - 1.0)
            * sin_pi_c(0.5 * s)
            * gamma(1.0 - s, ctx)?;
        return Ok(Estimate::new(
            factor * mirror.value,
            factor.norm() * mirror.error + 4.0 * f64::EPSILON * (factor * mirror.value).norm(),
        ));
    }
    Ok(hurwitz_em(s, 1.0, ctx))
}

pub fn riemann_zeta(s: Complex64, ctx: &PrecisionContext) -> Result<Complex64> {
    riemann_zeta_estimate(s, ctx).map(|e| e.value)
}

pub fn riemann_zeta_real(x: f64, ctx: &PrecisionContext) -> Result<f64> {
    riemann_zeta(Complex64::new(x, 0.0), ctx).map(|z| z.re)
}

/// zeta(n) for integer n != 1, memoized for n in 2..=256. Even arguments go
/// through the exact rational r_{n/2}.
pub fn zeta_int(n: i64) -> f64 {
    use std::sync::OnceLock;
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    if n == 1 {
        return f64::INFINITY;
    }
    if n <= 0 {
        if n == 0 {
            return -0.5;
        }
        let m = (-n) as usize + 1;
        return -bernoulli_f64(m) / m as f64;
    }
    let table = TABLE.get_or_init(|| {
        let ctx = PrecisionContext::default();
        (0..=256i64)
            .map(|k| match k {
                0 => -0.5,
                1 => f64::INFINITY,
                k if k % 2 == 0 => {
                    (to_dd(&zeta_even_exact((k / 2) as u32)) * pi_dd().powi(k as u32)).to_f64()
                }
                k => hurwitz_em(Complex64::new(k as f64, 0.0), 1.0, &ctx).value.re,
            })
            .collect()
    });
    match table.get(n as usize) {
        Some(v) => *v,
        None => 1.0 + 2f64.powi(-(n as i32)),
    }
}
