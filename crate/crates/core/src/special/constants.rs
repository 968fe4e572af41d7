//! Fundamental constants, computed once in double-double arithmetic.
//!
//! * pi: Machin's formula.
//! * Euler's gamma: Euler-Maclaurin on H_20 with twenty Bernoulli corrections.
//! * Catalan's G: (pi/8) ln(2 + sqrt 3) + (3/8) sum 1/((2n+1)^2 C(2n,n)),
//!   which gains a factor 4 per term.

use std::sync::OnceLock;

use serde::Serialize;

use crate::exact::{bernoulli_number, to_dd};
use crate::precision::DoubleDouble;

fn atan_recip(m: f64) -> DoubleDouble {
    let inv = DoubleDouble::from_f64(m).recip();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut sum = DoubleDouble::ZERO;
    for k in 0..100 {
        let term = pow.div_f64((2 * k + 1) as f64);
        sum = if k % 2 == 0 { sum + term } else { sum - term };
        if term.hi < 1e-34 {
            break;
        }
        pow = pow * inv2;
    }
    sum
}

pub fn pi_dd() -> DoubleDouble {
    static PI: OnceLock<DoubleDouble> = OnceLock::new();
    *PI.get_or_init(|| atan_recip(5.0).mul_f64(16.0) - atan_recip(239.0).mul_f64(4.0))
}

pub fn euler_gamma_dd() -> DoubleDouble {
    static GAMMA: OnceLock<DoubleDouble> = OnceLock::new();
    *GAMMA.get_or_init(|| {
        let n = 20u32;
        let nf = DoubleDouble::from_f64(n as f64);
        let mut h = DoubleDouble::ZERO;
        for k in 1..=n {
            h = h + DoubleDouble::from_f64(k as f64).recip();
        }
        let mut g = h - nf.ln() - (nf.mul_f64(2.0)).recip();
        let inv2 = (nf * nf).recip();
        let mut pow = inv2;
        for k in 1..=20usize {
            let b = to_dd(&bernoulli_number(2 * k));
            g = g + b * pow.div_f64((2 * k) as f64);
            pow = pow * inv2;
        }
        g
    })
}

pub fn catalan_dd() -> DoubleDouble {
    static CATALAN: OnceLock<DoubleDouble> = OnceLock::new();
    *CATALAN.get_or_init(|| {
        let root3 = DoubleDouble::from_f64(3.0).sqrt();
        let log_term = pi_dd().mul_f64(0.125) * root3.add_f64(2.0).ln();
        // t_n = 1/C(2n,n), t_{n+1} = t_n (n+1) / (2(2n+1))
        let mut t = DoubleDouble::ONE;
        let mut sum = DoubleDouble::ZERO;
        for n in 0..80u32 {
            let odd = (2 * n + 1) as f64;
            let term = t / DoubleDouble::from_f64(odd * odd);
            sum = sum + term;
            if term.hi < 1e-35 {
                break;
            }
            t = t.mul_f64((n + 1) as f64) / DoubleDouble::from_f64(2.0 * odd);
        }
        log_term + sum.mul_f64(0.375)
    })
}

pub fn euler_gamma() -> f64 {
    euler_gamma_dd().to_f64()
}

pub fn catalan_constant() -> f64 {
    catalan_dd().to_f64()
}

/// The three constants at double precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub euler_gamma: f64,
    pub catalan: f64,
    pub pi: f64,
}

impl Constants {
    pub fn get() -> Self {
        Constants {
            euler_gamma: euler_gamma(),
            catalan: catalan_constant(),
            pi: pi_dd().to_f64(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_to_double_double() {
        let p = pi_dd();
        assert_eq!(p.hi, std::f64::consts::PI);
        // pi - fl(pi) = 1.2246467991473532e-16
        assert!((p.lo - 1.224_646_799_147_353_2e-16).abs() < 1e-31);
    }

    #[test]
    fn constants_against_published_digits() {
        assert_eq!(euler_gamma(), 0.577_215_664_901_532_9);
        assert_eq!(catalan_constant(), 0.915_965_594_177_219);
        // low words agree with 0.57721566490153286060651209008240243
        let g = euler_gamma_dd();
        assert!((g.lo - (-4.942_915_152_430_645e-18)).abs() < 1e-30);
    }

    #[test]
    fn catalan_as_alternating_sum() {
        // sum (-1)^k/(2k+1)^2 with the alternating-series midpoint correction
        let mut s = 0.0;
        let n = 200_000u64;
        for k in (0..n).rev() {
            let t = 1.0 / ((2 * k + 1) as f64).powi(2);
            s += if k % 2 == 0 { t } else { -t };
        }
        s += 0.5 / ((2 * n + 1) as f64).powi(2);
        assert!((s - catalan_constant()).abs() < 1e-15);
    }
}
