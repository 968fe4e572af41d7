//! Working-precision control.
//!
//! Every numerical routine takes a [`PrecisionContext`]. The default mode is
//! hardware double with Neumaier-compensated accumulation; the high mode
//! (`digits > 16`) accumulates series in [`DoubleDouble`] arithmetic.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexValue = Complex64;

/// Numerical knobs threaded through every operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionContext {
    /// Decimal digits of working precision. 16 is hardware double, anything
    /// above selects double-double accumulation.
    pub digits: u32,
    /// Ceiling on the number of terms any series may sum directly.
    pub max_terms: u64,
    /// Number of tanh-sinh refinement levels.
    pub quad_depth: u32,
    pub tol_abs: f64,
    pub tol_rel: f64,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            digits: 16,
            max_terms: 10_000_000,
            quad_depth: 12,
            tol_abs: 1e-10,
            tol_rel: 1e-10,
        }
    }
}

impl PrecisionContext {
    pub fn high() -> Self {
        PrecisionContext {
            digits: 32,
            ..Default::default()
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol_abs = tol;
        self.tol_rel = tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.digits < 15 {
            return Err(Error::domain("precision", "digits must be at least 15"));
        }
        if self.max_terms < 100 {
            return Err(Error::domain("precision", "max_terms must be at least 100"));
        }
        if self.quad_depth < 4 {
            return Err(Error::domain("precision", "quad_depth must be at least 4"));
        }
        if !(self.tol_abs >= 0.0 && self.tol_rel >= 0.0) {
            return Err(Error::domain("precision", "tolerances must be nonnegative"));
        }
        Ok(())
    }

    pub fn is_high(&self) -> bool {
        self.digits > 16
    }

    /// Acceptance threshold for a quantity of magnitude `scale`.
    pub fn threshold(&self, scale: f64) -> f64 {
        self.tol_abs.max(self.tol_rel * scale.abs())
    }
}

/// A computed value together with a bound (or honest estimate) of its error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
}

impl<T> Estimate<T> {
    pub fn new(value: T, error: f64) -> Self {
        Estimate { value, error }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Estimate<U> {
        Estimate {
            value: f(self.value),
            error: self.error,
        }
    }
}

// ---------------------------------------------------------------------------
// Double-double arithmetic
// ---------------------------------------------------------------------------

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, roughly 32 digits.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        DoubleDouble { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        DoubleDouble { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        self / DoubleDouble::from_f64(b)
    }

    pub fn recip(self) -> Self {
        DoubleDouble::ONE / self
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return DoubleDouble::ZERO;
        }
        // One Newton step on the double approximation doubles the digits.
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let resid = (self.hi - p - e + self.lo) / (2.0 * x);
        DoubleDouble::new(x, resid)
    }

    pub fn powi(self, mut n: u32) -> Self {
        let mut base = self;
        let mut acc = DoubleDouble::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    pub fn exp(self) -> Self {
        if self.hi == 0.0 {
            return DoubleDouble::ONE;
        }
        let ln2 = ln2_dd();
        let k = (self.hi / ln2.hi).round();
        let r = self - ln2.mul_f64(k);
        // Scale the reduced argument down by 2^10 and square back up.
        let r = r.mul_f64(1.0 / 1024.0);
        // Track e^r - 1 so the squarings keep full relative accuracy.
        let mut term = r;
        let mut m1 = r;
        for i in 2..=14 {
            term = (term * r).div_f64(i as f64);
            m1 = m1 + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            m1 = m1.mul_f64(2.0) + m1 * m1;
        }
        let sum = m1.add_f64(1.0);
        let scale = 2f64.powi(k as i32);
        DoubleDouble {
            hi: sum.hi * scale,
            lo: sum.lo * scale,
        }
    }

    pub fn ln(self) -> Self {
        assert!(self.hi > 0.0, "logarithm of a nonpositive double-double");
        let mut y = DoubleDouble::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - DoubleDouble::ONE;
        }
        y
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        DoubleDouble { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo }.add_f64(q3)
    }
}

/// atanh(1/m) by its power series, used to seed ln 2.
fn atanh_recip_dd(m: f64) -> DoubleDouble {
    let inv = DoubleDouble::from_f64(m).recip();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut sum = DoubleDouble::ZERO;
    for k in 0..200 {
        let term = pow.div_f64((2 * k + 1) as f64);
        sum = sum + term;
        if term.hi.abs() < 1e-35 {
            break;
        }
        pow = pow * inv2;
    }
    sum
}

pub(crate) fn ln2_dd() -> DoubleDouble {
    static LN2: std::sync::OnceLock<DoubleDouble> = std::sync::OnceLock::new();
    *LN2.get_or_init(|| atanh_recip_dd(3.0).mul_f64(2.0))
}

// ---------------------------------------------------------------------------
// Accumulation
// ---------------------------------------------------------------------------

/// Running complex sum, Neumaier-compensated in double mode and double-double
/// in high mode.
#[derive(Debug, Clone, Copy)]
pub struct Accumulator {
    re: DoubleDouble,
    im: DoubleDouble,
    high: bool,
}

#[inline]
fn neumaier(acc: &mut DoubleDouble, x: f64) {
    let t = acc.hi + x;
    if acc.hi.abs() >= x.abs() {
        acc.lo += (acc.hi - t) + x;
    } else {
        acc.lo += (x - t) + acc.hi;
    }
    acc.hi = t;
}

impl Accumulator {
    pub fn new(ctx: &PrecisionContext) -> Self {
        Accumulator {
            re: DoubleDouble::ZERO,
            im: DoubleDouble::ZERO,
            high: ctx.is_high(),
        }
    }

    pub fn add(&mut self, z: Complex64) {
        if self.high {
            self.re = self.re.add_f64(z.re);
            self.im = self.im.add_f64(z.im);
        } else {
            neumaier(&mut self.re, z.re);
            neumaier(&mut self.im, z.im);
        }
    }

    pub fn add_real(&mut self, x: f64) {
        self.add(Complex64::new(x, 0.0));
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }

    pub fn real(&self) -> f64 {
        self.re.hi + self.re.lo
    }
}
