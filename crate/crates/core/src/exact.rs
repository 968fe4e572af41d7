//! Exact rational arithmetic: Bernoulli numbers, Bernoulli and Euler
//! polynomials, derivatives, and the log-tangent coefficient functionals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::DoubleDouble;

pub type RationalNumber = BigRational;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn to_dd(r: &BigRational) -> DoubleDouble {
    let hi = to_f64(r);
    match BigRational::from_float(hi) {
        Some(h) => DoubleDouble::new(hi, to_f64(&(r - h))),
        None => DoubleDouble::from_f64(hi),
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

/// B_n with the B_1 = -1/2 convention, memoized.
pub fn bernoulli_number(n: usize) -> BigRational {
    static TABLE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut b = table.lock().expect("bernoulli table poisoned");
    while b.len() <= n {
        let m = b.len();
        if m > 1 && m % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            if bk.is_zero() {
                continue;
            }
            let c = binomial(BigInt::from(m + 1), BigInt::from(k));
            acc += bk * BigRational::from_integer(c);
        }
        let next = -acc / BigRational::from_integer(BigInt::from(m + 1));
        b.push(next);
    }
    b[n].clone()
}

/// The rational r_n with zeta(2n) = r_n pi^{2n}; r_0 = -1/2 matches zeta(0).
pub fn zeta_even_exact(n: u32) -> BigRational {
    let b = bernoulli_number(2 * n as usize);
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let num = b * BigRational::from_integer(pow2(2 * n) * sign);
    // 2^{2n-1}: fold the halving into the denominator.
    num / BigRational::from_integer(factorial(2 * n) * 2)
}

/// Dense polynomial with rational coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational(c, 1)).collect())
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let c = self.float_coeffs();
        c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
    }

    pub fn float_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// k-th derivative; zero once k exceeds the degree.
    pub fn derivative(&self, k: usize) -> Self {
        if k >= self.coeffs.len() {
            return Self::zero();
        }
        let coeffs = (k..self.coeffs.len())
            .map(|i| {
                let falling: BigInt = ((i - k + 1)..=i).fold(BigInt::one(), |a, j| a * j);
                &self.coeffs[i] * BigRational::from_integer(falling)
            })
            .collect();
        Self::new(coeffs)
    }

    /// P(a x + b).
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> Self {
        let lin = RationalPolynomial::new(vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &lin) + &RationalPolynomial::constant(c.clone())
        })
    }

    /// Exact test of P(1 - x) = -P(x).
    pub fn is_antisymmetric(&self) -> bool {
        let reflected = self.compose_affine(&-BigRational::one(), &BigRational::one());
        (&reflected + self).is_zero()
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        RationalPolynomial::new(coeffs)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RationalPolynomial::new(coeffs)
    }
}

/// B_n(x) = sum_k C(n,k) B_k x^{n-k}.
pub fn bernoulli_polynomial(n: usize) -> RationalPolynomial {
    let coeffs = (0..=n)
        .map(|j| {
            // coefficient of x^j comes from k = n - j
            let k = n - j;
            let c = binomial(BigInt::from(n), BigInt::from(k));
            bernoulli_number(k) * BigRational::from_integer(c)
        })
        .collect();
    RationalPolynomial::new(coeffs)
}

/// E_n(x) = 2/(n+1) [B_{n+1}(x) - 2^{n+1} B_{n+1}(x/2)].
pub fn euler_polynomial(n: usize) -> RationalPolynomial {
    let b = bernoulli_polynomial(n + 1);
    let half = b.compose_affine(&rational(1, 2), &BigRational::zero());
    let scaled = half.scale(&BigRational::from_integer(pow2(n as u32 + 1)));
    (&b - &scaled).scale(&rational(2, n as i64 + 1))
}

/// c_k(P) = (1 - 2^{-(2k+1)}) (P^{(2k-1)}(1) + P^{(2k-1)}(0)), for
/// 1 <= k <= floor((deg P + 1) / 2).
pub fn c_coefficient(p: &RationalPolynomial, k: usize) -> Result<BigRational> {
    let upper = p.degree().map_or(0, |d| (d + 1) / 2);
    if k < 1 || k > upper {
        return Err(Error::domain(
            "c_coefficient",
            format!("k={k} outside 1..={upper} for degree {:?}", p.degree()),
        ));
    }
    let d = p.derivative(2 * k - 1);
    let factor = BigRational::one()
        - BigRational::new(BigInt::one(), pow2(2 * k as u32 + 1));
    Ok(factor * (d.eval(&BigRational::one()) + d.eval(&BigRational::zero())))
}

/// A rational multiple of an integer power of pi.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiRational {
    pub coeff: BigRational,
    pub pi_power: i32,
}

impl PiRational {
    pub fn rational(coeff: BigRational) -> Self {
        PiRational { coeff, pi_power: 0 }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.coeff) * std::f64::consts::PI.powi(self.pi_power)
    }
}

/// Coefficients lambda_k with P = sum_k lambda_k B_{2k-1} for antisymmetric P.
///
/// lambda_k = -2 P^{(2k-2)}(0) / (2k-1)!. All pi powers cancel, so every
/// entry carries `pi_power == 0`.
pub fn antisymmetric_bernoulli_decomposition(p: &RationalPolynomial) -> Result<Vec<PiRational>> {
    if !p.is_antisymmetric() {
        return Err(Error::domain(
            "antisymmetric_bernoulli_decomposition",
            format!("{p} does not satisfy P(1-x) = -P(x)"),
        ));
    }
    let Some(deg) = p.degree() else {
        return Ok(Vec::new());
    };
    let m = (deg + 1) / 2;
    let zero = BigRational::zero();
    Ok((1..=m)
        .map(|k| {
            let d0 = p.derivative(2 * k - 2).eval(&zero);
            let c = d0 * rational(-2, 1)
                / BigRational::from_integer(factorial(2 * k as u32 - 1));
            PiRational::rational(c)
        })
        .collect())
}

/// Rebuilds sum_k lambda_k B_{2k-1}; only pi-free coefficients are accepted.
pub fn reconstruct_from_bernoulli(lambdas: &[PiRational]) -> Result<RationalPolynomial> {
    let mut acc = RationalPolynomial::zero();
    for (i, l) in lambdas.iter().enumerate() {
        if l.pi_power != 0 && !l.coeff.is_zero() {
            return Err(Error::domain(
                "reconstruct_from_bernoulli",
                "coefficient carries a power of pi",
            ));
        }
        acc = &acc + &bernoulli_polynomial(2 * i + 1).scale(&l.coeff);
    }
    Ok(acc)
}
