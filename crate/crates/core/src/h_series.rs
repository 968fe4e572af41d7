//! Harmonic numbers, odd harmonic numbers h_n = 1 + 1/3 + ... + 1/(2n-1),
//! and the Dirichlet and Euler-type sums built from them.
//!
//! Non-oscillatory tails use Euler-Maclaurin on the asymptotic expansion
//!
//!   h(t) = (ln t + gamma + 2 ln 2)/2 - sum_j B_2j(1/2) / (4j t^2j),
//!
//! which is the digamma expansion of (psi(t + 1/2) - psi(1/2))/2. Each piece
//! is of the form c t^{-a} (ln t)^p, whose derivatives stay in that family.
//! Oscillatory tails sum_{n>=N} a_n z^n with |z| = 1, z != 1 use iterated
//! summation by parts.

use std::f64::consts::{LN_2, PI};
use std::sync::{OnceLock, RwLock};

use num_complex::Complex64;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, rational, to_f64, zeta_even_exact, PiRational};
use crate::precision::{Accumulator, DoubleDouble, PrecisionContext};
use crate::special::constants::pi_dd;
use crate::special::{bernoulli_f64, euler_gamma, zeta_int};

/// Largest index kept as an exact rational.
pub const EXACT_CAP: u64 = 100_000;
const FLOAT_TABLE: usize = 4096;
const ASYMPTOTIC_TERMS: usize = 10;
const EM_DEPTH: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailKind {
    EulerMaclaurin,
    Geometric,
    OscillatoryCesaro,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailModel {
    pub kind: TailKind,
    pub bound: f64,
}

/// A series value with its truncation model. `error` adds rounding to the
/// tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult<T> {
    pub value: T,
    pub error: f64,
    pub tail: TailModel,
}

// ---------------------------------------------------------------------------
// Harmonic cache
// ---------------------------------------------------------------------------

#[derive(Default)]
struct CacheData {
    // index 0 holds H_0 = h_0 = 0
    harmonic: Vec<BigRational>,
    odd: Vec<BigRational>,
}

/// Grow-only cache of exact H_n and h_n, with float mirrors.
pub struct HarmonicCache {
    exact: RwLock<CacheData>,
    harmonic_f64: Vec<f64>,
    odd_f64: Vec<f64>,
}

fn compensated_prefix(len: usize, term: impl Fn(usize) -> f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(len + 1);
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    out.push(0.0);
    for k in 1..=len {
        let x = term(k);
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
        out.push(sum + comp);
    }
    out
}

/// p/q + 1/k for reduced p/q. Every prime shared by p k + q and q k divides
/// k, so the reduction needs only word-sized gcds.
fn add_unit_fraction(r: &BigRational, k: u64) -> BigRational {
    let mut num = r.numer() * k + r.denom();
    let mut den = r.denom() * k;
    loop {
        let g = (&num % k).to_u64().unwrap().gcd(&k);
        let g = if g > 1 { (&den % g).to_u64().unwrap().gcd(&g) } else { 1 };
        if g == 1 {
            return BigRational::new_raw(num, den);
        }
        num /= g;
        den /= g;
    }
}

impl HarmonicCache {
    pub fn global() -> &'static HarmonicCache {
        static CACHE: OnceLock<HarmonicCache> = OnceLock::new();
        CACHE.get_or_init(|| HarmonicCache {
            exact: RwLock::new(CacheData {
                harmonic: vec![BigRational::zero()],
                odd: vec![BigRational::zero()],
            }),
            harmonic_f64: compensated_prefix(FLOAT_TABLE, |k| 1.0 / k as f64),
            odd_f64: compensated_prefix(FLOAT_TABLE, |k| 1.0 / (2 * k - 1) as f64),
        })
    }

    fn check(n: u64) -> Result<()> {
        if n < 1 {
            return Err(Error::domain("harmonic", "index must be at least 1"));
        }
        if n > EXACT_CAP {
            return Err(Error::domain(
                "harmonic",
                format!("n={n} exceeds the exact cache cap {EXACT_CAP}; use the float value"),
            ));
        }
        Ok(())
    }

    fn ensure(&self, harmonic_len: usize, odd_len: usize) {
        {
            let data = self.exact.read().unwrap();
            if data.harmonic.len() > harmonic_len && data.odd.len() > odd_len {
                return;
            }
        }
        let mut data = self.exact.write().unwrap();
        while data.harmonic.len() <= harmonic_len {
            let k = data.harmonic.len() as u64;
            let next = add_unit_fraction(data.harmonic.last().unwrap(), k);
            data.harmonic.push(next);
        }
        while data.odd.len() <= odd_len {
            let k = data.odd.len() as u64;
            let next = add_unit_fraction(data.odd.last().unwrap(), 2 * k - 1);
            data.odd.push(next);
        }
    }

    /// Exact H_n.
    pub fn harmonic(&self, n: u64) -> Result<BigRational> {
        Self::check(n)?;
        self.ensure(n as usize, 0);
        Ok(self.exact.read().unwrap().harmonic[n as usize].clone())
    }

    /// Exact h_n.
    pub fn h(&self, n: u64) -> Result<BigRational> {
        Self::check(n)?;
        self.ensure(0, n as usize);
        Ok(self.exact.read().unwrap().odd[n as usize].clone())
    }

    /// Number of exact entries currently held for (H, h).
    pub fn exact_len(&self) -> (usize, usize) {
        let data = self.exact.read().unwrap();
        (data.harmonic.len() - 1, data.odd.len() - 1)
    }

    pub fn harmonic_f64(&self, n: u64) -> f64 {
        if (n as usize) <= FLOAT_TABLE {
            return self.harmonic_f64[n as usize];
        }
        let t = n as f64;
        let mut v = t.ln() + euler_gamma() + 0.5 / t;
        let inv2 = 1.0 / (t * t);
        let mut pow = inv2;
        for k in 1..=ASYMPTOTIC_TERMS {
            v -= bernoulli_f64(2 * k) / (2 * k) as f64 * pow;
            pow *= inv2;
        }
        v
    }

    pub fn h_f64(&self, n: u64) -> f64 {
        if (n as usize) <= FLOAT_TABLE {
            return self.odd_f64[n as usize];
        }
        let t = n as f64;
        let mut v = 0.5 * (t.ln() + odd_constant());
        let inv2 = 1.0 / (t * t);
        let mut pow = inv2;
        for d in odd_corrections() {
            v += d * pow;
            pow *= inv2;
        }
        v
    }
}

/// Exact H_n, n >= 1.
pub fn harmonic(n: u64) -> Result<BigRational> {
    HarmonicCache::global().harmonic(n)
}

/// Exact h_n, n >= 1.
pub fn h(n: u64) -> Result<BigRational> {
    HarmonicCache::global().h(n)
}

pub fn h_f64(n: u64) -> f64 {
    HarmonicCache::global().h_f64(n)
}

pub fn harmonic_f64(n: u64) -> f64 {
    HarmonicCache::global().harmonic_f64(n)
}

/// gamma + 2 ln 2
fn odd_constant() -> f64 {
    euler_gamma() + 2.0 * LN_2
}

/// d_j = -B_2j(1/2)/(4j) = -(2^{1-2j} - 1) B_2j / (4j)
fn odd_corrections() -> &'static [f64] {
    static D: OnceLock<Vec<f64>> = OnceLock::new();
    D.get_or_init(|| {
        (1..=ASYMPTOTIC_TERMS)
            .map(|j| {
                let b_half = (2f64.powi(1 - 2 * j as i32) - 1.0) * to_f64(&bernoulli_number(2 * j));
                -b_half / (4 * j) as f64
            })
            .collect()
    })
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin on power-log terms
// ---------------------------------------------------------------------------

/// coef * t^{-(s + shift)} * (ln t)^log_power
#[derive(Debug, Clone, Copy)]
struct PowerLog {
    coef: f64,
    shift: f64,
    log_power: usize,
}

fn odd_expansion() -> Vec<PowerLog> {
    let mut terms = vec![
        PowerLog { coef: 0.5, shift: 0.0, log_power: 1 },
        PowerLog { coef: 0.5 * odd_constant(), shift: 0.0, log_power: 0 },
    ];
    for (j, d) in odd_corrections().iter().enumerate() {
        terms.push(PowerLog { coef: *d, shift: 2.0 * (j + 1) as f64, log_power: 0 });
    }
    terms
}

fn harmonic_expansion() -> Vec<PowerLog> {
    let mut terms = vec![
        PowerLog { coef: 1.0, shift: 0.0, log_power: 1 },
        PowerLog { coef: euler_gamma(), shift: 0.0, log_power: 0 },
        PowerLog { coef: 0.5, shift: 1.0, log_power: 0 },
    ];
    for k in 1..=ASYMPTOTIC_TERMS {
        terms.push(PowerLog {
            coef: -bernoulli_f64(2 * k) / (2 * k) as f64,
            shift: 2.0 * k as f64,
            log_power: 0,
        });
    }
    terms
}

/// Product of two expansions, dropping pieces beyond t^{-2 J - 2}.
fn square_expansion(terms: &[PowerLog]) -> Vec<PowerLog> {
    let limit = 2.0 * ASYMPTOTIC_TERMS as f64 + 2.0;
    let mut out = Vec::new();
    for a in terms {
        for b in terms {
            let shift = a.shift + b.shift;
            if shift <= limit {
                out.push(PowerLog {
                    coef: a.coef * b.coef,
                    shift,
                    log_power: a.log_power + b.log_power,
                });
            }
        }
    }
    out
}

/// ln n in double-double, tabulated for small n.
fn ln_dd(n: u64) -> DoubleDouble {
    static TABLE: OnceLock<Vec<DoubleDouble>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (0..=FLOAT_TABLE)
            .map(|k| if k == 0 { DoubleDouble::ZERO } else { DoubleDouble::from_f64(k as f64).ln() })
            .collect()
    });
    match table.get(n as usize) {
        Some(v) => *v,
        None => DoubleDouble::from_f64(n as f64).ln(),
    }
}

/// e^{-a l} with the exponent and the reduced phase formed in double-double,
/// so large |Im a| l costs no digits.
fn pow_neg(l: DoubleDouble, a: Complex64) -> Complex64 {
    let x = l.mul_f64(-a.re);
    let modulus = x.hi.exp() * (1.0 + x.lo);
    let theta = l.mul_f64(-a.im);
    let two_pi = pi_dd().mul_f64(2.0);
    let k = (theta.hi / two_pi.hi).round();
    let phase = (theta - two_pi.mul_f64(k)).to_f64();
    Complex64::from_polar(modulus, phase)
}

/// Evaluates t^{-b} P(L) pieces: returns sum_i coeffs[i] L^i.
fn poly_eval(coeffs: &[Complex64], l: f64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * l + c)
}

/// sum_{j>=0} f(t0 + j step) for f(t) = t^{-a} (ln t)^p, by Euler-Maclaurin.
/// Returns the value and the size of the last correction used.
/// The sum is returned multiplied by e^{log_scale}.
fn em_power_log(a: Complex64, p: usize, t0: f64, step: f64, log_scale: Complex64) -> (Complex64, f64) {
    let l = t0.ln();
    let t0a = if log_scale == Complex64::new(0.0, 0.0) {
        pow_neg(DoubleDouble::from_f64(t0).ln(), a)
    } else {
        (-a * l + log_scale).exp()
    };
    // int_{t0}^inf t^{-a} L^p dt = t0^{1-a} sum_i p!/(p-i)! L^{p-i} / (a-1)^{i+1}
    let am1 = a - 1.0;
    let mut integral = Complex64::new(0.0, 0.0);
    let mut falling = 1.0;
    let mut denom = am1;
    for i in 0..=p {
        integral += falling * l.powi((p - i) as i32) / denom;
        falling *= (p - i) as f64;
        denom *= am1;
    }
    integral *= t0a * t0;
    let mut sum = integral / step + 0.5 * t0a * l.powi(p as i32);

    // f^{(m)}(t) = t^{-a-m} P_m(L), P_0 = L^p
    let mut poly = vec![Complex64::new(0.0, 0.0); p + 1];
    poly[p] = Complex64::new(1.0, 0.0);
    let mut b = a;
    let mut pow_t = t0a; // t0^{-b}
    let mut last = f64::INFINITY;
    let mut fact = 1.0;
    let mut step_pow = 1.0;
    for m in 1..=2 * EM_DEPTH {
        // derivative: t^{-b-1} (-b P + P')
        let mut next = vec![Complex64::new(0.0, 0.0); p + 1];
        for i in 0..=p {
            next[i] = -b * poly[i];
            if i + 1 <= p {
                next[i] += poly[i + 1] * (i + 1) as f64;
            }
        }
        poly = next;
        b += 1.0;
        pow_t /= t0;
        fact *= m as f64;
        step_pow *= step;
        if m % 2 == 1 {
            let k = (m + 1) / 2;
            let term = pow_t * poly_eval(&poly, l) * (bernoulli_f64(2 * k) / (fact * (m + 1) as f64)) * step_pow;
            let mag = term.norm();
            if mag > last {
                break;
            }
            sum -= term;
            last = mag;
            if mag <= 1e-3 * f64::EPSILON * sum.norm() {
                break;
            }
        }
    }
    (sum, last)
}

/// sum over t = t0, t0 + step, ... of sum_terms coef t^{-(s+shift)} (ln t)^p.
fn expansion_tail(terms: &[PowerLog], s: Complex64, t0: f64, step: f64) -> (Complex64, f64) {
    scaled_expansion_tail(terms, s, t0, step, Complex64::new(0.0, 0.0))
}

fn scaled_expansion_tail(
    terms: &[PowerLog],
    s: Complex64,
    t0: f64,
    step: f64,
    log_scale: Complex64,
) -> (Complex64, f64) {
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for term in terms {
        let (v, e) = em_power_log(s + term.shift, term.log_power, t0, step, log_scale);
        total += v * term.coef;
        err += e * term.coef.abs();
    }
    // first dropped asymptotic correction
    let dropped = 2.0 * (ASYMPTOTIC_TERMS + 1) as f64;
    err += (-(s.re + dropped) * t0.ln() + log_scale.re).exp() * 1e-2;
    (total, err)
}

fn head_cutoff(s: Complex64) -> u64 {
    100 + (2.0 * s.norm()).ceil() as u64
}

/// sum_{n>=n0} h_n n^{-s}
pub(crate) fn h_tail(s: Complex64, n0: u64) -> (Complex64, f64) {
    static TERMS: OnceLock<Vec<PowerLog>> = OnceLock::new();
    let terms = TERMS.get_or_init(odd_expansion);
    expansion_tail(terms, s, n0 as f64, 1.0)
}

/// n0^{s-1} sum_{n>=n0} h_n n^{-s}, finite where the plain tail underflows.
fn h_tail_scaled(s: Complex64, n0: u64) -> (Complex64, f64) {
    static TERMS: OnceLock<Vec<PowerLog>> = OnceLock::new();
    let terms = TERMS.get_or_init(odd_expansion);
    let t0 = n0 as f64;
    scaled_expansion_tail(terms, s, t0, 1.0, (s - 1.0) * t0.ln())
}

fn require_convergent(op: &'static str, s: Complex64) -> Result<()> {
    if s.re <= 1.05 {
        return Err(Error::domain(
            op,
            format!("Re s = {} is too close to the abscissa 1; use the continuation", s.re),
        ));
    }
    Ok(())
}

/// zeta_h(s) = sum h_n n^{-s} for Re s > 1.05.
pub fn zeta_h_series(s: Complex64, ctx: &PrecisionContext) -> Result<SeriesResult<Complex64>> {
    require_convergent("zeta_h_series", s)?;
    zeta_h_euler_maclaurin(s, ctx)
}

/// Head sum plus the Euler-Maclaurin tail, which is analytic in s: this
/// continues zeta_h to every s off the poles. Rounding grows with
/// sum |h_n n^{-s}| over the head, so it is accurate when Re s is not far
/// below zero.
pub fn zeta_h_euler_maclaurin(s: Complex64, ctx: &PrecisionContext) -> Result<SeriesResult<Complex64>> {
    if s.im == 0.0 && s.re <= 1.0 && s.re.fract() == 0.0 && (s.re as i64) % 2 != 0 {
        return Err(Error::domain("zeta_h_euler_maclaurin", format!("s = {} is a pole", s.re)));
    }
    // left of the abscissa the head is kept short: the corrections still
    // decay geometrically once 2 pi n exceeds |s| + 2 EM_DEPTH
    let n = if s.re > 1.05 {
        head_cutoff(s)
    } else {
        ((s.norm() + 2.0 * EM_DEPTH as f64 + 10.0) / PI).ceil().max(20.0) as u64
    };
    let mut acc = Accumulator::new(ctx);
    let mut magnitude = 0.0;
    for k in 1..n {
        let term = h_f64(k) * pow_neg(ln_dd(k), s);
        magnitude += term.norm();
        acc.add(term);
    }
    let (tail, bound) = h_tail(s, n);
    magnitude += tail.norm();
    acc.add(tail);
    let value = acc.value();
    let rounding = 16.0 * f64::EPSILON * magnitude.max(value.norm());
    Ok(SeriesResult {
        value,
        error: bound + rounding,
        tail: TailModel { kind: TailKind::EulerMaclaurin, bound },
    })
}

/// sum_{n>=n0} H_n n^{-s}
fn harmonic_tail(s: Complex64, n0: u64) -> (Complex64, f64) {
    static TERMS: OnceLock<Vec<PowerLog>> = OnceLock::new();
    let terms = TERMS.get_or_init(harmonic_expansion);
    expansion_tail(terms, s, n0 as f64, 1.0)
}

/// sum H_n n^{-s}
pub fn harmonic_dirichlet(s: f64, ctx: &PrecisionContext) -> Result<SeriesResult<f64>> {
    let s = Complex64::new(s, 0.0);
    require_convergent("harmonic_dirichlet", s)?;
    let n = head_cutoff(s);
    let mut acc = Accumulator::new(ctx);
    for k in 1..n {
        acc.add_real(harmonic_f64(k) * (k as f64).powf(-s.re));
    }
    let (tail, bound) = harmonic_tail(s, n);
    acc.add(tail);
    Ok(SeriesResult {
        value: acc.real(),
        error: bound + 8.0 * f64::EPSILON * acc.real().abs(),
        tail: TailModel { kind: TailKind::EulerMaclaurin, bound },
    })
}

// ---------------------------------------------------------------------------
// Weighted sums
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    /// sum h_n cos(4 pi r n) / n^s, 0 <= r <= 1/4
    Cos { r: f64 },
    /// sum (-1)^n h_n / n^s
    Alternating,
    /// sum h_{2n} / n^s
    EvenIndices,
    /// sum_{n>=0} h_{2n+1} / (2n+1)^s
    OddIndices,
    /// sum h_n^2 / n^s
    Squared,
}

/// sum over m = m0, m0 + step, ... of h_m m^{-s}, head plus tail.
fn stepped_h_sum(s: f64, m0: u64, step: u64, ctx: &PrecisionContext) -> (f64, f64) {
    static TERMS: OnceLock<Vec<PowerLog>> = OnceLock::new();
    let terms = TERMS.get_or_init(odd_expansion);
    let cutoff = head_cutoff(Complex64::new(s, 0.0)) * step;
    let mut acc = Accumulator::new(ctx);
    let mut m = m0;
    while m < cutoff {
        acc.add_real(h_f64(m) * (m as f64).powf(-s));
        m += step;
    }
    let (tail, bound) = expansion_tail(terms, Complex64::new(s, 0.0), m as f64, step as f64);
    acc.add(tail);
    (acc.real(), bound)
}

/// Iterated summation by parts:
/// sum_{n>=n0} a_n z^n = z^n0 sum_{k<K} (D^k a)_n0 z^k / (1-z)^{k+1} + R,
/// |R| <= |D^{K-1} a_n0| / |1-z|^K when D^K a keeps one sign.
pub(crate) fn abel_tail(a: impl Fn(u64) -> f64, z: Complex64, n0: u64, depth: usize) -> (Complex64, f64) {
    let one_minus = Complex64::new(1.0, 0.0) - z;
    let mut diffs: Vec<f64> = (0..=depth as u64).map(|j| a(n0 + j)).collect();
    let scale = diffs[0].abs();
    let zn0 = z.powu(n0 as u32);
    let mut total = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    let mut denom = one_minus;
    let mut last_diff = 0.0;
    for _ in 0..depth {
        total += zk * diffs[0] / denom;
        last_diff = diffs[0].abs();
        for j in 0..diffs.len() - 1 {
            diffs[j] = diffs[j + 1] - diffs[j];
        }
        diffs.pop();
        zk *= z;
        denom *= one_minus;
    }
    let m = one_minus.norm();
    let noise: f64 = (0..depth).map(|k| 2f64.powi(k as i32) * f64::EPSILON * scale / m.powi(k as i32 + 1)).sum();
    let bound = last_diff / m.powi(depth as i32) + noise;
    (zn0 * total, bound)
}

const ABEL_DEPTH: usize = 6;

/// sum_{n>=1} h_n n^{-s} e^{i theta n} for theta = 2 pi frac, frac in (0, 1).
fn oscillatory_h_sum(s: f64, frac: f64, ctx: &PrecisionContext) -> Result<SeriesResult<Complex64>> {
    let theta = 2.0 * PI * frac;
    let z = Complex64::from_polar(1.0, theta);
    let gap = (Complex64::new(1.0, 0.0) - z).norm();
    let n0 = 1000u64.max((10.0 / gap).ceil() as u64);
    if n0 > ctx.max_terms {
        return Err(Error::Accuracy {
            op: "weighted_h_sum",
            best: f64::NAN,
            estimate: f64::INFINITY,
        });
    }
    let mut acc = Accumulator::new(ctx);
    for n in 1..n0 {
        let phase = 2.0 * PI * (frac * n as f64).fract();
        acc.add(Complex64::from_polar(h_f64(n) * (n as f64).powf(-s), phase));
    }
    let (tail, bound) = abel_tail(|n| h_f64(n) * (n as f64).powf(-s), z, n0, ABEL_DEPTH);
    acc.add(tail);
    let value = acc.value();
    Ok(SeriesResult {
        value,
        error: bound + 8.0 * f64::EPSILON * value.norm(),
        tail: TailModel { kind: TailKind::OscillatoryCesaro, bound },
    })
}

pub fn weighted_h_sum(weight: Weight, s: f64, ctx: &PrecisionContext) -> Result<SeriesResult<f64>> {
    if !(s >= 2.0) {
        return Err(Error::domain("weighted_h_sum", format!("s={s} must be at least 2")));
    }
    let em = |value: f64, bound: f64| SeriesResult {
        value,
        error: bound + 8.0 * f64::EPSILON * value.abs(),
        tail: TailModel { kind: TailKind::EulerMaclaurin, bound },
    };
    match weight {
        Weight::Cos { r } => {
            if !(0.0..=0.25).contains(&r) {
                return Err(Error::domain("weighted_h_sum", format!("r={r} must lie in [0, 1/4]")));
            }
            if r == 0.0 {
                let v = zeta_h_series(Complex64::new(s, 0.0), ctx)?;
                return Ok(SeriesResult { value: v.value.re, error: v.error, tail: v.tail });
            }
            // cos(4 pi r n) = Re e^{2 pi i (2r) n}
            let v = oscillatory_h_sum(s, 2.0 * r, ctx)?;
            Ok(SeriesResult { value: v.value.re, error: v.error, tail: v.tail })
        }
        Weight::Alternating => {
            let (all, e1) = stepped_h_sum(s, 1, 1, ctx);
            let (even, e2) = stepped_h_sum(s, 2, 2, ctx);
            Ok(em(2.0 * even - all, e1 + 2.0 * e2))
        }
        Weight::EvenIndices => {
            // sum h_{2n} n^{-s} = 2^s sum_{m even} h_m m^{-s}
            let (even, e) = stepped_h_sum(s, 2, 2, ctx);
            let scale = 2f64.powf(s);
            Ok(em(scale * even, scale * e))
        }
        Weight::OddIndices => {
            let (odd, e) = stepped_h_sum(s, 1, 2, ctx);
            Ok(em(odd, e))
        }
        Weight::Squared => {
            static TERMS: OnceLock<Vec<PowerLog>> = OnceLock::new();
            let terms = TERMS.get_or_init(|| square_expansion(&odd_expansion()));
            let sc = Complex64::new(s, 0.0);
            let n = head_cutoff(sc);
            let mut acc = Accumulator::new(ctx);
            for k in 1..n {
                let hk = h_f64(k);
                acc.add_real(hk * hk * (k as f64).powf(-s));
            }
            let (tail, bound) = expansion_tail(terms, sc, n as f64, 1.0);
            acc.add(tail);
            Ok(em(acc.real(), bound))
        }
    }
}

/// sum_k h_k x^{2k} / k for |x| <= 0.99.
pub fn generating_function_lhs(x: f64, ctx: &PrecisionContext) -> Result<SeriesResult<f64>> {
    if !(x.abs() <= 0.99) {
        return Err(Error::Accuracy {
            op: "generating_function_lhs",
            best: f64::NAN,
            estimate: f64::INFINITY,
        });
    }
    let x2 = x * x;
    let mut acc = Accumulator::new(ctx);
    let mut pow = 1.0;
    let mut k = 1u64;
    // h_k / k decreases, so the tail is below t_{k+1} / (1 - x^2)
    loop {
        pow *= x2;
        let term = h_f64(k) * pow / k as f64;
        acc.add_real(term);
        let next = h_f64(k + 1) * pow * x2 / (k + 1) as f64;
        let bound = next / (1.0 - x2);
        if bound <= 1e-17 * acc.real().abs() || pow == 0.0 || k >= ctx.max_terms {
            let value = acc.real();
            return Ok(SeriesResult {
                value,
                error: bound + 4.0 * f64::EPSILON * value.abs(),
                tail: TailModel { kind: TailKind::Geometric, bound },
            });
        }
        k += 1;
    }
}

// ---------------------------------------------------------------------------
// Coefficients of log^2 tanh
// ---------------------------------------------------------------------------

fn r_exact(n: u32) -> BigRational {
    zeta_even_exact(n)
}

/// w_n = (-1)^n (2^{2n-1} - 1) r_n / n
pub fn w_coefficient(n: u32) -> Result<PiRational> {
    if n < 1 {
        return Err(Error::domain("w_coefficient", "n must be at least 1"));
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let factor = BigRational::from_integer((num_bigint::BigInt::one() << (2 * n - 1)) - 1);
    let w = r_exact(n) * factor * rational(sign, n as i64);
    Ok(PiRational::rational(w))
}

/// c_n = sum_{k=1}^{n-1} w_k w_{n-k}
pub fn c_coefficient_series(n: u32) -> Result<PiRational> {
    if n < 2 {
        return Err(Error::domain("c_coefficient_series", "n must be at least 2"));
    }
    let mut c = BigRational::zero();
    for k in 1..n {
        c += w_coefficient(k)?.coeff * w_coefficient(n - k)?.coeff;
    }
    Ok(PiRational::rational(c))
}

// ---------------------------------------------------------------------------
// w(y) = sum h_n / (n^2 + (y / 2 pi)^2)
// ---------------------------------------------------------------------------

const W_TAIL_TERMS: usize = 40;

/// Scaled tail sums n0^{1+2k} sum_{n>=n0} h_n n^{-2-2k} for k < 40, cached per n0.
fn w_tail_table(n0: u64) -> std::sync::Arc<Vec<f64>> {
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex};
    static TABLE: OnceLock<Mutex<HashMap<u64, Arc<Vec<f64>>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = table.lock().unwrap().get(&n0) {
        return t.clone();
    }
    let tails: Vec<f64> = (0..W_TAIL_TERMS)
        .map(|k| h_tail_scaled(Complex64::new(2.0 + 2.0 * k as f64, 0.0), n0).0.re)
        .collect();
    let tails = Arc::new(tails);
    table.lock().unwrap().insert(n0, tails.clone());
    tails
}

/// sum h_n / (n^2 + q) for complex q off the negative squares.
pub fn w_sum(q: Complex64, ctx: &PrecisionContext) -> Result<SeriesResult<Complex64>> {
    let root = q.norm().sqrt();
    // round up to a multiple of 16 so the tail tables are shared
    let n0 = ((2.0 * root + 50.0) / 16.0).ceil() as u64 * 16;
    if n0 > ctx.max_terms {
        return Err(Error::Accuracy {
            op: "w_sum",
            best: f64::NAN,
            estimate: f64::INFINITY,
        });
    }
    for n in 1..n0 {
        if (q + (n * n) as f64).norm() < 1e-12 {
            return Err(Error::Pole {
                op: "w_sum",
                location: format!("q=-{}", n * n),
                order: 1,
                residue: format!("h_{n}"),
            });
        }
    }
    let mut acc = Accumulator::new(ctx);
    for n in 1..n0 {
        let nf = n as f64;
        acc.add(h_f64(n) / (q + nf * nf));
    }
    // 1/(n^2 + q) = sum_k (-q)^k n^{-2-2k}, |q| / n0^2 <= 1/4
    let tails = w_tail_table(n0);
    let ratio = -q / (n0 * n0) as f64;
    let mut pow = Complex64::new(1.0 / n0 as f64, 0.0);
    let mut last = 0.0;
    for t in tails.iter() {
        let term = pow * *t;
        acc.add(term);
        last = term.norm();
        pow *= ratio;
    }
    let value = acc.value();
    let bound = last + h_tail(Complex64::new(2.0, 0.0), n0).1;
    Ok(SeriesResult {
        value,
        error: bound + 8.0 * f64::EPSILON * value.norm(),
        tail: TailModel { kind: TailKind::EulerMaclaurin, bound },
    })
}

/// w(y) for y >= 0.
pub fn w_function(y: f64, ctx: &PrecisionContext) -> Result<f64> {
    if !(y >= 0.0) {
        return Err(Error::domain("w_function", format!("y={y} must be nonnegative")));
    }
    let q = (y / (2.0 * PI)).powi(2);
    Ok(w_sum(Complex64::new(q, 0.0), ctx)?.value.re)
}

// ---------------------------------------------------------------------------
// Classical Euler sums
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalSum {
    /// sum H_n / n^m = ((m+2) zeta(m+1) - sum_{k=1}^{m-2} zeta(k+1) zeta(m-k)) / 2
    EulerHn(u32),
    /// sum H_n / n^{2m+1} = 1/2 sum_{k=2}^{2m} (-1)^k zeta(k) zeta(2m+2-k)
    GeorghiouPhilippou(u32),
    /// (2n+1) zeta(2n) = 2 sum_{k=1}^{n-1} zeta(2k) zeta(2n-2k)
    ZetaEvenRecursion(u32),
}

/// Both sides of a classical identity: (series or single zeta value, zeta products).
pub fn classical_euler_sums(kind: ClassicalSum, ctx: &PrecisionContext) -> Result<(f64, f64)> {
    match kind {
        ClassicalSum::EulerHn(m) => {
            if m < 2 {
                return Err(Error::domain("classical_euler_sums", "Euler's formula needs m >= 2"));
            }
            let lhs = harmonic_dirichlet(m as f64, ctx)?.value;
            let mut rhs = (m + 2) as f64 * zeta_int(m as i64 + 1);
            for k in 1..=(m as i64 - 2) {
                rhs -= zeta_int(k + 1) * zeta_int(m as i64 - k);
            }
            Ok((lhs, rhs / 2.0))
        }
        ClassicalSum::GeorghiouPhilippou(m) => {
            if m < 1 {
                return Err(Error::domain("classical_euler_sums", "m must be at least 1"));
            }
            let lhs = harmonic_dirichlet((2 * m + 1) as f64, ctx)?.value;
            let mut rhs = 0.0;
            for k in 2..=(2 * m as i64) {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                rhs += sign * zeta_int(k) * zeta_int(2 * m as i64 + 2 - k);
            }
            Ok((lhs, rhs / 2.0))
        }
        ClassicalSum::ZetaEvenRecursion(n) => {
            if n < 2 {
                return Err(Error::domain("classical_euler_sums", "the recursion needs n >= 2"));
            }
            let n = n as i64;
            let lhs = (2 * n + 1) as f64 * zeta_int(2 * n);
            let rhs: f64 = (1..n).map(|k| 2.0 * zeta_int(2 * k) * zeta_int(2 * n - 2 * k)).sum();
            Ok((lhs, rhs))
        }
    }
}

/// zeta_h(2m) = -1/2 sum_{k=1}^m (2^{2k+1} - 1) zeta(2m-2k) zeta(2k+1), with zeta(0) = -1/2.
pub fn zeta_h_even_closed_form(m: u32) -> Result<f64> {
    if !(1..=60).contains(&m) {
        return Err(Error::domain("zeta_h_even_closed_form", format!("m={m} outside 1..=60")));
    }
    let m = m as i64;
    let mut acc = 0.0;
    for k in 1..=m {
        acc += (2f64.powi(2 * k as i32 + 1) - 1.0) * zeta_int(2 * m - 2 * k) * zeta_int(2 * k + 1);
    }
    Ok(-0.5 * acc)
}
