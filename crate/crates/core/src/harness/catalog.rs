use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Comparison, IdentitySpec, Params};
use crate::continuation::{
    alpha, alpha_from_beta, beta, beta_from_alpha, digamma_identity_check, exp_kernel_identity,
    exp_kernel_limit, hurwitz_sum, pole_info, recursion_residual, tan_series_check, zeta_h,
    zeta_h_mellin, zeta_h_via_g, zeta_h_via_hurwitz, zhodd_polylog_check,
};
use crate::error::{Error, Result};
use crate::exact::{
    bernoulli_polynomial, c_coefficient, euler_polynomial, rational, reconstruct_from_bernoulli,
    to_f64, PiRational, RationalPolynomial,
};
use crate::h_series::{
    abel_tail, classical_euler_sums, generating_function_lhs, h, weighted_h_sum, zeta_h_even_closed_form, zeta_h_series,
    ClassicalSum, Weight,
};
use crate::precision::{Accumulator, PrecisionContext};
use crate::quadrature::{
    log_tan, log_tangent_integral, mellin_log_tanh, mellin_log_tanh_sq, sine_mode,
    vertical_line_integral, Integrand1D, SingularityHint, T,
};
use crate::special::{catalan_constant, gamma, hurwitz_zeta, riemann_zeta, zeta_int};

fn cx(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn zh(s: f64, ctx: &PrecisionContext) -> Result<f64> {
    Ok(zeta_h_series(cx(s), ctx)?.value.re)
}

fn positive(p: &Params, name: &str, min: i64, max: i64) -> Result<i64> {
    let n = p.get_int(name)?;
    if n < min || n > max {
        return Err(Error::domain("harness", format!("{name}={n} outside {min}..={max}")));
    }
    Ok(n)
}

fn pow2m1(e: i64) -> f64 {
    2f64.powi(e as i32) - 1.0
}

fn capture<T: Copy>(slot: &Cell<Option<Error>>, r: Result<T>, nan: T) -> T {
    r.unwrap_or_else(|e| {
        slot.set(Some(e));
        nan
    })
}

fn ints(name: &'static str, range: std::ops::RangeInclusive<i64>) -> Vec<Params> {
    range.map(|n| Params::new().int(name, n)).collect()
}

fn reals(name: &'static str, values: &[f64]) -> Vec<Params> {
    values.iter().map(|&x| Params::new().real(name, x)).collect()
}

fn r_grid(upper: f64) -> Vec<Params> {
    let steps = (upper / 0.05).round() as i64;
    (0..=steps)
        .map(|j| Params::new().real("r", (j as f64 * 0.05 * 100.0).round() / 100.0))
        .collect()
}

// ---------------------------------------------------------------------------
// Test polynomials
// ---------------------------------------------------------------------------

const POLY_SEED: u64 = 0x6c6f_6774_616e;

/// `B_n` and `E_n` (odd n) or `R_k`, a seeded random combination of
/// B_1, B_3, ..., B_9 with small rational coefficients.
pub fn test_polynomial(label: &str) -> Result<RationalPolynomial> {
    let bad = || Error::domain("test_polynomial", format!("unknown polynomial `{label}`"));
    let (kind, index) = label.split_once('_').ok_or_else(bad)?;
    let n: usize = index.parse().map_err(|_| bad())?;
    match kind {
        "B" | "E" if n % 2 == 1 && n <= 21 => Ok(if kind == "B" {
            bernoulli_polynomial(n)
        } else {
            euler_polynomial(n)
        }),
        "R" => {
            let mut rng = ChaCha8Rng::seed_from_u64(POLY_SEED + n as u64);
            let lambdas: Vec<PiRational> = (0..5)
                .map(|_| {
                    let num: i64 = rng.gen_range(-9..=9);
                    let den: i64 = rng.gen_range(1..=6);
                    PiRational::rational(rational(num, den))
                })
                .collect();
            reconstruct_from_bernoulli(&lambdas)
        }
        _ => Err(bad()),
    }
}

fn polynomial_grid() -> Vec<Params> {
    let mut labels: Vec<String> = Vec::new();
    for n in [1, 3, 5, 7, 9] {
        labels.push(format!("B_{n}"));
    }
    for n in [1, 3, 5, 7, 9] {
        labels.push(format!("E_{n}"));
    }
    for k in 0..5 {
        labels.push(format!("R_{k}"));
    }
    labels.iter().map(|l| Params::new().label("P", l)).collect()
}

/// int_0^{pi/2} P(2x/pi) log(tan x) dx
fn polynomial_log_tan(p: &RationalPolynomial, ctx: &PrecisionContext) -> Result<f64> {
    let coeffs = p.float_coeffs();
    let f = Integrand1D::new(SingularityHint::LogAtBoth, move |x: f64| {
        let u = x / FRAC_PI_2;
        coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
    });
    Ok(log_tangent_integral(&f, ctx)?.value)
}

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

fn lemma1(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let n = positive(p, "n", 1, 10_000)?;
    let lhs = log_tangent_integral(&sine_mode(n as u32), ctx)?.value;
    let rhs = -to_f64(&h(n as u64)?) / n as f64;
    Ok(Comparison::real(lhs, rhs))
}

/// -2 sum_{k>=0} cos(2(2k+1)x)/(2k+1), summed by parts past the head.
fn logtan_fourier_series(x: f64, ctx: &PrecisionContext) -> Result<f64> {
    let z = Complex64::from_polar(1.0, 4.0 * x);
    let gap = (cx(1.0) - z).norm();
    let n0 = 1000u64.max((10.0 / gap).ceil() as u64);
    if n0 > ctx.max_terms {
        return Err(Error::Accuracy { op: "logtan_fourier", best: f64::NAN, estimate: f64::INFINITY });
    }
    let mut acc = Accumulator::new(ctx);
    for k in 0..n0 {
        acc.add_real((2.0 * (2 * k + 1) as f64 * x).cos() / (2 * k + 1) as f64);
    }
    let (tail, _) = abel_tail(|k| 1.0 / (2 * k + 1) as f64, z, n0, 6);
    acc.add(Complex64::from_polar(1.0, 2.0 * x) * tail);
    Ok(-2.0 * acc.real())
}

fn logtan_fourier(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let x = p.get_real("x")?;
    if !(x > 0.0 && x < FRAC_PI_2) {
        return Err(Error::domain("LOGTAN-FOURIER", "x must lie in (0, pi/2)"));
    }
    Ok(Comparison::real(log_tan(x, FRAC_PI_2 - x), logtan_fourier_series(x, ctx)?))
}

fn parseval_pi3(_: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let f = Integrand1D::with_endpoints(SingularityHint::LogAtBoth, |_, da, db| {
        let l = log_tan(da, db);
        l * l
    });
    let lhs = crate::quadrature::integrate_finite(&f, 0.0, FRAC_PI_2, ctx)?.value;
    Ok(Comparison::real(lhs, PI.powi(3) / 8.0))
}

fn hsq_pi4(_: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let lhs = weighted_h_sum(Weight::Squared, 2.0, ctx)?.value;
    Ok(Comparison::real(lhs, PI.powi(4) / 32.0))
}

fn chen(_: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    Ok(Comparison::real(zh(2.0, ctx)?, 1.75 * zeta_int(3)))
}

fn catalan_step(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let g = catalan_constant();
    match p.get_label("form")? {
        "quadrature" => Ok(Comparison::real(-T(0.25, ctx)?, g)),
        "series" => {
            let odd = weighted_h_sum(Weight::OddIndices, 2.0, ctx)?.value;
            Ok(Comparison::real(2.0 / PI * odd, g))
        }
        other => Err(Error::domain("CATALAN-STEP", format!("unknown form `{other}`"))),
    }
}

fn alt_sum(_: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let lhs = weighted_h_sum(Weight::Alternating, 2.0, ctx)?.value;
    Ok(Comparison::real(lhs, 1.75 * zeta_int(3) - PI * catalan_constant()))
}

fn even_index_sum(_: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    // sum h_{2n}/(2n)^2
    let lhs = 0.25 * weighted_h_sum(Weight::EvenIndices, 2.0, ctx)?.value;
    Ok(Comparison::real(lhs, 1.75 * zeta_int(3) - FRAC_PI_2 * catalan_constant()))
}

fn cos_sum(r: f64, ctx: &PrecisionContext) -> Result<f64> {
    Ok(weighted_h_sum(Weight::Cos { r }, 2.0, ctx)?.value)
}

fn cor1(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let r = p.get_real("r")?;
    if !(0.0..=0.25).contains(&r) {
        return Err(Error::domain("COR1", "r must lie in [0, 1/4]"));
    }
    let rhs = -7.0 / (4.0 * PI) * zeta_int(3) + cos_sum(r, ctx)? / PI;
    Ok(Comparison::real(T(r, ctx)?, rhs))
}

fn bradley(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let r = p.get_real("r")?;
    if !(0.0..=0.5).contains(&r) {
        return Err(Error::domain("BRADLEY-SYM", "r must lie in [0, 1/2]"));
    }
    Ok(Comparison::real(T(0.5 - r, ctx)?, T(r, ctx)?))
}

fn apery(_: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    // cos(n pi/5), cos(3 n pi/5), (-1)^n are cos(4 pi r n) at r = 1/20, 3/20, 1/4
    let rhs = 2.0 / 7.0 * (5.0 * cos_sum(0.05, ctx)? - 5.0 * cos_sum(0.15, ctx)? + 2.0 * cos_sum(0.25, ctx)?);
    Ok(Comparison::real(zeta_int(3), rhs))
}

fn cor2(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let m = positive(p, "m", 1, 60)?;
    Ok(Comparison::real(zh(2.0 * m as f64, ctx)?, zeta_h_even_closed_form(m as u32)?))
}

fn cor2_rewrite(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let m = positive(p, "m", 2, 60)?;
    let s: f64 = (1..m).map(|k| pow2m1(2 * k + 1) * zeta_int(2 * m - 2 * k) * zeta_int(2 * k + 1)).sum();
    let rhs = pow2m1(2 * m + 1) / 4.0 * zeta_int(2 * m + 1) - 0.5 * s;
    Ok(Comparison::real(zh(2.0 * m as f64, ctx)?, rhs))
}

/// 8/pi^2 / (2^{2m+1} - 1) sum_{k=1}^m zeta_h(2k) (2^{2m-2k+2} - 1) zeta(2m-2k+2)
fn cor3_rhs(m: i64, zeta_h_even: impl Fn(i64) -> Result<f64>) -> Result<f64> {
    let mut s = 0.0;
    for k in 1..=m {
        s += zeta_h_even(2 * k)? * pow2m1(2 * m - 2 * k + 2) * zeta_int(2 * m - 2 * k + 2);
    }
    Ok(8.0 / (PI * PI) / pow2m1(2 * m + 1) * s)
}

fn cor3(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let m = positive(p, "m", 1, 60)?;
    let rhs = match p.label_or("via", "series")? {
        "series" => cor3_rhs(m, |s| zh(s as f64, ctx))?,
        // zeta_h(2k) rebuilt from odd zeta values first
        "cor2" => cor3_rhs(m, |s| zeta_h_even_closed_form(s as u32 / 2))?,
        other => return Err(Error::domain("COR3", format!("unknown route `{other}`"))),
    };
    Ok(Comparison::real(zeta_int(2 * m + 1), rhs))
}

fn th2(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let poly = test_polynomial(p.get_label("P")?)?;
    if !poly.is_antisymmetric() {
        return Err(Error::domain("TH2", "P must satisfy P(1-x) = -P(x)"));
    }
    let lhs = polynomial_log_tan(&poly, ctx)?;
    let deg = poly.degree().unwrap_or(0);
    let zero = num_rational::BigRational::zero();
    let mut rhs = 0.0;
    for k in 1..=(deg + 2) / 2 {
        let d = to_f64(&poly.derivative(2 * k - 2).eval(&zero));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        rhs += 4.0 * sign / (2.0 * PI).powi(2 * k as i32 - 1) * d * zh(2.0 * k as f64, ctx)?;
    }
    Ok(Comparison::real(lhs, rhs))
}

fn lp(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let poly = test_polynomial(p.get_label("P")?)?;
    if !poly.is_antisymmetric() {
        return Err(Error::domain("LP", "P must satisfy P(1-x) = -P(x)"));
    }
    let lhs = polynomial_log_tan(&poly, ctx)?;
    let deg = poly.degree().unwrap_or(0);
    let mut rhs = 0.0;
    for k in 1..=(deg + 1) / 2 {
        let ck = to_f64(&c_coefficient(&poly, k)?);
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        rhs += sign / PI.powi(2 * k as i32 - 1) * ck * zeta_int(2 * k as i64 + 1);
    }
    Ok(Comparison::real(lhs, rhs))
}

fn brn(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let m = positive(p, "m", 1, 10)?;
    let lhs = polynomial_log_tan(&bernoulli_polynomial(2 * m as usize - 1), ctx)?;
    let fact: f64 = (1..2 * m).map(|i| i as f64).product();
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let rhs = 2.0 * sign * fact / (2.0 * PI).powi(2 * m as i32 - 1) * zh(2.0 * m as f64, ctx)?;
    Ok(Comparison::real(lhs, rhs))
}

fn expz(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let z = p.get_complex("z")?;
    let (lhs, rhs) = exp_kernel_identity(z, ctx)?;
    Ok(Comparison { lhs, rhs })
}

fn expz_limit(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let k = p.get_int("k")?;
    let (lhs, rhs) = exp_kernel_limit(k, ctx)?;
    Ok(Comparison { lhs, rhs })
}

fn digamma_id(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let (lhs, rhs) = digamma_identity_check(p.get_complex("z")?, ctx)?;
    Ok(Comparison { lhs, rhs })
}

fn tan_sc(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let (lhs, rhs) = tan_series_check(p.get_real("x")?, ctx)?;
    Ok(Comparison::real(lhs, rhs))
}

fn gf(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let x = p.get_real("x")?;
    let lhs = generating_function_lhs(x, ctx)?.value;
    let l = ((1.0 + x) / (1.0 - x)).ln();
    Ok(Comparison::real(lhs, 0.25 * l * l))
}

fn alpha_beta(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let n = positive(p, "n", 1, 60)? as u32;
    match p.get_label("form")? {
        "beta" => Ok(Comparison::real(beta(n, ctx)?, beta_from_alpha(n, ctx)?)),
        "alpha" => Ok(Comparison::real(alpha(n, ctx)?, alpha_from_beta(n, ctx)?)),
        "residual" => Ok(Comparison::real(recursion_residual(n, ctx)?, 0.0)),
        other => Err(Error::domain("ALPHA-BETA", format!("unknown form `{other}`"))),
    }
}

fn mellin_zh(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let s = p.get_complex("s")?;
    if s.re <= 1.05 {
        return Err(Error::domain("MELLIN-ZH", "Re s must exceed 1.05"));
    }
    let series = zeta_h_series(s, ctx)?.value;
    match p.get_label("form")? {
        "integral" => {
            let lhs = mellin_log_tanh_sq(s, ctx)?;
            let rhs = ((cx(2.0) - s) * 4f64.ln()).exp() * gamma(s - 1.0, ctx)? * series;
            Ok(Comparison { lhs, rhs })
        }
        "split" => Ok(Comparison { lhs: zeta_h_mellin(s, ctx)?.value, rhs: series }),
        other => Err(Error::domain("MELLIN-ZH", format!("unknown form `{other}`"))),
    }
}

fn ach_cross(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let s = p.get_complex("s")?;
    if s.re > 1.0 {
        Ok(Comparison { lhs: zeta_h_via_hurwitz(s, ctx)?, rhs: zeta_h(s, ctx)? })
    } else {
        Ok(Comparison { lhs: zeta_h_via_g(s, ctx)?, rhs: zeta_h_mellin(s, ctx)?.value })
    }
}

fn residue(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let k = positive(p, "k", 0, 20)? as u32;
    let info = pole_info(k, ctx)?;
    if info.order == 2 {
        // real part: leading coefficient, imaginary part: residue
        Ok(Comparison {
            lhs: Complex64::new(info.numeric_leading, info.numeric_residue),
            rhs: Complex64::new(info.leading_coefficient, info.residue),
        })
    } else {
        Ok(Comparison::real(info.numeric_residue, info.residue))
    }
}

fn trivial_zero(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let n = positive(p, "n", 1, 20)?;
    Ok(Comparison { lhs: zeta_h(cx(-2.0 * n as f64), ctx)?, rhs: cx(0.0) })
}

fn hurwitz_connection(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let s = p.get_complex("s")?;
    Ok(Comparison { lhs: hurwitz_sum(s, ctx)?.value, rhs: zeta_h_series(s, ctx)?.value })
}

fn zhodd(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let n = positive(p, "n", 1, 10)? as u32;
    let (lhs, rhs) = zhodd_polylog_check(n, ctx)?;
    Ok(Comparison { lhs, rhs })
}

fn h4_mellin(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let s = p.get_complex("s")?;
    let lhs = mellin_log_tanh(s, ctx)?;
    let rhs = ((cx(1.0) - s) * 4f64.ln()).exp() * gamma(s - 1.0, ctx)? * hurwitz_zeta(s, 0.5, ctx)?;
    Ok(Comparison { lhs, rhs })
}

fn parseval_mellin(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let sigma = p.get_real("sigma")?;
    if sigma <= 1.0 {
        return Err(Error::domain("PARSEVAL-MELLIN", "sigma must exceed 1"));
    }
    let failed = Cell::new(None);
    let g = |s: Complex64| -> f64 {
        let v = capture(&failed, gamma(s - 1.0, ctx), cx(f64::NAN))
            * capture(&failed, hurwitz_zeta(s, 0.5, ctx), cx(f64::NAN));
        v.norm_sqr()
    };
    let line = vertical_line_integral(g, sigma, true, ctx)?.value;
    if let Some(e) = failed.take() {
        return Err(e);
    }
    let lhs = line / (8.0 * PI);
    let rhs = gamma(cx(2.0 * sigma - 2.0), ctx)?.re * zh(2.0 * sigma - 1.0, ctx)?;
    Ok(Comparison::real(lhs, rhs))
}

fn zeta3_line(_: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let failed = Cell::new(None);
    let g = |s: Complex64| -> f64 {
        let t = s.im;
        let z = capture(&failed, riemann_zeta(s, ctx), cx(f64::NAN));
        (9.0 - 4.0 * 2f64.sqrt() * (t * LN_2).cos()) / (PI * t).cosh() * z.norm_sqr()
    };
    // integrand even in t: the doubled half-line integral, halved
    let whole = vertical_line_integral(g, 1.5, true, ctx)?.value;
    if let Some(e) = failed.take() {
        return Err(e);
    }
    Ok(Comparison::real(zeta_int(3), whole / 2.0 / 7.0))
}

fn classical(kind: fn(u32) -> ClassicalSum, name: &'static str) -> impl Fn(&Params, &PrecisionContext) -> Result<Comparison> {
    move |p, ctx| {
        let n = p.get_int(name)?;
        if !(0..=40).contains(&n) {
            return Err(Error::domain("classical", format!("{name}={n} outside 0..=40")));
        }
        let (l, r) = classical_euler_sums(kind(n as u32), ctx)?;
        Ok(Comparison::real(l, r))
    }
}

fn classical_euler(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    classical(ClassicalSum::EulerHn, "m")(p, ctx)
}

fn classical_gp(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    classical(ClassicalSum::GeorghiouPhilippou, "m")(p, ctx)
}

fn classical_even(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    classical(ClassicalSum::ZetaEvenRecursion, "n")(p, ctx)
}

fn logtan_taylor(p: &Params, ctx: &PrecisionContext) -> Result<Comparison> {
    let x = p.get_real("x")?;
    if !(x > 0.0 && x < FRAC_PI_2) {
        return Err(Error::domain("LOGTAN-TAYLOR", "x must lie in (0, pi/2)"));
    }
    let mut acc = Accumulator::new(ctx);
    acc.add_real(x.ln());
    let q = (x / PI) * (x / PI);
    let mut pow = 1.0;
    for k in 1..=128i64 {
        pow *= q;
        let term = 2.0 * pow2m1(2 * k - 1) / k as f64 * zeta_int(2 * k) * pow;
        acc.add_real(term);
        if term.abs() < 1e-18 {
            return Ok(Comparison::real(log_tan(x, FRAC_PI_2 - x), acc.real()));
        }
    }
    Err(Error::Accuracy { op: "LOGTAN-TAYLOR", best: acc.real(), estimate: 1e-18 })
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

fn none() -> Vec<Params> {
    vec![Params::new()]
}

pub fn catalog() -> &'static [IdentitySpec] {
    static CATALOG: OnceLock<Vec<IdentitySpec>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Looks up a family by id.
pub fn find(id: &str) -> Result<&'static IdentitySpec> {
    catalog()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::NotFound(id.to_string()))
}

fn build() -> Vec<IdentitySpec> {
    vec![
        IdentitySpec {
            id: "LEMMA1",
            source: "int_0^{pi/2} sin(4nx) log(tan x) dx = -h_n/n",
            parameter_domain: "integer n >= 1",
            default_tol: 1e-9,
            method_notes: "lhs: tanh-sinh quadrature; rhs: exact h_n",
            grid: || ints("n", 1..=12),
            eval: lemma1,
        },
        IdentitySpec {
            id: "LOGTAN-FOURIER",
            source: "log(tan x) = -2 sum_{k>=0} cos(2(2k+1)x)/(2k+1)",
            parameter_domain: "real x in (0, pi/2)",
            default_tol: 1e-8,
            method_notes: "lhs: libm logarithms; rhs: direct head plus summation by parts",
            grid: || reals("x", &[0.1, 0.4, FRAC_PI_4, 1.0, 1.4]),
            eval: logtan_fourier,
        },
        IdentitySpec {
            id: "PARSEVAL-PI3",
            source: "int_0^{pi/2} log^2(tan x) dx = pi^3/8",
            parameter_domain: "none",
            default_tol: 1e-10,
            method_notes: "lhs: tanh-sinh quadrature; rhs: closed form",
            grid: none,
            eval: parseval_pi3,
        },
        IdentitySpec {
            id: "HSQ-PI4",
            source: "sum h_n^2/n^2 = pi^4/32",
            parameter_domain: "none",
            default_tol: 1e-10,
            method_notes: "lhs: direct head plus Euler-Maclaurin tail on the squared expansion; rhs: closed form",
            grid: none,
            eval: hsq_pi4,
        },
        IdentitySpec {
            id: "CHEN",
            source: "sum h_n/n^2 = (7/4) zeta(3)",
            parameter_domain: "none",
            default_tol: 1e-10,
            method_notes: "lhs: h-series with Euler-Maclaurin tail; rhs: Riemann zeta",
            grid: none,
            eval: chen,
        },
        IdentitySpec {
            id: "CATALAN-STEP",
            source: "-T(1/4) = (2/pi) sum_{n>=0} h_{2n+1}/(2n+1)^2 = G",
            parameter_domain: "form in {quadrature, series}",
            default_tol: 1e-8,
            method_notes: "lhs: quadrature of log tan on (0, pi/4) or odd-index series; rhs: Catalan constant",
            grid: || {
                vec![Params::new().label("form", "quadrature"), Params::new().label("form", "series")]
            },
            eval: catalan_step,
        },
        IdentitySpec {
            id: "ALT-SUM",
            source: "sum (-1)^n h_n/n^2 = (7/4) zeta(3) - pi G",
            parameter_domain: "none",
            default_tol: 1e-8,
            method_notes: "lhs: even-step and unit-step Euler-Maclaurin sums; rhs: constants",
            grid: none,
            eval: alt_sum,
        },
        IdentitySpec {
            id: "EVEN-INDEX-SUM",
            source: "sum h_{2n}/(2n)^2 = (7/4) zeta(3) - (pi/2) G",
            parameter_domain: "none",
            default_tol: 1e-8,
            method_notes: "lhs: even-step Euler-Maclaurin sum; rhs: constants",
            grid: none,
            eval: even_index_sum,
        },
        IdentitySpec {
            id: "COR1",
            source: "T(r) = -7 zeta(3)/(4 pi) + (1/pi) sum h_n cos(4 n r pi)/n^2",
            parameter_domain: "real r in [0, 1/4]",
            default_tol: 1e-6,
            method_notes: "lhs: quadrature; rhs: cosine sum with summation-by-parts tail",
            grid: || r_grid(0.25),
            eval: cor1,
        },
        IdentitySpec {
            id: "BRADLEY-SYM",
            source: "T(1/2 - r) = T(r)",
            parameter_domain: "real r in [0, 1/2]",
            default_tol: 1e-9,
            method_notes: "both sides: quadrature over different intervals",
            grid: || r_grid(0.5),
            eval: bradley,
        },
        IdentitySpec {
            id: "APERY-REP",
            source: "zeta(3) = (2/7) sum h_n/n^2 (5 cos(n pi/5) - 5 cos(3 n pi/5) + 2 (-1)^n)",
            parameter_domain: "none",
            default_tol: 1e-5,
            method_notes: "lhs: Riemann zeta; rhs: three cosine sums with summation-by-parts tails",
            grid: none,
            eval: apery,
        },
        IdentitySpec {
            id: "COR2",
            source: "zeta_h(2m) = -1/2 sum_{k=1}^m (2^{2k+1}-1) zeta(2m-2k) zeta(2k+1)",
            parameter_domain: "integer m >= 1",
            default_tol: 1e-10,
            method_notes: "lhs: h-series; rhs: Riemann zeta products",
            grid: || ints("m", 1..=5),
            eval: cor2,
        },
        IdentitySpec {
            id: "COR2-REWRITE",
            source: "zeta_h(2m) = (2^{2m+1}-1)/4 zeta(2m+1) - 1/2 sum_{k=1}^{m-1} (2^{2k+1}-1) zeta(2m-2k) zeta(2k+1)",
            parameter_domain: "integer m >= 2",
            default_tol: 1e-10,
            method_notes: "lhs: h-series; rhs: Riemann zeta products",
            grid: || ints("m", 2..=5),
            eval: cor2_rewrite,
        },
        IdentitySpec {
            id: "TH2",
            source: "int P(2x/pi) log(tan x) dx = 4 sum_k (-1)^k/(2pi)^{2k-1} P^{(2k-2)}(0) zeta_h(2k)",
            parameter_domain: "antisymmetric polynomial P: B_n, E_n (odd n) or R_k",
            default_tol: 1e-8,
            method_notes: "lhs: quadrature; rhs: exact derivatives and h-series",
            grid: polynomial_grid,
            eval: th2,
        },
        IdentitySpec {
            id: "LP",
            source: "int P(2x/pi) log(tan x) dx = sum_k (-1)^{k-1}/pi^{2k-1} c_k(P) zeta(2k+1)",
            parameter_domain: "antisymmetric polynomial P: B_n, E_n (odd n) or R_k",
            default_tol: 1e-8,
            method_notes: "lhs: quadrature; rhs: exact c_k and Riemann zeta",
            grid: polynomial_grid,
            eval: lp,
        },
        IdentitySpec {
            id: "BRN",
            source: "int B_{2m-1}(2x/pi) log(tan x) dx = 2(-1)^{m-1}(2m-1)!/(2pi)^{2m-1} zeta_h(2m)",
            parameter_domain: "integer m >= 1",
            default_tol: 1e-8,
            method_notes: "lhs: quadrature; rhs: h-series",
            grid: || ints("m", 1..=5),
            eval: brn,
        },
        IdentitySpec {
            id: "COR3",
            source: "zeta(2m+1) = 8/pi^2 / (2^{2m+1}-1) sum_{k=1}^m zeta_h(2k) (2^{2m-2k+2}-1) zeta(2m-2k+2)",
            parameter_domain: "integer m >= 1; via in {series, cor2}",
            default_tol: 1e-10,
            method_notes: "lhs: Riemann zeta; rhs: h-series values, or values rebuilt from odd zeta (round trip)",
            grid: || {
                let mut g = ints("m", 1..=5);
                g.extend((1..=5).map(|m| Params::new().int("m", m).label("via", "cor2")));
                g
            },
            eval: cor3,
        },
        IdentitySpec {
            id: "EXPZ",
            source: "int e^{2xz} log(tan x) dx = (e^{pi z}-1)/pi sum h_n/(n^2 + (z/2)^2)",
            parameter_domain: "complex z away from 2ik",
            default_tol: 1e-8,
            method_notes: "lhs: complex quadrature; rhs: h-weighted rational sum with tail expansion",
            grid: || {
                [
                    Complex64::new(1.0, 0.0),
                    Complex64::new(1.0, 1.0),
                    Complex64::new(3.0, 0.0),
                    Complex64::new(0.5, -0.5),
                    Complex64::new(-2.0, 0.0),
                ]
                .iter()
                .map(|&z| Params::new().complex("z", z))
                .collect()
            },
            eval: expz,
        },
        IdentitySpec {
            id: "EXPZ-LIMIT",
            source: "int e^{4ikx} log(tan x) dx = -i h_|k|/k",
            parameter_domain: "nonzero integer k",
            default_tol: 1e-9,
            method_notes: "lhs: complex quadrature; rhs: exact h_k",
            grid: || ints("k", 1..=6),
            eval: expz_limit,
        },
        IdentitySpec {
            id: "DIGAMMA-ID",
            source: "(pi/2z)(psi((1+iz)/2) - psi(1/2) - i(pi/2) tanh(pi z/2)) = tanh(pi z/2) sum h_n/(n^2 + (z/2)^2)",
            parameter_domain: "complex z off the singular set",
            default_tol: 1e-8,
            method_notes: "lhs: complex digamma; rhs: h-weighted rational sum",
            grid: || {
                [0.5, 1.0, 2.0]
                    .iter()
                    .map(|&x| Params::new().complex("z", cx(x)))
                    .chain(std::iter::once(Params::new().complex("z", Complex64::new(0.7, 0.2))))
                    .collect()
            },
            eval: digamma_id,
        },
        IdentitySpec {
            id: "TAN-SC",
            source: "tan x = S(x)/C(x), S = 1/4 sum (2^{2n+1}-1) alpha_n x^{2n-1}, C = sum beta_n x^{2n-2}",
            parameter_domain: "real |x| <= 1.2",
            default_tol: 1e-8,
            method_notes: "lhs: libm tangent; rhs: power series in alpha_n, beta_n",
            grid: || reals("x", &[0.25, 0.5, 1.0]),
            eval: tan_sc,
        },
        IdentitySpec {
            id: "GF",
            source: "sum h_k x^{2k}/k = (1/4) log^2((1+x)/(1-x))",
            parameter_domain: "real |x| <= 0.99",
            default_tol: 1e-8,
            method_notes: "lhs: power series with geometric tail bound; rhs: logarithm",
            grid: || reals("x", &[0.1, 0.5, 0.9, -0.7]),
            eval: gf,
        },
        IdentitySpec {
            id: "ALPHA-BETA",
            source: "beta_n = -1/2 sum (2^{2k+1}-1) r_{n-k} alpha_k; alpha_n = 8/(2^{2n+1}-1) sum (2^{2n-2k+2}-1) r_{n-k+1} beta_k",
            parameter_domain: "integer n >= 1 (residual: n >= 2); form in {beta, alpha, residual}",
            default_tol: 1e-10,
            method_notes: "alpha from Riemann zeta, beta from the h-series; residual uses the exponent 2n-2k+2",
            grid: || {
                let mut g = Vec::new();
                for n in 1..=5 {
                    g.push(Params::new().int("n", n).label("form", "beta"));
                }
                for n in 1..=5 {
                    g.push(Params::new().int("n", n).label("form", "alpha"));
                }
                for n in 2..=5 {
                    g.push(Params::new().int("n", n).label("form", "residual"));
                }
                g
            },
            eval: alpha_beta,
        },
        IdentitySpec {
            id: "MELLIN-ZH",
            source: "int_0^inf log^2(tanh x) x^{s-2} dx = 4^{2-s} zeta_h(s) Gamma(s-1)",
            parameter_domain: "complex s, Re s > 1.05; form in {integral, split}",
            default_tol: 1e-8,
            method_notes: "integral: quadrature vs h-series; split: w_n/c_n continuation vs h-series",
            grid: || {
                let pts = [cx(2.0), cx(3.0), Complex64::new(2.0, 3.0)];
                let mut g = Vec::new();
                for form in ["integral", "split"] {
                    for s in pts {
                        g.push(Params::new().complex("s", s).label("form", form));
                    }
                }
                g
            },
            eval: mellin_zh,
        },
        IdentitySpec {
            id: "ACH-CROSS",
            source: "zeta_h(s) = (2pi)^{s-1}/(2 Gamma(s-1) cos(pi s/2)) G(2-s)",
            parameter_domain: "complex s off odd integers",
            default_tol: 1e-8,
            method_notes: "Re s > 1: Hurwitz-kernel quadrature vs h-series; Re s <= 1: G continuation vs Mellin split",
            grid: || {
                [cx(2.2), cx(2.5), cx(3.5), cx(4.0), Complex64::new(2.0, 2.0), cx(-0.5), cx(0.3)]
                    .iter()
                    .map(|&s| Params::new().complex("s", s))
                    .collect()
            },
            eval: ach_cross,
        },
        IdentitySpec {
            id: "RESIDUE",
            source: "Res_{s=1} zeta_h = log 2 + gamma/2 (double pole, leading 1/2); Res_{s=1-2n} = -B_2n(1/2)/(4n)",
            parameter_domain: "k = 0 (s = 1) or k = n >= 1 (s = 1-2n)",
            default_tol: 1e-6,
            method_notes: "lhs: trapezoid rule on a circle of radius 1/4; rhs: exact formulas (k = 0 packs leading + i residue)",
            grid: || ints("k", 0..=2),
            eval: residue,
        },
        IdentitySpec {
            id: "TRIVIAL-ZERO",
            source: "zeta_h(-2n) = 0",
            parameter_domain: "integer n >= 1",
            default_tol: 1e-8,
            method_notes: "lhs: Mellin-split continuation, where both reciprocal gamma factors vanish",
            grid: || ints("n", 1..=3),
            eval: trivial_zero,
        },
        IdentitySpec {
            id: "HURWITZ-SUM",
            source: "zeta_h(s) = sum zeta(s, n)/(2n-1)",
            parameter_domain: "complex s, Re s > 1.05",
            default_tol: 1e-10,
            method_notes: "lhs: Hurwitz zeta head plus h tail; rhs: h-series",
            grid: || {
                [cx(3.0), cx(2.5), cx(4.0)].iter().map(|&s| Params::new().complex("s", s)).collect()
            },
            eval: hurwitz_connection,
        },
        IdentitySpec {
            id: "ZHODD-POLYLOG",
            source: "int Li_2n(e^{4ix}) log(tan x) dx = -i zeta_h(2n+1)",
            parameter_domain: "integer n >= 1",
            default_tol: 1e-8,
            method_notes: "lhs: complex quadrature of the unit-circle polylogarithm; rhs: h-series",
            grid: || ints("n", 1..=2),
            eval: zhodd,
        },
        IdentitySpec {
            id: "H4-MELLIN",
            source: "-int_0^inf log(tanh x) x^{s-2} dx = 4^{1-s} Gamma(s-1) zeta(s, 1/2)",
            parameter_domain: "complex s, Re s > 1",
            default_tol: 1e-9,
            method_notes: "lhs: quadrature; rhs: gamma and Hurwitz zeta",
            grid: || {
                [cx(2.0), cx(3.0), cx(2.5)].iter().map(|&s| Params::new().complex("s", s)).collect()
            },
            eval: h4_mellin,
        },
        IdentitySpec {
            id: "PARSEVAL-MELLIN",
            source: "(1/8pi) int |Gamma(s-1) zeta(s, 1/2)|^2 dt = Gamma(2 sigma-2) zeta_h(2 sigma-1), s = sigma + it",
            parameter_domain: "real sigma > 1",
            default_tol: 1e-6,
            method_notes: "lhs: vertical-line quadrature; rhs: gamma and h-series",
            grid: || reals("sigma", &[1.5, 2.0]),
            eval: parseval_mellin,
        },
        IdentitySpec {
            id: "ZETA3-LINE",
            source: "zeta(3) = (1/7) int_0^inf (9 - 4 sqrt2 cos(t log 2))/cosh(pi t) |zeta(3/2+it)|^2 dt",
            parameter_domain: "none",
            default_tol: 1e-6,
            method_notes: "lhs: Riemann zeta; rhs: vertical-line quadrature",
            grid: none,
            eval: zeta3_line,
        },
        IdentitySpec {
            id: "CLASSICAL-EULER",
            source: "2 sum H_n/n^m = (m+2) zeta(m+1) - sum_{k=1}^{m-2} zeta(k+1) zeta(m-k)",
            parameter_domain: "integer m >= 2",
            default_tol: 1e-10,
            method_notes: "lhs: harmonic series with Euler-Maclaurin tail; rhs: zeta products",
            grid: || ints("m", 2..=6),
            eval: classical_euler,
        },
        IdentitySpec {
            id: "CLASSICAL-GP",
            source: "sum H_n/n^{2m+1} = 1/2 sum_{k=2}^{2m} (-1)^k zeta(k) zeta(2m+2-k)",
            parameter_domain: "integer m >= 1",
            default_tol: 1e-10,
            method_notes: "lhs: harmonic series with Euler-Maclaurin tail; rhs: zeta products",
            grid: || ints("m", 1..=4),
            eval: classical_gp,
        },
        IdentitySpec {
            id: "CLASSICAL-EVEN",
            source: "(2n+1) zeta(2n) = 2 sum_{k=1}^{n-1} zeta(2k) zeta(2n-2k)",
            parameter_domain: "integer n >= 2",
            default_tol: 1e-10,
            method_notes: "both sides: exact-rational even zeta values in double-double",
            grid: || ints("n", 2..=6),
            eval: classical_even,
        },
        IdentitySpec {
            id: "LOGTAN-TAYLOR",
            source: "log(tan x) = log x + 2 sum_k (2^{2k-1}-1)/k zeta(2k) (x/pi)^{2k}",
            parameter_domain: "real x in (0, pi/2)",
            default_tol: 1e-10,
            method_notes: "lhs: libm logarithms; rhs: power series in even zeta values",
            grid: || reals("x", &[0.1, 0.5, 1.0, 1.3]),
            eval: logtan_taylor,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_polynomials_are_antisymmetric() {
        for p in polynomial_grid() {
            let label = p.get_label("P").unwrap().to_string();
            let poly = test_polynomial(&label).unwrap();
            assert!(poly.is_antisymmetric(), "{label}");
            assert!(poly.degree().unwrap_or(0) <= 9, "{label}");
        }
        assert_eq!(test_polynomial("R_2").unwrap(), test_polynomial("R_2").unwrap());
        assert!(test_polynomial("B_4").is_err());
        assert!(test_polynomial("Q_1").is_err());
    }
}
