use std::f64::consts::{LN_2, PI};
use std::time::Instant;

use hzeta::continuation::{
    pole_info, tan_series_check, zeta_h, zeta_h_mellin, zeta_h_via_hurwitz, zhodd_polylog_check,
};
use hzeta::exact::{
    antisymmetric_bernoulli_decomposition, bernoulli_number, bernoulli_polynomial, euler_polynomial,
    rational, reconstruct_from_bernoulli, RationalPolynomial,
};
use hzeta::h_series::zeta_h_series;
use hzeta::harness::{run_identity, run_suite, test_polynomial, Params};
use hzeta::special::{digamma, gamma, hurwitz_zeta};
use hzeta::{PrecisionContext, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ZETA3: f64 = 1.2020569031595942854;
const CATALAN: f64 = 0.91596559417721901505;
const EULER_GAMMA: f64 = 0.57721566490153286061;
const ZETA_H_3: f64 = 1.2981755157718671257;
const ZETA_H_5: f64 = 1.0507082883984270873;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

struct Check {
    what: String,
    err: f64,
    tol: f64,
}

impl Check {
    fn new(what: impl Into<String>, err: f64, tol: f64) -> Self {
        Check { what: what.into(), err, tol }
    }

    fn exact(what: impl Into<String>, ok: bool) -> Self {
        Check::new(what, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    fn ok(&self) -> bool {
        self.err <= self.tol
    }
}

fn sides(id: &str, params: Params, ctx: &PrecisionContext) -> Result<(Complex64, Complex64)> {
    let r = run_identity(id, &params, ctx)?;
    Ok((r.lhs_value.unwrap(), r.rhs_value.unwrap()))
}

fn gap(id: &str, params: Params, ctx: &PrecisionContext, tol: f64) -> Result<Check> {
    let label = format!("{id} {params}");
    let (l, r) = sides(id, params, ctx)?;
    Ok(Check::new(label, (l - r).norm(), tol))
}

fn odd_harmonic(n: u64) -> f64 {
    (1..=n).map(|k| 1.0 / (2 * k - 1) as f64).sum()
}

fn parseval_pi3(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let (l, _) = sides("PARSEVAL-PI3", Params::new(), ctx)?;
    Ok(vec![Check::new("log^2 tan vs pi^3/8", (l - c(PI.powi(3) / 8.0)).norm(), 1e-10)])
}

fn lemma1(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    (1..=12)
        .map(|n| {
            let (l, _) = sides("LEMMA1", Params::new().int("n", n), ctx)?;
            let target = -odd_harmonic(n as u64) / n as f64;
            Ok(Check::new(format!("n={n}"), (l - c(target)).norm(), 1e-9))
        })
        .collect()
}

fn hsq(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let (l, _) = sides("HSQ-PI4", Params::new(), ctx)?;
    Ok(vec![Check::new("sum h_n^2/n^2", (l - c(PI.powi(4) / 32.0)).norm(), 1e-10)])
}

fn chen(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let base = 1.75 * ZETA3;
    let (l, _) = sides("CHEN", Params::new(), ctx)?;
    let (a, _) = sides("ALT-SUM", Params::new(), ctx)?;
    let (e, _) = sides("EVEN-INDEX-SUM", Params::new(), ctx)?;
    Ok(vec![
        Check::new("CHEN", (l - c(base)).norm(), 1e-10),
        Check::new("ALT-SUM", (a - c(base - PI * CATALAN)).norm(), 1e-8),
        Check::new("EVEN-INDEX-SUM", (e - c(base - PI / 2.0 * CATALAN)).norm(), 1e-8),
    ])
}

fn cor1(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for j in 0..=5 {
        let r = 0.05 * j as f64;
        out.push(gap("COR1", Params::new().real("r", r), ctx, 1e-6)?);
    }
    for j in 0..=10 {
        let r = 0.05 * j as f64;
        out.push(gap("BRADLEY-SYM", Params::new().real("r", r), ctx, 1e-9)?);
    }
    let (t, _) = sides("COR1", Params::new().real("r", 0.25), ctx)?;
    out.push(Check::new("T(1/4) = -G", (t - c(-CATALAN)).norm(), 1e-9));
    Ok(out)
}

fn cor2_cor3(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in 1..=5 {
        out.push(gap("COR2", Params::new().int("m", m), ctx, 1e-10)?);
        out.push(gap("COR3", Params::new().int("m", m), ctx, 1e-10)?);
        out.push(gap("COR3", Params::new().int("m", m).label("via", "cor2"), ctx, 1e-9)?);
    }
    Ok(out)
}

fn apery(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let (_, r) = sides("APERY-REP", Params::new(), ctx)?;
    Ok(vec![Check::new("five-cosine zeta(3)", (r - c(ZETA3)).norm(), 1e-5)])
}

fn cross_paths(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for s in [2.2, 2.5, 3.5, 4.0] {
        let d = zeta_h(c(s), ctx)? - zeta_h_via_hurwitz(c(s), ctx)?;
        out.push(Check::new(format!("hurwitz route s={s}"), d.norm(), 1e-8));
    }
    for s in [c(2.0), c(3.0), Complex64::new(2.0, 3.0)] {
        let d = zeta_h_series(s, ctx)?.value - zeta_h_mellin(s, ctx)?.value;
        out.push(Check::new(format!("mellin route s={s}"), d.norm(), 1e-8));
    }
    Ok(out)
}

fn poles(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let p0 = pole_info(0, ctx)?;
    let p1 = pole_info(1, ctx)?;
    let mut out = vec![
        Check::new("(s-1)^2 zeta_h -> 1/2", (p0.numeric_leading - 0.5).abs(), 1e-6),
        Check::new("residue at 1", (p0.numeric_residue - (LN_2 + EULER_GAMMA / 2.0)).abs(), 1e-6),
        Check::new("residue at -1", (p1.numeric_residue - 1.0 / 48.0).abs(), 1e-6),
    ];
    for n in 1..=3 {
        let v = zeta_h(c(-2.0 * n as f64), ctx)?;
        out.push(Check::new(format!("zeta_h(-{})", 2 * n), v.norm(), 1e-8));
    }
    Ok(out)
}

fn kernels(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for z in [c(1.0), Complex64::new(1.0, 1.0), c(3.0)] {
        out.push(gap("EXPZ", Params::new().complex("z", z), ctx, 1e-8)?);
    }
    for k in 1..=6 {
        let (l, _) = sides("EXPZ-LIMIT", Params::new().int("k", k), ctx)?;
        let target = Complex64::new(0.0, -odd_harmonic(k as u64) / k as f64);
        out.push(Check::new(format!("EXPZ-LIMIT k={k}"), (l - target).norm(), 1e-9));
    }
    for z in [0.5, 1.0, 2.0] {
        out.push(gap("DIGAMMA-ID", Params::new().complex("z", c(z)), ctx, 1e-8)?);
    }
    Ok(out)
}

fn tan_sc(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    [0.25, 0.5, 1.0]
        .iter()
        .map(|&x| {
            let (_, ratio) = tan_series_check(x, ctx)?;
            Ok(Check::new(format!("x={x}"), (x.tan() - ratio).abs(), 1e-8))
        })
        .collect()
}

fn mellin_suite(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for s in [2.0, 3.0, 2.5] {
        out.push(gap("H4-MELLIN", Params::new().complex("s", c(s)), ctx, 1e-9)?);
    }
    let (l, _) = sides("PARSEVAL-MELLIN", Params::new().real("sigma", 1.5), ctx)?;
    out.push(Check::new("PARSEVAL-MELLIN sigma=1.5", (l - c(1.75 * ZETA3)).norm(), 1e-6));
    let (_, r) = sides("ZETA3-LINE", Params::new(), ctx)?;
    out.push(Check::new("ZETA3-LINE", (r - c(ZETA3)).norm(), 1e-6));
    Ok(out)
}

fn zhodd(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (n, target) in [(1, ZETA_H_3), (2, ZETA_H_5)] {
        let (l, _) = zhodd_polylog_check(n, ctx)?;
        out.push(Check::new(format!("n={n} imaginary"), (l.im + target).abs(), 1e-8));
        out.push(Check::new(format!("n={n} real"), l.re.abs(), 1e-9));
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

fn exact_suite(_: &PrecisionContext) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let recurrence = (1..=40).all(|n| {
        let s: BigRational = (0..=n)
            .map(|k| BigRational::from_integer(binomial(n + 1, k)) * bernoulli_number(k))
            .sum();
        s.is_zero()
    });
    out.push(Check::exact("sum_k C(n+1,k) B_k = 0, n=1..40", recurrence));

    let half = rational(1, 2);
    let midpoint = (0..=40).all(|n| {
        let factor = rational(2, 1).pow(1 - n as i32) - BigRational::one();
        bernoulli_polynomial(n).eval(&half) == factor * bernoulli_number(n)
    });
    out.push(Check::exact("B_n(1/2) = (2^(1-n) - 1) B_n, n=0..40", midpoint));

    let mut polys: Vec<(String, RationalPolynomial)> = Vec::new();
    for n in [1usize, 3, 5, 7, 9] {
        polys.push((format!("B_{n}"), bernoulli_polynomial(n)));
        polys.push((format!("E_{n}"), euler_polynomial(n)));
    }
    for k in 1..=6 {
        let label = format!("R_{k}");
        let p = test_polynomial(&label)?;
        if p.degree().unwrap_or(0) <= 9 {
            polys.push((label, p));
        }
    }
    for (label, p) in polys {
        let lambdas = antisymmetric_bernoulli_decomposition(&p)?;
        let back = reconstruct_from_bernoulli(&lambdas)?;
        out.push(Check::exact(format!("round trip {label}"), back == p));
    }
    Ok(out)
}

fn properties(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = [0.0f64; 4];
    for _ in 0..200 {
        let z = Complex64::new(rng.gen_range(-4.5..4.5), rng.gen_range(-3.0..3.0));
        if (z.re - z.re.round()).abs() < 0.05 && z.im.abs() < 0.05 {
            continue;
        }
        let lhs = gamma(z, ctx)? * gamma(1.0 - z, ctx)?;
        let rhs = PI / (PI * z).sin();
        worst[0] = worst[0].max((lhs - rhs).norm() / rhs.norm());

        let d = digamma(z + 1.0, ctx)? - digamma(z, ctx)? - 1.0 / z;
        worst[1] = worst[1].max(d.norm() / (1.0 / z).norm().max(1.0));

        let s = Complex64::new(rng.gen_range(1.2..6.0), rng.gen_range(-10.0..10.0));
        let x: f64 = rng.gen_range(0.1..3.0);
        let shift = Complex64::new(x, 0.0).powc(-s);
        let d = hurwitz_zeta(s, x, ctx)? - hurwitz_zeta(s, x + 1.0, ctx)? - shift;
        worst[2] = worst[2].max(d.norm() / shift.norm().max(1.0));

        let w = Complex64::new(rng.gen_range(-6.0..4.0), rng.gen_range(0.3..20.0));
        let d = zeta_h(w.conj(), ctx)? - zeta_h(w, ctx)?.conj();
        worst[3] = worst[3].max(d.norm());
    }
    let mut out = vec![
        Check::new("gamma reflection (relative)", worst[0], 1e-12),
        Check::new("digamma recurrence", worst[1], 1e-12),
        Check::new("hurwitz shift", worst[2], 1e-12),
        Check::new("conjugate symmetry of zeta_h", worst[3], 1e-12),
    ];
    let a = run_suite("*", ctx, Some(2))?;
    let b = run_suite("*", ctx, Some(4))?;
    let same = a.reports.len() == b.reports.len()
        && a.reports.iter().zip(&b.reports).all(|(x, y)| x.same_outcome(y));
    out.push(Check::exact("run_suite determinism across job counts", same));
    Ok(out)
}

type Criterion = (&'static str, fn(&PrecisionContext) -> Result<Vec<Check>>);

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let ctx = PrecisionContext::default();
    let criteria: [Criterion; 15] = [
        ("log^2 tan integral", parseval_pi3),
        ("LEMMA1 n=1..12", lemma1),
        ("HSQ-PI4", hsq),
        ("CHEN, ALT-SUM, EVEN-INDEX-SUM", chen),
        ("COR1 and BRADLEY-SYM", cor1),
        ("COR2, COR3 and round trip", cor2_cor3),
        ("APERY-REP", apery),
        ("continuation cross paths", cross_paths),
        ("pole structure", poles),
        ("EXPZ, EXPZ-LIMIT, DIGAMMA-ID", kernels),
        ("TAN-SC", tan_sc),
        ("H4-MELLIN, PARSEVAL-MELLIN, ZETA3-LINE", mellin_suite),
        ("ZHODD-POLYLOG", zhodd),
        ("exact arithmetic", exact_suite),
        ("properties", properties),
    ];

    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&ctx);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(checks) => {
                let bad: Vec<&Check> = checks.iter().filter(|c| !c.ok()).collect();
                let worst = checks
                    .iter()
                    .filter(|c| c.tol > 0.0)
                    .max_by(|a, b| (a.err / a.tol).total_cmp(&(b.err / b.tol)));
                let detail = match worst {
                    Some(w) => format!("worst {} err {:.2e} tol {:.0e}", w.what, w.err, w.tol),
                    None => format!("{} exact checks", checks.len()),
                };
                let status = if bad.is_empty() { "PASS" } else { "FAIL" };
                println!("criterion {:>2} {status} {name}: {detail} ({secs:.2}s)", i + 1);
                for b in &bad {
                    println!("    failed: {} err {:.3e} tol {:.0e}", b.what, b.err, b.tol);
                }
                if !bad.is_empty() {
                    failures += 1;
                }
            }
            Err(e) => {
                println!("criterion {:>2} FAIL {name}: {e} ({secs:.2}s)", i + 1);
                failures += 1;
            }
        }
    }

    for (mode, ctx) in [("double", PrecisionContext::default()), ("high", PrecisionContext::high())] {
        let start = Instant::now();
        match run_suite("*", &ctx, None) {
            Ok(s) => println!(
                "full suite ({mode}): {} of {} passed in {:.2}s",
                s.summary.passed,
                s.summary.total,
                start.elapsed().as_secs_f64()
            ),
            Err(e) => println!("full suite ({mode}): {e}"),
        }
    }

    println!("acceptance: {} of 15 criteria passed", 15 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
