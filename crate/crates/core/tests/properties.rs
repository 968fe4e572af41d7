use std::f64::consts::PI;

use hzeta::continuation::{zeta_h, zeta_h_via_hurwitz};
use hzeta::exact::{
    antisymmetric_bernoulli_decomposition, bernoulli_polynomial, rational, reconstruct_from_bernoulli,
    PiRational, RationalPolynomial,
};
use hzeta::h_series::{generating_function_lhs, h, harmonic};
use hzeta::harness::{run_identity, Params, Status};
use hzeta::special::{digamma, gamma, hurwitz_zeta, polylog_unit_circle};
use hzeta::PrecisionContext;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn off_integers() -> impl Strategy<Value = Complex64> {
    (-6.0f64..6.0, -4.0f64..4.0)
        .prop_filter("near a pole", |(re, im)| (re - re.round()).abs() > 0.02 || im.abs() > 0.02)
        .prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gamma_reflection(s in off_integers()) {
        let ctx = ctx();
        let v = gamma(s, &ctx).unwrap() * gamma(1.0 - s, &ctx).unwrap() * (PI * s).sin() / PI;
        prop_assert!((v - 1.0).norm() <= ctx.tol_rel, "{s}: {v}");
    }

    #[test]
    fn digamma_recurrence(s in off_integers()) {
        let ctx = ctx();
        let d = digamma(s + 1.0, &ctx).unwrap() - digamma(s, &ctx).unwrap();
        let expect = 1.0 / s;
        prop_assert!((d - expect).norm() <= ctx.tol_rel * expect.norm().max(1.0), "{s}");
    }

    #[test]
    fn hurwitz_shift(re in 1.1f64..8.0, im in -20.0f64..20.0, x in 0.05f64..5.0) {
        let ctx = ctx();
        let s = Complex64::new(re, im);
        let head = Complex64::new(x, 0.0).powc(-s);
        let lhs = hurwitz_zeta(s, x, &ctx).unwrap() - head;
        let rhs = hurwitz_zeta(s, x + 1.0, &ctx).unwrap();
        let tol = ctx.tol_abs.max(ctx.tol_rel * head.norm());
        prop_assert!((lhs - rhs).norm() <= tol, "s={s} x={x}");
    }

    #[test]
    fn polylog_conjugate_symmetry(m in 2i32..9, theta in 0.01f64..6.2) {
        let ctx = ctx();
        let a = polylog_unit_circle(m, theta, &ctx).unwrap();
        let b = polylog_unit_circle(m, -theta, &ctx).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-13);
    }

    #[test]
    fn zeta_h_conjugate_symmetry(re in -6.0f64..6.0, im in 0.05f64..25.0) {
        let ctx = ctx();
        let s = Complex64::new(re, im);
        let a = zeta_h(s.conj(), &ctx).unwrap();
        let b = zeta_h(s, &ctx).unwrap();
        prop_assert!((a - b.conj()).norm() <= ctx.tol_abs * b.norm().max(1.0));
    }

    #[test]
    fn generating_function_is_even(x in 0.0f64..0.99) {
        let ctx = ctx();
        let a = generating_function_lhs(x, &ctx).unwrap().value;
        let b = generating_function_lhs(-x, &ctx).unwrap().value;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn identity_reports_are_deterministic(n in 1i64..=12) {
        let ctx = ctx();
        let p = Params::new().int("n", n);
        let a = run_identity("LEMMA1", &p, &ctx).unwrap();
        let b = run_identity("LEMMA1", &p, &ctx).unwrap();
        prop_assert!(a.same_outcome(&b));
        let abs = a.abs_err.unwrap();
        let rel = a.rel_err.unwrap();
        prop_assert_eq!(a.status == Status::Pass, abs <= a.tol || rel <= a.tol);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn odd_harmonic_cache_coherence(n in 1u64..10_000) {
        let hn = h(n).unwrap();
        prop_assert_eq!(&hn, &(harmonic(2 * n).unwrap() - harmonic(n).unwrap() / rational(2, 1)));
        prop_assert_eq!(h(n + 1).unwrap() - hn, rational(1, 2 * n as i64 + 1));
    }

    #[test]
    fn bernoulli_polynomial_reflection(n in 0usize..30, num in -20i64..20, den in 1i64..12) {
        let x = rational(num, den);
        let one_minus = rational(1, 1) - &x;
        let p = bernoulli_polynomial(n);
        let sign = if n % 2 == 0 { rational(1, 1) } else { rational(-1, 1) };
        prop_assert_eq!(p.eval(&one_minus), sign * p.eval(&x));
    }

    #[test]
    fn antisymmetric_round_trip(
        lambdas in prop::collection::vec((-30i64..30, 1i64..20), 1..=5)
    ) {
        let coeffs: Vec<PiRational> = lambdas
            .iter()
            .map(|&(a, b)| PiRational::rational(rational(a, b)))
            .collect();
        let p = reconstruct_from_bernoulli(&coeffs).unwrap();
        prop_assert!(p.is_antisymmetric());
        prop_assert!(p.degree().map_or(true, |d| d <= 9));
        let back = antisymmetric_bernoulli_decomposition(&p).unwrap();
        let again = reconstruct_from_bernoulli(&back).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn symmetric_polynomials_are_rejected(a in 1i64..20, b in 1i64..20) {
        // (x - 1/2)^2 + c is symmetric about 1/2
        let shift = RationalPolynomial::new(vec![rational(-1, 2), BigRational::from_integer(1.into())]);
        let p = &(&shift * &shift) + &RationalPolynomial::constant(rational(a, b));
        prop_assert!(antisymmetric_bernoulli_decomposition(&p).is_err());
    }
}

#[test]
fn hurwitz_route_agrees_off_axis() {
    let ctx = ctx();
    for s in [2.2, 2.5, 3.5, 4.0].map(|x| Complex64::new(x, 0.0)).into_iter().chain([Complex64::new(2.0, 2.0)]) {
        let d = zeta_h(s, &ctx).unwrap() - zeta_h_via_hurwitz(s, &ctx).unwrap();
        assert!(d.norm() <= 10.0 * ctx.tol_abs, "{s}: {d}");
    }
}

#[test]
fn context_validation() {
    assert!(PrecisionContext { digits: 14, ..ctx() }.validate().is_err());
    assert!(PrecisionContext { max_terms: 99, ..ctx() }.validate().is_err());
    assert!(PrecisionContext { quad_depth: 3, ..ctx() }.validate().is_err());
    assert!(PrecisionContext::high().validate().is_ok());
}
