use proptest::prelude::*;
use umbral_lab::functions::struve_series_partial;
use umbral_lab::identities::gaussian_moment;
use umbral_lab::polys::bpoly;
use umbral_lab::umbral::{gaussian_reduce, hermite_umbral, struve_umbral_eval, UmbralExpr, UmbralMonomial};

fn monomial() -> impl Strategy<Value = UmbralMonomial> {
    (-2.0f64..2.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(c, p, q)| UmbralMonomial::with_powers(c, [p, q]))
}

fn expr() -> impl Strategy<Value = UmbralExpr> {
    prop::collection::vec(monomial(), 0..=6).prop_map(UmbralExpr::from_terms)
}

/// Sum of |term values|, the scale rounding errors are measured against.
fn magnitude(e: &UmbralExpr) -> f64 {
    e.terms().iter().map(|t| t.evaluate().abs()).sum()
}

fn close(a: f64, b: f64, scale: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * scale.max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mul_commutes(a in expr(), b in expr()) {
        let (ab, ba) = (a.mul(&b), b.mul(&a));
        let scale = magnitude(&ab).max(magnitude(&ba));
        prop_assert!(close(ab.evaluate(), ba.evaluate(), scale, 1e-13));
    }

    #[test]
    fn mul_associates(a in expr(), b in expr(), c in expr()) {
        let l = a.mul(&b).mul(&c);
        let r = a.mul(&b.mul(&c));
        let scale = magnitude(&l).max(magnitude(&r));
        prop_assert!(close(l.evaluate(), r.evaluate(), scale, 1e-12));
    }

    #[test]
    fn mul_distributes(a in expr(), b in expr(), c in expr()) {
        let l = a.mul(&b.add(&c));
        let r = a.mul(&b).add(&a.mul(&c));
        let scale = magnitude(&l).max(magnitude(&r));
        prop_assert!(close(l.evaluate(), r.evaluate(), scale, 1e-12));
    }

    #[test]
    fn evaluate_is_linear(a in expr(), b in expr(), s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let l = a.scale(s).add(&b.scale(t)).evaluate();
        let r = s * a.evaluate() + t * b.evaluate();
        let scale = s.abs() * magnitude(&a) + t.abs() * magnitude(&b);
        prop_assert!(close(l, r, scale, 1e-13));
    }

    #[test]
    fn hermite_reduction_gives_bpoly(
        n in 0u32..=8,
        b in -2.0f64..2.0,
        a in -2.0f64..2.0,
        alpha in 0.2f64..4.0,
        dnu in 0.01f64..3.0,
    ) {
        let nu = n as f64 + dnu;
        let y = UmbralMonomial::c(a * a / alpha, -1.0);
        let e = hermite_umbral(n, b, &y).mul_monomial(&UmbralMonomial::c(1.0, nu - 0.5));
        let want = bpoly(n, b, a * a / alpha, nu);
        prop_assert!(close(e.evaluate(), want, magnitude(&e).max(want.abs()), 1e-12), "{} vs {want}", e.evaluate());
    }

    #[test]
    fn constant_reduction_is_gaussian_moment(
        n in 0u32..=10,
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
        alpha in 0.1f64..5.0,
    ) {
        let e = gaussian_reduce(n, b, &UmbralMonomial::constant(a), &UmbralMonomial::constant(alpha)).unwrap();
        let want = gaussian_moment(n, a, b, alpha).unwrap();
        prop_assert!(close(e.evaluate(), want, magnitude(&e).max(want.abs()), 1e-13));
    }

    #[test]
    fn struve_truncation_is_exact(nu in -1.0f64..4.0, x in 0.0f64..10.0, k in 1usize..40) {
        prop_assert_eq!(struve_umbral_eval(nu, x, k).unwrap(), struve_series_partial(nu, x, k));
    }
}

#[test]
fn evaluation_rule() {
    assert_eq!(UmbralMonomial::c(1.0, 0.0).evaluate(), 1.0);
    let v = UmbralMonomial::c(2.0, -0.5).evaluate();
    assert!((v - 2.0 / std::f64::consts::PI.sqrt()).abs() < 1e-14);
    let w = UmbralMonomial::with_powers(1.0, [0.5, 0.5]).evaluate();
    assert!((w - 4.0 / std::f64::consts::PI).abs() < 1e-14, "{w}");
}
