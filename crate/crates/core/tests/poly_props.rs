use proptest::prelude::*;
use umbral_lab::polys::{bpoly, bpoly_gf_coeff, hermite2, hermite_gf_coeff};
use umbral_lab::special_core::{factorial, recip_gamma1p};
use umbral_lab::SeriesControl;

/// Term-by-term second x-derivative of the defining sum, with Σ|terms|.
fn bpoly_xx(n: u32, x: f64, y: f64, nu: f64) -> (f64, f64) {
    let (mut s, mut scale) = (0.0, 0.0);
    for k in 0..=n / 2 {
        let p = n - 2 * k;
        if p < 2 {
            continue;
        }
        let c = factorial(n) / (factorial(p) * factorial(k)) * (p * (p - 1)) as f64;
        let t = c * x.powi(p as i32 - 2) * y.powi(k as i32) * recip_gamma1p(nu - k as f64 - 0.5);
        s += t;
        scale += t.abs();
    }
    (s, scale)
}

/// ν on a 2⁻¹⁰ grid, so the shifted gamma arguments are formed exactly in f64.
fn nu_grid() -> impl Strategy<Value = f64> {
    (-2048i32..5120).prop_map(|k| k as f64 / 1024.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hermite_generating_function(x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let ctl = SeriesControl::default();
        for n in 0..=16 {
            let h = hermite2(n, x, y);
            let g = hermite_gf_coeff(n, x, y, &ctl).unwrap();
            prop_assert!((g - h).abs() <= 1e-11 * h.abs().max(1.0), "n={n}: {g} vs {h}");
        }
    }

    #[test]
    fn bpoly_generating_function(x in -3.0f64..3.0, y in -3.0f64..3.0, nu in nu_grid()) {
        let ctl = SeriesControl::default();
        for n in 0..=16 {
            let b = bpoly(n, x, y, nu);
            let g = bpoly_gf_coeff(n, x, y, nu, &ctl).unwrap();
            prop_assert!((g - b).abs() <= 1e-11 * b.abs().max(1.0), "n={n}: {g} vs {b}");
        }
    }

    #[test]
    fn hermite_recurrence(x in -3.0f64..3.0, y in -3.0f64..3.0) {
        for n in 1..20u32 {
            let lhs = hermite2(n + 1, x, y);
            let (a, b) = (x * hermite2(n, x, y), 2.0 * n as f64 * y * hermite2(n - 1, x, y));
            prop_assert!((lhs - (a + b)).abs() <= 1e-12 * (a.abs() + b.abs()).max(1.0), "n={n}");
        }
    }

    #[test]
    fn heat_recurrence_by_term_shift(x in -3.0f64..3.0, y in -3.0f64..3.0, nu in nu_grid()) {
        for n in 2..=12u32 {
            let (lhs, scale) = bpoly_xx(n, x, y, nu);
            let rhs = (n * (n - 1)) as f64 * bpoly(n - 2, x, y, nu);
            prop_assert!((lhs - rhs).abs() <= 1e-13 * scale.max(1.0), "n={n}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn heat_recurrence_by_finite_difference(
        x in 0.5f64..2.0,
        y in 0.1f64..1.0,
        n in 2u32..=8,
        dnu in 0.0f64..3.0,
    ) {
        let nu = n as f64 + dnu;
        let h = 1e-4;
        let fd = (bpoly(n, x + h, y, nu) - 2.0 * bpoly(n, x, y, nu) + bpoly(n, x - h, y, nu)) / (h * h);
        let want = (n * (n - 1)) as f64 * bpoly(n - 2, x, y, nu);
        prop_assert!((fd - want).abs() <= 1e-5 * want.abs(), "{fd} vs {want}");
    }

    #[test]
    fn appell_property(x in 0.5f64..2.0, y in 0.1f64..1.0, n in 1u32..=8, dnu in 0.0f64..3.0) {
        let nu = n as f64 + dnu;
        let h = 1e-5;
        let fd = (bpoly(n, x + h, y, nu) - bpoly(n, x - h, y, nu)) / (2.0 * h);
        let want = n as f64 * bpoly(n - 1, x, y, nu);
        prop_assert!((fd - want).abs() <= 1e-7 * want.abs(), "{fd} vs {want}");
    }

    #[test]
    fn operational_expansion(x in -3.0f64..3.0, y in -3.0f64..3.0, nu in nu_grid()) {
        for n in 0..=16u32 {
            // Σ_k y^k/k! · d^{2k}/dx^{2k} xⁿ · 1/Γ(ν+1/2-k)
            let mut s = 0.0;
            let mut scale = 0.0;
            for k in 0..=n / 2 {
                let deriv = factorial(n) / factorial(n - 2 * k) * x.powi((n - 2 * k) as i32);
                let t = y.powi(k as i32) / factorial(k) * deriv * recip_gamma1p(nu - 0.5 - k as f64);
                s += t;
                scale += t.abs();
            }
            let b = bpoly(n, x, y, nu);
            prop_assert!((s - b).abs() <= 1e-13 * scale.max(f64::MIN_POSITIVE), "n={n}: {s} vs {b}");
        }
    }

    #[test]
    fn boundary_condition(x in -3.0f64..3.0, nu in nu_grid()) {
        for n in 0..=16u32 {
            let want = x.powi(n as i32) * recip_gamma1p(nu - 0.5);
            let b = bpoly(n, x, 0.0, nu);
            prop_assert!((b - want).abs() <= 1e-14 * want.abs(), "n={n}: {b} vs {want}");
        }
    }
}

#[test]
fn small_cases() {
    assert_eq!(hermite2(2, 3.0, 1.0), 11.0);
    assert_eq!(bpoly(0, 0.4, 0.7, 0.5), 1.0);
    assert!((bpoly(1, 2.0, 5.0, 0.5) - 2.0).abs() < 1e-15);
    assert!((bpoly(2, 0.0, 1.0, 1.5) - 2.0).abs() < 1e-15);
}
