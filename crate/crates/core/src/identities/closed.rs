//! Closed-form right-hand sides.

use std::f64::consts::PI;

use crate::error::{constraint, domain, Result};
use crate::functions::mittag_leffler;
use crate::polys::{bpoly, hermite2};
use crate::special_core::{binomial, factorial, recip_gamma1p, sin_pi, SeriesControl};

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive, got {v}")))
    }
}

/// `∫ (a x + b)^n e^{-α x²} dx = √(π/α) H_n(b, a²/(4α))`.
pub fn gaussian_moment(n: u32, a: f64, b: f64, alpha: f64) -> Result<f64> {
    positive("alpha", alpha)?;
    Ok((PI / alpha).sqrt() * hermite2(n, b, a * a / (4.0 * alpha)))
}

/// `∫ J₀(√α x) dx = 2/√α`.
pub fn bessel_j0_integral(alpha: f64) -> Result<f64> {
    positive("alpha", alpha)?;
    Ok(2.0 / alpha.sqrt())
}

fn check_order(nu: f64, degree: usize) -> Result<()> {
    if !(nu > degree as f64) {
        return Err(constraint(format!("nu must exceed the degree {degree}, got nu = {nu}")));
    }
    Ok(())
}

/// `∫ J_ν(√α x)/(√α x)^ν (a x + b)^n dx = 2^{1-ν} √π/√α B_n(b, a²/α; ν)`, ν > n.
pub fn weighted_bessel_moment(n: u32, a: f64, b: f64, alpha: f64, nu: f64) -> Result<f64> {
    weighted_bessel_poly(&unit_coeffs(n), a, b, alpha, nu)
}

fn unit_coeffs(n: u32) -> Vec<f64> {
    let mut c = vec![0.0; n as usize + 1];
    c[n as usize] = 1.0;
    c
}

/// The same integral with `Σ_k f_k (a x + b)^k` in place of `(a x + b)^n`;
/// ν must exceed the highest index.
pub fn weighted_bessel_poly(coeffs: &[f64], a: f64, b: f64, alpha: f64, nu: f64) -> Result<f64> {
    if coeffs.is_empty() {
        return Err(domain("weighted_bessel_poly needs at least one coefficient"));
    }
    positive("alpha", alpha)?;
    check_order(nu, coeffs.len() - 1)?;
    let y = a * a / alpha;
    let sum: f64 = coeffs
        .iter()
        .enumerate()
        .filter(|(_, f)| **f != 0.0)
        .map(|(k, f)| f * bpoly(k as u32, b, y, nu))
        .sum();
    Ok(2f64.powf(1.0 - nu) * PI.sqrt() / alpha.sqrt() * sum)
}

/// `∫ F_n(x; a, b) dx = 2√π n! Σ_k b^{n-2k} a^{2k} / (4^k (n-2k)! k! Γ(k+1/2))`.
pub fn fn_combo_integral(n: u32, a: f64, b: f64) -> f64 {
    let mut sum = 0.0;
    for k in 0..=n / 2 {
        let kf = k as f64;
        // n!/((n-2k)! k!) · 1/(4^k Γ(k+1/2))
        let c = binomial(n, 2 * k) * factorial(2 * k) / factorial(k) * 0.25f64.powi(k as i32) * recip_gamma1p(kf - 0.5);
        sum += c * b.powi((n - 2 * k) as i32) * a.powi(2 * k as i32);
    }
    2.0 * PI.sqrt() * sum
}

/// `∫ j_n(x) dx`: `π (2m)! / (2^{2m} (m!)²)` for n = 2m, zero for odd n.
pub fn sph_bessel_integral(n: u32) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    // π C(2m, m) / 4^m, with the binomial exact for m ≤ 60
    let m = n / 2;
    if m > 60 {
        return (1..=m).fold(PI, |acc, j| acc * (2 * j - 1) as f64 / (2 * j) as f64);
    }
    let mut c: u128 = 1;
    for j in 0..m as u128 {
        c = c * (2 * m as u128 - j) / (j + 1);
    }
    PI * c as f64 / 4f64.powi(m as i32)
}

/// `∫_0^∞ x^μ H_ν(x) dx = -2^μ π / (sin((μ+ν)π/2) Γ((1-μ-ν)/2) Γ((1-μ+ν)/2))`.
pub fn struve_mellin(mu: f64, nu: f64) -> Result<f64> {
    let s = mu + nu;
    if !s.is_finite() {
        return Err(domain(format!("mu and nu must be finite, got {mu}, {nu}")));
    }
    if (s / 2.0).fract() == 0.0 {
        return Err(constraint(format!(
            "mu+nu is an even integer ({s}); the formula is singular"
        )));
    }
    let p = 0.5 * (1.0 - mu - nu);
    let q = 0.5 * (1.0 - mu + nu);
    Ok(-(2f64.powf(mu)) * PI * recip_gamma1p(p - 1.0) * recip_gamma1p(q - 1.0) / sin_pi(0.5 * s))
}

/// `∫ W_{α,β}(-x²) dx = √π / Γ(β - α/2)`.
pub fn wright_gaussian_integral(alpha: f64, beta: f64) -> f64 {
    PI.sqrt() * recip_gamma1p(beta - 0.5 * alpha - 1.0)
}

/// `∫_0^∞ W_{α,β}(-x) e^{-d x} dx = E_{α,β}(-1/d) / d`.
pub fn wright_laplace(alpha: f64, beta: f64, d: f64) -> Result<f64> {
    positive("d", d)?;
    if !(alpha >= 0.0) {
        return Err(domain(format!("wright_laplace requires alpha ≥ 0, got {alpha}")));
    }
    if alpha == 0.0 && !(d > 1.0) {
        return Err(domain(format!("wright_laplace at alpha = 0 requires d > 1, got {d}")));
    }
    let e = mittag_leffler(alpha, beta, -1.0 / d, &SeriesControl::default())?;
    Ok(e.value / d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_moment_examples() {
        assert!((gaussian_moment(0, 2.0, 3.0, 1.0).unwrap() - PI.sqrt()).abs() < 1e-15);
        assert!((gaussian_moment(1, 2.0, 3.0, 1.0).unwrap() - 5.317_361_552_716_55).abs() < 1e-13);
        assert!((gaussian_moment(2, 1.0, 0.0, 1.0).unwrap() - PI.sqrt() / 2.0).abs() < 1e-15);
        assert!(gaussian_moment(2, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn j0_integral_examples() {
        assert_eq!(bessel_j0_integral(4.0).unwrap(), 1.0);
        assert_eq!(bessel_j0_integral(1.0).unwrap(), 2.0);
        assert!(bessel_j0_integral(-1.0).is_err());
    }

    #[test]
    fn weighted_bessel_examples() {
        assert!((weighted_bessel_moment(0, 0.3, 0.7, 1.0, 1.0).unwrap() - 2.0).abs() < 1e-14);
        let v = weighted_bessel_moment(0, 0.3, 0.7, 1.0, 0.5).unwrap();
        assert!((v - (2.0 * PI).sqrt()).abs() < 1e-14);
        assert_eq!(weighted_bessel_moment(1, 1.0, 0.0, 1.0, 2.0).unwrap(), 0.0);
        assert!(weighted_bessel_moment(2, 1.0, 0.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn weighted_poly_examples() {
        let single = weighted_bessel_poly(&[1.0], 0.4, 1.1, 2.0, 1.3).unwrap();
        assert_eq!(single, weighted_bessel_moment(0, 0.4, 1.1, 2.0, 1.3).unwrap());
        assert_eq!(weighted_bessel_poly(&[0.0, 1.0], 1.0, 0.0, 1.0, 2.0).unwrap(), 0.0);
        let combo = weighted_bessel_poly(&[1.0, 0.0, 1.0], 1.0, 1.0, 1.0, 3.0).unwrap();
        let parts = weighted_bessel_moment(0, 1.0, 1.0, 1.0, 3.0).unwrap()
            + weighted_bessel_moment(2, 1.0, 1.0, 1.0, 3.0).unwrap();
        assert!((combo - parts).abs() < 1e-12);
    }

    #[test]
    fn fn_combo_examples() {
        assert!((fn_combo_integral(0, 1.3, 0.2) - 2.0).abs() < 1e-14);
        assert!((fn_combo_integral(1, 1.3, 0.2) - 0.4).abs() < 1e-14);
        assert!((fn_combo_integral(2, 1.0, 1.0) - 4.0).abs() < 1e-14);
        // 2 Σ_j C(n,2j) a^{2j} b^{n-2j}
        let (a, b) = (1.7f64, -0.6f64);
        let want = 2.0 * (b.powi(5) + 10.0 * a * a * b.powi(3) + 5.0 * a.powi(4) * b);
        assert!((fn_combo_integral(5, a, b) - want).abs() < 1e-12 * want.abs());
    }

    #[test]
    fn sph_integral_examples() {
        assert_eq!(sph_bessel_integral(0), PI);
        assert_eq!(sph_bessel_integral(1), 0.0);
        assert_eq!(sph_bessel_integral(2), PI / 2.0);
        assert_eq!(sph_bessel_integral(8), 35.0 * PI / 128.0);
    }

    #[test]
    fn struve_mellin_examples() {
        assert!((struve_mellin(-1.0, 0.0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((struve_mellin(-2.0, 1.0).unwrap() - PI / 4.0).abs() < 1e-15);
        assert!(struve_mellin(-0.5, 0.5).is_err());
        let e = struve_mellin(1.0, 1.0).unwrap_err();
        assert!(e.to_string().contains("mu+nu is an even integer"));
    }

    #[test]
    fn wright_examples() {
        assert!((wright_gaussian_integral(0.0, 1.0) - PI.sqrt()).abs() < 1e-15);
        assert!((wright_gaussian_integral(1.0, 1.5) - PI.sqrt()).abs() < 1e-15);
        // √π/Γ(3/4)
        assert!((wright_gaussian_integral(0.5, 1.0) - 1.446_409_084_632_077).abs() < 1e-14);
        assert!((wright_laplace(1.0, 1.0, 1.0).unwrap() - (-1f64).exp()).abs() < 1e-15);
        assert!((wright_laplace(0.0, 1.0, 2.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let d = 1e6;
        let v = wright_laplace(0.7, 2.5, d).unwrap();
        let lead = recip_gamma1p(1.5) / d;
        assert!((v / lead - 1.0).abs() < 1e-5);
        assert!(wright_laplace(0.0, 1.0, 0.5).is_err());
        assert!(wright_laplace(1.0, 1.0, 0.0).is_err());
    }
}
