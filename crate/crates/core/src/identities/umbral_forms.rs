//! The same closed forms obtained by treating ĉ as a constant: each integrand
//! is written as an umbral Gaussian, integrated with [`gaussian_reduce`], and
//! only then evaluated through `ĉ^μ φ(0) = 1/Γ(μ+1)`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::umbral::{gaussian_reduce, UmbralMonomial};

/// `J₀(√α x) = e^{-ĉ α x²/4} φ(0)`.
pub fn bessel_j0_integral(alpha: f64) -> Result<f64> {
    let c = UmbralMonomial::c(0.25 * alpha, 1.0);
    Ok(gaussian_reduce(0, 0.0, &UmbralMonomial::constant(0.0), &c)?.evaluate())
}

/// `J_ν(u)/u^ν = 2^{-ν} ĉ^ν e^{-ĉ u²/4} φ(0)` with `u = √α x`.
pub fn weighted_bessel_moment(n: u32, a: f64, b: f64, alpha: f64, nu: f64) -> Result<f64> {
    let c = UmbralMonomial::c(0.25 * alpha, 1.0);
    let reduced = gaussian_reduce(n, b, &UmbralMonomial::constant(a), &c)?;
    Ok(reduced.mul_monomial(&UmbralMonomial::c(2f64.powf(-nu), nu)).evaluate())
}

/// `F_n(x) = (a ĉ x/2 + b)^n e^{-ĉ x²/4} φ(0)`.
pub fn fn_combo_integral(n: u32, a: f64, b: f64) -> Result<f64> {
    let c = UmbralMonomial::c(0.25, 1.0);
    Ok(gaussian_reduce(n, b, &UmbralMonomial::c(0.5 * a, 1.0), &c)?.evaluate())
}

/// `j_n(x) = √π 2^{-(n+1)} x^n ĉ^{n+1/2} e^{-ĉ x²/4} φ(0)`.
pub fn sph_bessel_integral(n: u32) -> Result<f64> {
    let c = UmbralMonomial::c(0.25, 1.0);
    let reduced = gaussian_reduce(n, 0.0, &UmbralMonomial::constant(1.0), &c)?;
    let pre = UmbralMonomial::c(PI.sqrt() * 0.5f64.powi(n as i32 + 1), n as f64 + 0.5);
    Ok(reduced.mul_monomial(&pre).evaluate())
}

/// `W_{α,β}(-x²) = ĉ^{β-1} e^{-ĉ^α x²} φ(0)`.
pub fn wright_gaussian_integral(alpha: f64, beta: f64) -> Result<f64> {
    let c = UmbralMonomial::c(1.0, alpha);
    let reduced = gaussian_reduce(0, 0.0, &UmbralMonomial::constant(0.0), &c)?;
    Ok(reduced.mul_monomial(&UmbralMonomial::c(1.0, beta - 1.0)).evaluate())
}
