//! Two-variable Hermite polynomials and the Hermite-like family `B_n(x,y;ν)`.
//!
//! ```text
//! H_n(x,y)   = n! Σ_k x^{n-2k} y^k / ((n-2k)! k!)                 Σ tⁿ/n! H_n = e^{xt + yt²}
//! B_n(x,y;ν) = n! Σ_k x^{n-2k} y^k / ((n-2k)! k! Γ(ν - k + 1/2))  Σ tⁿ/n! B_n = e^{xt} W_{-1,ν+1/2}(yt²)
//! ```
//!
//! `B_n` is defined for every real ν; terms whose gamma factor sits on a pole
//! vanish through the entire reciprocal gamma.

use crate::dd::{dd, recip_gamma_any, to_f64, Dd};
use crate::error::{Error, Result};
use crate::special_core::{factorial, SeriesControl};

/// Degree and arguments of a polynomial evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyEvalRequest {
    pub n: u32,
    pub x: f64,
    pub y: f64,
    pub nu: f64,
}

impl PolyEvalRequest {
    pub fn hermite2(&self) -> f64 {
        hermite2(self.n, self.x, self.y)
    }

    pub fn bpoly(&self) -> f64 {
        bpoly(self.n, self.x, self.y, self.nu)
    }
}

/// `n!/((n-2k)! k!)` for k = 0..=n/2, built by exact integer steps.
fn hermite_coefficients(n: u32) -> impl Iterator<Item = (u32, f64)> {
    (0..=n / 2).scan(1.0, move |coef, k| {
        if k > 0 {
            let m = (n - 2 * (k - 1)) as f64;
            *coef *= m * (m - 1.0) / k as f64;
        }
        Some((k, *coef))
    })
}

fn powi_dd(x: f64, p: u32) -> Dd {
    (0..p).fold(dd(1.0), |acc, _| acc * x)
}

/// `1/Γ(ν + 1/2 - k)`, with the argument formed exactly.
fn rg_shifted(nu: f64, k: u32) -> Dd {
    recip_gamma_any(dd(nu) + (0.5 - k as f64))
}

// The sums cancel heavily for mixed signs (terms up to ~1e5 times the value
// at n = 16), so terms and totals are carried in double-double.
fn hermite_like(n: u32, x: f64, y: f64, weight: impl Fn(u32) -> Dd) -> f64 {
    let s = hermite_coefficients(n).fold(dd(0.0), |acc, (k, c)| {
        acc + powi_dd(x, n - 2 * k) * powi_dd(y, k) * c * weight(k)
    });
    to_f64(s)
}

pub fn hermite2(n: u32, x: f64, y: f64) -> f64 {
    hermite_like(n, x, y, |_| dd(1.0))
}

pub fn bpoly(n: u32, x: f64, y: f64, nu: f64) -> f64 {
    hermite_like(n, x, y, |k| rg_shifted(nu, k))
}

/// Coefficients of `e^{s t}` up to `t^n`.
fn exp_series(s: f64, n: usize) -> Vec<Dd> {
    let mut out = Vec::with_capacity(n + 1);
    let mut t = dd(1.0);
    for i in 0..=n {
        if i > 0 {
            t = t * s / i as f64;
        }
        out.push(t);
    }
    out
}

/// `n! · [tⁿ] (a(t) · b(t))` for power series given by their coefficients.
fn cauchy_coefficient(a: &[Dd], b: &[Dd], n: usize) -> f64 {
    let sum = (0..=n)
        .filter(|&i| i < a.len() && n - i < b.len())
        .fold(dd(0.0), |acc, i| acc + a[i] * b[n - i]);
    to_f64(sum * factorial(n as u32))
}

fn check_degree(n: u32, trunc: &SeriesControl) -> Result<()> {
    trunc.validate()?;
    if n as usize >= trunc.max_terms {
        return Err(Error::Invalid(format!(
            "degree {n} needs more than max_terms = {} series coefficients",
            trunc.max_terms
        )));
    }
    Ok(())
}

/// `H_n(x,y)` read off from the Cauchy product of `e^{xt}` and `e^{yt²}`.
pub fn hermite_gf_coeff(n: u32, x: f64, y: f64, trunc: &SeriesControl) -> Result<f64> {
    check_degree(n, trunc)?;
    let n = n as usize;
    let ex = exp_series(x, n);
    // e^{y t²}: only even powers
    let ey_half = exp_series(y, n / 2);
    let mut ey = vec![dd(0.0); n + 1];
    for (j, c) in ey_half.into_iter().enumerate() {
        ey[2 * j] = c;
    }
    Ok(cauchy_coefficient(&ex, &ey, n))
}

/// `B_n(x,y;ν)` read off from the Cauchy product of `e^{xt}` and the
/// Wright series `W_{-1,ν+1/2}(y t²) = Σ_j (y t²)^j / (j! Γ(ν + 1/2 - j))`.
pub fn bpoly_gf_coeff(n: u32, x: f64, y: f64, nu: f64, trunc: &SeriesControl) -> Result<f64> {
    check_degree(n, trunc)?;
    let n = n as usize;
    let ex = exp_series(x, n);
    let mut w = vec![dd(0.0); n + 1];
    let mut yj = dd(1.0);
    for j in 0..=n / 2 {
        if j > 0 {
            yj = yj * y / j as f64;
        }
        w[2 * j] = yj * rg_shifted(nu, j as u32);
    }
    Ok(cauchy_coefficient(&ex, &w, n))
}
