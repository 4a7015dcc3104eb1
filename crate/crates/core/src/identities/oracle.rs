//! Left-hand-side integrands and the quadrature route used for each.
//!
//! Every oscillatory real-line integrand here is even, or is split into an
//! even part that integrates to twice its half-line integral and an odd part
//! that integrates to zero. The odd part is dropped; the closed forms
//! themselves carry no odd contribution either.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::functions::{bessel_j, bessel_j_scaled, bessel_jy_large, sph_bessel, struve_h, wright_w};
use crate::quadrature::{
    integrate_finite, integrate_real_line_decay, integrate_semi_decay, integrate_semi_oscillatory, IntegralResult,
    OscillationHint, QuadStatus,
};
use crate::special_core::{binomial, recip_gamma1p, SeriesControl};

/// Quadrature route of an identity's oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Finite,
    RealLineDecay,
    RealLineOscillatory,
    SemiInfiniteOscillatory,
    SemiInfiniteDecay,
}

impl Route {
    pub fn is_oscillatory(self) -> bool {
        matches!(self, Route::RealLineOscillatory | Route::SemiInfiniteOscillatory)
    }
}

/// Oracle value together with the route that produced it.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub route: Route,
    pub result: IntegralResult,
}

fn doubled(r: IntegralResult) -> IntegralResult {
    IntegralResult {
        value: 2.0 * r.value,
        abs_err_est: 2.0 * r.abs_err_est,
        ..r
    }
}

/// `2 ∫_0^∞ f` for an even oscillatory `f` of the given zero spacing.
fn even_oscillatory<F: Fn(f64) -> f64>(f: F, spacing: f64, tol: f64) -> Result<Oracle> {
    let hint = OscillationHint::new(spacing, spacing)?;
    let r = integrate_semi_oscillatory(f, hint, 0.5 * tol)?;
    Ok(Oracle {
        route: Route::RealLineOscillatory,
        result: doubled(r),
    })
}

/// `Σ_{j even} C(n,j) a^j b^{n-j} x^j`, the even part of `(a x + b)^n`.
fn even_binomial_part(n: u32, a: f64, b: f64, x: f64) -> f64 {
    (0..=n)
        .step_by(2)
        .map(|j| binomial(n, j) * (a * x).powi(j as i32) * b.powi((n - j) as i32))
        .sum()
}

pub fn gaussian_moment(n: u32, a: f64, b: f64, alpha: f64, tol: f64) -> Result<Oracle> {
    let f = |x: f64| (a * x + b).powi(n as i32) * (-alpha * x * x).exp();
    Ok(Oracle {
        route: Route::RealLineDecay,
        result: integrate_real_line_decay(f, tol)?,
    })
}

pub fn bessel_j0_integral(alpha: f64, tol: f64) -> Result<Oracle> {
    let s = alpha.sqrt();
    let f = |x: f64| bessel_j(0.0, s * x).map(|r| r.value).unwrap_or(f64::NAN);
    even_oscillatory(f, PI / s, tol)
}

/// Shared by the single-power and polynomial forms; `coeffs[k]` weights `(a x + b)^k`.
pub fn weighted_bessel_poly(coeffs: &[f64], a: f64, b: f64, alpha: f64, nu: f64, tol: f64) -> Result<Oracle> {
    let s = alpha.sqrt();
    let f = |x: f64| {
        let poly: f64 = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, c)| c * even_binomial_part(k as u32, a, b, x))
            .sum();
        if poly == 0.0 {
            return 0.0;
        }
        bessel_j_scaled(nu, s * x).map(|r| r.value * poly).unwrap_or(f64::NAN)
    };
    even_oscillatory(f, PI / s, tol)
}

/// Even-order part of `F_n`: `Σ_{n-k even} C(n,k) a^{n-k} b^k J_{n-k}(x)`.
pub fn fn_combo_integral(n: u32, a: f64, b: f64, tol: f64) -> Result<Oracle> {
    let f = |x: f64| {
        let mut v = 0.0;
        for k in (0..=n).filter(|k| (n - k).is_multiple_of(2)) {
            let order = n - k;
            let coef = binomial(n, k) * a.powi(order as i32) * b.powi(k as i32);
            if coef == 0.0 {
                continue;
            }
            match bessel_j(order as f64, x) {
                Ok(j) => v += coef * j.value,
                Err(_) => return f64::NAN,
            }
        }
        v
    };
    even_oscillatory(f, PI, tol)
}

/// Even n: `2 ∫_0^∞ j_n`. Odd n: both half-lines are integrated and added.
pub fn sph_bessel_integral(n: u32, tol: f64) -> Result<Oracle> {
    let f = |x: f64| sph_bessel(n, x).map(|r| r.value).unwrap_or(f64::NAN);
    if n.is_multiple_of(2) {
        return even_oscillatory(f, PI, tol);
    }
    let hint = OscillationHint::new(PI, PI)?;
    let right = integrate_semi_oscillatory(f, hint, 0.5 * tol)?;
    let left = integrate_semi_oscillatory(|x| f(-x), hint, 0.5 * tol)?;
    Ok(Oracle {
        route: Route::RealLineOscillatory,
        result: combine(&[right, left]),
    })
}

/// Sum of independent pieces; the status is the weakest of them.
fn combine(parts: &[IntegralResult]) -> IntegralResult {
    let rank = |s: QuadStatus| match s {
        QuadStatus::Converged => 0,
        QuadStatus::Accelerated => 1,
        QuadStatus::MaxSubdivisions => 2,
        QuadStatus::Failed => 3,
    };
    let status = parts
        .iter()
        .map(|p| p.status)
        .max_by_key(|s| rank(*s))
        .unwrap_or(QuadStatus::Failed);
    IntegralResult {
        value: parts.iter().map(|p| p.value).sum(),
        abs_err_est: parts.iter().map(|p| p.abs_err_est).sum(),
        status,
        evaluations: parts.iter().map(|p| p.evaluations).sum(),
    }
}

/// Whether `∫_0^∞ x^μ H_ν` converges: -2 < μ+ν < 0 (and H_ν exists, ν > -3/2).
pub fn struve_in_strip(mu: f64, nu: f64) -> bool {
    let s = mu + nu;
    s > -2.0 && s < 0.0 && nu > -1.5
}

/// Where the oscillatory tail of the Struve integral starts.
const STRUVE_SPLIT: f64 = 40.0;

/// `∫_0^∞ x^μ H_ν(x) dx` as
/// `∫_0^1 + ∫_1^X x^μ H_ν + ∫_X^∞ x^μ Y_ν + ∫_X^∞ x^μ (H_ν − Y_ν)`,
/// the last from term-by-term integration of the large-x expansion of `H_ν − Y_ν`.
pub fn struve_mellin(mu: f64, nu: f64, tol: f64) -> Result<Oracle> {
    let piece_tol = 0.25 * tol;
    let s = mu + nu;
    // near 0, x^μ H_ν ~ x^{μ+ν+1}; x = u^p with p = 1/(μ+ν+2) flattens it
    let p = 1.0 / (s + 2.0);
    let h0 = 0.5f64.powf(nu + 1.0) * recip_gamma1p(0.5) * recip_gamma1p(nu + 0.5);
    let near = |u: f64| {
        let x = u.powf(p);
        if x == 0.0 {
            return p * h0;
        }
        match struve_h(nu, x) {
            Ok(h) => p * h.value / x.powf(nu + 1.0),
            Err(_) => f64::NAN,
        }
    };
    let a = integrate_finite(near, 0.0, 1.0, piece_tol)?;
    let mid = |x: f64| struve_h(nu, x).map(|h| x.powf(mu) * h.value).unwrap_or(f64::NAN);
    let b = integrate_finite(mid, 1.0, STRUVE_SPLIT, piece_tol)?;
    let y_tail = |t: f64| {
        let x = STRUVE_SPLIT + t;
        x.powf(mu) * bessel_jy_large(nu, x).1
    };
    let c = integrate_semi_oscillatory(y_tail, OscillationHint::new(PI, PI)?, piece_tol)?;
    let d = struve_smooth_tail(mu, nu, STRUVE_SPLIT);
    Ok(Oracle {
        route: Route::SemiInfiniteOscillatory,
        result: combine(&[a, b, c, d]),
    })
}

/// `(1/π) Σ_k Γ(k+1/2) 2^{2k+1-ν} X^{μ+ν-2k} / (Γ(ν+1/2-k) (2k-μ-ν))`, summed
/// until its terms stop decreasing; the last term kept is the error estimate.
fn struve_smooth_tail(mu: f64, nu: f64, x: f64) -> IntegralResult {
    let s = mu + nu;
    // c_k = Γ(k+1/2)/(π Γ(ν+1/2-k)) (x/2)^{ν-2k-1}, and ∫_X^∞ x^μ (x/2)^{ν-2k-1} = X^{μ+1} (X/2)^{ν-2k-1} / (2k-s)
    let half = 0.5 * x;
    let mut c = PI.sqrt() * half.powf(nu - 1.0) * recip_gamma1p(nu - 0.5) / PI;
    let mut value = 0.0;
    let mut last = f64::INFINITY;
    let mut evaluations = 0;
    for k in 0..200 {
        let kf = k as f64;
        let term = c * x.powf(mu + 1.0) / (2.0 * kf - s);
        if term.abs() >= last.abs() {
            break;
        }
        value += term;
        last = term;
        evaluations += 1;
        c *= (kf + 0.5) * (nu - 0.5 - kf) / (half * half);
        if c == 0.0 {
            last = 0.0;
            break;
        }
    }
    IntegralResult {
        value,
        abs_err_est: last.abs(),
        status: QuadStatus::Converged,
        evaluations,
    }
}

/// Upper end of the finite range for `W_{α,β}(-x²)`, 0 < α ≤ [`WRIGHT_FINITE_MAX_ALPHA`].
///
/// `|W_{α,β}(-x²)|` decays like `exp(-r G s)` with `s = x^{2/(1+α)}`,
/// `G = (1+α)/α · α^{1/(1+α)}` and `r = |cos(π/(1+α))|`, while the
/// double-double series loses `exp(G s) · 1e-32` to cancellation. The
/// range ends where the two balance.
pub fn wright_finite_range(alpha: f64) -> f64 {
    let g = (1.0 + alpha) / alpha * alpha.powf(1.0 / (1.0 + alpha));
    let r = (PI / (1.0 + alpha)).cos().abs();
    let gs = 1e-32f64.ln().abs() / (1.0 + r);
    (gs / g).powf(0.5 * (1.0 + alpha))
}

/// Beyond this α the decay of `W_{α,β}(-x²)` is too slow for the finite range.
pub const WRIGHT_FINITE_MAX_ALPHA: f64 = 0.6;

/// Whether the Gaussian Wright integral has an oracle at (α, β).
pub fn wright_gaussian_admissible(alpha: f64, beta: f64) -> bool {
    beta - 0.5 * alpha > 0.0 && (alpha == 0.0 || alpha == 1.0 || (alpha > 0.0 && alpha <= WRIGHT_FINITE_MAX_ALPHA))
}

pub fn wright_gaussian_integral(alpha: f64, beta: f64, tol: f64) -> Result<Option<Oracle>> {
    if !wright_gaussian_admissible(alpha, beta) {
        return Ok(None);
    }
    let ctl = SeriesControl::default();
    let w = move |x: f64| wright_w(alpha, beta, -x * x, &ctl).map(|r| r.value).unwrap_or(f64::NAN);
    if alpha == 0.0 {
        return Ok(Some(Oracle {
            route: Route::RealLineDecay,
            result: integrate_real_line_decay(w, tol)?,
        }));
    }
    if alpha == 1.0 {
        // W_{1,β}(-x²) = x^{1-β} J_{β-1}(2x): zeros π/2 apart
        return even_oscillatory(w, 0.5 * PI, tol).map(Some);
    }
    let end = wright_finite_range(alpha);
    let mut r = doubled(integrate_finite(w, 0.0, end, 0.5 * tol)?);
    // the dropped tail and the series noise are both about |W| at the cut
    r.abs_err_est += 2.0 * end * w(end).abs();
    Ok(Some(Oracle {
        route: Route::Finite,
        result: r,
    }))
}

/// Past this `d x` the weight `e^{-d x}` underflows.
const EXP_UNDERFLOW: f64 = 745.0;

pub fn wright_laplace(alpha: f64, beta: f64, d: f64, tol: f64) -> Result<Oracle> {
    let ctl = SeriesControl::default();
    let f = move |x: f64| {
        if d * x > EXP_UNDERFLOW {
            return 0.0;
        }
        match wright_w(alpha, beta, -x, &ctl) {
            Ok(w) => w.value * (-d * x).exp(),
            Err(_) => f64::NAN,
        }
    };
    Ok(Oracle {
        route: Route::SemiInfiniteDecay,
        result: integrate_semi_decay(f, tol)?,
    })
}
