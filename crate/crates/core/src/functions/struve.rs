use std::f64::consts::PI;

use crate::dd::dd;
use crate::error::{domain, Result};
use crate::functions::bessel::{bessel_jy_large, ratio_series};
use crate::functions::FnEvalResult;
use crate::special_core::{recip_gamma1p, NeumaierSum, SeriesControl};

/// Beyond this the large-argument form `Y_ν + (H_ν − Y_ν)` is used.
const STRUVE_ASYMPTOTIC_THRESHOLD: f64 = 35.0;

/// Struve function `H_ν(x)` with default series control.
pub fn struve_h(nu: f64, x: f64) -> Result<FnEvalResult> {
    struve_h_with(nu, x, &SeriesControl::default())
}

/// `H_ν(x) = Σ_k (-1)^k (x/2)^{2k+ν+1} / (Γ(k+3/2) Γ(k+ν+3/2))` for x ≥ 0, ν > -3/2.
pub fn struve_h_with(nu: f64, x: f64, ctl: &SeriesControl) -> Result<FnEvalResult> {
    ctl.validate()?;
    if !(nu > -1.5) || !nu.is_finite() {
        return Err(domain(format!("struve_h requires ν > -3/2, got {nu}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain(format!("struve_h requires finite x ≥ 0, got {x}")));
    }
    if x == 0.0 {
        if nu < -1.0 {
            return Err(domain(format!("H_ν(0) is infinite for ν = {nu} < -1")));
        }
        let v = if nu == -1.0 {
            recip_gamma1p(0.5) * recip_gamma1p(-0.5)
        } else {
            0.0
        };
        return Ok(FnEvalResult::exact(v));
    }
    if x > STRUVE_ASYMPTOTIC_THRESHOLD && nu < 0.5 * x {
        return Ok(struve_large(nu, x));
    }
    let half = x / 2.0;
    let q = dd(half) * dd(half);
    let lead = half.powf(nu + 1.0) * recip_gamma1p(0.5) * recip_gamma1p(nu + 0.5);
    let (s, terms, truncated) = ratio_series(q, 0.5, nu + 0.5, ctl);
    Ok(FnEvalResult {
        value: lead * s,
        terms_used: terms,
        truncation_flag: truncated,
    })
}

/// Sum of the divergent expansion
/// `H_ν(x) − Y_ν(x) ~ (1/π) Σ_k Γ(k+1/2) (x/2)^{ν-2k-1} / Γ(ν+1/2-k)`,
/// truncated at its smallest term when it does not terminate.
pub(crate) fn struve_minus_y_terms(nu: f64, x: f64) -> Vec<f64> {
    let half = x / 2.0;
    let inv_q = 1.0 / (half * half);
    let mut term = PI.sqrt() * half.powf(nu - 1.0) * recip_gamma1p(nu - 0.5) / PI;
    let mut out = vec![term];
    for k in 0..200 {
        let kf = k as f64;
        let next = term * (kf + 0.5) * (nu - 0.5 - kf) * inv_q;
        if next == 0.0 || next.abs() >= term.abs() {
            break;
        }
        term = next;
        out.push(term);
        if term.abs() < 1e-18 * out[0].abs() {
            break;
        }
    }
    out
}

fn struve_large(nu: f64, x: f64) -> FnEvalResult {
    let (_, y, used) = bessel_jy_large(nu, x);
    let tail = struve_minus_y_terms(nu, x);
    let n = tail.len();
    let s: NeumaierSum = std::iter::once(y).chain(tail).collect();
    FnEvalResult {
        value: s.value(),
        terms_used: used + n,
        truncation_flag: false,
    }
}

/// The first `terms` terms of the defining series, summed in increasing k
/// with the same per-term arithmetic as the umbral evaluation.
pub fn struve_series_partial(nu: f64, x: f64, terms: usize) -> f64 {
    let half = x / 2.0;
    let q = half * half;
    let pre = half.powf(nu + 1.0);
    let mut s = NeumaierSum::new();
    for k in 0..terms {
        let coeff = (-q).powi(k as i32) * pre;
        if coeff == 0.0 {
            continue;
        }
        let kf = k as f64;
        s.add(coeff * recip_gamma1p(kf + 0.5) * recip_gamma1p(kf + (nu + 0.5)));
    }
    s.value()
}
