use std::f64::consts::{FRAC_2_PI, PI};

use crate::dd::{dd, dd_div, to_f64, Dd};
use crate::error::{domain, Result};
use crate::functions::FnEvalResult;
use crate::special_core::{binomial, recip_gamma1p, SeriesControl};

/// Above this argument the Hankel expansion replaces the power series
/// (provided the order stays below half the argument).
pub(crate) const HANKEL_THRESHOLD: f64 = 25.0;

fn is_integer(v: f64) -> bool {
    v == v.round()
}

/// `Σ_k t_k` with `t_0 = 1`, `t_k = t_{k-1} · (-q) / ((k+a)(k+b))`,
/// summed in double-double until the terms are negligible.
pub(super) fn ratio_series(q: Dd, a: f64, b: f64, ctl: &SeriesControl) -> (f64, usize, bool) {
    let mut term = dd(1.0);
    let mut sum = dd(1.0);
    let mut tracker = ctl.tracker();
    for k in 1..ctl.max_terms {
        let kf = dd(k as f64);
        let denom = (kf + a) * (kf + b);
        let next = dd_div(-(term * q), denom);
        let shrinking = next.abs() <= term.abs();
        term = next;
        sum += term;
        if tracker.observe(term.hi().abs(), sum.hi().abs()) && shrinking {
            return (to_f64(sum), k + 1, false);
        }
        if !shrinking {
            tracker.reset();
        }
    }
    (to_f64(sum), ctl.max_terms, true)
}

fn bessel_series(nu: f64, x: f64, ctl: &SeriesControl) -> FnEvalResult {
    let half = x / 2.0;
    let q = dd(half) * dd(half);
    let lead = half.powf(nu) * recip_gamma1p(nu);
    // t_{k}/t_{k-1} = -(x/2)² / (k (k + ν))
    let (s, terms, truncated) = ratio_series(q, 0.0, nu, ctl);
    FnEvalResult {
        value: lead * s,
        terms_used: terms,
        truncation_flag: truncated,
    }
}

/// Hankel expansion of (J_μ, Y_μ) for large x and small |μ|.
fn hankel(mu: f64, x: f64) -> (f64, f64, usize) {
    let w = 4.0 * mu * mu;
    let mut term = 1.0;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut used = 1;
    for k in 1..200usize {
        let odd = (2 * k - 1) as f64;
        let next = term * (w - odd * odd) / (k as f64 * 8.0 * x);
        if next.abs() > term.abs() && k > 2 {
            break;
        }
        term = next;
        used += 1;
        // sign (−1)^{⌊k/2⌋}
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        if term.abs() < 1e-17 * p.abs().max(q.abs()) {
            break;
        }
    }
    let phase = (0.5 * mu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_w = cx * cp + sx * sp;
    let sin_w = sx * cp - cx * sp;
    let amp = (FRAC_2_PI / x).sqrt();
    (amp * (p * cos_w - q * sin_w), amp * (p * sin_w + q * cos_w), used)
}

/// (J_ν(x), Y_ν(x)) for x ≥ [`HANKEL_THRESHOLD`] and -3/2 < ν < x/2.
pub(crate) fn bessel_jy_large(nu: f64, x: f64) -> (f64, f64, usize) {
    let steps = if nu >= 0.0 { nu.floor() } else { 0.0 };
    let mu = nu - steps;
    let (j0, y0, n0) = hankel(mu, x);
    if steps == 0.0 {
        return (j0, y0, n0);
    }
    let (mut j1, mut y1, n1) = hankel(mu + 1.0, x);
    let (mut jp, mut yp) = (j0, y0);
    for i in 1..steps as usize {
        let f = 2.0 * (mu + i as f64) / x;
        let (jn, yn) = (f * j1 - jp, f * y1 - yp);
        jp = j1;
        yp = y1;
        j1 = jn;
        y1 = yn;
    }
    (j1, y1, n0 + n1)
}

/// Bessel function of the first kind `J_ν(x)` with default series control.
pub fn bessel_j(nu: f64, x: f64) -> Result<FnEvalResult> {
    bessel_j_with(nu, x, &SeriesControl::default())
}

/// `J_ν(x)` for ν > -1. Negative x is accepted only for integer ν.
pub fn bessel_j_with(nu: f64, x: f64, ctl: &SeriesControl) -> Result<FnEvalResult> {
    ctl.validate()?;
    if !(nu > -1.0) || !nu.is_finite() {
        return Err(domain(format!("bessel_j requires ν > -1, got {nu}")));
    }
    if !x.is_finite() {
        return Err(domain(format!("bessel_j argument must be finite, got {x}")));
    }
    if x < 0.0 {
        if !is_integer(nu) {
            return Err(domain(format!("J_ν(x) for x < 0 needs integer order, got ν = {nu}")));
        }
        let mut r = bessel_j_with(nu, -x, ctl)?;
        if (nu as i64) % 2 != 0 {
            r.value = -r.value;
        }
        return Ok(r);
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(FnEvalResult::exact(1.0))
        } else if nu > 0.0 {
            Ok(FnEvalResult::exact(0.0))
        } else {
            Err(domain(format!("J_ν(0) is infinite for ν = {nu} < 0")))
        };
    }
    if x >= HANKEL_THRESHOLD && nu < 0.5 * x {
        let (j, _, used) = bessel_jy_large(nu, x);
        return Ok(FnEvalResult {
            value: j,
            terms_used: used,
            truncation_flag: false,
        });
    }
    Ok(bessel_series(nu, x, ctl))
}

/// `J_ν(u)/u^ν`, the even entire function `Σ (-1)^k u^{2k} / (2^{ν+2k} k! Γ(ν+k+1))`.
pub fn bessel_j_scaled(nu: f64, u: f64) -> Result<FnEvalResult> {
    if !(nu > -1.0) {
        return Err(domain(format!("scaled Bessel requires ν > -1, got {nu}")));
    }
    let au = u.abs();
    if au >= HANKEL_THRESHOLD && nu < 0.5 * au {
        let (j, _, used) = bessel_jy_large(nu, au);
        return Ok(FnEvalResult {
            value: j / au.powf(nu),
            terms_used: used,
            truncation_flag: false,
        });
    }
    let ctl = SeriesControl::default();
    let half = au / 2.0;
    let q = dd(half) * dd(half);
    let lead = 0.5f64.powf(nu) * recip_gamma1p(nu);
    let (s, terms, truncated) = ratio_series(q, 0.0, nu, &ctl);
    Ok(FnEvalResult {
        value: lead * s,
        terms_used: terms,
        truncation_flag: truncated,
    })
}

/// Spherical Bessel function `j_n(x)`, extended to x < 0 by parity.
pub fn sph_bessel(n: u32, x: f64) -> Result<FnEvalResult> {
    if !x.is_finite() {
        return Err(domain(format!("sph_bessel argument must be finite, got {x}")));
    }
    if x < 0.0 {
        let mut r = sph_bessel(n, -x)?;
        if n % 2 == 1 {
            r.value = -r.value;
        }
        return Ok(r);
    }
    let nf = n as f64;
    if x > 20.0 && nf < x {
        // upward recurrence is stable while the order stays below x
        let (s, c) = x.sin_cos();
        let j0 = s / x;
        if n == 0 {
            return Ok(FnEvalResult::exact(j0));
        }
        let mut prev = j0;
        let mut cur = s / (x * x) - c / x;
        for k in 1..n {
            let next = (2 * k + 1) as f64 / x * cur - prev;
            prev = cur;
            cur = next;
        }
        return Ok(FnEvalResult {
            value: cur,
            terms_used: n as usize + 1,
            truncation_flag: false,
        });
    }
    // j_n(x) = x^n/(2n+1)!! Σ_k (-x²/2)^k / (k! (2n+3)(2n+5)…(2n+2k+1))
    let ctl = SeriesControl::default();
    let double_factorial = (1..=n).fold(1.0, |acc, i| acc * (2 * i + 1) as f64);
    let lead = x.powi(n as i32) / double_factorial;
    if lead == 0.0 {
        return Ok(FnEvalResult::exact(0.0));
    }
    // ratio -(x²/2) / (k (2n+2k+1)) = -(x²/4) / (k (k + n + 1/2))
    let q = dd(x) * dd(x) / 4.0;
    let (s, terms, truncated) = ratio_series(q, 0.0, nf + 0.5, &ctl);
    Ok(FnEvalResult {
        value: lead * s,
        terms_used: terms,
        truncation_flag: truncated,
    })
}

/// `F_n(x; a, b) = Σ_k C(n,k) a^{n-k} b^k J_{n-k}(x)`.
pub fn f_n_combo(n: u32, x: f64, a: f64, b: f64) -> Result<FnEvalResult> {
    let mut value = 0.0;
    let mut terms = 0;
    let mut truncated = false;
    for k in 0..=n {
        let order = n - k;
        let j = bessel_j(order as f64, x)?;
        value += binomial(n, k) * a.powi(order as i32) * b.powi(k as i32) * j.value;
        terms += j.terms_used;
        truncated |= j.truncation_flag;
    }
    Ok(FnEvalResult {
        value,
        terms_used: terms,
        truncation_flag: truncated,
    })
}
