//! Wright–Bessel `W_{α,β}(x) = Σ x^k / (k! Γ(kα+β))` and
//! Mittag-Leffler `E_{α,β}(x) = Σ x^k / Γ(αk+β)`.

use crate::dd::{dd, recip_gamma_any as rg_dd, to_f64};
use crate::error::{domain, Error, Result};
use crate::functions::bessel::bessel_j;
use crate::functions::FnEvalResult;
use crate::special_core::{recip_gamma1p, NeumaierSum, SeriesControl};

/// Beyond this |x| (α = 1, x < 0) the Bessel form is used.
const BESSEL_BRIDGE_MIN: f64 = 100.0;

/// `Σ_k x^k / (k!^f Γ(kα+β))` in double-double, with f ∈ {0, 1}; α > 0.
fn dd_series(alpha: f64, beta: f64, x: f64, factorial: bool, ctl: &SeriesControl) -> Result<FnEvalResult> {
    let xd = dd(x);
    let mut pw = dd(1.0);
    let mut sum = rg_dd(dd(beta));
    let mut prev = sum.abs();
    let mut tracker = ctl.tracker();
    for k in 1..ctl.max_terms {
        pw *= xd;
        if factorial {
            pw /= k as f64;
        }
        let arg = dd(alpha) * k as f64 + beta;
        let term = pw * rg_dd(arg);
        if !term.hi().is_finite() {
            return Err(Error::Overflow(x));
        }
        sum += term;
        let shrinking = term.abs() <= prev;
        prev = term.abs();
        if tracker.observe(term.hi().abs(), sum.hi().abs()) && shrinking {
            return Ok(FnEvalResult {
                value: to_f64(sum),
                terms_used: k + 1,
                truncation_flag: false,
            });
        }
        if !shrinking {
            tracker.reset();
        }
    }
    Ok(FnEvalResult {
        value: to_f64(sum),
        terms_used: ctl.max_terms,
        truncation_flag: true,
    })
}

/// `f64` series for -1 ≤ α < 0, one `recip_gamma1p` per term.
/// At α = -1 the terms follow `t_k = t_{k-1} x (β-k) / k` instead, since
/// `1/Γ(β-k)` alone overflows long before the series settles.
fn negative_alpha_series(alpha: f64, beta: f64, x: f64, ctl: &SeriesControl) -> Result<FnEvalResult> {
    let mut pw = 1.0;
    let first = recip_gamma1p(beta - 1.0);
    let mut sum = NeumaierSum::new();
    sum.add(first);
    let mut prev = first.abs();
    let mut tracker = ctl.tracker();
    for k in 1..ctl.max_terms {
        let kf = k as f64;
        let term = if alpha == -1.0 {
            pw *= x * (beta - kf) / kf;
            pw * first
        } else {
            pw *= x / kf;
            pw * recip_gamma1p(kf * alpha + beta - 1.0)
        };
        if !term.is_finite() {
            return Err(Error::Overflow(x));
        }
        sum.add(term);
        let shrinking = term.abs() <= prev;
        prev = term.abs();
        if tracker.observe(term.abs(), sum.value().abs()) && shrinking {
            return Ok(FnEvalResult {
                value: sum.value(),
                terms_used: k + 1,
                truncation_flag: false,
            });
        }
        if !shrinking {
            tracker.reset();
        }
    }
    Ok(FnEvalResult {
        value: sum.value(),
        terms_used: ctl.max_terms,
        truncation_flag: true,
    })
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {v}")))
    }
}

/// Wright–Bessel function for α > -1, or α = -1 with |x| < 1.
/// For α < 0 the parameter β must not be an integer.
pub fn wright_w(alpha: f64, beta: f64, x: f64, trunc: &SeriesControl) -> Result<FnEvalResult> {
    trunc.validate()?;
    check_finite("alpha", alpha)?;
    check_finite("beta", beta)?;
    check_finite("x", x)?;
    if alpha < -1.0 {
        return Err(domain(format!("wright_w requires α ≥ -1, got {alpha}")));
    }
    if alpha == -1.0 && x.abs() >= 1.0 {
        return Err(domain(format!("wright_w at α = -1 requires |x| < 1, got {x}")));
    }
    if alpha < 0.0 && beta.fract() == 0.0 {
        return Err(domain(format!(
            "wright_w with α < 0 requires non-integer β, got {beta}"
        )));
    }
    if x == 0.0 {
        return Ok(FnEvalResult::exact(recip_gamma1p(beta - 1.0)));
    }
    if alpha == 0.0 {
        let v = x.exp() * recip_gamma1p(beta - 1.0);
        if !v.is_finite() {
            return Err(Error::Overflow(x));
        }
        return Ok(FnEvalResult::exact(v));
    }
    if alpha < 0.0 {
        return negative_alpha_series(alpha, beta, x, trunc);
    }
    if alpha == 1.0 && x < -BESSEL_BRIDGE_MIN && beta > 0.0 {
        // W_{1,β}(-z) = z^{(1-β)/2} J_{β-1}(2√z)
        let z = -x;
        let j = bessel_j(beta - 1.0, 2.0 * z.sqrt())?;
        return Ok(FnEvalResult {
            value: z.powf(0.5 * (1.0 - beta)) * j.value,
            ..j
        });
    }
    dd_series(alpha, beta, x, true, trunc)
}

/// Mittag-Leffler function for α > 0; α = 0 is the geometric series, |x| < 1.
pub fn mittag_leffler(alpha: f64, beta: f64, x: f64, trunc: &SeriesControl) -> Result<FnEvalResult> {
    trunc.validate()?;
    check_finite("alpha", alpha)?;
    check_finite("beta", beta)?;
    check_finite("x", x)?;
    if alpha < 0.0 {
        return Err(domain(format!("mittag_leffler requires α ≥ 0, got {alpha}")));
    }
    if x == 0.0 {
        return Ok(FnEvalResult::exact(recip_gamma1p(beta - 1.0)));
    }
    if alpha == 0.0 {
        if x.abs() >= 1.0 {
            return Err(domain(format!("mittag_leffler at α = 0 requires |x| < 1, got {x}")));
        }
        return Ok(FnEvalResult::exact(recip_gamma1p(beta - 1.0) / (1.0 - x)));
    }
    dd_series(alpha, beta, x, false, trunc)
}
