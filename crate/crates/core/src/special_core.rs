//! Real gamma machinery and the truncation policy shared by every series.
//!
//! `recip_gamma1p(μ)` is the umbral vacuum `φ(μ) = 1/Γ(μ+1)`. It is evaluated
//! as an entire function in its own right, so it returns an exact zero at
//! `μ = -1, -2, …` and passes continuously through those points.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which `Γ(x)` is finite in `f64`.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Truncation policy for the infinite series evaluated in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Stop once terms fall below `rel_tol` times the running sum.
    pub rel_tol: f64,
    /// Number of consecutive small terms needed before stopping.
    pub small_terms_required: usize,
    /// Hard cap on the number of terms; hitting it sets the truncation flag.
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            small_terms_required: 3,
            max_terms: 500,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, small_terms_required: usize, max_terms: usize) -> Result<Self> {
        let control = Self {
            rel_tol,
            small_terms_required,
            max_terms,
        };
        control.validate()?;
        Ok(control)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Invalid(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.small_terms_required == 0 {
            return Err(Error::Invalid("small_terms_required must be at least 1".into()));
        }
        if self.max_terms == 0 {
            return Err(Error::Invalid("max_terms must be at least 1".into()));
        }
        Ok(())
    }

    pub(crate) fn tracker(&self) -> SmallTermTracker {
        SmallTermTracker {
            rel_tol: self.rel_tol,
            required: self.small_terms_required,
            run: 0,
        }
    }
}

/// Counts consecutive negligible terms.
#[derive(Debug, Clone)]
pub(crate) struct SmallTermTracker {
    rel_tol: f64,
    required: usize,
    run: usize,
}

impl SmallTermTracker {
    /// Records one term; returns `true` once the series may be stopped.
    pub(crate) fn observe(&mut self, term_abs: f64, sum_abs: f64) -> bool {
        if term_abs <= self.rel_tol * sum_abs {
            self.run += 1;
        } else {
            self.run = 0;
        }
        self.run >= self.required
    }

    pub(crate) fn reset(&mut self) {
        self.run = 0;
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// `sin(πx)`, exactly zero at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = x.rem_euclid(2.0);
    let (r, sign) = if r >= 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    if r == 0.0 {
        return 0.0;
    }
    let v = if r < 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (r - 0.5)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    sign * v
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_sum(z: f64) -> f64 {
    LANCZOS_COEF[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEF[0], |acc, (i, c)| acc + c / (z + (i + 1) as f64))
}

/// Γ(x) for x ≥ 0.5 and x ≤ GAMMA_MAX_ARG.
fn gamma_lanczos(x: f64) -> f64 {
    if x == x.floor() && x <= 30.0 {
        return (2..x as u64).fold(1.0, |acc, k| acc * k as f64);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // split the power so t^(z+1/2) does not overflow before e^{-t} is applied
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(z)
}

fn ln_gamma_lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// The gamma function on the real line.
///
/// Fails with [`Error::Pole`] at the non-positive integers and with
/// [`Error::Overflow`] above [`GAMMA_MAX_ARG`].
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(domain("gamma of NaN"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow(x));
    }
    if x >= 0.5 {
        return Ok(gamma_lanczos(x));
    }
    // reflection: Γ(x)Γ(1-x) = π / sin(πx)
    let w = 1.0 - x;
    let s = sin_pi(x);
    if w <= GAMMA_MAX_ARG {
        Ok(PI / (s * gamma_lanczos(w)))
    } else {
        Ok(s.signum() * (PI.ln() - s.abs().ln() - ln_gamma_lanczos(w)).exp())
    }
}

/// `φ(μ) = 1/Γ(μ+1)`, an entire function of μ.
pub fn recip_gamma1p(mu: f64) -> f64 {
    let z = mu + 1.0;
    if z.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(z) {
        return 0.0;
    }
    if z.abs() <= crate::dd::DD_GAMMA_LIMIT {
        return crate::dd::to_f64(crate::dd::recip_gamma(crate::dd::dd(mu) + 1.0));
    }
    if z >= 0.5 {
        if z > GAMMA_MAX_ARG {
            return (-ln_gamma_lanczos(z)).exp();
        }
        return 1.0 / gamma_lanczos(z);
    }
    // 1/Γ(z) = sin(πz) Γ(1-z) / π
    let w = 1.0 - z;
    let s = sin_pi(z);
    if w <= GAMMA_MAX_ARG {
        s * gamma_lanczos(w) / PI
    } else {
        s.signum() * (ln_gamma_lanczos(w) + s.abs().ln() - PI.ln()).exp()
    }
}

/// `ln Γ(x)` for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if x < 0.5 {
        return Ok(ln_gamma_lanczos(x + 1.0) - x.ln());
    }
    if x <= 20.0 {
        return Ok(gamma_lanczos(x).ln());
    }
    Ok(ln_gamma_lanczos(x))
}

/// `n!` as a float.
pub fn factorial(n: u32) -> f64 {
    if n <= 30 {
        (2..=n).fold(1.0, |acc, k| acc * k as f64)
    } else {
        gamma_lanczos(n as f64 + 1.0)
    }
}

/// Binomial coefficient `C(n, k)` as a float.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
