//! Numerical integration used as the independent oracle for the identities.
//!
//! All routines are sequential and deterministic: the same integrand and
//! tolerance always produce bit-identical results.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::special_core::NeumaierSum;

/// Cap on the number of panels in one adaptive integration.
pub const MAX_PANELS: usize = 10_000;

/// Cap on the number of zero-spacing intervals in an oscillatory integration.
pub const MAX_OSC_INTERVALS: usize = 200;

/// Oscillatory integration runs at least this many intervals before it may stop.
const MIN_OSC_INTERVALS: usize = 8;

/// Only the most recent partial sums enter the epsilon table.
const EPSILON_WINDOW: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadStatus {
    Converged,
    MaxSubdivisions,
    Accelerated,
    Failed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub abs_err_est: f64,
    pub status: QuadStatus,
    pub evaluations: usize,
}

impl IntegralResult {
    /// `true` for `Converged` and `Accelerated`.
    pub fn is_ok(&self) -> bool {
        matches!(self.status, QuadStatus::Converged | QuadStatus::Accelerated)
    }
}

/// Where the oscillatory partition starts and how far apart its points are.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationHint {
    pub asymptotic_zero_spacing: f64,
    pub first_partition_point: f64,
}

impl OscillationHint {
    pub fn new(asymptotic_zero_spacing: f64, first_partition_point: f64) -> Result<Self> {
        let ok = |v: f64| v > 0.0 && v.is_finite();
        if !ok(asymptotic_zero_spacing) || !ok(first_partition_point) {
            return Err(domain(format!(
                "oscillation hint needs positive finite values, got spacing {asymptotic_zero_spacing}, \
                 first point {first_partition_point}"
            )));
        }
        Ok(Self {
            asymptotic_zero_spacing,
            first_partition_point,
        })
    }
}

// Gauss–Kronrod 10/21 abscissae and weights on [-1, 1] (non-negative half).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // largest error first; ties broken by position for a total, fixed order
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

/// One G10/K21 panel. Returns `None` if the integrand is not finite.
fn gk21<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Option<Panel> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut resabs = fc.abs() * WGK[10];
    for i in 0..10 {
        let dx = half * XGK[i];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[i] * (f1 + f2);
        resabs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs() + 50.0 * f64::EPSILON * resabs * half.abs();
    if value.is_finite() && err.is_finite() {
        Some(Panel { lo, hi, value, err })
    } else {
        None
    }
}

fn failed(evaluations: usize) -> IntegralResult {
    IntegralResult {
        value: f64::NAN,
        abs_err_est: f64::INFINITY,
        status: QuadStatus::Failed,
        evaluations,
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("tolerance must be positive and finite, got {tol}")))
    }
}

/// Adaptive G10/K21 integration over `[lo, hi]` to absolute tolerance `tol`,
/// always splitting the panel with the largest error estimate.
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<IntegralResult> {
    check_tol(tol)?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(domain(format!(
            "integrate_finite needs finite lo < hi, got [{lo}, {hi}]"
        )));
    }
    Ok(adaptive(&f, &[lo, hi], tol))
}

/// Adaptive integration over consecutive panels `[breaks[i], breaks[i+1]]`.
fn adaptive<F: Fn(f64) -> f64>(f: &F, breaks: &[f64], tol: f64) -> IntegralResult {
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        evaluations += 21;
        match gk21(f, w[0], w[1]) {
            Some(p) => heap.push(p),
            None => return failed(evaluations),
        }
    }
    let mut err_total: f64 = heap.iter().map(|p| p.err).sum();
    let mut status = QuadStatus::Converged;
    while err_total > tol {
        if heap.len() >= MAX_PANELS {
            status = QuadStatus::MaxSubdivisions;
            break;
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(worst.lo < mid && mid < worst.hi) {
            heap.push(worst);
            status = QuadStatus::MaxSubdivisions;
            break;
        }
        evaluations += 42;
        let (Some(left), Some(right)) = (gk21(f, worst.lo, mid), gk21(f, mid, worst.hi)) else {
            return failed(evaluations);
        };
        heap.push(left);
        heap.push(right);
        // recomputed rather than updated so rounding does not drift
        err_total = heap.iter().map(|p| p.err).sum();
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let value: NeumaierSum = panels.iter().map(|p| p.value).collect();
    IntegralResult {
        value: value.value(),
        abs_err_est: err_total,
        status,
        evaluations,
    }
}

/// `∫_{-∞}^{∞} f` for integrands decaying faster than `|x|^{-2}`, through
/// `x = t/(1-t²)`.
pub fn integrate_real_line_decay<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<IntegralResult> {
    check_tol(tol)?;
    let g = |t: f64| {
        let s = 1.0 - t * t;
        let v = f(t / s);
        if v == 0.0 {
            0.0
        } else {
            v * (1.0 + t * t) / (s * s)
        }
    };
    Ok(adaptive(&g, &[-1.0, -0.5, 0.0, 0.5, 1.0], tol))
}

/// `∫_0^∞ f` for integrands with exponential decay, through `x = -ln(1-t)`.
pub fn integrate_semi_decay<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<IntegralResult> {
    check_tol(tol)?;
    let g = |t: f64| {
        let v = f(-(-t).ln_1p());
        if v == 0.0 {
            0.0
        } else {
            v / (1.0 - t)
        }
    };
    Ok(adaptive(&g, &[0.0, 0.5, 1.0], tol))
}

/// Wynn's epsilon algorithm on `s`; returns the deepest even-column entry
/// built from the final element.
fn wynn_epsilon(s: &[f64]) -> f64 {
    let n = s.len();
    if n < 3 {
        return *s.last().unwrap_or(&0.0);
    }
    // prev = ε_{k-1}, cur = ε_k, each indexed by starting position
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = s.to_vec();
    let mut best = s[n - 1];
    let mut k = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let d = cur[j + 1] - cur[j];
            if d == 0.0 {
                // the column has converged to cur[j+1]
                return if k % 2 == 0 { cur[j + 1] } else { best };
            }
            next.push(prev[j + 1] + 1.0 / d);
        }
        k += 1;
        prev = cur;
        cur = next;
        if k % 2 == 0 {
            let v = *cur.last().expect("non-empty column");
            if !v.is_finite() {
                break;
            }
            best = v;
        }
    }
    best
}

/// `∫_0^∞ f` for conditionally convergent oscillatory integrands.
///
/// `[0, z₀]` is integrated directly and the rest in intervals of one zero
/// spacing; the partial sums are extrapolated with the epsilon algorithm
/// until two consecutive extrapolations differ by less than `tol` twice
/// in a row.
pub fn integrate_semi_oscillatory<F: Fn(f64) -> f64>(f: F, hint: OscillationHint, tol: f64) -> Result<IntegralResult> {
    check_tol(tol)?;
    let hint = OscillationHint::new(hint.asymptotic_zero_spacing, hint.first_partition_point)?;
    let inner_tol = tol * 1e-2;
    let z0 = hint.first_partition_point;
    let h = hint.asymptotic_zero_spacing;
    let first = adaptive(&f, &[0.0, z0], inner_tol);
    let mut evaluations = first.evaluations;
    if !first.is_ok() {
        return Ok(failed(evaluations));
    }
    let mut quad_err = first.abs_err_est;
    let mut running = NeumaierSum::new();
    running.add(first.value);
    let mut partial = vec![first.value];
    let mut estimates: Vec<f64> = Vec::new();
    for k in 0..MAX_OSC_INTERVALS {
        let a = z0 + k as f64 * h;
        let piece = adaptive(&f, &[a, a + h], inner_tol);
        evaluations += piece.evaluations;
        if !piece.is_ok() {
            return Ok(failed(evaluations));
        }
        quad_err += piece.abs_err_est;
        running.add(piece.value);
        partial.push(running.value());
        let window = &partial[partial.len().saturating_sub(EPSILON_WINDOW)..];
        estimates.push(wynn_epsilon(window));
        let m = estimates.len();
        if m >= MIN_OSC_INTERVALS {
            let d1 = (estimates[m - 1] - estimates[m - 2]).abs();
            let d2 = (estimates[m - 2] - estimates[m - 3]).abs();
            if d1 < tol && d2 < tol {
                return Ok(IntegralResult {
                    value: estimates[m - 1],
                    abs_err_est: d1.max(d2) + quad_err,
                    status: QuadStatus::Accelerated,
                    evaluations,
                });
            }
        }
    }
    let m = estimates.len();
    Ok(IntegralResult {
        value: estimates[m - 1],
        abs_err_est: (estimates[m - 1] - estimates[m - 2]).abs() + quad_err,
        status: QuadStatus::Failed,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_weights_are_consistent() {
        let k: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
        // K21 is exact through degree 31
        let p = gk21(&|x: f64| x.powi(30), -1.0, 1.0).unwrap();
        assert!((p.value - 2.0 / 31.0).abs() < 1e-15);
    }

    #[test]
    fn finite_examples() {
        let r = integrate_finite(|x| x * x, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.status, QuadStatus::Converged);
        let r = integrate_finite(f64::sin, 0.0, PI, 1e-12).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
        let r = integrate_finite(|x| (-x * x).exp(), -1.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.493_648_265_624_854).abs() < 1e-14);
    }

    #[test]
    fn invalid_inputs() {
        assert!(integrate_finite(|x| x, 1.0, 1.0, 1e-8).is_err());
        assert!(integrate_finite(|x| x, 0.0, 1.0, 0.0).is_err());
        assert!(OscillationHint::new(0.0, 1.0).is_err());
        assert!(OscillationHint::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn non_finite_integrand_fails() {
        let r = integrate_finite(|x| 1.0 / x, 0.0, 1.0, 1e-8).unwrap();
        assert_eq!(r.status, QuadStatus::Failed);
    }

    #[test]
    fn hopeless_endpoint_singularity_is_not_reported_converged() {
        let r = integrate_finite(|x: f64| x.powf(-0.999), 0.0, 1.0, 1e-12).unwrap();
        assert!(!r.is_ok());
        assert!(r.evaluations > 0);
    }

    #[test]
    fn real_line_examples() {
        let r = integrate_real_line_decay(|x| (-x * x).exp(), 1e-12).unwrap();
        assert!((r.value - PI.sqrt()).abs() < 1e-13);
        let r = integrate_real_line_decay(|x| x * x * (-x * x).exp(), 1e-12).unwrap();
        assert!((r.value - PI.sqrt() / 2.0).abs() < 1e-13);
        let r = integrate_real_line_decay(|x| (1.0 + x * x).powi(-2), 1e-12).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn semi_decay_examples() {
        let r = integrate_semi_decay(|x| (-x).exp(), 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
        let r = integrate_semi_decay(|x| x * (-x).exp(), 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
    }

    #[test]
    fn dirichlet_integral() {
        let hint = OscillationHint::new(PI, PI).unwrap();
        let sinc = |x: f64| if x == 0.0 { 1.0 } else { x.sin() / x };
        let r = integrate_semi_oscillatory(sinc, hint, 1e-10).unwrap();
        assert_eq!(r.status, QuadStatus::Accelerated);
        assert!((r.value - PI / 2.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn epsilon_accelerates_alternating_series() {
        // partial sums of ln 2 = 1 - 1/2 + 1/3 - ...
        let mut s = Vec::new();
        let mut acc = 0.0;
        for k in 1..=20 {
            acc += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            s.push(acc);
        }
        assert!((wynn_epsilon(&s) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn repeat_runs_are_bit_identical() {
        let f = |x: f64| (x * 3.1).cos() * (-x).exp() + x.sqrt();
        let a = integrate_finite(f, 0.0, 7.5, 1e-11).unwrap();
        let b = integrate_finite(f, 0.0, 7.5, 1e-11).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.abs_err_est.to_bits(), b.abs_err_est.to_bits());
        assert_eq!(a.evaluations, b.evaluations);
    }
}
