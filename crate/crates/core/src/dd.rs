//! Double-double helpers for series whose terms cancel heavily.
//!
//! Arithmetic comes from `twofloat`; this module adds the reciprocal gamma
//! function at double-double precision, which is needed as the start value
//! of interleaved series recurrences where an `f64` start value would be
//! amplified by the cancellation.

use twofloat::TwoFloat;

pub(crate) type Dd = TwoFloat;

/// Taylor coefficients of `1/Γ(1+t)` at `t = 0`, stored as (hi, lo) pairs.
const RGAMMA1P_TAYLOR: [(f64, f64); 41] = [
    (1.00000000000000000e+00, 0.00000000000000000e+00),
    (5.77215664901532866e-01, -4.94291515243064487e-18),
    (-6.55878071520253902e-01, 2.13718519706853600e-17),
    (-4.20026350340952370e-02, 1.49203062856505051e-18),
    (1.66538611382291479e-01, 1.01891445468420257e-17),
    (-4.21977345555443334e-02, -3.35799926824801341e-18),
    (-9.62197152787697303e-03, -5.30003136883026263e-19),
    (7.21894324666309990e-03, -3.60065370633942833e-19),
    (-1.16516759185906517e-03, 5.65994785388098081e-20),
    (-2.15241674114950975e-04, 2.37586861807293640e-21),
    (1.28050282388116196e-04, -9.35912449919896746e-21),
    (-2.01348547807882387e-05, 3.04887739720373854e-23),
    (-1.25049348214267063e-06, -2.66214092271897989e-23),
    (1.13302723198169593e-06, -4.62223521210486883e-23),
    (-2.05633841697760707e-07, -3.00616016186451344e-24),
    (6.11609510448141609e-09, -2.69345829817130605e-25),
    (5.00200764446922295e-09, -1.53812361405675086e-26),
    (-1.18127457048702004e-09, -1.00523561557162075e-25),
    (1.04342671169110054e-10, -2.92984199568250347e-27),
    (7.78226343990507081e-12, 4.39725555659584800e-28),
    (-3.69680561864220598e-12, 2.70500349217038853e-28),
    (5.10037028745447575e-13, 2.25300146108587812e-29),
    (-2.05832605356650664e-14, -1.47474814919543357e-30),
    (-5.34812253942301782e-15, -1.62083846863565681e-31),
    (1.22677862823826084e-15, -5.07291514602386667e-32),
    (-1.18125930169745883e-16, 6.42225783814968121e-33),
    (1.18669225475160037e-18, -4.20372654942260141e-35),
    (1.41238065531803186e-18, -7.57694670111629379e-35),
    (-2.29874568443537022e-19, 1.33354819170691447e-36),
    (1.71440632192733743e-20, 5.23071515042693490e-38),
    (1.33735173049369309e-22, 2.64340596490792282e-39),
    (-2.05423355176667283e-22, 3.68568924245689534e-39),
    (2.73603004860800013e-23, -2.85993154163977739e-39),
    (-1.73235644591051646e-24, -1.75408835081975981e-40),
    (-2.36061902449928716e-26, -1.26022501699578495e-42),
    (1.86498294171729434e-26, 8.77477561729096511e-43),
    (-2.21809562420719727e-27, 6.80964031504275306e-44),
    (1.29778197494799370e-28, -3.32569246680409291e-45),
    (1.18069747496652841e-30, -4.18494927596651621e-48),
    (-1.12458434927708807e-30, -2.01842815487355000e-47),
    (1.27708517514086610e-31, 1.05356323678787535e-47),
];

pub(crate) fn dd(x: f64) -> Dd {
    TwoFloat::from(x)
}

/// `a / b` to full double-double accuracy.
///
/// `TwoFloat`'s own `Dd / Dd` rounds the residual `1 - b.hi/b.hi` in plain
/// `f64` and is only as accurate as an `f64` division, so quotients go
/// through two correction steps here instead.
pub(crate) fn dd_div(a: Dd, b: Dd) -> Dd {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

pub(crate) fn to_f64(x: Dd) -> f64 {
    x.hi() + x.lo()
}

/// `1/Γ(1+t)` for |t| ≤ 1/2.
fn rgamma1p_small(t: Dd) -> Dd {
    RGAMMA1P_TAYLOR
        .iter()
        .rev()
        .fold(dd(0.0), |acc, &(hi, lo)| acc * t + TwoFloat::new_add(hi, lo))
}

/// Above this the double-double shift product for `1/Γ` would overflow.
pub(crate) const DD_GAMMA_LIMIT: f64 = 150.0;

/// [`recip_gamma`] where it is safe, the f64 value beyond.
pub(crate) fn recip_gamma_any(z: Dd) -> Dd {
    if z.hi() > DD_GAMMA_LIMIT || z.hi() < -DD_GAMMA_LIMIT {
        dd(crate::special_core::recip_gamma1p(to_f64(z) - 1.0))
    } else {
        recip_gamma(z)
    }
}

/// `1/Γ(z)` at double-double precision for moderate |z| (entire; zero at poles).
pub(crate) fn recip_gamma(z: Dd) -> Dd {
    let m = (z.hi() - 1.0).round();
    let t = z - 1.0 - m;
    let base = rgamma1p_small(t);
    let m = m as i64;
    if m > 0 {
        let mut denom = dd(1.0);
        for j in 1..=m {
            denom *= t + j as f64;
        }
        dd_div(base, denom)
    } else {
        let mut num = base;
        for j in (m + 1)..=0 {
            num *= t + j as f64;
        }
        num
    }
}
