//! Registry of closed-form integral identities and their numerical verification.
//!
//! Each entry evaluates the closed form and, on its admissible range, the
//! left-hand integral by quadrature. Parameters are passed by name:
//!
//! | id | parameters |
//! |----|------------|
//! | `gaussian-moment` | `n, a, b, alpha` |
//! | `bessel-j0-integral` | `alpha` |
//! | `weighted-bessel-moment` | `n, a, b, alpha, nu` |
//! | `weighted-bessel-poly` | `f0, f1, …, fm, a, b, alpha, nu` |
//! | `fn-combo-integral` | `n, a, b` |
//! | `sph-bessel-integral` | `n` |
//! | `struve-mellin` | `mu, nu` |
//! | `wright-gaussian` | `alpha, beta` |
//! | `wright-laplace` | `alpha, beta, d` |

pub mod closed;
pub mod oracle;
pub mod umbral_forms;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::IntegralResult;

pub use closed::{
    bessel_j0_integral, fn_combo_integral, gaussian_moment, sph_bessel_integral, struve_mellin, weighted_bessel_moment,
    weighted_bessel_poly, wright_gaussian_integral, wright_laplace,
};
pub use oracle::{Oracle, Route};

/// Named parameters in the order they were given.
pub type Params = IndexMap<String, f64>;

/// Oscillatory extrapolation is trusted to about this level.
pub const OSCILLATORY_TOL: f64 = 1e-6;
/// Decay-type routes are held to this.
pub const DECAY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Real,
    Count,
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
}

const fn real(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Real,
    }
}

const fn count(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Count,
    }
}

/// One registered identity.
pub struct IdentitySpec {
    pub id: &'static str,
    pub summary: &'static str,
    /// Fixed parameters; `weighted-bessel-poly` also takes `f0, f1, …`.
    pub params: &'static [ParamSpec],
    /// Route used on the bulk of the parameter range.
    pub route: Route,
    closed: fn(&Params) -> Result<f64>,
    oracle: fn(&Params, f64) -> Result<Option<Oracle>>,
}

impl std::fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("id", &self.id)
            .field("route", &self.route)
            .finish_non_exhaustive()
    }
}

impl IdentitySpec {
    /// Checks names, counts and the identity's own constraints.
    pub fn check(&self, params: &Params) -> Result<()> {
        self.check_names(params)?;
        (self.closed)(params).map(|_| ())
    }

    fn check_names(&self, params: &Params) -> Result<()> {
        for spec in self.params {
            let v = *params
                .get(spec.name)
                .ok_or_else(|| Error::MissingParam(format!("{} needs parameter '{}'", self.id, spec.name)))?;
            if spec.kind == ParamKind::Count && !(v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64) {
                return Err(Error::Invalid(format!(
                    "parameter '{}' must be a non-negative integer, got {v}",
                    spec.name
                )));
            }
            if !v.is_finite() {
                return Err(Error::Invalid(format!("parameter '{}' must be finite", spec.name)));
            }
        }
        for name in params.keys() {
            let known = self.params.iter().any(|p| p.name == name)
                || (self.id == "weighted-bessel-poly" && coeff_index(name).is_some());
            if !known {
                return Err(Error::Invalid(format!("{} has no parameter '{name}'", self.id)));
            }
        }
        Ok(())
    }

    pub fn closed_form(&self, params: &Params) -> Result<f64> {
        self.check_names(params)?;
        (self.closed)(params)
    }

    /// The quadrature oracle, or `None` outside its admissible range.
    pub fn oracle(&self, params: &Params, tol: f64) -> Result<Option<Oracle>> {
        self.check(params)?;
        (self.oracle)(params, tol)
    }

    /// Default absolute and relative tolerance for these parameters.
    pub fn default_tol(&self, params: &Params) -> f64 {
        match self.effective_route(params) {
            Some(r) if r.is_oscillatory() => OSCILLATORY_TOL,
            _ => DECAY_TOL,
        }
    }

    fn effective_route(&self, params: &Params) -> Option<Route> {
        if self.id == "wright-gaussian" {
            let alpha = params.get("alpha").copied().unwrap_or(f64::NAN);
            return Some(if alpha == 0.0 {
                Route::RealLineDecay
            } else if alpha == 1.0 {
                Route::RealLineOscillatory
            } else {
                Route::Finite
            });
        }
        Some(self.route)
    }
}

fn coeff_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('f')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn get(p: &Params, name: &str) -> f64 {
    // presence is checked before the evaluators run
    p[name]
}

fn get_n(p: &Params) -> u32 {
    get(p, "n") as u32
}

/// `f0, f1, …` collected into a dense vector; missing indices are zero.
pub fn poly_coeffs(p: &Params) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (name, v) in p {
        if let Some(i) = coeff_index(name) {
            if i >= out.len() {
                out.resize(i + 1, 0.0);
            }
            out[i] = *v;
        }
    }
    if out.is_empty() {
        return Err(Error::MissingParam(
            "weighted-bessel-poly needs coefficients f0, f1, …".into(),
        ));
    }
    Ok(out)
}

static REGISTRY: [IdentitySpec; 9] = [
    IdentitySpec {
        id: "gaussian-moment",
        summary: "∫ (a x + b)^n e^{-α x²} dx = √(π/α) H_n(b, a²/(4α))",
        params: &[count("n"), real("a"), real("b"), real("alpha")],
        route: Route::RealLineDecay,
        closed: |p| gaussian_moment(get_n(p), get(p, "a"), get(p, "b"), get(p, "alpha")),
        oracle: |p, tol| oracle::gaussian_moment(get_n(p), get(p, "a"), get(p, "b"), get(p, "alpha"), tol).map(Some),
    },
    IdentitySpec {
        id: "bessel-j0-integral",
        summary: "∫ J₀(√α x) dx = 2/√α",
        params: &[real("alpha")],
        route: Route::RealLineOscillatory,
        closed: |p| bessel_j0_integral(get(p, "alpha")),
        oracle: |p, tol| oracle::bessel_j0_integral(get(p, "alpha"), tol).map(Some),
    },
    IdentitySpec {
        id: "weighted-bessel-moment",
        summary: "∫ J_ν(√α x)/(√α x)^ν (a x + b)^n dx = 2^{1-ν} √π/√α B_n(b, a²/α; ν), ν > n",
        params: &[count("n"), real("a"), real("b"), real("alpha"), real("nu")],
        route: Route::RealLineOscillatory,
        closed: |p| weighted_bessel_moment(get_n(p), get(p, "a"), get(p, "b"), get(p, "alpha"), get(p, "nu")),
        oracle: |p, tol| {
            let n = get_n(p) as usize;
            let mut c = vec![0.0; n + 1];
            c[n] = 1.0;
            oracle::weighted_bessel_poly(&c, get(p, "a"), get(p, "b"), get(p, "alpha"), get(p, "nu"), tol).map(Some)
        },
    },
    IdentitySpec {
        id: "weighted-bessel-poly",
        summary: "∫ J_ν(√α x)/(√α x)^ν Σ f_k (a x + b)^k dx = 2^{1-ν} √π/√α Σ f_k B_k(b, a²/α; ν), ν > m",
        params: &[real("a"), real("b"), real("alpha"), real("nu")],
        route: Route::RealLineOscillatory,
        closed: |p| {
            weighted_bessel_poly(
                &poly_coeffs(p)?,
                get(p, "a"),
                get(p, "b"),
                get(p, "alpha"),
                get(p, "nu"),
            )
        },
        oracle: |p, tol| {
            let c = poly_coeffs(p)?;
            oracle::weighted_bessel_poly(&c, get(p, "a"), get(p, "b"), get(p, "alpha"), get(p, "nu"), tol).map(Some)
        },
    },
    IdentitySpec {
        id: "fn-combo-integral",
        summary: "∫ Σ_k C(n,k) a^{n-k} b^k J_{n-k}(x) dx = 2√π n! Σ_k b^{n-2k} a^{2k} / (4^k (n-2k)! k! Γ(k+1/2))",
        params: &[count("n"), real("a"), real("b")],
        route: Route::RealLineOscillatory,
        closed: |p| Ok(fn_combo_integral(get_n(p), get(p, "a"), get(p, "b"))),
        oracle: |p, tol| oracle::fn_combo_integral(get_n(p), get(p, "a"), get(p, "b"), tol).map(Some),
    },
    IdentitySpec {
        id: "sph-bessel-integral",
        summary: "∫ j_n(x) dx = π (2m)!/(2^{2m} (m!)²) for n = 2m, 0 for odd n",
        params: &[count("n")],
        route: Route::RealLineOscillatory,
        closed: |p| Ok(sph_bessel_integral(get_n(p))),
        oracle: |p, tol| oracle::sph_bessel_integral(get_n(p), tol).map(Some),
    },
    IdentitySpec {
        id: "struve-mellin",
        summary: "∫_0^∞ x^μ H_ν(x) dx = -2^μ π / (sin((μ+ν)π/2) Γ((1-μ-ν)/2) Γ((1-μ+ν)/2))",
        params: &[real("mu"), real("nu")],
        route: Route::SemiInfiniteOscillatory,
        closed: |p| struve_mellin(get(p, "mu"), get(p, "nu")),
        oracle: |p, tol| {
            let (mu, nu) = (get(p, "mu"), get(p, "nu"));
            if !oracle::struve_in_strip(mu, nu) {
                return Ok(None);
            }
            oracle::struve_mellin(mu, nu, tol).map(Some)
        },
    },
    IdentitySpec {
        id: "wright-gaussian",
        summary: "∫ W_{α,β}(-x²) dx = √π / Γ(β - α/2)",
        params: &[real("alpha"), real("beta")],
        route: Route::Finite,
        closed: |p| Ok(wright_gaussian_integral(get(p, "alpha"), get(p, "beta"))),
        oracle: |p, tol| oracle::wright_gaussian_integral(get(p, "alpha"), get(p, "beta"), tol),
    },
    IdentitySpec {
        id: "wright-laplace",
        summary: "∫_0^∞ W_{α,β}(-x) e^{-d x} dx = E_{α,β}(-1/d) / d",
        params: &[real("alpha"), real("beta"), real("d")],
        route: Route::SemiInfiniteDecay,
        closed: |p| wright_laplace(get(p, "alpha"), get(p, "beta"), get(p, "d")),
        oracle: |p, tol| oracle::wright_laplace(get(p, "alpha"), get(p, "beta"), get(p, "d"), tol).map(Some),
    },
];

/// All registered identities.
pub fn registry() -> &'static [IdentitySpec] {
    &REGISTRY
}

pub fn lookup(id: &str) -> Result<&'static IdentitySpec> {
    REGISTRY
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// No oracle exists for these parameters; only the closed form was computed.
    ClosedOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: Params,
    pub route: Option<Route>,
    pub closed_value: f64,
    pub oracle: Option<IntegralResult>,
    /// `|closed_value − oracle.value|`.
    pub abs_err: Option<f64>,
    /// `abs_err / |closed_value|`, or `abs_err` itself when the closed value is 0.
    pub rel_err: Option<f64>,
    pub passed: bool,
    pub verdict: Verdict,
    /// `max(tol_abs, tol_rel·|closed_value|)`.
    pub tolerance_used: f64,
}

/// Quadrature tolerance: a hundredth of the comparison tolerance, kept
/// within what the route can deliver.
fn oracle_tol(target: f64, route: Option<Route>) -> f64 {
    let floor = match route {
        Some(r) if r.is_oscillatory() => 1e-10,
        _ => 1e-13,
    };
    (0.01 * target).clamp(floor, 1e-3)
}

/// Evaluates the closed form and, where admissible, the quadrature oracle.
///
/// The identity passes when the oracle converged (or was accelerated) and
/// `|closed − oracle| ≤ max(tol_abs, tol_rel·|closed|)`.
pub fn verify(id: &str, params: &Params, tol_abs: f64, tol_rel: f64) -> Result<IdentityReport> {
    for (name, t) in [("tol_abs", tol_abs), ("tol_rel", tol_rel)] {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Invalid(format!("{name} must be non-negative, got {t}")));
        }
    }
    if tol_abs == 0.0 && tol_rel == 0.0 {
        return Err(Error::Invalid("tol_abs and tol_rel cannot both be zero".into()));
    }
    let spec = lookup(id)?;
    let closed_value = spec.closed_form(params)?;
    let tolerance_used = tol_abs.max(tol_rel * closed_value.abs());
    let oracle = spec.oracle(params, oracle_tol(tolerance_used, spec.effective_route(params)))?;
    let Some(oracle) = oracle else {
        return Ok(IdentityReport {
            id: id.to_string(),
            params: params.clone(),
            route: None,
            closed_value,
            oracle: None,
            abs_err: None,
            rel_err: None,
            passed: false,
            verdict: Verdict::ClosedOnly,
            tolerance_used,
        });
    };
    let abs_err = (closed_value - oracle.result.value).abs();
    let rel_err = if closed_value == 0.0 {
        abs_err
    } else {
        abs_err / closed_value.abs()
    };
    let passed = oracle.result.is_ok() && abs_err <= tolerance_used;
    Ok(IdentityReport {
        id: id.to_string(),
        params: params.clone(),
        route: Some(oracle.route),
        closed_value,
        oracle: Some(oracle.result),
        abs_err: Some(abs_err),
        rel_err: Some(rel_err),
        passed,
        verdict: if passed { Verdict::Pass } else { Verdict::Fail },
        tolerance_used,
    })
}

/// Builds a [`Params`] from `(name, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, f64); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
