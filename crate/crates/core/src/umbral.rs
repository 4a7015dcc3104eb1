//! Finite algebra of umbral monomials.
//!
//! A monomial is `coeff · ĉ₁^{e₁} ĉ₂^{e₂}` with real exponents. Single-symbol
//! expressions use `ĉ₁` as `ĉ`. Evaluation applies `ĉ_i^{μ} φ_i(0) = φ(μ)`
//! independently to each symbol, with `φ(μ) = 1/Γ(μ+1)`.
//!
//! Expressions are kept normalized: terms are sorted by exponent vector,
//! exponent vectors equal within [`EXPONENT_MERGE_TOL`] are merged and zero
//! coefficients are dropped.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{constraint, domain, Result};
use crate::special_core::{recip_gamma1p, NeumaierSum};

/// Exponent vectors closer than this (componentwise, absolute) are merged.
pub const EXPONENT_MERGE_TOL: f64 = 1e-12;

/// Umbral symbols. `C1` doubles as the single-symbol `ĉ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    C1,
    C2,
}

impl Symbol {
    fn index(self) -> usize {
        match self {
            Symbol::C1 => 0,
            Symbol::C2 => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UmbralMonomial {
    pub coeff: f64,
    pub powers: [f64; 2],
}

impl UmbralMonomial {
    pub fn constant(coeff: f64) -> Self {
        Self {
            coeff,
            powers: [0.0, 0.0],
        }
    }

    /// `coeff · ĉ^{exponent}`.
    pub fn c(coeff: f64, exponent: f64) -> Self {
        Self::with_symbol(coeff, Symbol::C1, exponent)
    }

    pub fn with_symbol(coeff: f64, symbol: Symbol, exponent: f64) -> Self {
        let mut powers = [0.0, 0.0];
        powers[symbol.index()] = exponent;
        Self { coeff, powers }
    }

    pub fn with_powers(coeff: f64, powers: [f64; 2]) -> Self {
        Self { coeff, powers }
    }

    pub fn exponent(&self, symbol: Symbol) -> f64 {
        self.powers[symbol.index()]
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            coeff: self.coeff * other.coeff,
            powers: [self.powers[0] + other.powers[0], self.powers[1] + other.powers[1]],
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            coeff: self.coeff * factor,
            ..*self
        }
    }

    /// Integer power; exact repeated multiplication of the coefficient.
    pub fn powi(&self, k: i32) -> Self {
        Self {
            coeff: self.coeff.powi(k),
            powers: [self.powers[0] * k as f64, self.powers[1] * k as f64],
        }
    }

    /// Real power, defined for positive coefficients.
    pub fn powf(&self, p: f64) -> Result<Self> {
        if !(self.coeff > 0.0) {
            return Err(domain(format!(
                "real power of a monomial needs a positive coefficient, got {}",
                self.coeff
            )));
        }
        Ok(Self {
            coeff: self.coeff.powf(p),
            powers: [self.powers[0] * p, self.powers[1] * p],
        })
    }

    pub fn evaluate(&self) -> f64 {
        self.coeff * recip_gamma1p(self.powers[0]) * recip_gamma1p(self.powers[1])
    }

    fn cmp_powers(&self, other: &Self) -> Ordering {
        self.powers[0]
            .total_cmp(&other.powers[0])
            .then(self.powers[1].total_cmp(&other.powers[1]))
    }
}

impl fmt::Display for UmbralMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for (name, e) in ["ĉ₁", "ĉ₂"].iter().zip(self.powers) {
            if e != 0.0 {
                write!(f, "·{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A finite formal sum of umbral monomials in normalized form.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct UmbralExpr {
    terms: Vec<UmbralMonomial>,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= EXPONENT_MERGE_TOL
}

impl UmbralExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(UmbralMonomial::constant(1.0))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = UmbralMonomial>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        normalize(&mut terms);
        Self { terms }
    }

    pub fn terms(&self) -> &[UmbralMonomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).copied())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .flat_map(|a| other.terms.iter().map(move |b| a.mul(b))),
        )
    }

    pub fn mul_monomial(&self, m: &UmbralMonomial) -> Self {
        Self::from_terms(self.terms.iter().map(|t| t.mul(m)))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_terms(self.terms.iter().map(|t| t.scale(factor)))
    }

    pub fn pow_int(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `Σ coeff · Π_i φ(e_i)`, summed in term order.
    pub fn evaluate(&self) -> f64 {
        self.terms
            .iter()
            .map(UmbralMonomial::evaluate)
            .collect::<NeumaierSum>()
            .value()
    }
}

impl From<UmbralMonomial> for UmbralExpr {
    fn from(m: UmbralMonomial) -> Self {
        Self::from_terms([m])
    }
}

impl Add for &UmbralExpr {
    type Output = UmbralExpr;
    fn add(self, rhs: Self) -> UmbralExpr {
        UmbralExpr::add(self, rhs)
    }
}

impl Mul for &UmbralExpr {
    type Output = UmbralExpr;
    fn mul(self, rhs: Self) -> UmbralExpr {
        UmbralExpr::mul(self, rhs)
    }
}

impl fmt::Display for UmbralExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn normalize(terms: &mut Vec<UmbralMonomial>) {
    terms.sort_by(UmbralMonomial::cmp_powers);
    let mut out: Vec<UmbralMonomial> = Vec::with_capacity(terms.len());
    let mut start = 0;
    while start < terms.len() {
        // cluster on the first exponent, then merge on the second inside the cluster
        let mut end = start + 1;
        while end < terms.len() && close(terms[end].powers[0], terms[end - 1].powers[0]) {
            end += 1;
        }
        let cluster = &mut terms[start..end];
        cluster.sort_by(|a, b| a.powers[1].total_cmp(&b.powers[1]));
        let mut merged: Vec<UmbralMonomial> = Vec::new();
        for t in cluster.iter() {
            match merged.last_mut() {
                Some(last) if close(last.powers[1], t.powers[1]) => last.coeff += t.coeff,
                _ => merged.push(*t),
            }
        }
        out.extend(merged.into_iter().filter(|t| t.coeff != 0.0));
        start = end;
    }
    *terms = out;
}

/// `H_n(x, y)` with a monomial second variable, expanded into an expression.
pub fn hermite_umbral(n: u32, x: f64, y: &UmbralMonomial) -> UmbralExpr {
    let mut coef = 1.0;
    let mut terms = Vec::with_capacity(n as usize / 2 + 1);
    for k in 0..=n / 2 {
        if k > 0 {
            let m = (n - 2 * (k - 1)) as f64;
            coef *= m * (m - 1.0) / k as f64;
        }
        let xpow = x.powi((n - 2 * k) as i32);
        terms.push(y.powi(k as i32).scale(coef * xpow));
    }
    UmbralExpr::from_terms(terms)
}

/// Formal value of `∫_{-∞}^{∞} (A x + b)^n e^{-C x²} dx` with the umbral
/// symbols treated as constants: `√π C^{-1/2} H_n(b, A²/(4C))`.
pub fn gaussian_reduce(n: u32, b: f64, a: &UmbralMonomial, c: &UmbralMonomial) -> Result<UmbralExpr> {
    if !(c.coeff > 0.0) {
        return Err(constraint(format!(
            "Gaussian width coefficient must be positive, got {}",
            c.coeff
        )));
    }
    let prefactor = c.powf(-0.5)?.scale(PI.sqrt());
    let y = a.powi(2).mul(&c.powi(-1)).scale(0.25);
    Ok(hermite_umbral(n, b, &y).mul_monomial(&prefactor))
}

/// `ĉ₁^{1/2} ĉ₂^{ν+1/2} (x/2)^{ν+1} Σ_{k<K} (-ĉ₁ĉ₂ (x/2)²)^k`.
pub fn struve_umbral_expr(nu: f64, x: f64, terms: usize) -> Result<UmbralExpr> {
    if terms == 0 {
        return Err(domain("struve_umbral_eval needs at least one term"));
    }
    if x < 0.0 {
        return Err(domain(format!("Struve argument must be non-negative, got {x}")));
    }
    let half = x / 2.0;
    let q = half * half;
    let prefactor = UmbralMonomial::with_powers(half.powf(nu + 1.0), [0.5, nu + 0.5]);
    let geometric = UmbralExpr::from_terms(
        (0..terms).map(|k| UmbralMonomial::with_powers((-q).powi(k as i32), [k as f64, k as f64])),
    );
    Ok(geometric.mul_monomial(&prefactor))
}

/// K-term umbral evaluation of the Struve function.
pub fn struve_umbral_eval(nu: f64, x: f64, terms: usize) -> Result<f64> {
    Ok(struve_umbral_expr(nu, x, terms)?.evaluate())
}
