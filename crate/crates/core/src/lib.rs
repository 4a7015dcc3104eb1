//! Umbral (operator ĉ) evaluation of Bessel-type integrals.
//!
//! Bessel, spherical Bessel, Struve and Wright functions are written as formal
//! Gaussians in an umbral symbol `ĉ` with `ĉ^μ φ(0) = 1/Γ(μ+1)`. Integrating
//! "as if ĉ were a constant" yields closed forms for whole families of
//! integrals. This crate implements
//!
//! - [`special_core`]: gamma, the entire reciprocal gamma `φ(μ)`, series control;
//! - [`umbral`]: the finite algebra of umbral monomials and the Gaussian lowering rule;
//! - [`polys`]: two-variable Hermite polynomials `H_n(x,y)` and the
//!   Hermite-like `B_n(x,y;ν)`;
//! - [`functions`]: series evaluators for `J_ν`, `j_n`, `F_n`, `H_ν`,
//!   `W_{α,β}` and `E_{α,β}`;
//! - [`quadrature`]: the independent numerical oracle;
//! - [`identities`]: the registry of closed-form identities and their verification;
//! - [`cli`]: the batch front end (`eval`, `verify`, `table`).

// long coefficient tables, and `!(x > 0.0)` guards that also reject NaN
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
mod dd;
pub mod error;
pub mod functions;
pub mod identities;
pub mod polys;
pub mod quadrature;
pub mod special_core;
pub mod umbral;

pub use error::{Error, Result};
pub use special_core::{gamma, log_gamma, recip_gamma1p, SeriesControl};
