//! Direct evaluators for the Bessel-type families.
//!
//! Power series are summed in double-double arithmetic (terms via exact
//! rational recurrences), which keeps them accurate well past the point where
//! `f64` summation loses everything to cancellation. Large arguments switch
//! to the Hankel expansion with upward order recurrence.

mod bessel;
mod struve;
mod wright;

pub use bessel::{bessel_j, bessel_j_scaled, bessel_j_with, f_n_combo, sph_bessel};
pub use struve::{struve_h, struve_h_with, struve_series_partial};
pub use wright::{mittag_leffler, wright_w};

pub(crate) use bessel::bessel_jy_large;

/// Value of a series evaluation together with its convergence metadata.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FnEvalResult {
    pub value: f64,
    pub terms_used: usize,
    /// Set when `max_terms` was reached before the series settled.
    pub truncation_flag: bool,
}

impl FnEvalResult {
    pub(crate) fn exact(value: f64) -> Self {
        Self {
            value,
            terms_used: 1,
            truncation_flag: false,
        }
    }
}
