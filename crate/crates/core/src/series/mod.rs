//! Truncated power series over the rationals, the exact solutions of the
//! counting equations, and a floating-point mirror for large sizes.

mod bivariate;
mod enumeration;
mod float;
mod univariate;

pub use bivariate::TruncatedBiSeries;
pub use enumeration::{
    count_labeled_cographs, count_separable, expected_x, expected_z, series_c, series_c1, series_l,
    series_s, series_s_closed_form, series_s_minus, series_s_plus, series_z, CographSeries,
    SeparableSeries,
};
pub use float::{FloatCographSeries, FloatSeparableSeries, DEFAULT_FLOAT_ORDER};
pub use univariate::TruncatedSeries;

use thiserror::Error;

/// Default truncation order of the exact pipeline.
pub const DEFAULT_EXACT_ORDER: usize = 128;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    /// An iteration failed to fix one more coefficient; this is a bug signal.
    #[error("fixed-point iteration failed to converge at order {order}")]
    NonConvergence { order: usize },
    #[error("coefficient z^{n} requested from a series truncated at order {order}")]
    TruncationExceeded { n: usize, order: usize },
    #[error("k = {k} out of range for n = {n}")]
    IndexOutOfRange { n: usize, k: usize },
    #[error("coefficient [z^{n} u^{k}] left the floating-point range")]
    FloatRange { n: usize, k: usize },
    #[error("invalid series operation: {0}")]
    InvalidOperation(String),
}
