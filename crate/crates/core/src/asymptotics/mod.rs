//! Saddle-point asymptotics: along the characteristic curve parametrised by
//! `y ∈ (0, y_max)`, the mean number of independent sets (increasing
//! subsequences) of size `βn` grows like `C(β)^n` (`E(β)^n`).
//!
//! Everything is plain `f64`; the removable cancellations near the
//! singular end of the curve are rewritten with `expm1`/`ln_1p` and exact
//! algebraic identities.

pub mod cograph;
mod numerics;
pub mod separable;

pub use numerics::{bisect_increasing, golden_max};

use serde::Serialize;
use thiserror::Error;

use crate::sampling::Model;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("beta = {0} is outside (0, 1)")]
    Domain(f64),
    #[error("parameter {0} is outside the characteristic curve")]
    CurveDomain(f64),
    #[error("root finding did not reach the requested tolerance (residual {residual:e})")]
    NonConvergence { residual: f64 },
    #[error("beta(y) is not monotone near y = {y}")]
    NonMonotonic { y: f64 },
}

/// The numerical constants of both models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    /// Root of `C(β) = 1`.
    pub beta0: f64,
    /// Argmax of `C`.
    pub beta_star: f64,
    #[serde(rename = "C_star")]
    pub c_star: f64,
    /// Root of `E(β) = 1`.
    pub beta1: f64,
    #[serde(rename = "E_beta_argmax")]
    pub e_beta_argmax: f64,
    #[serde(rename = "E_star")]
    pub e_star: f64,
}

pub fn constants() -> Result<Constants, AsymptoticsError> {
    cograph::check_monotone()?;
    separable::check_monotone()?;
    let beta0 = bisect_increasing(|b| 1.0 - cograph::c_of_beta(b).unwrap_or(f64::NAN), 0.05, 0.95, 1e-14);
    let (beta_star, c_star) = golden_max(|b| cograph::c_of_beta(b).unwrap_or(f64::NAN), 1e-3, 0.9, 1e-10);
    let beta1 = bisect_increasing(|b| 1.0 - separable::e_of_beta(b).unwrap_or(f64::NAN), 0.05, 0.95, 1e-14);
    let (e_beta_argmax, e_star) = golden_max(|b| separable::e_of_beta(b).unwrap_or(f64::NAN), 1e-3, 0.9, 1e-10);
    Ok(Constants { beta0, beta_star, c_star, beta1, e_beta_argmax, e_star })
}

/// `(β, C(β))` or `(β, E(β))` on the grid `a, a+step, …, ≤ b`.
pub fn curve_export(model: Model, a: f64, b: f64, step: f64) -> Result<Vec<(f64, f64)>, AsymptoticsError> {
    if !(step > 0.0) || !(a <= b) {
        return Err(AsymptoticsError::Domain(step));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| {
            // Snap to the decimal grid so that e.g. 0.1 + 2·0.1 prints as 0.3.
            let beta = ((a + i as f64 * step) * 1e12).round() / 1e12;
            let v = match model {
                Model::Cograph => cograph::c_of_beta(beta)?,
                Model::Separable => separable::e_of_beta(beta)?,
            };
            Ok((beta, v))
        })
        .collect()
}

/// `(C(β) − 1)/(β |ln β|)`, or the same for `E`.
pub fn small_beta_ratio(model: Model, beta: f64) -> Result<f64, AsymptoticsError> {
    let v = match model {
        Model::Cograph => cograph::c_of_beta(beta)?,
        Model::Separable => separable::e_of_beta(beta)?,
    };
    Ok((v - 1.0) / (beta * beta.ln().abs()))
}
