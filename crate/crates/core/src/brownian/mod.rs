//! Discretised Brownian cographon: a uniform Dyck path with i.i.d. signs
//! at its minima, the graphs it samples, the prefix estimator of the
//! normalised independence number, and Monte-Carlo iteration of the
//! distributional operator `Φ_p`.

mod excursion;
mod phi;
mod rmq;

pub use excursion::{estimate_alpha_tilde, sample_excursion, AlphaTildeTable, CographonSample, DecoratedExcursion};
pub use phi::{dirichlet_half, phi_p_apply, phi_particle, phi_p_iterate, phi_csv, EmpiricalDistribution, PhiSummary};
pub use rmq::BlockRmq;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BrownianError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub(crate) fn check_p(p: f64) -> Result<(), BrownianError> {
    if (0.0..1.0).contains(&p) {
        Ok(())
    } else {
        Err(BrownianError::InvalidParameter(format!("p = {p} must lie in [0, 1)")))
    }
}
