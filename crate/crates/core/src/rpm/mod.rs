//! Riccati-Pade eigenvalues: roots of Hankel determinants built from the
//! Taylor coefficients of the regularised logarithmic derivative.

pub mod hankel;
pub mod series;
pub mod solve;

use thiserror::Error;

use crate::numeric::NumericError;

pub use hankel::{exact_determinants, numeric_determinants, HankelProblem, HankelRoot};
pub use series::{riccati_coefficients, RiccatiSeries};
pub use solve::{
    coupling_grid, displacement_agreement, energy_curve, energy_curves, level_near, rpm_eigenvalue, rpm_spectrum, search_window,
    EnergyCurve, Level, Observation, Provenance, Spectrum, Unconverged,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RpmError {
    #[error("tolerance must be positive and finite")]
    InvalidTolerance,
    #[error("coupling a must be positive")]
    InvalidCoupling,
    #[error("coupling grid must be strictly ascending")]
    UnsortedGrid,
    #[error("level {nu} did not stabilise up to D = {d_max} (best value {best_value:?}, difference {best_diff:?})")]
    NotConverged { nu: usize, d_max: usize, best_value: Option<f64>, best_diff: Option<f64> },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Solver settings.
#[derive(Clone, Debug, PartialEq)]
pub struct RpmConfig {
    /// Hankel displacement `d`.
    pub d: usize,
    /// Largest determinant dimension.
    pub d_max: usize,
    /// Dimensions up to this one are handled symbolically.
    pub exact_cap: usize,
    /// Absolute successive-`D` tolerance.
    pub tol: f64,
    /// Energy samples per level spacing in the numeric phase.
    pub grid_per_level: usize,
    /// Converged observations closer than this belong to one level.
    pub cluster_radius: f64,
    /// Converged observations a level needs before it is accepted.
    pub min_support: usize,
    /// Roots of the previous dimension whose successive-`D` difference is
    /// below this are followed individually into the next dimension.
    pub track_radius: f64,
    /// Stop once the requested levels are established.
    pub early_stop: bool,
}

impl Default for RpmConfig {
    fn default() -> Self {
        RpmConfig {
            d: 0,
            d_max: 24,
            exact_cap: 8,
            tol: 1e-10,
            grid_per_level: 24,
            cluster_radius: 1e-6,
            min_support: 2,
            track_radius: 1e-2,
            early_stop: true,
        }
    }
}
