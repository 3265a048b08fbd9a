//! Scalar fields, dense polynomials, real-root isolation and determinants.

pub mod bigfloat;
pub mod det;
pub mod poly;
pub mod ring;
pub mod roots;
pub mod scalar;
pub(crate) mod zpoly;

use thiserror::Error;

use poly::Var;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("polynomials in different indeterminates ({left} and {right}) cannot be combined")]
    IndeterminateMismatch { left: Var, right: Var },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("series has {available} terms, {needed} are needed")]
    SeriesTooShort { needed: usize, available: usize },
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("interval [{lo}, {hi}] does not bracket a sign change")]
    NotIsolating { lo: f64, hi: f64 },
}
