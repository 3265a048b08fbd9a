//! Bound states of the radial problem
//! `-u''/2 + [l(l+1)/(2r^2) - a/r + b/(r+1)] u = E u`.
//!
//! * [`frobenius`]: polynomial (conditionally exact) solutions and the
//!   couplings `b` at which they exist.
//! * [`rpm`]: eigenvalues for any `b` from stabilised roots of Hankel
//!   determinants of the Riccati series.
//! * [`oracle`]: finite-difference spectra and expectation values used to
//!   cross-check the other two.
//! * [`model`]: unit conversions and the effective potential.
//!
//! Algorithms are generic over [`Scalar`]; the aliases below are the
//! concrete fields used by default.

// `!(x > 0)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod frobenius;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod rpm;

pub use numeric::bigfloat::BigFloat;
pub use numeric::det::{determinant, leading_minors, SquareMatrix};
pub use numeric::poly::{Poly, Var};
pub use numeric::roots::{isolate_positive_roots, isolate_real_roots, refine_root, IsolatedRoot, RealRoots};
pub use numeric::scalar::Scalar;
pub use numeric::NumericError;

/// Exact rational field.
pub type Rational = num_rational::BigRational;
/// Default high-precision real field (256-bit mantissa).
pub type Real = BigFloat<256>;
pub type Real64 = f64;
pub type Real128 = BigFloat<128>;
pub type Real512 = BigFloat<512>;
