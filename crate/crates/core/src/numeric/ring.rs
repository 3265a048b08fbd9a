//! Minimal commutative-ring interface shared by field elements and
//! polynomials, so that recurrences and fraction-free elimination can run
//! either on numbers or with one quantity kept symbolic.

use num_traits::Zero;

use super::poly::Poly;
use super::scalar::Scalar;

pub trait Ring: Clone + Send + Sync {
    fn from_int(n: i64) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Division by a nonzero integer; every ring used here contains the rationals.
    fn div_int(&self, k: i64) -> Self;
    /// Division known to leave no remainder (Bareiss elimination).
    fn div_exact(&self, d: &Self) -> Self;
}

impl<T: Scalar> Ring for T {
    fn from_int(n: i64) -> Self {
        <T as Scalar>::from_int(n)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out += other;
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out -= other;
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out *= other;
        out
    }
    fn negated(&self) -> Self {
        -self.clone()
    }
    fn div_int(&self, k: i64) -> Self {
        let mut out = self.clone();
        out /= &<T as Scalar>::from_int(k);
        out
    }
    fn div_exact(&self, d: &Self) -> Self {
        let mut out = self.clone();
        out /= d;
        out
    }
}

impl<T: Scalar> Ring for Poly<T> {
    fn from_int(n: i64) -> Self {
        Poly::constant(<T as Scalar>::from_int(n), super::poly::Var::R)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        Poly::neg(self)
    }
    fn div_int(&self, k: i64) -> Self {
        self.scale(&(T::one() / <T as Scalar>::from_int(k)))
    }
    fn div_exact(&self, d: &Self) -> Self {
        self.exact_div(d).unwrap_or_else(|e| panic!("fraction-free elimination: {e}"))
    }
}
