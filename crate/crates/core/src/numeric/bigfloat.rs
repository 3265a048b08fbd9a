//! Multiple-precision binary floating point with the precision carried in
//! the type, backed by MPFR through `rug`.
//!
//! Every operation on `BigFloat<P>` rounds to exactly `P` bits, so results
//! never claim more precision than their inputs, and values of different
//! precisions cannot be combined without an explicit conversion.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use rug::integer::Order;
use rug::{Float, Integer};

#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigFloat<const P: u32>(Float);

impl<const P: u32> BigFloat<P> {
    pub fn from_f64(x: f64) -> Self {
        BigFloat(Float::with_val(P, x))
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }

    pub fn into_inner(self) -> Float {
        self.0
    }

    pub fn from_float(f: &Float) -> Self {
        BigFloat(Float::with_val(P, f))
    }

    /// Change precision, rounding to nearest.
    pub fn convert<const Q: u32>(&self) -> BigFloat<Q> {
        BigFloat(Float::with_val(Q, &self.0))
    }

    pub fn from_big_rational(q: &BigRational) -> Self {
        let r = rug::Rational::from((to_rug_integer(q.numer()), to_rug_integer(q.denom())));
        BigFloat(Float::with_val(P, &r))
    }

    pub fn to_big_rational(&self) -> Option<BigRational> {
        let r = self.0.to_rational()?;
        let (n, d) = r.into_numer_denom();
        Some(BigRational::new(from_rug_integer(&n), from_rug_integer(&d)))
    }

    pub fn sqrt(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub(crate) fn fma_assign(&mut self, a: &Self, b: &Self, negate: bool) {
        if negate {
            self.0 -= &a.0 * &b.0;
        } else {
            self.0 += &a.0 * &b.0;
        }
    }
}

fn to_rug_integer(n: &BigInt) -> Integer {
    let (sign, digits) = n.to_u32_digits();
    let m = Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -m
    } else {
        m
    }
}

fn from_rug_integer(n: &Integer) -> BigInt {
    let digits = n.to_digits::<u32>(Order::Lsf);
    let sign = match n.cmp0() {
        Ordering::Less => Sign::Minus,
        Ordering::Equal => Sign::NoSign,
        Ordering::Greater => Sign::Plus,
    };
    BigInt::from_slice(sign, &digits)
}

impl<const P: u32> fmt::Debug for BigFloat<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat<{}>({})", P, self.0)
    }
}

impl<const P: u32> fmt::Display for BigFloat<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $atr:ident, $amethod:ident) => {
        impl<const P: u32> $tr for BigFloat<P> {
            type Output = Self;
            fn $method(mut self, rhs: Self) -> Self {
                self.0.$amethod(&rhs.0);
                self
            }
        }
        impl<'a, const P: u32> $tr<&'a BigFloat<P>> for BigFloat<P> {
            type Output = Self;
            fn $method(mut self, rhs: &'a Self) -> Self {
                self.0.$amethod(&rhs.0);
                self
            }
        }
        impl<'a, 'b, const P: u32> $tr<&'b BigFloat<P>> for &'a BigFloat<P> {
            type Output = BigFloat<P>;
            fn $method(self, rhs: &'b BigFloat<P>) -> BigFloat<P> {
                let mut out = self.clone();
                out.0.$amethod(&rhs.0);
                out
            }
        }
        impl<'a, const P: u32> $atr<&'a BigFloat<P>> for BigFloat<P> {
            fn $amethod(&mut self, rhs: &'a Self) {
                self.0.$amethod(&rhs.0);
            }
        }
        impl<const P: u32> $atr for BigFloat<P> {
            fn $amethod(&mut self, rhs: Self) {
                self.0.$amethod(&rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

impl<const P: u32> Rem for BigFloat<P> {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        let q = Float::with_val(P, &self.0 / &rhs.0).trunc();
        let mut out = self;
        out.0 -= q * &rhs.0;
        out
    }
}

impl<const P: u32> Neg for BigFloat<P> {
    type Output = Self;
    fn neg(self) -> Self {
        BigFloat(-self.0)
    }
}

impl<const P: u32> Neg for &BigFloat<P> {
    type Output = BigFloat<P>;
    fn neg(self) -> BigFloat<P> {
        BigFloat(-self.0.clone())
    }
}

impl<const P: u32> Zero for BigFloat<P> {
    fn zero() -> Self {
        BigFloat(Float::new(P))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<const P: u32> One for BigFloat<P> {
    fn one() -> Self {
        BigFloat(Float::with_val(P, 1))
    }
}

impl<const P: u32> Num for BigFloat<P> {
    type FromStrRadixErr = rug::float::ParseFloatError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let parsed = Float::parse_radix(s, radix as i32)?;
        Ok(BigFloat(Float::with_val(P, parsed)))
    }
}

impl<const P: u32> Signed for BigFloat<P> {
    fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }

    fn abs_sub(&self, other: &Self) -> Self {
        let d = self - other;
        if d.0.is_sign_positive() {
            d
        } else {
            Self::zero()
        }
    }

    fn signum(&self) -> Self {
        match self.0.cmp0() {
            Some(Ordering::Greater) => Self::one(),
            Some(Ordering::Less) => -Self::one(),
            _ => Self::zero(),
        }
    }

    fn is_positive(&self) -> bool {
        self.0.cmp0() == Some(Ordering::Greater)
    }

    fn is_negative(&self) -> bool {
        self.0.cmp0() == Some(Ordering::Less)
    }
}

impl<const P: u32> FromPrimitive for BigFloat<P> {
    fn from_i64(n: i64) -> Option<Self> {
        Some(BigFloat(Float::with_val(P, n)))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(BigFloat(Float::with_val(P, n)))
    }
    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then(|| BigFloat(Float::with_val(P, x)))
    }
}

impl<const P: u32> ToPrimitive for BigFloat<P> {
    fn to_i64(&self) -> Option<i64> {
        self.0.clone().trunc().to_integer()?.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.0.clone().trunc().to_integer()?.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.0.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::scalar::ratio;

    type R = BigFloat<256>;

    #[test]
    fn arithmetic_rounds_to_type_precision() {
        let third = R::one() / R::from_i64(3).unwrap();
        assert_eq!(third.inner().prec(), 256);
        let back = third.clone() * R::from_i64(3).unwrap();
        assert!((back - R::one()).abs() < R::from_f64(1e-70));
    }

    #[test]
    fn rational_round_trip() {
        let q = ratio(-7, 2);
        let x = R::from_big_rational(&q);
        assert_eq!(x.to_big_rational().unwrap(), q);
        let huge = BigRational::new(
            num_traits::pow(BigInt::from(3), 200),
            num_traits::pow(BigInt::from(2), 317),
        );
        let y = R::from_big_rational(&huge);
        let rel = (y.to_big_rational().unwrap() - &huge) / &huge;
        assert!(rel.abs() < ratio(1, 1) / BigRational::from_integer(num_traits::pow(BigInt::from(2), 250)));
    }

    #[test]
    fn fused_multiply_add() {
        let mut acc = R::from_i64(1).unwrap();
        acc.fma_assign(&R::from_i64(2).unwrap(), &R::from_i64(3).unwrap(), false);
        assert_eq!(acc, R::from_i64(7).unwrap());
        acc.fma_assign(&R::from_i64(2).unwrap(), &R::from_i64(2).unwrap(), true);
        assert_eq!(acc, R::from_i64(3).unwrap());
    }

    #[test]
    fn remainder_truncates() {
        let r = R::from_f64(7.5) % R::from_i64(2).unwrap();
        assert_eq!(r, R::from_f64(1.5));
        let r = R::from_f64(-7.5) % R::from_i64(2).unwrap();
        assert_eq!(r, R::from_f64(-1.5));
    }

    #[test]
    fn signed_helpers() {
        let x = R::from_f64(-2.5);
        assert!(x.is_negative());
        assert_eq!(x.abs(), R::from_f64(2.5));
        assert_eq!(x.signum(), -R::one());
        assert_eq!(R::zero().signum(), R::zero());
        assert_eq!(x.to_i64(), Some(-2));
    }
}
