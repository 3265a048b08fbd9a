//! Scalar fields used throughout the crate.
//!
//! Two kinds of field are supported: exact rationals (`BigRational`) and
//! binary floating point (`f64`, or [`BigFloat`] with a compile-time
//! precision). Mixing fields is a type error, so a rational polynomial can
//! never be silently combined with a floating-point one:
//!
//! ```compile_fail
//! use pcoulomb::{Poly, Rational, Real, Var};
//! let p: Poly<Rational> = Poly::x(Var::R);
//! let q: Poly<Real> = Poly::x(Var::R);
//! let _ = &p + &q;
//! ```

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

use super::bigfloat::BigFloat;

/// A field element usable by every algorithm in the crate.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Num
    + Signed
    + Neg<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Working precision in bits, `None` for exact fields.
    fn precision_bits() -> Option<u32>;

    /// Nearest representable value to an exact rational.
    fn from_rational(q: &BigRational) -> Self;

    /// Exact rational value of `self`, if it is finite.
    fn to_rational(&self) -> Option<BigRational>;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every field contains the integers")
    }

    /// Lossy conversion, used for reporting and for grids.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let mut t = a.clone();
        t *= b;
        *self += &t;
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let mut t = a.clone();
        t *= b;
        *self -= &t;
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn precision_bits() -> Option<u32> {
        None
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn to_f64_lossy(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn precision_bits() -> Option<u32> {
        Some(f64::MANTISSA_DIGITS)
    }

    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
}

impl<const P: u32> Scalar for BigFloat<P> {
    const EXACT: bool = false;

    fn precision_bits() -> Option<u32> {
        Some(P)
    }

    fn from_rational(q: &BigRational) -> Self {
        BigFloat::from_big_rational(q)
    }

    fn to_rational(&self) -> Option<BigRational> {
        self.to_big_rational()
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        self.fma_assign(a, b, false);
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        self.fma_assign(a, b, true);
    }
}

/// Correctly rounded conversion; `BigRational::to_f64` overflows for large
/// numerators and denominators even when the quotient is moderate.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 9.0e15 && d < 9.0e15 {
            return n / d;
        }
    }
    BigFloat::<80>::from_big_rational(q).to_f64().unwrap_or(f64::NAN)
}

/// Exact rational from a decimal or fraction literal such as `-3`, `0.25`,
/// `1e-4` or `7/2`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let all = all / BigInt::from(10);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(all);
    if scale >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -q } else { q })
}

/// `n/d` as a rational.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Field element for the integer `n`.
pub fn int<T: Scalar>(n: i64) -> T {
    T::from_int(n)
}

/// `num/den` rendering used by the JSON writers (`-3/1`, `7/2`).
pub fn fraction_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn half<T: Scalar>() -> T {
    T::one() / T::from_int(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_literals_exactly() {
        assert_eq!(parse_rational("-3").unwrap(), ratio(-3, 1));
        assert_eq!(parse_rational("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rational("1e-4").unwrap(), ratio(1, 10000));
        assert_eq!(parse_rational("2.5E1").unwrap(), ratio(25, 1));
        assert_eq!(parse_rational("7/2").unwrap(), ratio(7, 2));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
        assert!(parse_rational("").is_none());
        assert!(parse_rational("1.2.3").is_none());
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = ratio(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        let s = ratio(1, 6) + ratio(1, 3);
        assert_eq!(s, ratio(1, 2));
        assert_eq!(fraction_string(&ratio(-3, 1)), "-3/1");
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let q = BigRational::new(big.clone() * BigInt::from(3), big);
        assert_eq!(rational_to_f64(&q), 3.0);
    }

    #[test]
    fn precision_tags() {
        assert_eq!(<BigRational as Scalar>::precision_bits(), None);
        assert_eq!(<f64 as Scalar>::precision_bits(), Some(53));
        assert_eq!(<BigFloat<256> as Scalar>::precision_bits(), Some(256));
    }
}
