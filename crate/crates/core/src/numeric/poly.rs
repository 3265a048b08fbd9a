//! Dense univariate polynomials over a [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::Scalar;
use super::NumericError;

/// Name of the indeterminate; only used to reject accidental mixing of
/// polynomials in `r`, `b` and `E` and to print readable messages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    R,
    B,
    E,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::R => "r",
            Var::B => "b",
            Var::E => "E",
        })
    }
}

/// `c_0 + c_1 x + ... + c_d x^d`, with `c_d != 0` unless the polynomial is zero.
///
/// Constants carry a label too but combine freely with polynomials in any
/// indeterminate; only two non-constant polynomials in different
/// indeterminates are rejected.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
    var: Var,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>, var: Var) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, var }
    }

    pub fn zero_in(var: Var) -> Self {
        Poly { coeffs: Vec::new(), var }
    }

    pub fn constant(c: T, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    /// The indeterminate itself.
    pub fn x(var: Var) -> Self {
        Poly { coeffs: vec![T::zero(), T::one()], var }
    }

    /// `c * x^k`
    pub fn monomial(c: T, k: usize, var: Var) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Self::new(coeffs, var)
    }

    pub fn from_ints(coeffs: &[i64], var: Var) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect(), var)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_int(k as i64))
            .collect();
        Self::new(coeffs, self.var)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(), self.var)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), var: self.var }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    fn joint_var(&self, other: &Self) -> Result<Var, NumericError> {
        match (self.is_constant(), other.is_constant()) {
            (false, false) if self.var != other.var => {
                Err(NumericError::IndeterminateMismatch { left: self.var, right: other.var })
            }
            (true, false) => Ok(other.var),
            _ => Ok(self.var),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, NumericError> {
        let var = self.joint_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Ok(Self::new(coeffs, var))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, NumericError> {
        let var = self.joint_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Ok(Self::new(coeffs, var))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, NumericError> {
        let var = self.joint_var(other)?;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(Self::zero_in(var));
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j].add_mul_assign(a, b);
            }
        }
        Ok(Self::new(coeffs, var))
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), NumericError> {
        let var = self.joint_var(d)?;
        let dd = d.degree().ok_or(NumericError::DivisionByZero)?;
        let lc = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero_in(var), Self::new(rem, var)));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].clone() / lc.clone();
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    rem[k + i].sub_mul_assign(&q, c);
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot, var), Self::new(rem, var)))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Self) -> Result<Self, NumericError> {
        let (q, r) = self.div_rem(d)?;
        if T::EXACT && !r.is_zero() {
            return Err(NumericError::InexactDivision);
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self, NumericError> {
        let mut a = self.clone();
        let mut b = other.clone();
        a.var = a.joint_var(&b)?;
        b.var = a.var;
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect(), self.var)
    }

    /// Maximum absolute coefficient, used for relative residuals.
    pub fn max_abs_coeff(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .fold(T::zero(), |m, c| if c > m { c } else { m })
    }
}

impl Poly<BigRational> {
    /// Coefficients rounded into another field.
    pub fn to_field<U: Scalar>(&self) -> Poly<U> {
        self.map(U::from_rational)
    }
}

impl<T: Scalar> Zero for Poly<T> {
    fn zero() -> Self {
        Self::zero_in(Var::R)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Poly<T> {
    fn one() -> Self {
        Self::constant(T::one(), Var::R)
    }
}

macro_rules! poly_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b, T: Scalar> $tr<&'b Poly<T>> for &'a Poly<T> {
            type Output = Poly<T>;
            /// Panics when both operands are non-constant in different
            /// indeterminates; use the `try_` method to get an error instead.
            fn $method(self, rhs: &'b Poly<T>) -> Poly<T> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a, T: Scalar> $tr<&'a Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: &'a Poly<T>) -> Poly<T> {
                (&self).$method(rhs)
            }
        }
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::neg(&self)
    }
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.var, self)
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "{}", self.var)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
