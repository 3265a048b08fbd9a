//! Taylor series of the regularised logarithmic derivative.
//!
//! With `g(r) = (l+1)/r - u'/u` analytic at the origin, the radial equation
//! becomes the Riccati equation `g' - g^2 + 2(l+1) g / r = 2(E - V)` with
//! `V = -a/r + b/(r+1)` and the centrifugal term absorbed. Writing
//! `g = sum_j f_j r^j` and `b/(r+1) = b sum_k (-1)^k r^k` gives
//!
//! `f_0 = a/(l+1)`,
//! `f_j = [sum_{k<j} f_k f_{j-1-k} - 2 w_{j-1}]/(j + 2l + 2)`,
//!
//! with `w_0 = b - E` and `w_k = (-1)^k b`.

use crate::numeric::poly::{Poly, Var};
use crate::numeric::ring::Ring;
use crate::numeric::scalar::Scalar;
use crate::Rational;

/// `f_0 ..= f_J`, generic over the ring so that `E` may stay symbolic.
pub fn riccati_coefficients<R: Ring>(a: &R, b: &R, l: u32, e: &R, max_index: usize) -> Vec<R> {
    let l = i64::from(l);
    let mut f = Vec::with_capacity(max_index + 1);
    f.push(a.div_int(l + 1));
    for j in 1..=max_index {
        let mut s = f[0].times(&f[j - 1]);
        for k in 1..j {
            s = s.plus(&f[k].times(&f[j - 1 - k]));
        }
        let w = if j == 1 {
            b.minus(e)
        } else if (j - 1) % 2 == 0 {
            b.clone()
        } else {
            b.negated()
        };
        let num = s.minus(&w.times(&R::from_int(2)));
        f.push(num.div_int(j as i64 + 2 * l + 2));
    }
    f
}

/// Coefficients either as polynomials in `E` or as numbers at a fixed `E`.
#[derive(Clone, Debug, PartialEq)]
pub enum RiccatiSeries<T: Scalar> {
    Exact { l: u32, a: Rational, b: Rational, coeffs: Vec<Poly<Rational>> },
    Numeric { l: u32, a: T, b: T, energy: T, coeffs: Vec<T> },
}

impl<T: Scalar> RiccatiSeries<T> {
    /// `f_j` as polynomials in `E` with rational coefficients.
    pub fn exact(a: &Rational, b: &Rational, l: u32, max_index: usize) -> Self {
        let ap = Poly::constant(a.clone(), Var::E);
        let bp = Poly::constant(b.clone(), Var::E);
        let coeffs = riccati_coefficients(&ap, &bp, l, &Poly::x(Var::E), max_index)
            .into_iter()
            .map(|p| p.with_var(Var::E))
            .collect();
        RiccatiSeries::Exact { l, a: a.clone(), b: b.clone(), coeffs }
    }

    /// `f_j` evaluated at one energy.
    pub fn numeric(a: &T, b: &T, l: u32, energy: &T, max_index: usize) -> Self {
        let coeffs = riccati_coefficients(a, b, l, energy, max_index);
        RiccatiSeries::Numeric { l, a: a.clone(), b: b.clone(), energy: energy.clone(), coeffs }
    }

    pub fn len(&self) -> usize {
        match self {
            RiccatiSeries::Exact { coeffs, .. } => coeffs.len(),
            RiccatiSeries::Numeric { coeffs, .. } => coeffs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::scalar::ratio;
    use num_traits::Zero;

    type Q = Rational;

    #[test]
    fn hydrogen_ground_state_series_is_constant() {
        for a in [1i64, 2, 3] {
            let e = ratio(-a * a, 2);
            let f = riccati_coefficients(&ratio(a, 1), &Q::zero(), 0, &e, 12);
            assert_eq!(f[0], ratio(a, 1));
            assert!(f[1..].iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn first_order_coefficient_in_energy() {
        // l = 0: f_1 = (a^2 - 2b + 2E)/3
        let s = RiccatiSeries::<f64>::exact(&ratio(3, 2), &ratio(-1, 3), 0, 3);
        let RiccatiSeries::Exact { coeffs, .. } = s else { unreachable!() };
        assert_eq!(coeffs[1], Poly::new(vec![ratio(9 * 3 + 8, 4 * 3 * 3), ratio(2, 3)], Var::E));
        assert_eq!(coeffs[0].degree(), Some(0));
    }

    #[test]
    fn conditional_state_series_matches_closed_form() {
        // u = r e^{-2r}(1 + r): g = 2 - 1/(1+r) = 1 + r - r^2 + r^3 - ...
        let f = riccati_coefficients(&ratio(1, 1), &ratio(-3, 1), 0, &ratio(-2, 1), 10);
        for (j, x) in f.iter().enumerate() {
            let expected = if j == 0 || j % 2 == 1 { 1 } else { -1 };
            assert_eq!(*x, ratio(expected, 1), "f_{j}");
        }
    }

    #[test]
    fn exact_degrees_grow_with_index() {
        let s = RiccatiSeries::<f64>::exact(&ratio(1, 1), &ratio(-3, 1), 1, 12);
        let RiccatiSeries::Exact { coeffs, .. } = s else { unreachable!() };
        let degrees: Vec<usize> = coeffs.iter().map(|p| p.degree().unwrap_or(0)).collect();
        assert!(degrees.windows(2).all(|w| w[0] <= w[1]), "{degrees:?}");
        assert_eq!(degrees[0], 0);
    }

    #[test]
    fn numeric_and_exact_agree() {
        let (a, b) = (ratio(2, 1), ratio(-4, 1));
        let e = ratio(-7, 5);
        let RiccatiSeries::Exact { coeffs, .. } = RiccatiSeries::<f64>::exact(&a, &b, 2, 9) else { unreachable!() };
        let num = riccati_coefficients(&a, &b, 2, &e, 9);
        for (p, x) in coeffs.iter().zip(&num) {
            assert_eq!(p.eval(&e), *x);
        }
    }
}
