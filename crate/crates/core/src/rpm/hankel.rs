//! Hankel determinants `H_D^d(E) = det[f_{i+j+d+1}]` and their real roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::series::riccati_coefficients;
use crate::numeric::det::{bareiss_leading_minors, leading_minors, SquareMatrix};
use crate::numeric::poly::{Poly, Var};
use crate::numeric::roots::{isolate_roots_in, refine_bracket, simplest_rational_between};
use crate::numeric::scalar::Scalar;
use crate::numeric::zpoly::ZPoly;
use crate::numeric::NumericError;
use crate::Rational;

/// A root of `H_D^d`, exact when it is a small-denominator rational.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelRoot<T> {
    pub value: T,
    pub exact: Option<Rational>,
    /// Multiplicity, known only for roots found symbolically.
    pub multiplicity: Option<usize>,
}

/// Highest series index used by `H_D^d`.
pub fn max_series_index(dim: usize, d: usize) -> usize {
    2 * dim + d - 1
}

/// The `D x D` matrix `[f_{i+j+d+1}]`.
pub fn hankel_matrix<R: Clone>(f: &[R], dim: usize, d: usize) -> Result<SquareMatrix<R>, NumericError> {
    SquareMatrix::hankel(f, dim, d + 1)
}

/// `H_1^d(E), ..., H_{D_max}^d(E)` as exact polynomials in `E`.
pub fn exact_determinants(a: &Rational, b: &Rational, l: u32, d: usize, d_max: usize) -> Vec<Poly<Rational>> {
    if d_max == 0 {
        return Vec::new();
    }
    let ap = Poly::constant(a.clone(), Var::E);
    let bp = Poly::constant(b.clone(), Var::E);
    let f = riccati_coefficients(&ap, &bp, l, &Poly::x(Var::E), max_series_index(d_max, d));
    // eliminate over Z[E] after clearing all denominators at once; the k-th
    // minor then carries the factor den^k
    let den = f.iter().flat_map(|p| p.coeffs()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = Rational::from_integer(den.clone());
    let zf: Vec<ZPoly> = f.iter().map(|p| ZPoly::new(p.coeffs().iter().map(|c| (c * &scale).to_integer()).collect())).collect();
    let m = hankel_matrix(&zf, d_max, d).expect("series has the required length");
    let mut power = Rational::one();
    bareiss_leading_minors(&m)
        .into_iter()
        .map(|p| {
            power = &power * &scale;
            p.to_rational(Var::E).scale(&(Rational::one() / &power))
        })
        .collect()
}

/// `H_1^d(E), ..., H_{D_max}^d(E)` at one energy, from a single elimination.
pub fn numeric_determinants<T: Scalar>(a: &T, b: &T, l: u32, d: usize, e: &T, d_max: usize) -> Vec<T> {
    if d_max == 0 {
        return Vec::new();
    }
    let f = riccati_coefficients(a, b, l, e, max_series_index(d_max, d));
    leading_minors(&hankel_matrix(&f, d_max, d).expect("series has the required length"))
}

/// `H_D^d(E)` at one energy (the last of [`numeric_determinants`]).
pub fn numeric_determinant<T: Scalar>(a: &T, b: &T, l: u32, d: usize, e: &T, dim: usize) -> T {
    numeric_determinants(a, b, l, d, e, dim).pop().unwrap_or_else(T::one)
}

fn from_f64<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("finite")
}

/// Real roots of an exact determinant polynomial in `(lo, hi]`, refined to
/// absolute width `tol` in the working field.
pub fn exact_roots_in<T: Scalar>(p: &Poly<Rational>, lo: f64, hi: f64, tol: f64) -> Result<Vec<HankelRoot<T>>, NumericError> {
    if p.is_zero() || lo >= hi {
        return Ok(Vec::new());
    }
    let qlo = Rational::from_float(lo).ok_or(NumericError::NotIsolating { lo, hi })?;
    let qhi = Rational::from_float(hi).ok_or(NumericError::NotIsolating { lo, hi })?;
    let mut out = Vec::new();
    for root in isolate_roots_in(p, &qlo, &qhi)? {
        if let Some(x) = &root.exact {
            out.push(HankelRoot { value: T::from_rational(x), exact: Some(x.clone()), multiplicity: Some(root.multiplicity) });
            continue;
        }
        let factor = root.factor().to_field::<T>();
        let exact_factor = root.factor().clone();
        let (a, b) = match refine_bracket(|x| factor.eval(x), T::from_rational(&root.lo), T::from_rational(&root.hi), &from_f64(tol)) {
            Ok(br) => br,
            Err(_) => {
                // endpoints rounded across the root: fall back to exact bisection
                let narrow = root.refined(&Rational::from_float(tol).unwrap_or_else(Rational::zero));
                (T::from_rational(&narrow.lo), T::from_rational(&narrow.hi))
            }
        };
        // widen by a few ulps: the refined ends may sit exactly on the
        // rounded root
        let scale = if a.abs() > T::one() { a.abs() } else { T::one() };
        let ulp = scale * from_f64::<T>(2f64.powi(8 - T::precision_bits().unwrap_or(52) as i32));
        let exact = match ((a.clone() - ulp.clone()).to_rational(), (b.clone() + ulp).to_rational()) {
            (Some(x), Some(y)) => {
                let q = simplest_rational_between(&x, &y);
                exact_factor.eval(&q).is_zero().then_some(q)
            }
            _ => None,
        };
        let value = match &exact {
            Some(q) => T::from_rational(q),
            None => (a + b) / T::from_int(2),
        };
        out.push(HankelRoot { value, exact, multiplicity: Some(root.multiplicity) });
    }
    Ok(out)
}

/// Energies uniform in `t = 1/sqrt(-E)`, where bound levels of a Coulomb
/// tail are evenly spaced (`sqrt(2)/Z` apart); `per_level` points per
/// spacing of the strongest charge `z_max`.
pub fn energy_grid(lo: f64, hi: f64, z_max: f64, per_level: usize) -> Vec<f64> {
    if !(lo < hi && hi < 0.0) {
        return Vec::new();
    }
    let (t_lo, t_hi) = (1.0 / (-lo).sqrt(), 1.0 / (-hi).sqrt());
    let step = std::f64::consts::SQRT_2 / (z_max.max(1e-3) * per_level.max(2) as f64);
    let n = (((t_hi - t_lo) / step).ceil() as usize).clamp(2, 200_000);
    (0..=n)
        .map(|k| {
            let t = t_lo + (t_hi - t_lo) * k as f64 / n as f64;
            -1.0 / (t * t)
        })
        .collect()
}

/// Sign changes of `f` between consecutive samples, refined to width `tol`.
pub fn bracketed_roots<T: Scalar, F: Fn(&T) -> T>(samples: &[(T, T)], f: F, tol: f64) -> Vec<T> {
    let tol_t: T = from_f64(tol);
    let mut out: Vec<T> = Vec::new();
    for w in samples.windows(2) {
        let ((x0, v0), (x1, v1)) = (&w[0], &w[1]);
        if v0.is_zero() {
            if out.last() != Some(x0) {
                out.push(x0.clone());
            }
            continue;
        }
        if v1.is_zero() || v0.is_positive() == v1.is_positive() {
            continue;
        }
        if let Ok((a, b)) = refine_bracket(&f, x0.clone(), x1.clone(), &tol_t) {
            out.push((a + b) / T::from_int(2));
        }
    }
    if let Some((x, v)) = samples.last() {
        if v.is_zero() && out.last() != Some(x) {
            out.push(x.clone());
        }
    }
    out
}

/// Follow a root of `f` from `start` with secant steps, staying within
/// `reach` of the start and inside `window`. A converged point is accepted
/// only if `f` changes sign across it, and is then refined to width `tol`.
pub fn track_root<T: Scalar, F: Fn(&T) -> T>(f: F, start: &T, step: f64, reach: f64, window: (f64, f64), tol: f64) -> Option<T> {
    let origin = start.to_f64_lossy();
    let (mut x0, mut f0) = (start.clone(), f(start));
    if f0.is_zero() {
        return Some(x0);
    }
    let mut x1 = start.clone() + from_f64::<T>(step);
    let mut f1 = f(&x1);
    for _ in 0..60 {
        if f1.is_zero() {
            return Some(x1);
        }
        let denom = f1.clone() - f0.clone();
        if denom.is_zero() {
            return None;
        }
        let x2 = x1.clone() - f1.clone() * (x1.clone() - x0.clone()) / denom;
        let v = x2.to_f64_lossy();
        if !(v > window.0 && v < window.1) || (v - origin).abs() > reach {
            return None;
        }
        let dx = (x2.clone() - x1.clone()).abs().to_f64_lossy();
        x0 = std::mem::replace(&mut x1, x2);
        f0 = std::mem::replace(&mut f1, f(&x1));
        if dx < tol {
            let e: T = from_f64(tol);
            let (lo, hi) = (x1.clone() - e.clone(), x1.clone() + e);
            let (a, b) = refine_bracket(&f, lo, hi, &from_f64(tol)).ok()?;
            return Some((a + b) / T::from_int(2));
        }
    }
    None
}

/// The determinant sequence for one set of couplings.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelProblem {
    pub a: Rational,
    pub b: Rational,
    pub l: u32,
    /// Displacement `d`.
    pub d: usize,
}

impl HankelProblem {
    pub fn new(a: Rational, b: Rational, l: u32, d: usize) -> Self {
        HankelProblem { a, b, l, d }
    }

    /// Roots of `H_D^d` in `(lo, hi)`.
    ///
    /// In exact mode the determinant is built symbolically and its roots
    /// isolated with Sturm sequences; otherwise it is sampled on an energy
    /// grid and sign changes are refined.
    pub fn roots<T: Scalar>(&self, dim: usize, window: (f64, f64), exact: bool, tol: f64) -> Result<Vec<HankelRoot<T>>, NumericError> {
        if exact {
            let dets = exact_determinants(&self.a, &self.b, self.l, self.d, dim);
            return match dets.last() {
                Some(p) => exact_roots_in(p, window.0, window.1, tol),
                None => Ok(Vec::new()),
            };
        }
        let (at, bt) = (T::from_rational(&self.a), T::from_rational(&self.b));
        let z_max = (&self.a - self.b.clone().min(Rational::zero())).to_f64().unwrap_or(1.0);
        let grid = energy_grid(window.0, window.1, z_max, 200);
        let h = |e: &T| numeric_determinant(&at, &bt, self.l, self.d, e, dim);
        let samples: Vec<(T, T)> = grid
            .iter()
            .map(|&e| {
                let e: T = from_f64(e);
                let v = h(&e);
                (e, v)
            })
            .collect();
        Ok(bracketed_roots(&samples, h, tol).into_iter().map(|value| HankelRoot { value, exact: None, multiplicity: None }).collect())
    }
}
