//! Square matrices, determinants and Hankel minors.

use std::fmt;

use super::ring::Ring;
use super::scalar::Scalar;
use super::NumericError;

#[derive(Clone, PartialEq)]
pub struct SquareMatrix<R> {
    dim: usize,
    data: Vec<R>,
}

impl<R: Clone> SquareMatrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, NumericError> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(NumericError::NotSquare { rows: dim, cols: row.len() });
            }
            data.extend(row);
        }
        Ok(SquareMatrix { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        SquareMatrix { dim, data }
    }

    /// `D x D` Hankel matrix with entries `seq[i + j + offset]`.
    pub fn hankel(seq: &[R], dim: usize, offset: usize) -> Result<Self, NumericError> {
        let needed = offset + 2 * dim.saturating_sub(1) + 1;
        if dim > 0 && seq.len() < needed {
            return Err(NumericError::SeriesTooShort { needed, available: seq.len() });
        }
        Ok(Self::from_fn(dim, |i, j| seq[i + j + offset].clone()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.dim + j]
    }

    /// Leading `k x k` block.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k, |i, j| self.get(i, j).clone())
    }

    fn rows(&self) -> Vec<Vec<R>> {
        self.data.chunks(self.dim.max(1)).map(|c| c.to_vec()).take(self.dim).collect()
    }
}

impl<R: fmt::Debug> fmt::Debug for SquareMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.dim.max(1))).finish()
    }
}

/// Fraction-free (Bareiss) determinant; every division is exact in an
/// integral domain, so no fractions appear beyond those of the entries.
pub fn bareiss_det<R: Ring>(m: &SquareMatrix<R>) -> R {
    let n = m.dim;
    if n == 0 {
        return R::from_int(1);
    }
    let mut a = m.rows();
    let mut negate = false;
    let mut prev = R::from_int(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero_elem()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return R::from_int(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k].times(&a[i][j]).minus(&a[i][k].times(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.negated()
    } else {
        det
    }
}

/// Gaussian elimination with partial pivoting.
pub fn pivoted_det<T: Scalar>(m: &SquareMatrix<T>) -> T {
    let n = m.dim;
    let mut a = m.rows();
    let mut det = T::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(k);
        if a[p][k].is_zero() {
            return T::zero();
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        let (top, bottom) = a.split_at_mut(k + 1);
        let row_k = &top[k];
        for row in bottom.iter_mut() {
            let factor = row[k].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for j in k + 1..n {
                row[j].sub_mul_assign(&factor, &row_k[j]);
            }
        }
    }
    det
}

/// Exact fields use fraction-free elimination, rounded fields use pivoting.
pub fn determinant<T: Scalar>(m: &SquareMatrix<T>) -> T {
    match m.dim {
        0 => T::one(),
        1 => m.get(0, 0).clone(),
        _ if T::EXACT => bareiss_det(m),
        _ => pivoted_det(m),
    }
}

/// All leading principal minors `det(A[..k, ..k])`, `k = 1..=n`, from one
/// fraction-free elimination. A vanishing pivot stops the shared sweep and
/// the remaining minors are computed one by one.
pub fn bareiss_leading_minors<R: Ring>(m: &SquareMatrix<R>) -> Vec<R> {
    let n = m.dim;
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut a = m.rows();
    let mut prev = R::from_int(1);
    out.push(a[0][0].clone());
    for k in 0..n - 1 {
        if a[k][k].is_zero_elem() {
            for size in k + 2..=n {
                out.push(bareiss_det(&m.leading(size)));
            }
            return out;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k].times(&a[i][j]).minus(&a[i][k].times(&a[k][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
        out.push(a[k + 1][k + 1].clone());
    }
    out
}

/// Leading principal minors in a rounded field via elimination without
/// row exchanges (`det_k` is the product of the first `k` pivots). An exactly
/// vanishing pivot falls back to pivoted determinants for the rest.
pub fn leading_minors<T: Scalar>(m: &SquareMatrix<T>) -> Vec<T> {
    if T::EXACT {
        return bareiss_leading_minors(m);
    }
    let n = m.dim;
    let mut out = Vec::with_capacity(n);
    let mut a = m.rows();
    let mut det = T::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_zero() {
            out.push(T::zero());
            for size in k + 2..=n {
                out.push(pivoted_det(&m.leading(size)));
            }
            return out;
        }
        det *= &pivot;
        out.push(det.clone());
        let (top, bottom) = a.split_at_mut(k + 1);
        let row_k = &top[k];
        for row in bottom.iter_mut() {
            let factor = row[k].clone() / pivot.clone();
            for j in k + 1..n {
                row[j].sub_mul_assign(&factor, &row_k[j]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::poly::{Poly, Var};
    use crate::numeric::scalar::ratio;
    use crate::Real;
    use num_rational::BigRational;
    use num_traits::Signed;

    type Q = BigRational;

    fn qm(rows: &[&[i64]]) -> SquareMatrix<Q> {
        SquareMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| ratio(x, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_and_singular() {
        assert_eq!(determinant(&qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), ratio(1, 1));
        assert_eq!(determinant(&qm(&[&[1, 2], &[2, 4]])), ratio(0, 1));
        let f = SquareMatrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(determinant(&f), 0.0);
    }

    #[test]
    fn single_entry_is_returned_unchanged() {
        let m = qm(&[&[-7]]);
        assert_eq!(determinant(&m), ratio(-7, 1));
    }

    #[test]
    fn non_square_input_is_rejected() {
        let err = SquareMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0]]).unwrap_err();
        assert!(matches!(err, NumericError::NotSquare { rows: 2, cols: 1 }));
    }

    #[test]
    fn zero_leading_pivot_needs_a_swap() {
        let m = qm(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        // cofactor expansion: 0*(0+9) - 1*(8-12) + 2*(-3-0) = -2
        assert_eq!(bareiss_det(&m), ratio(-2, 1));
        let minors = bareiss_leading_minors(&m);
        assert_eq!(minors, vec![ratio(0, 1), ratio(-1, 1), ratio(-2, 1)]);
        let f = SquareMatrix::from_fn(3, |i, j| m.get(i, j).to_f64_lossy());
        assert_eq!(leading_minors(&f), vec![0.0, -1.0, -2.0]);
    }

    #[test]
    fn one_by_one_hankel_in_energy_gives_coulomb_ground_state() {
        // f_1 = (a^2 + 2E)/3 at a = 1: its root is E = -1/2
        let f1 = Poly::new(vec![ratio(1, 3), ratio(2, 3)], Var::E);
        let det = bareiss_det(&SquareMatrix::from_fn(1, |_, _| f1.clone()));
        assert_eq!(det.eval(&ratio(-1, 2)), ratio(0, 1));
    }

    #[test]
    fn polynomial_bareiss_matches_pointwise_evaluation() {
        let seq: Vec<Poly<Q>> = (0..7)
            .map(|k| Poly::new(vec![ratio(k as i64 + 1, 2), ratio(1 - k as i64, 3), ratio(k as i64, 5)], Var::E))
            .collect();
        let m = SquareMatrix::hankel(&seq, 3, 1).unwrap();
        let det = bareiss_det(&m);
        for x in [ratio(-2, 1), ratio(1, 3), ratio(5, 2)] {
            let pointwise = SquareMatrix::from_fn(3, |i, j| m.get(i, j).eval(&x));
            assert_eq!(det.eval(&x), bareiss_det(&pointwise));
        }
        let minors = bareiss_leading_minors(&m);
        assert_eq!(minors[2], det);
    }

    #[test]
    fn rounded_minors_match_pivoted_determinants() {
        let m = SquareMatrix::from_fn(5, |i, j| Real::from_f64(1.0 / (1.0 + i as f64 + j as f64) + if i == j { 0.3 } else { 0.0 }));
        let minors = leading_minors(&m);
        for k in 1..=5 {
            let exact = pivoted_det(&m.leading(k));
            assert!((minors[k - 1].clone() - exact.clone()).abs() <= exact.abs() * Real::from_f64(1e-60));
        }
    }

    #[test]
    fn hankel_needs_enough_terms() {
        let seq = vec![1.0, 2.0, 3.0];
        assert!(SquareMatrix::hankel(&seq, 2, 1).is_err());
        let h = SquareMatrix::hankel(&seq, 2, 0).unwrap();
        assert_eq!(h.get(1, 1), &3.0);
    }
}
