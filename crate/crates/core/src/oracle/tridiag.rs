//! Symmetric tridiagonal eigenproblems: Sturm-count bisection for the
//! eigenvalues and inverse iteration for the vectors.

use num_traits::Float;

#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiagonal<T> {
    pub diag: Vec<T>,
    /// `off[k]` couples rows `k` and `k + 1`.
    pub off: Vec<T>,
}

impl<T: Float> SymTridiagonal<T> {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Interval containing every eigenvalue (Gershgorin).
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.diag.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for k in 0..n {
            let left = if k > 0 { self.off[k - 1].abs() } else { T::zero() };
            let right = if k + 1 < n { self.off[k].abs() } else { T::zero() };
            lo = lo.min(self.diag[k] - left - right);
            hi = hi.max(self.diag[k] + left + right);
        }
        (lo, hi)
    }
}

/// Number of eigenvalues strictly below `x` (negative pivots of the
/// `LDL^T` factorisation of `M - x`).
pub fn count_below<T: Float>(m: &SymTridiagonal<T>, x: T) -> usize {
    let tiny = T::min_positive_value().sqrt();
    let mut count = 0;
    let mut q = T::one();
    for k in 0..m.diag.len() {
        let e2 = if k > 0 { m.off[k - 1] * m.off[k - 1] } else { T::zero() };
        q = m.diag[k] - x - if k > 0 { e2 / q } else { T::zero() };
        if q == T::zero() {
            q = -tiny;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest eigenvalue (from 0), bisected to rounding level.
pub fn eigenvalue<T: Float>(m: &SymTridiagonal<T>, k: usize) -> T {
    let (mut lo, mut hi) = m.gershgorin();
    let two = T::one() + T::one();
    for _ in 0..400 {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(m, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / two
}

/// Eigenvector for an accurate eigenvalue `lambda` (two sweeps of inverse
/// iteration with the Thomas algorithm), scaled to unit max-norm.
pub fn eigenvector<T: Float>(m: &SymTridiagonal<T>, lambda: T) -> Vec<T> {
    let n = m.diag.len();
    let eps = T::epsilon();
    let scale = m.diag.iter().fold(T::zero(), |s, d| s.max(d.abs()));
    let shift = lambda + eps * scale * (T::one() + T::one());
    let guard = eps * scale;
    let mut x = vec![T::one(); n];
    let mut c = vec![T::zero(); n];
    let mut d = vec![T::zero(); n];
    for _ in 0..3 {
        // forward elimination of (M - shift) y = x
        let mut pivot = m.diag[0] - shift;
        if pivot.abs() < guard {
            pivot = guard;
        }
        c[0] = if n > 1 { m.off[0] / pivot } else { T::zero() };
        d[0] = x[0] / pivot;
        for k in 1..n {
            pivot = m.diag[k] - shift - m.off[k - 1] * c[k - 1];
            if pivot.abs() < guard {
                pivot = guard;
            }
            c[k] = if k + 1 < n { m.off[k] / pivot } else { T::zero() };
            d[k] = (x[k] - m.off[k - 1] * d[k - 1]) / pivot;
        }
        x[n - 1] = d[n - 1];
        for k in (0..n - 1).rev() {
            x[k] = d[k] - c[k] * x[k + 1];
        }
        let peak = x.iter().fold(T::zero(), |s, v| s.max(v.abs()));
        if peak > T::zero() {
            x.iter_mut().for_each(|v| *v = *v / peak);
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian(n: usize) -> SymTridiagonal<f64> {
        SymTridiagonal { diag: vec![2.0; n], off: vec![-1.0; n - 1] }
    }

    #[test]
    fn discrete_laplacian_eigenvalues() {
        // 2 - 2 cos(k pi / (n + 1))
        let n = 50;
        let m = laplacian(n);
        for k in [0, 1, 7, 49] {
            let exact = 2.0 - 2.0 * (((k + 1) as f64) * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((eigenvalue(&m, k) - exact).abs() < 1e-13);
        }
        assert_eq!(count_below(&m, 0.0), 0);
        assert_eq!(count_below(&m, 4.0), n);
    }

    #[test]
    fn eigenvector_matches_sine_mode() {
        let n = 40;
        let m = laplacian(n);
        let lambda = eigenvalue(&m, 2);
        let v = eigenvector(&m, lambda);
        let theta = 3.0 * std::f64::consts::PI / (n as f64 + 1.0);
        let exact: Vec<f64> = (1..=n).map(|j| (j as f64 * theta).sin()).collect();
        let peak = exact.iter().fold(0.0f64, |s, v| s.max(v.abs()));
        let sign = if v[0] * exact[0] > 0.0 { 1.0 } else { -1.0 };
        for (x, y) in v.iter().zip(&exact) {
            assert!((sign * x - y / peak).abs() < 1e-9);
        }
    }
}
