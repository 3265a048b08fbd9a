//! Reference eigensolver independent of the series methods: three-point
//! finite differences for the reduced radial equation on a box, with
//! Richardson extrapolation over `h` and `h/2`, plus the Hellmann-Feynman
//! check `dE/db = <1/(r+1)>`.

mod tridiag;

use num_traits::Float;
use thiserror::Error;

use crate::model::DimensionlessParams;
use crate::numeric::scalar::{rational_to_f64, Scalar};
use crate::rpm::{rpm_eigenvalue, RpmConfig, RpmError};
use crate::Rational;

pub use tridiag::{count_below, eigenvalue, eigenvector, SymTridiagonal};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("grid needs r_max > 0 and at least 3 interior points")]
    InvalidGrid,
    #[error("a = {a} <= b = {b}: no Coulomb tail to bind the requested levels")]
    NotBound { a: f64, b: f64 },
    #[error("state is not normalised (norm {norm})")]
    Unnormalized { norm: f64 },
    #[error("step must be positive")]
    InvalidStep,
    #[error(transparent)]
    Rpm(#[from] RpmError),
}

fn c<T: Float>(x: f64) -> T {
    T::from(x).expect("representable constant")
}

/// Uniform interior nodes `r_k = k h`, `k = 1..=n`, with `u = 0` at `r = 0`
/// and at `r = r_max = (n + 1) h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialGrid<T> {
    pub r_max: T,
    pub n: usize,
}

impl<T: Float> RadialGrid<T> {
    pub fn new(r_max: T, n: usize) -> Result<Self, OracleError> {
        if !(r_max > T::zero()) || n < 3 {
            return Err(OracleError::InvalidGrid);
        }
        Ok(RadialGrid { r_max, n })
    }

    /// Box of `40/alpha` with `alpha = (a - b)/(count + l + 1)`, and a step
    /// of `1/(50 Z)` for the strongest charge `Z = a - min(b, 0)`.
    pub fn for_levels(a: T, b: T, l: u32, count: usize) -> Result<Self, OracleError> {
        if !(a > b) {
            return Err(OracleError::NotBound { a: a.to_f64().unwrap_or(f64::NAN), b: b.to_f64().unwrap_or(f64::NAN) });
        }
        let alpha = (a - b) / c(count.max(1) as f64 + f64::from(l) + 1.0);
        let r_max = c::<T>(40.0) / alpha;
        let z = a - b.min(T::zero());
        let h = T::one() / (c::<T>(50.0) * z);
        let n = (r_max / h).ceil().to_usize().unwrap_or(0).max(100);
        Self::new(r_max, n)
    }

    pub fn h(&self) -> T {
        self.r_max / c((self.n + 1) as f64)
    }

    pub fn r(&self, k: usize) -> T {
        self.h() * c(k as f64)
    }

    /// Same box, half the step.
    pub fn halved(&self) -> Self {
        RadialGrid { r_max: self.r_max, n: 2 * self.n + 1 }
    }

    /// Same step, twice the box.
    pub fn doubled_box(&self) -> Self {
        RadialGrid { r_max: self.r_max + self.r_max, n: 2 * self.n + 1 }
    }

    /// `-u''/2 + V u` with the three-point Laplacian.
    pub fn hamiltonian(&self, a: T, b: T, l: u32) -> SymTridiagonal<T> {
        let h = self.h();
        let inv = T::one() / (h * h);
        let ll = c::<T>(f64::from(l) * f64::from(l + 1));
        let half = c::<T>(0.5);
        let diag = (1..=self.n)
            .map(|k| {
                let r = self.r(k);
                inv + ll * half / (r * r) - a / r + b / (r + T::one())
            })
            .collect();
        SymTridiagonal { diag, off: vec![-half * inv; self.n - 1] }
    }
}

/// Eigenpair on one grid; `u` holds the interior values, normalised with
/// the trapezoid rule.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericState<T> {
    pub energy: T,
    pub u: Vec<T>,
    pub nodes: usize,
    pub grid: RadialGrid<T>,
}

impl<T: Float> NumericState<T> {
    pub fn norm(&self) -> T {
        self.grid.h() * self.u.iter().fold(T::zero(), |s, &x| s + x * x)
    }
}

/// Lowest levels of one `(a, b, l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FdSpectrum<T> {
    /// Richardson-extrapolated eigenvalues.
    pub energies: Vec<T>,
    /// Eigenvectors on the finer grid.
    pub states: Vec<NumericState<T>>,
    /// Coarse-grid states, kept for extrapolating expectation values.
    pub coarse: Vec<NumericState<T>>,
    pub requested: usize,
}

impl<T: Float> FdSpectrum<T> {
    /// Fewer negative eigenvalues than requested exist on the grid.
    pub fn is_partial(&self) -> bool {
        self.energies.len() < self.requested
    }

    /// `<1/(r+1)>` of level `k`, extrapolated over the two grids.
    pub fn expectation_inv_r1(&self, k: usize) -> Result<T, OracleError> {
        let fine = expectation_inv_r1(&self.states[k])?;
        let coarse = expectation_inv_r1(&self.coarse[k])?;
        Ok(richardson(coarse, fine))
    }
}

fn richardson<T: Float>(coarse: T, fine: T) -> T {
    (c::<T>(4.0) * fine - coarse) / c(3.0)
}

fn count_nodes<T: Float>(u: &[T]) -> usize {
    let peak = u.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let floor = peak * c(1e-8);
    let mut last = 0i8;
    let mut nodes = 0;
    for &x in u {
        if x.abs() <= floor {
            continue;
        }
        let s = if x > T::zero() { 1 } else { -1 };
        if last != 0 && s != last {
            nodes += 1;
        }
        last = s;
    }
    nodes
}

fn states_on<T: Float + Send + Sync>(grid: &RadialGrid<T>, a: T, b: T, l: u32, count: usize) -> Vec<NumericState<T>> {
    let m = grid.hamiltonian(a, b, l);
    let bound = count_below(&m, T::zero()).min(count);
    (0..bound)
        .map(|k| {
            let energy = eigenvalue(&m, k);
            let mut u = eigenvector(&m, energy);
            let norm = grid.h() * u.iter().fold(T::zero(), |s, &x| s + x * x);
            let scale = T::one() / norm.sqrt();
            // positive near the origin
            let sign = if u.iter().find(|x| !x.is_zero()).is_some_and(|&x| x < T::zero()) { -scale } else { scale };
            u.iter_mut().for_each(|x| *x = *x * sign);
            let nodes = count_nodes(&u);
            NumericState { energy, u, nodes, grid: *grid }
        })
        .collect()
}

/// Lowest `count` levels; fewer when the grid holds fewer bound states.
pub fn fd_spectrum<T: Float + Send + Sync>(a: T, b: T, l: u32, count: usize, grid: &RadialGrid<T>) -> Result<FdSpectrum<T>, OracleError> {
    let fine_grid = grid.halved();
    let (coarse, states) = rayon::join(|| states_on(grid, a, b, l, count), || states_on(&fine_grid, a, b, l, count));
    let k = coarse.len().min(states.len());
    let energies = (0..k).map(|i| richardson(coarse[i].energy, states[i].energy)).collect();
    Ok(FdSpectrum { energies, states, coarse, requested: count })
}

/// `<1/(r+1)>` by the trapezoid rule (the integrand vanishes at both ends).
pub fn expectation_inv_r1<T: Float>(state: &NumericState<T>) -> Result<T, OracleError> {
    let norm = state.norm();
    if (norm - T::one()).abs() > c(1e-10) {
        return Err(OracleError::Unnormalized { norm: norm.to_f64().unwrap_or(f64::NAN) });
    }
    let g = &state.grid;
    let sum = state.u.iter().enumerate().fold(T::zero(), |s, (i, &x)| s + x * x / (g.r(i + 1) + T::one()));
    Ok(g.h() * sum)
}

/// Which solver supplies `E(b +- db)` for the difference quotient.
#[derive(Clone, Debug, PartialEq)]
pub enum EnergySource {
    Rpm(RpmConfig),
    FiniteDifference,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HellmannFeynman {
    /// Richardson-refined central difference of `E` in `b`.
    pub derivative: f64,
    /// Finite-difference `<1/(r+1)>`.
    pub expectation: f64,
    pub discrepancy: f64,
}

impl HellmannFeynman {
    pub fn both_positive(&self) -> bool {
        self.derivative > 0.0 && self.expectation > 0.0
    }
}

fn level_energy(a: &Rational, b: &Rational, l: u32, nu: usize, source: &EnergySource) -> Result<f64, OracleError> {
    let (af, bf) = (rational_to_f64(a), rational_to_f64(b));
    match source {
        EnergySource::Rpm(cfg) => {
            let p = DimensionlessParams { a: a.clone(), b: b.clone(), l };
            Ok(rpm_eigenvalue::<crate::Real>(&p, nu, cfg)?.energy.to_f64_lossy())
        }
        EnergySource::FiniteDifference => {
            let grid = RadialGrid::for_levels(af, bf, l, nu + 1)?;
            let s = fd_spectrum(af, bf, l, nu + 1, &grid)?;
            s.energies.get(nu).copied().ok_or(OracleError::NotBound { a: af, b: bf })
        }
    }
}

/// Compare the central difference of `E_{nu l}(b)` (steps `db` and `db/2`,
/// Richardson-combined) with the finite-difference `<1/(r+1)>` at `b`.
pub fn hellmann_feynman_check(
    a: &Rational,
    b: &Rational,
    l: u32,
    nu: usize,
    db: &Rational,
    source: &EnergySource,
) -> Result<HellmannFeynman, OracleError> {
    if *db <= Rational::from_integer(0.into()) {
        return Err(OracleError::InvalidStep);
    }
    let half = db / Rational::from_integer(2.into());
    let quotient = |step: &Rational| -> Result<f64, OracleError> {
        let up = level_energy(a, &(b + step), l, nu, source)?;
        let down = level_energy(a, &(b - step), l, nu, source)?;
        Ok((up - down) / (2.0 * rational_to_f64(step)))
    };
    let derivative = richardson(quotient(db)?, quotient(&half)?);
    let (af, bf) = (rational_to_f64(a), rational_to_f64(b));
    let grid = RadialGrid::for_levels(af, bf, l, nu + 1)?;
    let s = fd_spectrum(af, bf, l, nu + 1, &grid)?;
    if s.energies.len() <= nu {
        return Err(OracleError::NotBound { a: af, b: bf });
    }
    let expectation = s.expectation_inv_r1(nu)?;
    Ok(HellmannFeynman { derivative, expectation, discrepancy: (derivative - expectation).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::scalar::ratio;

    #[test]
    fn coulomb_levels() {
        let grid = RadialGrid::for_levels(1.0, 0.0, 0, 2).unwrap();
        let s = fd_spectrum(1.0, 0.0, 0, 2, &grid).unwrap();
        assert!((s.energies[0] + 0.5).abs() < 1e-6);
        assert!((s.energies[1] + 0.125).abs() < 1e-6);
        assert_eq!(s.states.iter().map(|st| st.nodes).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn conditional_state_levels() {
        let grid = RadialGrid::for_levels(1.0, -3.0, 0, 2).unwrap();
        let s = fd_spectrum(1.0, -3.0, 0, 2, &grid).unwrap();
        assert!((s.energies[0] + 2.0).abs() < 1e-6);
        assert!((s.energies[1] + 0.8399328).abs() < 1e-6);
    }

    #[test]
    fn states_are_normalised() {
        let grid = RadialGrid::for_levels(1.0, 0.5, 0, 1).unwrap();
        let s = fd_spectrum(1.0, 0.5, 0, 1, &grid).unwrap();
        assert!((s.states[0].norm() - 1.0).abs() < 1e-10);
        let x = expectation_inv_r1(&s.states[0]).unwrap();
        assert!(x > 0.0 && x < 1.0);
    }

    #[test]
    fn hydrogen_expectation() {
        // 4 int r^2 e^{-2r}/(r+1) dr = 2 - 4 e^2 E_1(2)
        let grid = RadialGrid::for_levels(1.0, 0.0, 0, 1).unwrap();
        let s = fd_spectrum(1.0, 0.0, 0, 1, &grid).unwrap();
        assert!((s.expectation_inv_r1(0).unwrap() - 0.445_314_467_552_890).abs() < 1e-7);
    }

    #[test]
    fn unnormalised_state_is_rejected() {
        let grid = RadialGrid::new(10.0, 9).unwrap();
        let st = NumericState { energy: -0.5, u: vec![1.0; 9], nodes: 0, grid };
        assert!(matches!(expectation_inv_r1(&st), Err(OracleError::Unnormalized { .. })));
    }

    #[test]
    fn too_few_bound_states_gives_partial_result() {
        // a tiny box holds no negative levels
        let grid = RadialGrid::new(0.05, 200).unwrap();
        let s = fd_spectrum(1.0, 0.0, 0, 2, &grid).unwrap();
        assert!(s.is_partial());
    }

    #[test]
    fn invalid_grids() {
        assert_eq!(RadialGrid::new(0.0, 100), Err(OracleError::InvalidGrid));
        assert_eq!(RadialGrid::new(1.0, 2), Err(OracleError::InvalidGrid));
        assert!(matches!(RadialGrid::for_levels(1.0, 1.0, 0, 1), Err(OracleError::NotBound { .. })));
    }

    #[test]
    fn hellmann_feynman_with_finite_differences() {
        let hf = hellmann_feynman_check(&ratio(1, 1), &ratio(0, 1), 0, 0, &ratio(1, 10_000), &EnergySource::FiniteDifference).unwrap();
        assert!(hf.both_positive());
        assert!(hf.discrepancy < 1e-4, "{hf:?}");
    }
}
