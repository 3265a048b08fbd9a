//! Eigenvalues as roots of `H_D^d(E)` that stabilise as `D` grows.
//!
//! Roots are found for `D = 2, 3, ...`: symbolically up to an exact cap,
//! then numerically in the working field. Each root at `D` is paired with
//! the nearest root at `D - 1`; a pair closer than `tol` is a converged
//! observation. Converged observations are grouped into clusters, and the
//! clusters, sorted by energy, are the levels `nu = 0, 1, ...`.

use num_traits::Signed;
use rayon::prelude::*;

use super::hankel::{
    bracketed_roots, energy_grid, exact_determinants, exact_roots_in, numeric_determinant, numeric_determinants, track_root, HankelRoot,
};
use super::{RpmConfig, RpmError};
use crate::model::{effective_potential_minimum, energy_bracket, DimensionlessParams};
use crate::numeric::scalar::{rational_to_f64, Scalar};
use crate::Rational;

/// One root at one dimension, with its distance to the nearest root at the
/// previous dimension (`None` for the first dimension or after a restart).
#[derive(Clone, Debug, PartialEq)]
pub struct Observation<T> {
    pub dim: usize,
    pub value: T,
    pub exact: Option<Rational>,
    pub diff: Option<f64>,
}

/// A stabilised eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct Level<T> {
    pub nu: usize,
    pub energy: T,
    /// Set when the determinants share this rational root exactly.
    pub exact: Option<Rational>,
    /// Dimension of the reported observation.
    pub dim: usize,
    /// Its successive-`D` difference.
    pub residual: f64,
    /// Number of converged observations in the cluster.
    pub support: usize,
    /// Whether the value respects the rigorous bracket for its label.
    pub within_bounds: bool,
}

/// Closest candidate for a level that never stabilised.
#[derive(Clone, Debug, PartialEq)]
pub struct Unconverged {
    pub nu: usize,
    pub best_value: Option<f64>,
    pub best_diff: Option<f64>,
    pub best_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    pub levels: Vec<Level<T>>,
    pub missing: Vec<Unconverged>,
    pub window: (f64, f64),
    /// Largest `D` examined.
    pub dims_used: usize,
    pub observations: Vec<Observation<T>>,
}

impl<T: Scalar> Spectrum<T> {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }
}

fn validate(p: &DimensionlessParams<Rational>, cfg: &RpmConfig) -> Result<(), RpmError> {
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return Err(RpmError::InvalidTolerance);
    }
    if !p.a.is_positive() {
        return Err(RpmError::InvalidCoupling);
    }
    Ok(())
}

/// Search window for the lowest `count` levels: from just below the
/// deepest admissible energy (potential minimum, or the lower comparison
/// bound when the potential is unbounded) to just above the upper
/// comparison bound of level `count - 1`.
pub fn search_window(a: f64, b: f64, l: u32, count: usize, tol: f64) -> (f64, f64) {
    let (floor, _) = energy_bracket(a, b, l, 0);
    let vmin = effective_potential_minimum(&DimensionlessParams { a, b, l });
    let floor = vmin.map_or(floor, |v| v.max(floor));
    let (_, upper) = energy_bracket(a, b, l, count.saturating_sub(1) as u32);
    let hi = if upper < 0.0 { 0.95 * upper } else { -tol };
    (1.05 * floor, hi)
}

fn advance<T: Scalar>(prev: &[Observation<T>], roots: Vec<HankelRoot<T>>, dim: usize) -> Vec<Observation<T>> {
    roots
        .into_iter()
        .map(|r| {
            let nearest = prev
                .iter()
                .map(|p| ((r.value.clone() - p.value.clone()).abs().to_f64_lossy(), p.diff))
                .min_by(|x, y| x.0.total_cmp(&y.0));
            let diff = match nearest {
                // a jump much larger than the last step restarts the branch
                Some((d, Some(pd))) if d > 10.0 * pd => None,
                Some((d, _)) => Some(d),
                None => None,
            };
            Observation { dim, value: r.value, exact: r.exact, diff }
        })
        .collect()
}

struct Cluster<'a, T> {
    best: &'a Observation<T>,
    support: usize,
}

fn clusters<'a, T: Scalar>(obs: &'a [Observation<T>], cfg: &RpmConfig, floor: f64) -> Vec<Cluster<'a, T>> {
    let mut conv: Vec<&Observation<T>> = obs.iter().filter(|o| o.diff.is_some_and(|d| d < cfg.tol)).collect();
    conv.sort_by(|x, y| x.value.partial_cmp(&y.value).unwrap_or(std::cmp::Ordering::Equal));
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=conv.len() {
        let split = k == conv.len()
            || (conv[k].value.clone() - conv[k - 1].value.clone()).to_f64_lossy() >= cfg.cluster_radius;
        if !split {
            continue;
        }
        let group = &conv[start..k];
        start = k;
        let best = group
            .iter()
            .min_by(|x, y| {
                x.diff
                    .unwrap_or(f64::INFINITY)
                    .total_cmp(&y.diff.unwrap_or(f64::INFINITY))
                    .then(y.exact.is_some().cmp(&x.exact.is_some()))
                    .then(y.dim.cmp(&x.dim))
            })
            .copied()
            .expect("non-empty group");
        let v = best.value.to_f64_lossy();
        if group.len() >= cfg.min_support && v > floor && v < 0.0 {
            out.push(Cluster { best, support: group.len() });
        }
    }
    out
}

fn slack(e: f64, tol: f64) -> f64 {
    1e-9 * e.abs() + tol
}

fn levels_from<T: Scalar>(cl: &[Cluster<'_, T>], p: (f64, f64, u32), count: usize, tol: f64) -> Vec<Level<T>> {
    cl.iter()
        .take(count)
        .enumerate()
        .map(|(nu, c)| {
            let e = c.best.value.to_f64_lossy();
            let (lo, hi) = energy_bracket(p.0, p.1, p.2, nu as u32);
            Level {
                nu,
                energy: c.best.value.clone(),
                exact: c.best.exact.clone(),
                dim: c.best.dim,
                residual: c.best.diff.unwrap_or(f64::NAN),
                support: c.support,
                within_bounds: e >= lo - slack(e, tol) && e <= hi + slack(e, tol),
            }
        })
        .collect()
}

fn from_f64<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("finite")
}

/// The lowest `count` eigenvalues at fixed `(a, b, l)`.
///
/// Levels that do not stabilise by `D_max` are listed in
/// [`Spectrum::missing`] rather than failing the whole call.
pub fn rpm_spectrum<T: Scalar>(p: &DimensionlessParams<Rational>, count: usize, cfg: &RpmConfig) -> Result<Spectrum<T>, RpmError> {
    validate(p, cfg)?;
    let (af, bf) = (rational_to_f64(&p.a), rational_to_f64(&p.b));
    let window = search_window(af, bf, p.l, count.max(1), cfg.tol);
    let floor = energy_bracket(af, bf, p.l, 0).0;
    let floor = floor - slack(floor, cfg.tol);
    let refine_tol = cfg.tol * 1e-3;
    let mut all: Vec<Observation<T>> = Vec::new();
    let mut prev: Vec<Observation<T>> = Vec::new();
    let mut dims_used = 0;
    let done = |all: &Vec<Observation<T>>| {
        let cl = clusters(all, cfg, floor);
        cl.len() >= count && levels_from(&cl, (af, bf, p.l), count, cfg.tol).iter().all(|l| l.within_bounds)
    };

    let cap = cfg.exact_cap.min(cfg.d_max);
    let mut finished = false;
    if cap >= 2 && window.0 < window.1 {
        let dets = exact_determinants(&p.a, &p.b, p.l, cfg.d, cap);
        for dim in 2..=cap {
            let roots = exact_roots_in::<T>(&dets[dim - 1], window.0, window.1, refine_tol)?;
            let obs = advance(&prev, roots, dim);
            all.extend(obs.iter().cloned());
            prev = obs;
            dims_used = dim;
            if cfg.early_stop && done(&all) {
                finished = true;
                break;
            }
        }
    }

    let first_numeric = cap.max(1) + 1;
    if !finished && cfg.d_max >= first_numeric && window.0 < window.1 {
        let (at, bt) = (T::from_rational(&p.a), T::from_rational(&p.b));
        let z_max = af - bf.min(0.0);
        let grid: Vec<T> = energy_grid(window.0, window.1, z_max, cfg.grid_per_level).into_iter().map(from_f64).collect();
        let grid_vals: Vec<Vec<T>> =
            grid.par_iter().map(|e| numeric_determinants(&at, &bt, p.l, cfg.d, e, cfg.d_max)).collect();
        for dim in first_numeric..=cfg.d_max {
            let h = |e: &T| numeric_determinant(&at, &bt, p.l, cfg.d, e, dim);
            let samples: Vec<(T, T)> = grid.iter().cloned().zip(grid_vals.iter().map(|v| v[dim - 1].clone())).collect();
            let mut found = bracketed_roots(&samples, h, refine_tol);
            // close pairs can hide between grid points: follow every root
            // that was already settling from the previous dimension
            let tracked: Vec<T> = prev
                .par_iter()
                .filter(|o| o.exact.is_some() || o.diff.is_some_and(|d| d < cfg.track_radius))
                .filter_map(|o| {
                    let d = o.diff.unwrap_or(0.0).max(cfg.tol);
                    track_root(h, &o.value, d, 10.0 * d.max(1e-6), window, refine_tol)
                })
                .collect();
            found.extend(tracked);
            found.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
            found.dedup_by(|x, y| (x.clone() - y.clone()).abs().to_f64_lossy() < cfg.tol);
            let roots = found.into_iter().map(|value| HankelRoot { value, exact: None, multiplicity: None }).collect();
            let obs = advance(&prev, roots, dim);
            all.extend(obs.iter().cloned());
            prev = obs;
            dims_used = dim;
            if cfg.early_stop && done(&all) {
                break;
            }
        }
    }

    let cl = clusters(&all, cfg, floor);
    let levels = levels_from(&cl, (af, bf, p.l), count, cfg.tol);
    let last = levels.last().map(|l| l.energy.to_f64_lossy() + cfg.cluster_radius).unwrap_or(f64::NEG_INFINITY);
    let missing = (levels.len()..count)
        .map(|nu| {
            let best = all
                .iter()
                .filter(|o| o.value.to_f64_lossy() > last && o.diff.is_some())
                .min_by(|x, y| x.diff.unwrap_or(f64::INFINITY).total_cmp(&y.diff.unwrap_or(f64::INFINITY)));
            Unconverged {
                nu,
                best_value: best.map(|o| o.value.to_f64_lossy()),
                best_diff: best.and_then(|o| o.diff),
                best_dim: best.map(|o| o.dim),
            }
        })
        .collect();
    Ok(Spectrum { levels, missing, window, dims_used, observations: all })
}

/// Level `nu` at fixed `(a, b, l)`.
pub fn rpm_eigenvalue<T: Scalar>(p: &DimensionlessParams<Rational>, nu: usize, cfg: &RpmConfig) -> Result<Level<T>, RpmError> {
    let s = rpm_spectrum::<T>(p, nu + 1, cfg)?;
    if let Some(level) = s.levels.get(nu) {
        return Ok(level.clone());
    }
    let miss = s.missing.into_iter().find(|m| m.nu == nu);
    Err(RpmError::NotConverged {
        nu,
        d_max: cfg.d_max,
        best_value: miss.as_ref().and_then(|m| m.best_value),
        best_diff: miss.as_ref().and_then(|m| m.best_diff),
    })
}

/// Largest disagreement between displacement `d` and `d + 1` over the
/// levels of `s` (a secondary convergence signal).
pub fn displacement_agreement<T: Scalar>(p: &DimensionlessParams<Rational>, s: &Spectrum<T>, cfg: &RpmConfig) -> Result<Vec<Option<f64>>, RpmError> {
    let alt = RpmConfig { d: cfg.d + 1, ..cfg.clone() };
    let other = rpm_spectrum::<T>(p, s.levels.len(), &alt)?;
    Ok(s.levels
        .iter()
        .map(|l| other.levels.get(l.nu).map(|m| (l.energy.clone() - m.energy.clone()).abs().to_f64_lossy()))
        .collect())
}

/// Where a curve sample came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Rpm,
    Oracle,
}

/// `E_{nu l}(b)` sampled on a grid of couplings.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyCurve<T> {
    pub l: u32,
    pub nu: usize,
    pub provenance: Provenance,
    /// Ascending in `b`.
    pub samples: Vec<(Rational, T)>,
    /// Grid points without a converged value.
    pub gaps: Vec<Rational>,
}

impl<T: Scalar> EnergyCurve<T> {
    pub fn is_strictly_increasing(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].1 > w[0].1)
    }
}

/// `n + 1` equally spaced couplings from `lo` to `hi`.
pub fn coupling_grid(lo: &Rational, hi: &Rational, steps: usize) -> Vec<Rational> {
    let n = steps.max(1);
    let h = (hi - lo) / Rational::from_integer(n.into());
    (0..=n).map(|k| lo + &h * Rational::from_integer(k.into())).collect()
}

/// Level `nu` along a grid of couplings.
///
/// Each point is solved independently (no warm start), so points run in
/// parallel and the result does not depend on scheduling.
pub fn energy_curve<T: Scalar>(a: &Rational, l: u32, nu: usize, grid: &[Rational], cfg: &RpmConfig) -> Result<EnergyCurve<T>, RpmError> {
    Ok(energy_curves(a, l, &[nu], grid, cfg)?.pop().expect("one branch requested"))
}

/// Several levels along one grid, from a single spectrum per coupling.
pub fn energy_curves<T: Scalar>(a: &Rational, l: u32, nus: &[usize], grid: &[Rational], cfg: &RpmConfig) -> Result<Vec<EnergyCurve<T>>, RpmError> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(RpmError::UnsortedGrid);
    }
    if !a.is_positive() {
        return Err(RpmError::InvalidCoupling);
    }
    let count = nus.iter().max().map_or(0, |m| m + 1);
    let spectra: Vec<Result<Spectrum<T>, RpmError>> = grid
        .par_iter()
        .map(|b| rpm_spectrum::<T>(&DimensionlessParams { a: a.clone(), b: b.clone(), l }, count, cfg))
        .collect();
    let spectra: Vec<Spectrum<T>> = spectra.into_iter().collect::<Result<_, _>>()?;
    Ok(nus
        .iter()
        .map(|&nu| {
            let mut samples = Vec::new();
            let mut gaps = Vec::new();
            for (b, s) in grid.iter().zip(&spectra) {
                match s.levels.get(nu) {
                    Some(level) => samples.push((b.clone(), level.energy.clone())),
                    None => gaps.push(b.clone()),
                }
            }
            EnergyCurve { l, nu, provenance: Provenance::Rpm, samples, gaps }
        })
        .collect())
}

/// Nearest level to `e` within `radius`, if any.
pub fn level_near<T: Scalar>(s: &Spectrum<T>, e: f64, radius: f64) -> Option<&Level<T>> {
    s.levels
        .iter()
        .map(|l| ((l.energy.to_f64_lossy() - e).abs(), l))
        .filter(|(d, _)| *d <= radius)
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(_, l)| l)
}
