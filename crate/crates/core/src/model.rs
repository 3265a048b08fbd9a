//! Physical parameters, the three choices of units, and the reduced
//! (Case I) potential used by every solver.
//!
//! With length unit `r0` and energy unit `hbar^2/(m r0^2)` the radial
//! problem for the reduced function `u = r R` reads
//! `-u''/2 + [l(l+1)/(2r^2) - a/r + b/(r+1)] u = E u`.

use thiserror::Error;

use crate::numeric::scalar::{half, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{name} must be positive")]
    NotPositive { name: &'static str },
    #[error("V2 = 0: the V2-based units are undefined")]
    ZeroV2,
    #[error("radius must be positive")]
    RadiusNotPositive,
    #[error("coupling a must be positive")]
    CouplingNotPositive,
}

/// `H = p^2/(2m) - V1/r + V2/(r + r0)` in arbitrary consistent units.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalParams<T> {
    pub v1: T,
    pub v2: T,
    pub r0: T,
    pub m: T,
    pub hbar: T,
}

impl<T: Scalar> PhysicalParams<T> {
    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, v) in [("V1", &self.v1), ("r0", &self.r0), ("m", &self.m), ("hbar", &self.hbar)] {
            if !(*v > T::zero()) {
                return Err(ModelError::NotPositive { name });
            }
        }
        Ok(())
    }

    /// `V1 > V2`: the long-range tail is attractive and supports infinitely
    /// many bound states.
    pub fn bound_state_rich(&self) -> bool {
        self.v1 > self.v2
    }

    fn hbar2(&self) -> T {
        self.hbar.clone() * self.hbar.clone()
    }

    /// Length unit `r0`: couplings `a = m r0 V1/hbar^2`, `b = m r0 V2/hbar^2`.
    pub fn to_case_i(&self, l: u32) -> Result<CaseI<T>, ModelError> {
        self.validate()?;
        let k = self.m.clone() * self.r0.clone() / self.hbar2();
        Ok(CaseI {
            params: DimensionlessParams { a: k.clone() * self.v1.clone(), b: k * self.v2.clone(), l },
            energy_unit: self.hbar2() / (self.m.clone() * self.r0.clone() * self.r0.clone()),
            length_unit: self.r0.clone(),
        })
    }

    /// Length unit `hbar^2/(m V1)`.
    pub fn to_case_ii(&self) -> Result<ScaledCase<T>, ModelError> {
        self.validate()?;
        self.scaled(&self.v1, &self.v2)
    }

    /// Length unit `hbar^2/(m V2)`; undefined for `V2 = 0`.
    pub fn to_case_iii(&self) -> Result<ScaledCase<T>, ModelError> {
        self.validate()?;
        if self.v2.is_zero() {
            return Err(ModelError::ZeroV2);
        }
        self.scaled(&self.v2, &self.v1)
    }

    fn scaled(&self, unit: &T, other: &T) -> Result<ScaledCase<T>, ModelError> {
        let length = self.hbar2() / (self.m.clone() * unit.clone());
        Ok(ScaledCase {
            coupling: other.clone() / unit.clone(),
            r0: self.r0.clone() / length.clone(),
            energy_unit: self.m.clone() * unit.clone() * unit.clone() / self.hbar2(),
            length_unit: length,
        })
    }
}

/// Couplings of the reduced problem.
#[derive(Clone, Debug, PartialEq)]
pub struct DimensionlessParams<T> {
    pub a: T,
    pub b: T,
    pub l: u32,
}

impl<T: Scalar> DimensionlessParams<T> {
    pub fn new(a: T, b: T, l: u32) -> Result<Self, ModelError> {
        if !(a > T::zero()) {
            return Err(ModelError::CouplingNotPositive);
        }
        Ok(DimensionlessParams { a, b, l })
    }

    /// `a > b`: attractive Coulomb tail.
    pub fn bound_state_rich(&self) -> bool {
        self.a > self.b
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DimensionlessParams<U> {
        DimensionlessParams { a: f(&self.a), b: f(&self.b), l: self.l }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseI<T> {
    pub params: DimensionlessParams<T>,
    pub energy_unit: T,
    pub length_unit: T,
}

/// Units built on one of the two Coulomb strengths: the remaining coupling
/// is the ratio of strengths and the range `r0` becomes dimensionless.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledCase<T> {
    pub coupling: T,
    pub r0: T,
    pub energy_unit: T,
    pub length_unit: T,
}

/// `l(l+1)/(2r^2) - a/r + b/(r+1)`.
pub fn effective_potential<T: Scalar>(r: &T, p: &DimensionlessParams<T>) -> Result<T, ModelError> {
    if !(*r > T::zero()) {
        return Err(ModelError::RadiusNotPositive);
    }
    let ll = T::from_int(i64::from(p.l) * (i64::from(p.l) + 1));
    Ok(ll * half::<T>() / (r.clone() * r.clone()) - p.a.clone() / r.clone() + p.b.clone() / (r.clone() + T::one()))
}

/// Minimum of the effective potential over `r > 0`, or `None` when it is
/// unbounded below (`l = 0`).
pub fn effective_potential_minimum(p: &DimensionlessParams<f64>) -> Option<f64> {
    if p.l == 0 {
        return None;
    }
    let v = |t: f64| effective_potential(&t.exp(), p).unwrap_or(f64::INFINITY);
    // coarse log-grid, then golden-section on the best cell
    let (lo, hi, steps) = (-12.0f64, 12.0f64, 2400);
    let step = (hi - lo) / steps as f64;
    let k = (0..=steps).min_by(|&i, &j| v(lo + step * i as f64).total_cmp(&v(lo + step * j as f64)))?;
    let (mut x0, mut x1) = (lo + step * (k as f64 - 1.0), lo + step * (k as f64 + 1.0));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = x1 - g * (x1 - x0);
        let d = x0 + g * (x1 - x0);
        if v(c) < v(d) {
            x1 = d;
        } else {
            x0 = c;
        }
    }
    Some(v(0.5 * (x0 + x1)))
}

/// Rigorous bracket for the `nu`-th level at angular momentum `l`.
///
/// Since `0 < 1/(r+1) < 1/r`, the potential lies between two pure Coulomb
/// potentials with charges `a - min(b,0)` and `a - max(b,0)`, and the
/// comparison theorem orders their levels. The upper end is `0` when the
/// weaker charge is not attractive.
pub fn energy_bracket(a: f64, b: f64, l: u32, nu: u32) -> (f64, f64) {
    let k = f64::from(nu + l + 1);
    let level = |z: f64| if z > 0.0 { -z * z / (2.0 * k * k) } else { 0.0 };
    (level(a - b.min(0.0)), level(a - b.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::scalar::ratio;
    use crate::Rational;

    fn phys(v1: (i64, i64), v2: (i64, i64), r0: (i64, i64), m: i64, hbar: i64) -> PhysicalParams<Rational> {
        PhysicalParams { v1: ratio(v1.0, v1.1), v2: ratio(v2.0, v2.1), r0: ratio(r0.0, r0.1), m: ratio(m, 1), hbar: ratio(hbar, 1) }
    }

    #[test]
    fn case_i_examples() {
        let c = phys((1, 1), (-3, 1), (1, 1), 1, 1).to_case_i(0).unwrap();
        assert_eq!((c.params.a, c.params.b), (ratio(1, 1), ratio(-3, 1)));
        let c = phys((3, 2), (1, 2), (2, 1), 1, 1).to_case_i(0).unwrap();
        assert_eq!((c.params.a, c.params.b, c.energy_unit), (ratio(3, 1), ratio(1, 1), ratio(1, 4)));
        let c = phys((1, 1), (1, 1), (1, 1), 2, 1).to_case_i(0).unwrap();
        assert_eq!((c.params.a, c.params.b), (ratio(2, 1), ratio(2, 1)));
    }

    #[test]
    fn case_ii_examples() {
        let c = phys((2, 1), (1, 1), (1, 1), 1, 1).to_case_ii().unwrap();
        assert_eq!((c.coupling, c.r0, c.energy_unit), (ratio(1, 2), ratio(2, 1), ratio(4, 1)));
        let c = phys((1, 1), (0, 1), (1, 1), 1, 1).to_case_ii().unwrap();
        assert_eq!(c.coupling, ratio(0, 1));
        let c = phys((1, 1), (1, 1), (3, 1), 1, 1).to_case_ii().unwrap();
        assert_eq!(c.r0, ratio(3, 1));
    }

    #[test]
    fn case_iii_examples() {
        let c = phys((2, 1), (1, 1), (1, 1), 1, 1).to_case_iii().unwrap();
        assert_eq!((c.coupling, c.r0, c.energy_unit), (ratio(2, 1), ratio(1, 1), ratio(1, 1)));
        assert_eq!(phys((1, 1), (0, 1), (1, 1), 1, 1).to_case_iii(), Err(ModelError::ZeroV2));
        let c = phys((1, 1), (1, 1), (1, 1), 1, 1).to_case_iii().unwrap();
        assert_eq!(c.coupling, ratio(1, 1));
    }

    #[test]
    fn invalid_physical_params() {
        assert_eq!(phys((0, 1), (1, 1), (1, 1), 1, 1).to_case_i(0), Err(ModelError::NotPositive { name: "V1" }));
        assert_eq!(phys((1, 1), (1, 1), (-1, 1), 1, 1).to_case_ii(), Err(ModelError::NotPositive { name: "r0" }));
        assert_eq!(phys((1, 1), (1, 1), (1, 1), 0, 1).to_case_iii(), Err(ModelError::NotPositive { name: "m" }));
        assert!(phys((1, 1), (-1, 1), (1, 1), 1, 1).bound_state_rich());
    }

    #[test]
    fn effective_potential_examples() {
        let p = |b: i64, l: u32| DimensionlessParams::new(ratio(1, 1), ratio(b, 1), l).unwrap();
        assert_eq!(effective_potential(&ratio(1, 1), &p(0, 0)).unwrap(), ratio(-1, 1));
        assert_eq!(effective_potential(&ratio(1, 1), &p(-3, 0)).unwrap(), ratio(-5, 2));
        assert_eq!(effective_potential(&ratio(2, 1), &p(-3, 1)).unwrap(), ratio(-5, 4));
        assert_eq!(effective_potential(&ratio(0, 1), &p(0, 0)), Err(ModelError::RadiusNotPositive));
        assert_eq!(DimensionlessParams::new(0.0, 1.0, 0), Err(ModelError::CouplingNotPositive));
    }

    #[test]
    fn minimum_of_effective_potential() {
        // pure Coulomb: min of l(l+1)/(2r^2) - a/r is -a^2/(2 l(l+1))
        let p = DimensionlessParams::new(1.0, 0.0, 1).unwrap();
        assert!((effective_potential_minimum(&p).unwrap() + 0.25).abs() < 1e-12);
        assert_eq!(effective_potential_minimum(&DimensionlessParams::new(1.0, -3.0, 0).unwrap()), None);
    }

    #[test]
    fn bracket_contains_known_levels() {
        let (lo, hi) = energy_bracket(1.0, -3.0, 0, 0);
        assert!(lo < -2.0 && -2.0 < hi);
        let (lo, hi) = energy_bracket(1.0, 0.0, 0, 2);
        assert_eq!((lo, hi), (-1.0 / 18.0, -1.0 / 18.0));
        assert_eq!(energy_bracket(1.0, 2.0, 0, 0).1, 0.0);
    }
}
