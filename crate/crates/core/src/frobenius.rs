//! Polynomial solutions `u = r^{l+1} e^{-alpha r} p(r)`.
//!
//! Writing `p(r) = sum_j c_j r^j` turns the radial equation into the
//! three-term recurrence `c_{j+2} = A_j c_{j+1} + B_j c_j`. The series stops
//! at degree `n` when `B_n = 0`, which fixes `alpha = (a - b)/(n + l + 1)`,
//! and when additionally `c_{n+1} = 0`. With `alpha` eliminated, `c_{n+1}`
//! is a polynomial of degree `n + 1` in `b`; its real roots are the
//! couplings at which a closed-form bound state exists.

use num_traits::One;
use thiserror::Error;

use crate::numeric::poly::{Poly, Var};
use crate::numeric::ring::Ring;
use crate::numeric::roots::{isolate_positive_roots, isolate_real_roots, IsolatedRoot};
use crate::numeric::scalar::{half, rational_to_f64, Scalar};
use crate::numeric::NumericError;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrobeniusError {
    #[error("a = {a} <= b = {b}: no normalizable polynomial solution")]
    NotBound { a: f64, b: f64 },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Parameters of the recurrence. `R` is a number field or, for the
/// termination polynomial, polynomials in `b`.
#[derive(Clone, Debug)]
pub struct RecurrenceContext<R> {
    pub a: R,
    pub b: R,
    pub alpha: R,
    pub l: u32,
}

impl<T: Scalar> RecurrenceContext<T> {
    /// Context with `alpha` set by the degree-`n` termination condition.
    pub fn conditional(n: u32, l: u32, a: T, b: T) -> Result<Self, FrobeniusError> {
        let alpha = critical_alpha(n, l, &a, &b)?;
        Ok(RecurrenceContext { a, b, alpha, l })
    }
}

fn denominator(j: usize, l: u32) -> i64 {
    let (j, l) = (j as i64, i64::from(l));
    (j + 2) * (j + 2 * l + 3)
}

/// `(A_j, B_j)` of `c_{j+2} = A_j c_{j+1} + B_j c_j`.
pub fn recurrence_coeffs<R: Ring>(j: usize, ctx: &RecurrenceContext<R>) -> (R, R) {
    let l = i64::from(ctx.l);
    let jj = j as i64;
    let den = denominator(j, ctx.l);
    let a_num = ctx
        .a
        .times(&R::from_int(2))
        .minus(&ctx.alpha.times(&R::from_int(2 * (jj + l + 2))))
        .plus(&R::from_int((jj + 1) * (jj + 2 * l + 2)));
    let b_num = ctx.a.minus(&ctx.alpha.times(&R::from_int(jj + l + 1))).minus(&ctx.b);
    (a_num.div_int(-den), b_num.times(&R::from_int(2)).div_int(-den))
}

/// `c_1` for `c_0 = 1`: `(alpha (l+1) - a)/(l+1)`.
pub fn first_coefficient<R: Ring>(ctx: &RecurrenceContext<R>) -> R {
    let l1 = i64::from(ctx.l) + 1;
    ctx.alpha.times(&R::from_int(l1)).minus(&ctx.a).div_int(l1)
}

/// `c_0 ..= c_J` with `c_0 = 1`.
pub fn series_coefficients<R: Ring>(ctx: &RecurrenceContext<R>, max_index: usize) -> Vec<R> {
    let mut c = vec![R::from_int(1), first_coefficient(ctx)];
    for j in 0..max_index.saturating_sub(1) {
        let (aj, bj) = recurrence_coeffs(j, ctx);
        let next = aj.times(&c[j + 1]).plus(&bj.times(&c[j]));
        c.push(next);
    }
    c.truncate(max_index + 1);
    c
}

/// `alpha = (a - b)/(n + l + 1)`; must be positive for a bound state.
pub fn critical_alpha<T: Scalar>(n: u32, l: u32, a: &T, b: &T) -> Result<T, FrobeniusError> {
    let alpha = (a.clone() - b.clone()) / T::from_int(i64::from(n + l + 1));
    if !(alpha > T::zero()) {
        return Err(FrobeniusError::NotBound { a: a.to_f64_lossy(), b: b.to_f64_lossy() });
    }
    Ok(alpha)
}

/// `-a^2/(2(nu + l + 1)^2)`.
pub fn coulomb_energy<T: Scalar>(nu: u32, l: u32, a: &T) -> T {
    let k = T::from_int(i64::from(nu + l + 1));
    -(a.clone() * a.clone()) * half::<T>() / (k.clone() * k)
}

/// `c_{n+1}` as a polynomial in `b` of degree `n + 1`, with `alpha`
/// eliminated through the termination condition.
pub fn termination_polynomial(n: u32, l: u32, a: &Rational) -> Poly<Rational> {
    let b = Poly::x(Var::B);
    let a_poly = Poly::constant(a.clone(), Var::B);
    let alpha = (&a_poly - &b).div_int(i64::from(n + l + 1));
    let ctx = RecurrenceContext { a: a_poly, b, alpha, l };
    series_coefficients(&ctx, n as usize + 1).pop().expect("n + 1 >= 1 terms").with_var(Var::B)
}

/// A value that is exact when it is rational and rounded otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Value<T> {
    Exact(Rational),
    Approx(T),
}

impl<T: Scalar> Value<T> {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Approx(_) => None,
        }
    }

    pub fn to_scalar(&self) -> T {
        match self {
            Value::Exact(q) => T::from_rational(q),
            Value::Approx(x) => x.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => rational_to_f64(q),
            Value::Approx(x) => x.to_f64_lossy(),
        }
    }
}

/// Polynomial factor `p(r)`, exact whenever the coupling is rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Factor<T: Scalar> {
    Exact(Poly<Rational>),
    Approx(Poly<T>),
}

impl<T: Scalar> Factor<T> {
    pub fn coefficients(&self) -> Vec<Value<T>> {
        match self {
            Factor::Exact(p) => p.coeffs().iter().cloned().map(Value::Exact).collect(),
            Factor::Approx(p) => p.coeffs().iter().cloned().map(Value::Approx).collect(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            Factor::Exact(p) => p.degree(),
            Factor::Approx(p) => p.degree(),
        }
    }
}

/// One conditionally exact bound state.
#[derive(Clone, Debug, PartialEq)]
pub struct TerminationSolution<T: Scalar> {
    pub n: u32,
    /// 1-based position in the descending list of real roots.
    pub i: usize,
    pub l: u32,
    pub a: Rational,
    pub b_root: Value<T>,
    /// Isolating interval of `b_root` (both ends equal when exact).
    pub b_interval: (Rational, Rational),
    pub multiplicity: usize,
    pub alpha: Value<T>,
    pub energy: Value<T>,
    pub poly: Factor<T>,
    /// Nodes of `p` on `(0, inf)`.
    pub nu: usize,
    /// `max(|c_{n+1}|, |c_{n+2}|)`; exactly zero for rational roots.
    pub residual: f64,
}

/// Everything found for one `(n, l, a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalSweep<T: Scalar> {
    pub n: u32,
    pub l: u32,
    pub a: Rational,
    pub termination: Poly<Rational>,
    /// Ordered by descending `b_root`.
    pub solutions: Vec<TerminationSolution<T>>,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    /// Non-real roots of the termination polynomial, with multiplicity.
    pub nonreal_roots: usize,
    /// Real roots at or above `a` (no normalizable state).
    pub unbound_roots: Vec<f64>,
    /// Irrational roots whose node count differed at the two interval ends.
    pub ambiguous_nodes: Vec<usize>,
}

fn odd_positive_roots(p: &Poly<Rational>) -> Result<usize, NumericError> {
    Ok(isolate_positive_roots(p)?.iter().filter(|r| r.multiplicity % 2 == 1).count())
}

fn factor_at(n: u32, l: u32, a: &Rational, b: &Rational) -> Result<(Poly<Rational>, Vec<Rational>), FrobeniusError> {
    let ctx = RecurrenceContext::conditional(n, l, a.clone(), b.clone())?;
    let c = series_coefficients(&ctx, n as usize + 2);
    let poly = Poly::new(c[..=n as usize].to_vec(), Var::R);
    Ok((poly, c[n as usize + 1..].to_vec()))
}

/// All conditionally exact solutions of degree `n`.
///
/// Rational couplings are reported exactly; irrational ones are refined to
/// the precision of `T`. Each solution is self-checked by running the
/// recurrence two steps past `n`.
pub fn conditional_solutions<T: Scalar>(n: u32, l: u32, a: &Rational) -> Result<ConditionalSweep<T>, FrobeniusError> {
    let termination = termination_polynomial(n, l, a);
    let real = isolate_real_roots(&termination)?;
    let mut diagnostics = Diagnostics { nonreal_roots: real.nonreal, ..Default::default() };
    let bits = T::precision_bits().unwrap_or(256) + 16;
    let width = Rational::new(One::one(), num_bigint::BigInt::one() << bits);
    let mut solutions = Vec::new();
    for root in real.roots.iter().rev() {
        let root: IsolatedRoot = root.with_rational_detection();
        let i = solutions.len() + 1;
        if let Some(b) = &root.exact {
            if b >= a {
                diagnostics.unbound_roots.push(rational_to_f64(b));
                continue;
            }
            let (poly, tail) = factor_at(n, l, a, b)?;
            let alpha = critical_alpha(n, l, a, b)?;
            let residual = tail.iter().map(rational_to_f64).fold(0.0f64, |m, x| m.max(x.abs()));
            solutions.push(TerminationSolution {
                n,
                i,
                l,
                a: a.clone(),
                b_root: Value::Exact(b.clone()),
                b_interval: (b.clone(), b.clone()),
                multiplicity: root.multiplicity,
                energy: Value::Exact(-(&alpha * &alpha) / Rational::from_integer(2.into())),
                alpha: Value::Exact(alpha),
                nu: odd_positive_roots(&poly)?,
                poly: Factor::Exact(poly),
                residual,
            });
            continue;
        }
        let mut narrow = root.refined(&width);
        if narrow.hi >= *a {
            diagnostics.unbound_roots.push(rational_to_f64(&narrow.midpoint()));
            continue;
        }
        // the node count must not change across the isolating interval
        let mut nodes = (0, 1);
        for _ in 0..8 {
            nodes = (odd_positive_roots(&factor_at(n, l, a, &narrow.lo)?.0)?, odd_positive_roots(&factor_at(n, l, a, &narrow.hi)?.0)?);
            if nodes.0 == nodes.1 {
                break;
            }
            let w = narrow.width() / Rational::from_integer((1u64 << 32).into());
            narrow = narrow.refined(&w);
        }
        if nodes.0 != nodes.1 {
            diagnostics.ambiguous_nodes.push(i);
        }
        let b = T::from_rational(&narrow.midpoint());
        let ctx = RecurrenceContext::conditional(n, l, T::from_rational(a), b.clone())?;
        let c = series_coefficients(&ctx, n as usize + 2);
        let residual = c[n as usize + 1..].iter().map(|x| x.to_f64_lossy().abs()).fold(0.0, f64::max);
        let alpha = ctx.alpha.clone();
        solutions.push(TerminationSolution {
            n,
            i,
            l,
            a: a.clone(),
            b_root: Value::Approx(b),
            b_interval: (narrow.lo.clone(), narrow.hi.clone()),
            multiplicity: root.multiplicity,
            energy: Value::Approx(-(alpha.clone() * alpha.clone()) * half::<T>()),
            alpha: Value::Approx(alpha),
            poly: Factor::Approx(Poly::new(c[..=n as usize].to_vec(), Var::R)),
            nu: nodes.0,
            residual,
        });
    }
    Ok(ConditionalSweep { n, l, a: a.clone(), termination, solutions, diagnostics })
}

impl<T: Scalar> ConditionalSweep<T> {
    /// Solutions whose coupling lies in `[lo, hi]`.
    pub fn in_range(&self, lo: f64, hi: f64) -> impl Iterator<Item = &TerminationSolution<T>> {
        self.solutions.iter().filter(move |s| {
            let b = s.b_root.to_f64();
            b >= lo && b <= hi
        })
    }
}

/// `true` when the termination polynomial has no positive root.
pub fn all_roots_nonpositive(p: &Poly<Rational>) -> Result<bool, NumericError> {
    Ok(isolate_positive_roots(p)?.is_empty())
}
