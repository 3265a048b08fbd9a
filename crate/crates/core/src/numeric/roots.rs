//! Real-root isolation over the rationals (square-free decomposition plus
//! Sturm sequences) and bracketed root refinement in any field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Poly, Var};
use super::zpoly::{zsign, ZPoly};
use super::scalar::{half, Scalar};
use super::NumericError;

type Q = BigRational;

/// One distinct real root, isolated in the half-open interval `(lo, hi]`.
///
/// When the root is known exactly (it was hit by a split point, or it was
/// recognised as a small-denominator rational) `lo == hi == exact`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot {
    pub lo: Q,
    pub hi: Q,
    pub multiplicity: usize,
    pub exact: Option<Q>,
    /// Square-free factor of the input that has this root as a simple root;
    /// further refinement works on it.
    factor: Poly<Q>,
    zfactor: ZPoly,
}

impl IsolatedRoot {
    pub fn midpoint(&self) -> Q {
        match &self.exact {
            Some(x) => x.clone(),
            None => (&self.lo + &self.hi) / Q::from_integer(2.into()),
        }
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Q) -> bool {
        match &self.exact {
            Some(e) => e == x,
            None => &self.lo < x && x <= &self.hi,
        }
    }

    /// Square-free factor whose simple root this is.
    pub fn factor(&self) -> &Poly<Q> {
        &self.factor
    }

    /// Bisect until the interval is no wider than `width` (exact roots are
    /// returned unchanged).
    pub fn refined(&self, width: &Q) -> IsolatedRoot {
        let mut out = self.clone();
        if out.exact.is_some() {
            return out;
        }
        let s_hi = out.zfactor.sign_at(&out.hi);
        if s_hi == 0 {
            out.lo = out.hi.clone();
            out.exact = Some(out.hi.clone());
            return out;
        }
        let two = Q::from_integer(2.into());
        while &out.hi - &out.lo > *width {
            let mid = (&out.lo + &out.hi) / &two;
            match out.zfactor.sign_at(&mid) {
                0 => {
                    out.lo = mid.clone();
                    out.hi = mid.clone();
                    out.exact = Some(mid);
                    return out;
                }
                s if s == s_hi => out.hi = mid,
                _ => out.lo = mid,
            }
        }
        out
    }

    /// Detect a rational root with a modest denominator: narrow the interval
    /// and test the simplest rational inside it exactly.
    pub fn with_rational_detection(&self) -> IsolatedRoot {
        if self.exact.is_some() {
            return self.clone();
        }
        let scale = Q::one().max(self.lo.abs().max(self.hi.abs()));
        let width = scale / Q::from_integer(BigInt::one() << 96);
        let narrow = self.refined(&width);
        if narrow.exact.is_some() {
            return narrow;
        }
        let candidate = simplest_rational_between(&narrow.lo, &narrow.hi);
        if narrow.zfactor.sign_at(&candidate) == 0 {
            let mut out = narrow;
            out.lo = candidate.clone();
            out.hi = candidate.clone();
            out.exact = Some(candidate);
            out
        } else {
            narrow
        }
    }
}

/// Real roots of a rational polynomial plus the number of non-real roots
/// (counted with multiplicity).
#[derive(Clone, Debug, PartialEq)]
pub struct RealRoots {
    pub roots: Vec<IsolatedRoot>,
    pub nonreal: usize,
}

fn sign_at_point(p: &ZPoly, x: &Point) -> i8 {
    match x {
        Point::At(v) => p.sign_at(v),
        Point::PosInf => p.0.last().map_or(0, zsign),
        Point::NegInf => {
            let s = p.0.last().map_or(0, zsign);
            if p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }
}

/// Same roots and same signs, with coprime integer coefficients.
pub fn primitive_part(p: &Poly<Q>) -> Poly<Q> {
    if p.is_zero() {
        return p.clone();
    }
    ZPoly::from_rational(p).to_rational(p.var())
}

fn square_free_z(p: &ZPoly) -> Result<Vec<(ZPoly, usize)>, NumericError> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.exact_div(&a0)?;
    let c = dp.exact_div(&a0)?;
    let mut d = c.sub(&b.derivative());
    let mut k = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let next_b = b.exact_div(&a)?;
        let next_c = d.exact_div(&a)?;
        if a.degree() > 0 {
            out.push((a, k));
        }
        d = next_c.sub(&next_b.derivative());
        b = next_b;
        k += 1;
    }
    Ok(out)
}

/// `p = c prod_k f_k^k` with square-free, pairwise coprime, primitive `f_k`
/// (Yun).
pub fn square_free_decomposition(p: &Poly<Q>) -> Result<Vec<(Poly<Q>, usize)>, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    Ok(square_free_z(&ZPoly::from_rational(p))?.into_iter().map(|(f, k)| (f.to_rational(p.var()), k)).collect())
}

/// Where a sign-variation count is taken.
#[derive(Clone, Debug)]
pub enum Point {
    NegInf,
    At(Q),
    PosInf,
}

/// Sturm chain `p, p', -rem(p, p'), ...`, each member rescaled by a
/// positive constant to keep coefficients small.
#[derive(Clone, Debug)]
pub struct SturmSequence(Vec<ZPoly>);

impl SturmSequence {
    pub fn new(p: &Poly<Q>) -> Result<Self, NumericError> {
        if p.is_zero() {
            return Err(NumericError::ZeroPolynomial);
        }
        Ok(Self::from_z(ZPoly::from_rational(p)))
    }

    fn from_z(p: ZPoly) -> Self {
        let d = p.derivative().primitive();
        let mut seq = vec![p];
        if d.is_zero() {
            return SturmSequence(seq);
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            let r = a.prem(b);
            if r.is_zero() {
                break;
            }
            // prem carries the factor lc(b)^k; keep the sign of -rem
            let k = (a.degree() + 1).saturating_sub(b.degree());
            let flip = b.lc().is_negative() && k % 2 == 1;
            let r = r.primitive();
            seq.push(if flip { r } else { ZPoly(r.0.into_iter().map(|c| -c).collect()) });
        }
        SturmSequence(seq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn variations(&self, x: &Point) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.0 {
            let s = sign_at_point(p, x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(lo, hi]` (Sturm's theorem; valid
    /// for any square-free input, including when an endpoint is a root).
    pub fn count(&self, lo: &Point, hi: &Point) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Strict bound on the modulus of every root (Cauchy).
pub fn cauchy_bound(p: &Poly<Q>) -> Q {
    let lc = p.leading().cloned().unwrap_or_else(Q::one).abs();
    let max = p.coeffs().iter().map(|c| c.abs() / &lc).fold(Q::zero(), |m, c| m.max(c));
    Q::one() + max
}

fn isolate_square_free(factor: &ZPoly, var: Var, multiplicity: usize, lo: &Q, hi: &Q) -> Vec<IsolatedRoot> {
    let seq = SturmSequence::from_z(factor.clone());
    let two = Q::from_integer(2.into());
    let rational = factor.to_rational(var);
    let mut out = Vec::new();
    let count = seq.count(&Point::At(lo.clone()), &Point::At(hi.clone()));
    let mut stack = vec![(lo.clone(), hi.clone(), count)];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => {
                let exact = (factor.sign_at(&b) == 0).then(|| b.clone());
                let lo = if exact.is_some() { b.clone() } else { a };
                out.push(IsolatedRoot { lo, hi: b, multiplicity, exact, factor: rational.clone(), zfactor: factor.clone() });
            }
            _ => {
                let mid = (&a + &b) / &two;
                let left = seq.count(&Point::At(a.clone()), &Point::At(mid.clone()));
                stack.push((mid.clone(), b, n - left));
                stack.push((a, mid, left));
            }
        }
    }
    out
}

/// Make the intervals of roots coming from different factors disjoint and
/// sort them in increasing order.
fn separate(mut roots: Vec<IsolatedRoot>) -> Vec<IsolatedRoot> {
    loop {
        roots.sort_by(|x, y| x.lo.cmp(&y.lo).then(x.hi.cmp(&y.hi)));
        let overlapping = (1..roots.len()).find(|&k| roots[k].lo < roots[k - 1].hi || roots[k].lo == roots[k].hi && roots[k].lo == roots[k - 1].hi);
        let Some(k) = overlapping else { return roots };
        for idx in [k - 1, k] {
            let w = roots[idx].width() / Q::from_integer(2.into());
            roots[idx] = roots[idx].refined(&w);
        }
    }
}

/// Distinct real roots in `(lo, hi]`, with multiplicities.
pub fn isolate_roots_in(p: &Poly<Q>, lo: &Q, hi: &Q) -> Result<Vec<IsolatedRoot>, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    let factors = square_free_z(&ZPoly::from_rational(p))?;
    let mut roots = Vec::new();
    for (f, k) in &factors {
        roots.extend(isolate_square_free(f, p.var(), *k, lo, hi));
    }
    Ok(separate(roots))
}

/// All real roots plus the count of non-real roots.
pub fn isolate_real_roots(p: &Poly<Q>) -> Result<RealRoots, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    let m = cauchy_bound(p);
    let roots = isolate_roots_in(p, &-m.clone(), &m)?;
    let real: usize = roots.iter().map(|r| r.multiplicity).sum();
    let nonreal = p.degree().unwrap_or(0) - real;
    Ok(RealRoots { roots, nonreal })
}

/// Distinct roots in `(0, inf)`, e.g. the radial nodes of a polynomial factor.
pub fn isolate_positive_roots(p: &Poly<Q>) -> Result<Vec<IsolatedRoot>, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    isolate_roots_in(p, &Q::zero(), &cauchy_bound(p))
}

/// Number of distinct positive roots.
pub fn count_positive_roots(p: &Poly<Q>) -> Result<usize, NumericError> {
    Ok(isolate_positive_roots(p)?.len())
}

/// The rational with the smallest denominator (then numerator) in `[lo, hi]`.
pub fn simplest_rational_between(lo: &Q, hi: &Q) -> Q {
    let (lo, hi) = if lo <= hi { (lo.clone(), hi.clone()) } else { (hi.clone(), lo.clone()) };
    if lo.is_positive() {
        simplest_positive(&lo, &hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        Q::zero()
    }
}

fn simplest_positive(lo: &Q, hi: &Q) -> Q {
    let c = lo.ceil();
    if &c <= hi {
        return c;
    }
    let fl = lo.floor();
    let inner = simplest_positive(&(Q::one() / (hi - &fl)), &(Q::one() / (lo - &fl)));
    fl + Q::one() / inner
}

/// Simplest rational within `tol` of `x`.
pub fn rational_approximation<T: Scalar>(x: &T, tol: f64) -> Option<Q> {
    let center = x.to_rational()?;
    let t = Q::from_float(tol)?;
    Some(simplest_rational_between(&(&center - &t), &(&center + &t)))
}

/// Narrow a sign-change bracket of `f` to width at most `tol` (Brent's
/// method: inverse quadratic interpolation and secant steps, with bisection
/// as the fallback). Returns the final bracket; both ends are equal when an
/// exact zero was hit.
pub fn refine_bracket<T, F>(f: F, lo: T, hi: T, tol: &T) -> Result<(T, T), NumericError>
where
    T: Scalar,
    F: Fn(&T) -> T,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(&a), f(&b));
    if fa.is_zero() {
        return Ok((a.clone(), a));
    }
    if fb.is_zero() {
        return Ok((b.clone(), b));
    }
    if (fa > T::zero()) == (fb > T::zero()) {
        return Err(NumericError::NotIsolating { lo: a.to_f64_lossy(), hi: b.to_f64_lossy() });
    }
    let two = T::from_int(2);
    let three = T::from_int(3);
    let tol1 = tol.clone() * half::<T>();
    let (mut c, mut fc) = (a.clone(), fa.clone());
    let mut d = b.clone() - a.clone();
    let mut e = d.clone();
    for _ in 0..10_000 {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a.clone();
            fc = fa.clone();
            d = b.clone() - a.clone();
            e = d.clone();
        }
        if fc.abs() < fb.abs() {
            a = b.clone();
            fa = fb.clone();
            b = c.clone();
            fb = fc.clone();
            c = a.clone();
            fc = fa.clone();
        }
        let xm = (c.clone() - b.clone()) * half::<T>();
        if fb.is_zero() {
            return Ok((b.clone(), b));
        }
        if xm.abs() <= tol1 {
            break;
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb.clone() / fa.clone();
            let (mut p, mut q);
            if a == c {
                p = two.clone() * xm.clone() * s.clone();
                q = T::one() - s;
            } else {
                let qq = fa.clone() / fc.clone();
                let r = fb.clone() / fc.clone();
                p = s.clone() * (two.clone() * xm.clone() * qq.clone() * (qq.clone() - r.clone()) - (b.clone() - a.clone()) * (r.clone() - T::one()));
                q = (qq - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            let bound1 = three.clone() * xm.clone() * q.clone() - (tol1.clone() * q.clone()).abs();
            let bound2 = (e.clone() * q.clone()).abs();
            let bound = if bound1 < bound2 { bound1 } else { bound2 };
            if two.clone() * p.clone() < bound {
                e = d.clone();
                d = p / q;
            } else {
                d = xm.clone();
                e = d.clone();
            }
        } else {
            d = xm.clone();
            e = d.clone();
        }
        a = b.clone();
        fa = fb.clone();
        if d.abs() > tol1 {
            b += &d;
        } else if xm > T::zero() {
            b += &tol1;
        } else {
            b -= &tol1;
        }
        fb = f(&b);
    }
    Ok(if b <= c { (b, c) } else { (c, b) })
}

/// Root of `p` inside a sign-change bracket, to absolute accuracy `tol`.
pub fn refine_root<T: Scalar>(p: &Poly<T>, lo: T, hi: T, tol: &T) -> Result<T, NumericError> {
    let (a, b) = refine_bracket(|x| p.eval(x), lo, hi, tol)?;
    Ok((a + b) * half::<T>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::scalar::ratio;

    fn qp(c: &[(i64, i64)], var: Var) -> Poly<Q> {
        Poly::new(c.iter().map(|&(n, d)| ratio(n, d)).collect(), var)
    }

    #[test]
    fn nodeless_factor_has_no_positive_roots() {
        assert!(isolate_positive_roots(&qp(&[(1, 1), (1, 1)], Var::R)).unwrap().is_empty());
    }

    #[test]
    fn one_node_factor() {
        let roots = isolate_positive_roots(&qp(&[(1, 1), (-1, 2)], Var::R)).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].contains(&ratio(2, 1)));
    }

    #[test]
    fn two_node_factor() {
        let roots = isolate_positive_roots(&qp(&[(1, 1), (-2, 3), (2, 27)], Var::R)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi <= roots[1].lo);
    }

    #[test]
    fn real_roots_of_b_times_b_plus_4() {
        let p = Poly::<Q>::from_ints(&[0, 4, 1], Var::B);
        let rr = isolate_real_roots(&p).unwrap();
        assert_eq!(rr.nonreal, 0);
        let vals: Vec<Q> = rr.roots.iter().map(|r| r.with_rational_detection().exact.unwrap()).collect();
        assert_eq!(vals, vec![ratio(-4, 1), ratio(0, 1)]);
    }

    #[test]
    fn no_real_roots() {
        let rr = isolate_real_roots(&Poly::<Q>::from_ints(&[1, 0, 1], Var::B)).unwrap();
        assert!(rr.roots.is_empty());
        assert_eq!(rr.nonreal, 2);
    }

    #[test]
    fn triple_root_at_zero() {
        let rr = isolate_real_roots(&Poly::<Q>::from_ints(&[0, 0, 0, 1], Var::B)).unwrap();
        assert_eq!(rr.roots.len(), 1);
        assert_eq!(rr.roots[0].multiplicity, 3);
        assert_eq!(rr.roots[0].with_rational_detection().exact, Some(ratio(0, 1)));
        assert_eq!(rr.nonreal, 0);
    }

    #[test]
    fn mixed_multiplicities_are_separated() {
        // (x - 1)^2 (x - 3/2) (x^2 + 1)
        let x1 = Poly::<Q>::from_ints(&[-1, 1], Var::E);
        let x2 = qp(&[(-3, 2), (1, 1)], Var::E);
        let x3 = Poly::<Q>::from_ints(&[1, 0, 1], Var::E);
        let p = &(&(&x1 * &x1) * &x2) * &x3;
        let rr = isolate_real_roots(&p).unwrap();
        assert_eq!(rr.nonreal, 2);
        let got: Vec<(Q, usize)> = rr
            .roots
            .iter()
            .map(|r| (r.with_rational_detection().exact.unwrap(), r.multiplicity))
            .collect();
        assert_eq!(got, vec![(ratio(1, 1), 2), (ratio(3, 2), 1)]);
    }

    #[test]
    fn zero_polynomial_is_degenerate() {
        assert!(matches!(isolate_real_roots(&Poly::zero_in(Var::B)), Err(NumericError::ZeroPolynomial)));
        assert!(matches!(isolate_positive_roots(&Poly::zero_in(Var::R)), Err(NumericError::ZeroPolynomial)));
    }

    #[test]
    fn irrational_roots_stay_inexact() {
        let p = Poly::<Q>::from_ints(&[-2, 0, 1], Var::B);
        let rr = isolate_real_roots(&p).unwrap();
        assert_eq!(rr.roots.len(), 2);
        for r in &rr.roots {
            let d = r.with_rational_detection();
            assert!(d.exact.is_none());
            assert!(d.width() < ratio(1, 1_000_000_000));
        }
    }

    #[test]
    fn refine_examples() {
        let tol = 1e-12;
        let r = refine_root(&Poly::new(vec![1.0, -0.5], Var::R), 1.0, 3.0, &tol).unwrap();
        assert!((r - 2.0).abs() <= tol);
        let r = refine_root(&Poly::new(vec![3.0, 1.0], Var::B), -4.0, -2.0, &tol).unwrap();
        assert!((r + 3.0).abs() <= tol);
        let r = refine_root(&Poly::new(vec![2.0, 1.0], Var::E), -3.0, -1.0, &tol).unwrap();
        assert!((r + 2.0).abs() <= tol);
    }

    #[test]
    fn refine_rejects_non_isolating_interval() {
        let p = Poly::new(vec![2.0, 1.0], Var::E);
        assert!(matches!(refine_root(&p, 0.0, 1.0, &1e-9), Err(NumericError::NotIsolating { .. })));
    }

    #[test]
    fn refine_bracket_without_derivative() {
        let f = |x: &f64| x.cos() - x;
        let (a, b) = refine_bracket(f, 0.0, 1.0, &1e-14).unwrap();
        assert!(b - a <= 1e-14);
        assert!(f(&a) * f(&b) <= 0.0);
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_rational_between(&ratio(3, 10), &ratio(4, 10)), ratio(1, 3));
        assert_eq!(simplest_rational_between(&ratio(-7, 2), &ratio(-7, 2)), ratio(-7, 2));
        assert_eq!(simplest_rational_between(&ratio(-1, 2), &ratio(3, 1)), ratio(0, 1));
        assert_eq!(simplest_rational_between(&ratio(-41, 10), &ratio(-39, 10)), ratio(-4, 1));
        assert_eq!(rational_approximation(&0.1f64, 1e-12), Some(ratio(1, 10)));
    }
}
