//! Dense integer polynomials: the exact backend of root isolation and of
//! symbolic determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Poly, Var};
use super::ring::Ring;
use super::NumericError;

type Q = BigRational;
type Z = BigInt;

pub(crate) fn zsign(z: &Z) -> i8 {
    if z.is_positive() {
        1
    } else if z.is_negative() {
        -1
    } else {
        0
    }
}

/// Integer polynomial, lowest degree first, without trailing zeros. All
/// exact root work happens here: gcds and remainders over `Z` avoid the
/// normalisation cost of rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct ZPoly(pub(crate) Vec<Z>);

impl ZPoly {
    pub(crate) fn new(mut c: Vec<Z>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ZPoly(c)
    }

    /// Primitive integer multiple of `p` with the same signs.
    pub(crate) fn from_rational(p: &Poly<Q>) -> Self {
        let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = p.coeffs().iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
        ZPoly::new(ints).primitive()
    }

    pub(crate) fn to_rational(&self, var: Var) -> Poly<Q> {
        Poly::new(self.0.iter().cloned().map(Q::from_integer).collect(), var)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub(crate) fn lc(&self) -> &Z {
        self.0.last().expect("non-zero polynomial")
    }

    pub(crate) fn primitive(self) -> Self {
        let g = self.0.iter().fold(Z::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return self;
        }
        ZPoly(self.0.into_iter().map(|c| c / &g).collect())
    }

    pub(crate) fn derivative(&self) -> Self {
        ZPoly::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * Z::from(k)).collect())
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = Z::zero();
        ZPoly::new((0..n).map(|k| self.0.get(k).unwrap_or(&z) - other.0.get(k).unwrap_or(&z)).collect())
    }

    /// Remainder `r` of `lc(b)^(deg a - deg b + 1) a = q b + r`.
    pub(crate) fn prem(&self, b: &Self) -> Self {
        let db = b.degree();
        let lcb = b.lc();
        let mut r = self.0.clone();
        let mut e = (self.degree() + 1).saturating_sub(db);
        while r.len() > db && !r.is_empty() {
            let lead = r.pop().expect("non-empty");
            let shift = r.len() - db;
            for c in r.iter_mut() {
                *c *= lcb;
            }
            for (k, bk) in b.0[..db].iter().enumerate() {
                r[shift + k] -= &lead * bk;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            e = e.saturating_sub(1);
        }
        if e > 0 && !r.is_empty() {
            let scale = lcb.pow(e as u32);
            for c in r.iter_mut() {
                *c *= &scale;
            }
        }
        ZPoly::new(r)
    }

    /// Primitive gcd (primitive remainder sequence), positive leading term.
    pub(crate) fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone().primitive(), other.clone().primitive())
        } else {
            (other.clone().primitive(), self.clone().primitive())
        };
        while !b.is_zero() {
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        if a.lc().is_negative() {
            a = ZPoly(a.0.into_iter().map(|c| -c).collect());
        }
        a
    }

    /// Quotient of an exact division; the divisor must be primitive, which
    /// keeps the quotient integral.
    pub(crate) fn exact_div(&self, b: &Self) -> Result<Self, NumericError> {
        if b.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        if self.degree() < b.degree() || self.is_zero() {
            return if self.is_zero() { Ok(self.clone()) } else { Err(NumericError::InexactDivision) };
        }
        let db = b.degree();
        let mut r = self.0.clone();
        let mut q = vec![Z::zero(); self.degree() - db + 1];
        for k in (0..q.len()).rev() {
            let lead = &r[k + db];
            if lead.is_zero() {
                continue;
            }
            let (c, rem) = lead.div_rem(b.lc());
            if !rem.is_zero() {
                return Err(NumericError::InexactDivision);
            }
            for (j, bj) in b.0.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(NumericError::InexactDivision);
        }
        Ok(ZPoly::new(q))
    }

    /// Sign of `p(x)`, from the homogenised value `den^deg p(num/den)`.
    pub(crate) fn sign_at(&self, x: &Q) -> i8 {
        let Some((top, rest)) = self.0.split_last() else { return 0 };
        let (num, den) = (x.numer(), x.denom());
        let mut acc = top.clone();
        let mut dpow = Z::one();
        for c in rest.iter().rev() {
            dpow *= den;
            acc = acc * num + c * &dpow;
        }
        zsign(&acc)
    }
}

impl Ring for ZPoly {
    fn from_int(n: i64) -> Self {
        ZPoly::new(vec![Z::from(n)])
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = Z::zero();
        ZPoly::new((0..n).map(|k| self.0.get(k).unwrap_or(&z) + other.0.get(k).unwrap_or(&z)).collect())
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ZPoly(Vec::new());
        }
        let mut out = vec![Z::zero(); self.0.len() + other.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        ZPoly::new(out)
    }
    fn negated(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }
    /// Integer polynomials only support divisions that leave no remainder.
    fn div_int(&self, k: i64) -> Self {
        let k = Z::from(k);
        ZPoly(self.0.iter().map(|c| c / &k).collect())
    }
    /// Exact quotient; the divisor need not be primitive.
    fn div_exact(&self, d: &Self) -> Self {
        let g = d.0.iter().fold(Z::zero(), |acc, c| acc.gcd(c));
        let prim = ZPoly(d.0.iter().map(|c| c / &g).collect());
        let q = self.exact_div(&prim).expect("exact division");
        ZPoly(q.0.into_iter().map(|c| c / &g).collect())
    }
}
