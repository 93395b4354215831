//! Dense univariate polynomials over an exact ring.
//!
//! Coefficients are stored in ascending order of degree and the vector never
//! carries trailing zeros, so `coeffs.last()` is the leading coefficient.
//! The generic part (arithmetic, pseudo-remainders, subresultant resultants)
//! works over any [`Ring`]; integer-only helpers (content, gcd, Sturm
//! sequences, sign evaluation) live in the `impl Poly<BigInt>` block.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::ring::{sign, Ring};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

/// Integer polynomial in one variable.
pub type UniPoly = Poly<BigInt>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// `c · x^n`
    pub fn monomial(c: R, n: usize) -> Self {
        let mut coeffs = vec![R::zero(); n + 1];
        coeffs[n] = c;
        Poly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(R::neg).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![R::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Divide every coefficient exactly by `c`.
    pub fn div_scalar_exact(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.exact_div(c)).collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let Some(da) = self.degree() else {
            return Poly::zero();
        };
        if da < db {
            return self.clone();
        }
        let lcb = b.leading();
        let mut r = self.clone();
        let mut e = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading();
            r = r.scale(&lcb).sub(&b.scale(&lr).shift(dr - db));
            e -= 1;
        }
        r.scale(&lcb.pow(e as u32))
    }

    /// Quotient of an exact division. Panics in debug builds if `b` does not divide.
    pub fn exact_div_poly(&self, b: &Self) -> Self {
        let db = b.degree().expect("division by zero polynomial");
        let lcb = b.leading();
        let mut r = self.clone();
        let mut q = vec![R::zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let t = r.leading().exact_div(&lcb);
            r = r.sub(&b.scale(&t).shift(dr - db));
            q[dr - db] = t;
        }
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Poly::new(q)
    }

    /// Resultant of `self` and `other` by the subresultant PRS.
    ///
    /// Degrees are the actual degrees of the arguments; callers that need a
    /// formal degree must make sure the leading coefficient is nonzero.
    pub fn resultant(&self, other: &Self) -> R {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return R::zero();
        };
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut negate = false;
        if da < db {
            std::mem::swap(&mut a, &mut b);
            if da % 2 == 1 && db % 2 == 1 {
                negate = true;
            }
        }
        let deg_a = a.degree().unwrap();
        let deg_b = b.degree().unwrap();
        if deg_b == 0 {
            let r = b.leading().pow(deg_a as u32);
            return if negate { r.neg() } else { r };
        }

        let mut g = R::one();
        let mut h = R::one();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            let delta = (da - db) as u32;
            if da % 2 == 1 && db % 2 == 1 {
                negate = !negate;
            }
            let r = a.prem(&b);
            if r.is_zero() {
                return R::zero();
            }
            a = b;
            b = r.div_scalar_exact(&g.mul(&h.pow(delta)));
            g = a.leading();
            h = if delta == 0 {
                h
            } else {
                g.pow(delta).exact_div(&h.pow(delta - 1))
            };
            if b.degree() == Some(0) {
                break;
            }
        }
        let da = a.degree().unwrap() as u32;
        let res = b.leading().pow(da).exact_div(&h.pow(da - 1));
        if negate {
            res.neg()
        } else {
            res
        }
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul(x).add(c))
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Poly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self.exact_div_poly(other)
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(R::from_i64(v))
    }
}

impl Poly<BigInt> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::from(0), |acc, c| acc.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Poly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Divide out the positive content only; signs are preserved.
    fn primitive_keep_sign(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        Poly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Product of the distinct irreducible factors, primitive.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive().exact_div_poly(&g).primitive()
    }

    /// Yun's algorithm: pairs `(factor, multiplicity)` with square-free,
    /// pairwise coprime, non-constant primitive factors.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.primitive();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div_poly(&a0).primitive();
        let mut c = df.exact_div_poly(&a0);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            b = b.exact_div_poly(&a);
            c = d.exact_div_poly(&a);
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Sign of `self(x)` at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let Some(n) = self.degree() else {
            return 0;
        };
        let (p, q) = (x.numer(), x.denom());
        // sum c_i p^i q^(n-i); q > 0 so the sign is preserved
        let mut acc = BigInt::from(0);
        let mut qpow = BigInt::from(1);
        let mut terms = Vec::with_capacity(n + 1);
        for i in (0..=n).rev() {
            terms.push((i, qpow.clone()));
            qpow *= q;
        }
        let mut ppow = BigInt::from(1);
        let mut pows = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            pows.push(ppow.clone());
            ppow *= p;
        }
        for (i, qp) in terms {
            acc += &self.coeffs[i] * &pows[i] * qp;
        }
        sign(&acc)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Sign of the leading term as `x -> +inf` (`positive`) or `-inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> i8 {
        let Some(n) = self.degree() else {
            return 0;
        };
        let s = sign(&self.leading());
        if positive || n % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// Sturm chain `p, p', -rem, ...` built with sign-correct pseudo-remainders.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = Vec::new();
        if self.is_zero() {
            return seq;
        }
        seq.push(self.primitive_keep_sign());
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d.primitive_keep_sign());
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            let mut r = a.prem(b);
            let e = a.degree().unwrap() - b.degree().unwrap() + 1;
            if b.leading().is_negative() && e % 2 == 1 {
                r = r.neg();
            }
            if r.is_zero() {
                break;
            }
            seq.push(r.neg().primitive_keep_sign());
        }
        seq
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        let seq = self.sturm_sequence();
        let lo = variations(seq.iter().map(|p| p.sign_at_infinity(false)));
        let hi = variations(seq.iter().map(|p| p.sign_at_infinity(true)));
        lo - hi
    }

    /// Cauchy bound: every complex root has modulus strictly below the result.
    pub fn root_bound(&self) -> BigInt {
        let lc = self.leading().abs();
        let max = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(|| BigInt::from(0));
        BigInt::from(1) + Integer::div_ceil(&max, &lc)
    }
}

/// Sign changes in a sequence, zeros skipped.
pub(crate) fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm chain with cached evaluation helpers.
pub struct SturmChain {
    seq: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        SturmChain {
            seq: p.sturm_sequence(),
        }
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    /// Distinct roots in the half-open interval `(lo, hi]`.
    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }
}

/// Descending-coefficient text form `k:c0,...,ck` where `c0` multiplies `x^k`.
impl fmt::Display for Poly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(n) = self.degree() else {
            return write!(f, "0:0");
        };
        write!(f, "{n}:")?;
        for (i, c) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
