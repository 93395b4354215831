//! Exact real-root machinery: square-free parts, Sturm counting, pencil
//! discriminants and root classification under the two real structures on
//! the projective line.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{shear_coeffs, sigma_prime_coeffs, BinaryForm};
use crate::poly::{Poly, SturmChain, UniPoly};
use crate::ring::{Gaussian, Ring};

/// Anti-holomorphic involution on the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealStructure {
    /// `[z0:z1] -> [conj z0 : conj z1]`, fixed locus the real line.
    Standard,
    /// `[z0:z1] -> [-conj z1 : conj z0]`, no fixed points.
    #[serde(rename = "fpf")]
    FixedPointFree,
}

impl fmt::Display for RealStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealStructure::Standard => write!(f, "standard"),
            RealStructure::FixedPointFree => write!(f, "fpf"),
        }
    }
}

impl std::str::FromStr for RealStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(RealStructure::Standard),
            "fpf" | "fixed-point-free" => Ok(RealStructure::FixedPointFree),
            _ => Err(Error::parse(s, "structure must be standard or fpf")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootClassification {
    pub total_distinct: usize,
    pub real_distinct: usize,
    pub conj_pairs: usize,
    pub is_squarefree: bool,
    pub structure: RealStructure,
}

/// `f / gcd(f_x, f_y)`, canonicalized.
pub fn squarefree_part(f: &BinaryForm) -> BinaryForm {
    let e = f.multiplicity_at_infinity();
    let p = f.dehomogenize().squarefree();
    let deg = p.degree().unwrap_or(0) + usize::from(e > 0);
    BinaryForm::homogenize(&p, deg).expect("square-free part of a nonzero form is nonzero")
}

pub fn is_squarefree(f: &BinaryForm) -> bool {
    let e = f.multiplicity_at_infinity();
    if e > 1 {
        return false;
    }
    let p = f.dehomogenize();
    p.degree().unwrap_or(0) == 0 || p.gcd(&p.derivative()).degree() == Some(0)
}

/// Whether the root multiset is stable under `z -> -1/conj(z)`.
pub fn is_sigma_prime_stable(f: &BinaryForm) -> bool {
    f.degree() % 2 == 0 && f.sigma_prime_image() == *f
}

pub fn count_real_roots(f: &BinaryForm, structure: RealStructure) -> Result<RootClassification> {
    if f.degree() == 0 {
        return Err(Error::ConstantForm);
    }
    let e = f.multiplicity_at_infinity();
    let sq = f.dehomogenize().squarefree();
    let at_inf = usize::from(e > 0);
    let total = sq.degree().unwrap_or(0) + at_inf;
    let is_squarefree = is_squarefree(f);
    match structure {
        RealStructure::Standard => {
            let real = sq.count_real_roots() + at_inf;
            Ok(RootClassification {
                total_distinct: total,
                real_distinct: real,
                conj_pairs: (total - real) / 2,
                is_squarefree,
                structure,
            })
        }
        RealStructure::FixedPointFree => {
            if !is_sigma_prime_stable(f) {
                return Err(Error::NotSigmaStable);
            }
            Ok(RootClassification {
                total_distinct: total,
                real_distinct: 0,
                conj_pairs: total / 2,
                is_squarefree,
                structure,
            })
        }
    }
}

/// Multiplicity structure of the roots of `f`: `(factor, multiplicity)`
/// pairs whose product is `f`, with `[1:0]` split off as the factor `Y`.
pub fn squarefree_decomposition(f: &BinaryForm) -> Vec<(BinaryForm, usize)> {
    let mut out: Vec<(BinaryForm, usize)> = f
        .dehomogenize()
        .squarefree_decomposition()
        .into_iter()
        .map(|(p, m)| {
            let d = p.degree().unwrap();
            (BinaryForm::homogenize(&p, d).unwrap(), m)
        })
        .collect();
    let e = f.multiplicity_at_infinity();
    if e > 0 {
        out.push((BinaryForm::monomial(1, 1), e));
    }
    out.sort_by_key(|(_, m)| *m);
    out
}

/// `Res_t(p, dp/dt)` for `p(t) = g1(t,1) + lambda g2(t,1)`, taken with the
/// formal degree `k` in `t`, as a primitive integer polynomial in `lambda`
/// with positive leading coefficient.
///
/// The formal resultant carries the factor `lc_t(p)`, so `lambda` values
/// where the pencil member acquires a root at `[1:0]` are roots too.
pub fn discriminant_in_lambda(g1: &BinaryForm, g2: &BinaryForm) -> Result<UniPoly> {
    let k = g1.degree();
    if k != g2.degree() || k < 2 {
        return Err(Error::PencilDegrees(g1.degree(), g2.degree()));
    }
    let (c1, c2) = dehomogenizable_pair(g1, g2)?;
    let pencil: Poly<UniPoly> = Poly::new(
        (0..=k)
            .map(|i| UniPoly::new(vec![c1[k - i].clone(), c2[k - i].clone()]))
            .collect(),
    );
    let res = pencil.resultant(&pencil.derivative());
    Ok(res.primitive())
}

/// Coefficients of the pair after the smallest shear `y -> y + m x`
/// making the `x^k` coefficient of the pencil not identically zero.
fn dehomogenizable_pair(g1: &BinaryForm, g2: &BinaryForm) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let k = g1.degree();
    for m in 0..=(k as i64 + 1) {
        let m = BigInt::from(m);
        let c1 = shear_coeffs(g1.coeffs(), &m);
        let c2 = shear_coeffs(g2.coeffs(), &m);
        if !Zero::is_zero(&c1[0]) || !Zero::is_zero(&c2[0]) {
            return Ok((c1, c2));
        }
    }
    Err(Error::DegenerateDehomogenization)
}

/// Isolating interval of one real root. `lo == hi` means the root is
/// exactly `lo`; otherwise the root lies in the open interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// Sturm-certified isolating intervals of the distinct real roots, sorted.
pub fn isolate_real_roots(p: &UniPoly) -> Vec<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sq = p.squarefree();
    let chain = SturmChain::new(&sq);
    let bound = BigRational::from_integer(sq.root_bound());
    let mut out = Vec::new();
    let lo = -bound.clone();
    let n = chain.count_in(&lo, &bound);
    bisect(&sq, &chain, lo, bound, n, &mut out);
    out
}

fn bisect(
    p: &UniPoly,
    chain: &SturmChain,
    lo: BigRational,
    hi: BigRational,
    count: usize,
    out: &mut Vec<RootInterval>,
) {
    // invariant: `count` distinct roots in (lo, hi]
    if count == 0 {
        return;
    }
    if count == 1 {
        if p.sign_at(&hi) == 0 {
            out.push(RootInterval {
                lo: hi.clone(),
                hi,
            });
        } else {
            out.push(RootInterval { lo, hi });
        }
        return;
    }
    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
    let left = chain.count_in(&lo, &mid);
    bisect(p, chain, lo, mid.clone(), left, out);
    bisect(p, chain, mid, hi, count - left, out);
}

/// Isolating intervals of the real roots of `p` together with one rational
/// point in every open component of the complement: below the smallest
/// root, in each gap, above the largest. With no real roots the single
/// point is `0`. Every point is the simplest rational of the (refined) gap.
pub fn separating_points(p: &UniPoly) -> (Vec<RootInterval>, Vec<BigRational>) {
    let mut roots = isolate_real_roots(p);
    if roots.is_empty() {
        return (roots, vec![BigRational::zero()]);
    }
    let sq = p.squarefree();
    let chain = SturmChain::new(&sq);
    let mut points = vec![simplest_between(None, Some(&roots[0].lo))];
    for i in 0..roots.len() - 1 {
        while roots[i].hi >= roots[i + 1].lo {
            if !roots[i].is_exact() {
                roots[i] = refine(&sq, &chain, &roots[i]);
            }
            if !roots[i + 1].is_exact() {
                roots[i + 1] = refine(&sq, &chain, &roots[i + 1]);
            }
        }
        points.push(simplest_between(Some(&roots[i].hi), Some(&roots[i + 1].lo)));
    }
    points.push(simplest_between(roots.last().map(|r| &r.hi), None));
    (roots, points)
}

/// Halve an isolating interval of a square-free polynomial.
fn refine(p: &UniPoly, chain: &SturmChain, r: &RootInterval) -> RootInterval {
    let mid = (&r.lo + &r.hi) / BigRational::from_integer(2.into());
    if p.sign_at(&mid) == 0 {
        return RootInterval {
            lo: mid.clone(),
            hi: mid,
        };
    }
    if chain.count_in(&r.lo, &mid) == 1 {
        RootInterval {
            lo: r.lo.clone(),
            hi: mid,
        }
    } else {
        RootInterval {
            lo: mid,
            hi: r.hi.clone(),
        }
    }
}

/// Simplest rational (smallest denominator, then smallest magnitude) in the
/// open interval `(lo, hi)`; `None` bounds are infinite.
pub fn simplest_between(lo: Option<&BigRational>, hi: Option<&BigRational>) -> BigRational {
    let int = |v: BigInt| BigRational::from_integer(v);
    match (lo, hi) {
        (None, None) => BigRational::zero(),
        (Some(l), None) => {
            if l.is_negative() {
                BigRational::zero()
            } else {
                int(l.floor().to_integer() + 1)
            }
        }
        (None, Some(h)) => {
            if h.is_positive() {
                BigRational::zero()
            } else {
                int(h.ceil().to_integer() - 1)
            }
        }
        (Some(l), Some(h)) => {
            assert!(l < h, "empty interval");
            if l.is_negative() && h.is_positive() {
                return BigRational::zero();
            }
            if !l.is_negative() {
                simplest_positive(l, h)
            } else {
                -simplest_positive(&-h, &-l)
            }
        }
    }
}

/// `0 <= lo < hi`
fn simplest_positive(lo: &BigRational, hi: &BigRational) -> BigRational {
    let first = lo.floor().to_integer() + 1;
    let last = hi.ceil().to_integer() - 1;
    if first <= last {
        return BigRational::from_integer(first);
    }
    // lo and hi share the integer part n; recurse on the reciprocal tails
    let n = lo.floor();
    let a = lo - &n;
    let b = hi - &n;
    let recip_hi = if a.is_zero() { None } else { Some(a.recip()) };
    let tail = simplest_between(Some(&b.recip()), recip_hi.as_ref());
    n + tail.recip()
}

/// Gaussian-integer binary form, used for members of a pencil that are
/// stable under the fixed-point-free structure but not real.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianForm {
    pub re: Vec<BigInt>,
    pub im: Vec<BigInt>,
}

impl GaussianForm {
    pub fn degree(&self) -> usize {
        self.re.len() - 1
    }

    fn coeffs(&self) -> Vec<Gaussian> {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(a, b)| Gaussian::new(a.clone(), b.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.re.iter().chain(&self.im).all(Zero::is_zero)
    }

    /// Distinct roots with multiplicity one, `[1:0]` included.
    pub fn is_squarefree(&self) -> bool {
        let c = self.coeffs();
        let e = c.iter().take_while(|v| Ring::is_zero(*v)).count();
        if e > 1 || e == c.len() {
            return false;
        }
        let p: Poly<Gaussian> = Poly::new(c.into_iter().rev().collect());
        if p.degree().unwrap_or(0) == 0 {
            return true;
        }
        !Ring::is_zero(&p.resultant(&p.derivative()))
    }

    /// Invariant under `h -> conj(h)(-y, x)`.
    pub fn is_sigma_prime_real(&self) -> bool {
        // conj flips im; sigma' acts on both parts
        let re = sigma_prime_coeffs(&self.re);
        let im: Vec<BigInt> = sigma_prime_coeffs(&self.im).into_iter().map(|v| -v).collect();
        re == self.re && im == self.im
    }
}
