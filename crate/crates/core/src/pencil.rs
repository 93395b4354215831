//! Pencils of apolar forms and the λ-line partition by the discriminant.
//!
//! For a pencil `g1 + λ g2` the real roots of the λ-discriminant cut the
//! projective λ-line into open intervals on which the root configuration of
//! the member is constant. One sample per interval plus `λ = ∞` therefore
//! sees every configuration that a square-free real member can have.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::{format_rational, ApolarSystem, BinaryForm};
use crate::poly::UniPoly;
use crate::realroots::{
    count_real_roots, discriminant_in_lambda, is_squarefree, separating_points, RealStructure,
    RootClassification, RootInterval,
};

/// A point of the projective λ-line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaPoint {
    Finite(BigRational),
    Infinity,
}

impl fmt::Display for LambdaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaPoint::Finite(r) => write!(f, "{}", format_rational(r)),
            LambdaPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for LambdaPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug)]
pub struct Pencil {
    pub g1: BinaryForm,
    pub g2: BinaryForm,
    pub discriminant: UniPoly,
    pub roots: Vec<RootInterval>,
    points: Vec<BigRational>,
}

/// One sampled member of a pencil.
#[derive(Clone, Debug)]
pub struct PencilSample {
    pub lambda: LambdaPoint,
    pub member: BinaryForm,
    pub squarefree: bool,
    pub roots: RootClassification,
}

impl Pencil {
    pub fn new(g1: BinaryForm, g2: BinaryForm) -> Result<Self> {
        let discriminant = discriminant_in_lambda(&g1, &g2)?;
        let (roots, points) = if discriminant.is_zero() {
            (Vec::new(), vec![BigRational::from_integer(0.into())])
        } else {
            separating_points(&discriminant)
        };
        Ok(Pencil {
            g1,
            g2,
            discriminant,
            roots,
            points,
        })
    }

    pub fn from_system(sys: &ApolarSystem) -> Result<Self> {
        if sys.dim() != 2 {
            return Err(Error::NotAPencil { dim: sys.dim() });
        }
        Pencil::new(sys.basis[0].clone(), sys.basis[1].clone())
    }

    /// Interval sample points in increasing order, then `∞`.
    pub fn sample_points(&self) -> Vec<LambdaPoint> {
        self.points
            .iter()
            .cloned()
            .map(LambdaPoint::Finite)
            .chain(std::iter::once(LambdaPoint::Infinity))
            .collect()
    }

    /// `g1 + λ g2`, or `g2` at infinity.
    pub fn member(&self, lambda: &LambdaPoint) -> BinaryForm {
        match lambda {
            LambdaPoint::Infinity => self.g2.clone(),
            LambdaPoint::Finite(l) => {
                let (p, q) = (l.numer(), l.denom());
                let c: Vec<BigInt> = self
                    .g1
                    .coeffs()
                    .iter()
                    .zip(self.g2.coeffs())
                    .map(|(a, b)| q * a + p * b)
                    .collect();
                BinaryForm::from_integers(c).expect("pencil generators are independent")
            }
        }
    }

    pub fn sample(&self, lambda: LambdaPoint) -> PencilSample {
        let member = self.member(&lambda);
        let roots = count_real_roots(&member, RealStructure::Standard)
            .expect("pencil members have degree >= 2");
        PencilSample {
            squarefree: is_squarefree(&member),
            lambda,
            member,
            roots,
        }
    }

    pub fn samples(&self) -> Vec<PencilSample> {
        self.sample_points()
            .into_iter()
            .map(|l| self.sample(l))
            .collect()
    }
}

/// Deterministic integer weight vectors for searching a linear system of
/// dimension `dim`: unit vectors, then a small box (or ternary vectors when
/// the box would be too large), then seeded random vectors in `[-10, 10]`.
pub(crate) fn candidate_weights(dim: usize, seed: u64, random: usize) -> Vec<Vec<BigInt>> {
    const BOX_CAP: usize = 1000;
    let mut out: Vec<Vec<i64>> = Vec::new();
    for i in 0..dim {
        let mut v = vec![0; dim];
        v[i] = 1;
        out.push(v);
    }
    let radius = if 5usize.checked_pow(dim as u32).is_some_and(|n| n <= BOX_CAP) {
        2
    } else if 3usize.checked_pow(dim as u32).is_some_and(|n| n <= BOX_CAP) {
        1
    } else {
        0
    };
    if radius > 0 {
        let side: usize = 2 * radius + 1;
        let total = side.pow(dim as u32);
        for idx in 0..total {
            let mut n = idx;
            let v: Vec<i64> = (0..dim)
                .map(|_| {
                    let digit = (n % side) as i64 - radius as i64;
                    n /= side;
                    digit
                })
                .collect();
            if v.iter().all(|&x| x == 0) || out.contains(&v) {
                continue;
            }
            out.push(v);
        }
    } else {
        for i in 0..dim.saturating_sub(1) {
            let mut v = vec![0; dim];
            v[i] = 1;
            v[i + 1] = 1;
            out.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-10..=10)).collect();
        if v.iter().any(|&x| x != 0) {
            out.push(v);
        }
    }
    out.into_iter()
        .map(|v| v.into_iter().map(BigInt::from).collect())
        .collect()
}
