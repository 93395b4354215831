//! Binary forms with exact coefficients and the apolarity action.
//!
//! A form of degree `d` is stored as `c_0..c_d` with
//! `f(x, y) = sum_j c_j x^(d-j) y^j`. Differential operators use the same
//! layout in the dual variables `X, Y`, where `X^a Y^b` acts as
//! `d^a/dx^a d^b/dy^b`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{primitive_int_vector, primitive_vector, IntMatrix};
use crate::poly::UniPoly;

/// A nonzero binary form, kept as its canonical projective representative:
/// coprime integer coefficients with the first nonzero one positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    /// Build from rational coefficients `c_0..c_d`.
    pub fn new(degree: usize, coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::LengthMismatch {
                degree,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroForm);
        }
        Ok(BinaryForm {
            coeffs: primitive_vector(coeffs),
        })
    }

    pub fn from_rationals(coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::LengthMismatch { degree: 0, got: 0 });
        }
        BinaryForm::new(coeffs.len() - 1, coeffs)
    }

    pub fn from_integers(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::LengthMismatch { degree: 0, got: 0 });
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroForm);
        }
        Ok(BinaryForm {
            coeffs: primitive_int_vector(coeffs),
        })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        BinaryForm::from_integers(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `X^(d-j) Y^j`
    pub fn monomial(degree: usize, j: usize) -> Self {
        let mut c = vec![BigInt::zero(); degree + 1];
        c[j] = BigInt::one();
        BinaryForm { coeffs: c }
    }

    /// `(a x + b y)^d`
    pub fn linear_power(a: &BigInt, b: &BigInt, degree: usize) -> Result<Self> {
        let c = (0..=degree)
            .map(|j| binomial(degree, j) * a.pow((degree - j) as u32) * b.pow(j as u32))
            .collect();
        BinaryForm::from_integers(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn rational_coeffs(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm {
            coeffs: primitive_int_vector(out),
        }
    }

    /// `f(t, 1)` as an ascending integer polynomial in `t`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Homogenize `p(t)` to degree `degree` (which must be at least `deg p`).
    pub fn homogenize(p: &UniPoly, degree: usize) -> Result<Self> {
        let c: Vec<BigInt> = (0..=degree).map(|j| p.coeff(degree - j)).collect();
        BinaryForm::from_integers(c)
    }

    /// Multiplicity of the root `[1:0]`, i.e. the number of leading zero
    /// coefficients.
    pub fn multiplicity_at_infinity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Image under `c_j -> (-1)^j c_(d-j)`, i.e. `f(-y, x)`.
    pub fn sigma_prime_image(&self) -> BinaryForm {
        BinaryForm {
            coeffs: primitive_int_vector(sigma_prime_coeffs(&self.coeffs)),
        }
    }

    /// `f(y, x)`
    pub fn swap_variables(&self) -> BinaryForm {
        BinaryForm {
            coeffs: primitive_int_vector(self.coeffs.iter().rev().cloned().collect()),
        }
    }

    /// `f(x, -y)`
    pub fn negate_y(&self) -> BinaryForm {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
            .collect();
        BinaryForm {
            coeffs: primitive_int_vector(c),
        }
    }

    /// `f(x, y + m x)`; the new leading coefficient is `f(1, m)`.
    pub fn shear(&self, m: &BigInt) -> BinaryForm {
        BinaryForm {
            coeffs: primitive_int_vector(shear_coeffs(&self.coeffs, m)),
        }
    }
}

pub(crate) fn sigma_prime_coeffs<T>(c: &[T]) -> Vec<T>
where
    T: Clone + std::ops::Neg<Output = T>,
{
    let d = c.len() - 1;
    (0..=d)
        .map(|j| {
            if j % 2 == 1 {
                -c[d - j].clone()
            } else {
                c[d - j].clone()
            }
        })
        .collect()
}

/// Coefficients of `f(x, y + m x)`.
pub(crate) fn shear_coeffs(c: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let d = c.len() - 1;
    (0..=d)
        .map(|i| {
            (i..=d)
                .map(|j| &c[j] * binomial(j, i) * m.pow((j - i) as u32))
                .sum()
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n (n-1) ... (n-k+1)`
fn falling(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

/// Raw coefficient vector of `op ∘ f`, not normalized.
pub(crate) fn contract_coeffs(op: &[BigInt], f: &[BigInt]) -> Vec<BigInt> {
    let k = op.len() - 1;
    let d = f.len() - 1;
    (0..=d - k)
        .map(|m| {
            // X^(k-b) Y^b meets c_(m+b) x^(d-m-b) y^(m+b)
            op.iter()
                .enumerate()
                .filter(|(_, o)| !o.is_zero())
                .map(|(b, o)| o * &f[m + b] * falling(d - m - b, k - b) * falling(m + b, b))
                .sum()
        })
        .collect()
}

/// Apply the operator `op` to `f`. `Ok(None)` is the zero form.
pub fn contract(op: &BinaryForm, f: &BinaryForm) -> Result<Option<BinaryForm>> {
    if op.degree() > f.degree() {
        return Err(Error::DegreeTooHigh {
            operator: op.degree(),
            form: f.degree(),
        });
    }
    let c = contract_coeffs(&op.coeffs, &f.coeffs);
    if c.iter().all(Zero::is_zero) {
        Ok(None)
    } else {
        Ok(Some(BinaryForm {
            coeffs: primitive_int_vector(c),
        }))
    }
}

/// `op` annihilates `f`. Operators of degree above `deg f` always do.
pub fn annihilates(op: &BinaryForm, f: &BinaryForm) -> bool {
    op.degree() > f.degree()
        || contract_coeffs(&op.coeffs, &f.coeffs)
            .iter()
            .all(Zero::is_zero)
}

/// Matrix of `h -> contract(h, f)` on degree-`k` operators:
/// `(d-k+1) x (k+1)`, column `j` is the image of `X^(k-j) Y^j`.
pub fn catalecticant(f: &BinaryForm, k: usize) -> Result<IntMatrix> {
    let d = f.degree();
    if k > d {
        return Err(Error::DegreeOutOfRange { k, d });
    }
    let c = &f.coeffs;
    let rows = (0..=d - k)
        .map(|m| {
            (0..=k)
                .map(|j| &c[m + j] * falling(d - m - j, k - j) * falling(m + j, j))
                .collect()
        })
        .collect();
    Ok(IntMatrix::new(d - k + 1, k + 1, rows))
}

/// Basis of the degree-`k` piece of the apolar ideal of a form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApolarSystem {
    pub source_degree: usize,
    pub operator_degree: usize,
    pub basis: Vec<BinaryForm>,
}

impl ApolarSystem {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `h` lies in the span of the basis.
    pub fn contains(&self, h: &BinaryForm) -> bool {
        if h.degree() != self.operator_degree {
            return false;
        }
        let mut rows: Vec<Vec<BigInt>> = self.basis.iter().map(|b| b.coeffs.clone()).collect();
        rows.push(h.coeffs.clone());
        IntMatrix::from_rows(rows).rank() == self.dim()
    }

    /// Same projective span, checked by mutual membership.
    pub fn spans_same(&self, others: &[BinaryForm]) -> bool {
        let other = ApolarSystem {
            source_degree: self.source_degree,
            operator_degree: self.operator_degree,
            basis: others.to_vec(),
        };
        let independent = others.is_empty()
            || IntMatrix::from_rows(others.iter().map(|b| b.coeffs.clone()).collect()).rank()
                == others.len();
        independent
            && others.len() == self.dim()
            && others.iter().all(|h| self.contains(h))
            && self.basis.iter().all(|h| other.contains(h))
    }

    /// Integer combination `sum_i w_i basis_i`; `None` when it vanishes.
    pub fn combine(&self, weights: &[BigInt]) -> Option<BinaryForm> {
        let mut c = vec![BigInt::zero(); self.operator_degree + 1];
        for (w, b) in weights.iter().zip(&self.basis) {
            for (acc, v) in c.iter_mut().zip(&b.coeffs) {
                *acc += w * v;
            }
        }
        BinaryForm::from_integers(c).ok()
    }
}

pub fn apolar_system(f: &BinaryForm, k: usize) -> Result<ApolarSystem> {
    let d = f.degree();
    let basis = if k > d {
        // every operator of degree > d annihilates f
        (0..=k).map(|j| BinaryForm::monomial(k, j)).collect()
    } else {
        catalecticant(f, k)?
            .kernel()
            .into_iter()
            .map(|v| BinaryForm { coeffs: v })
            .collect()
    };
    Ok(ApolarSystem {
        source_degree: d,
        operator_degree: k,
        basis,
    })
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let parse_int = |v: &str| {
        BigInt::from_str(v.trim()).map_err(|_| Error::parse(s, "not an integer or p/q rational"))
    };
    match t.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::parse(s, "zero denominator"));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(t)?)),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `d:c0,...,cd` into raw rationals, with length checking.
pub fn parse_coefficients(s: &str) -> Result<(usize, Vec<BigRational>)> {
    let (deg, rest) = s
        .trim()
        .split_once(':')
        .ok_or_else(|| Error::parse(s, "expected d:c0,...,cd"))?;
    let degree: usize = deg
        .trim()
        .parse()
        .map_err(|_| Error::parse(s, "degree is not a nonnegative integer"))?;
    let coeffs = rest
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    Ok((degree, coeffs))
}

impl FromStr for BinaryForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (degree, coeffs) = parse_coefficients(s)?;
        BinaryForm::new(degree, &coeffs)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.degree())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for BinaryForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
