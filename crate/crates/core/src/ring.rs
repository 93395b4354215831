//! Minimal exact integral-domain abstraction used by the polynomial code.
//!
//! Only what the subresultant algorithm needs: ring operations plus an
//! exact division that is allowed to assume the quotient exists.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient. Callers guarantee that `other` divides `self`.
    fn exact_div(&self, other: &Self) -> Self;

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn from_i64(v: i64) -> Self {
        let mut acc = Self::zero();
        let unit = if v < 0 { Self::one().neg() } else { Self::one() };
        // only used for small constants (derivative multipliers)
        for _ in 0..v.unsigned_abs() {
            acc = acc.add(&unit);
        }
        acc
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(Zero::is_zero(&r), "inexact integer division");
        q
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Gaussian integer `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigInt,
    pub im: BigInt,
}

impl Gaussian {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        Gaussian { re, im }
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Ring for Gaussian {
    fn zero() -> Self {
        Gaussian::new(BigInt::from(0), BigInt::from(0))
    }
    fn one() -> Self {
        Gaussian::new(BigInt::from(1), BigInt::from(0))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, other: &Self) -> Self {
        Gaussian::new(&self.re + &other.re, &self.im + &other.im)
    }
    fn sub(&self, other: &Self) -> Self {
        Gaussian::new(&self.re - &other.re, &self.im - &other.im)
    }
    fn mul(&self, other: &Self) -> Self {
        Gaussian::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }
    fn neg(&self) -> Self {
        Gaussian::new(-&self.re, -&self.im)
    }
    fn exact_div(&self, other: &Self) -> Self {
        let n = other.norm();
        let num = self.mul(&other.conj());
        debug_assert!(
            Zero::is_zero(&(&num.re % &n)) && Zero::is_zero(&(&num.im % &n)),
            "inexact Gaussian division"
        );
        Gaussian::new(&num.re / &n, &num.im / &n)
    }
    fn from_i64(v: i64) -> Self {
        Gaussian::new(BigInt::from(v), BigInt::from(0))
    }
}

/// Sign of a big integer as -1, 0, 1.
pub(crate) fn sign(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}
