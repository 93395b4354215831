//! Fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

/// Row echelon form produced by Bareiss elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(data.len(), rows);
        assert!(data.iter().all(|r| r.len() == cols));
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(data: Vec<Vec<BigInt>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        IntMatrix::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r][c]
    }

    pub fn data(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn transpose(&self) -> IntMatrix {
        let data = (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.data[r][c].clone()).collect())
            .collect();
        IntMatrix::new(self.cols, self.rows, data)
    }

    /// Fraction-free forward elimination. Every division is exact: after
    /// step `k` each active entry is a `(k+1) x (k+1)` minor of the input.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    let (q, rem) = v.div_rem(&prev);
                    debug_assert!(rem.is_zero());
                    m[i][j] = q;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Echelon {
            rows: m,
            pivots,
            cols: self.cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Integer basis of the right kernel in reduced form: the vector attached
    /// to free column `f` is 1-supported on `f` among the free columns. Each
    /// vector is primitive with first nonzero entry positive.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.cols];
                x[f] = BigRational::one();
                for (i, &p) in ech.pivots.iter().enumerate().rev() {
                    let row = &ech.rows[i];
                    let s = (p + 1..self.cols)
                        .filter(|&j| !row[j].is_zero())
                        .fold(BigRational::zero(), |acc, j| {
                            acc + BigRational::from_integer(row[j].clone()) * &x[j]
                        });
                    x[p] = -s / BigRational::from_integer(row[p].clone());
                }
                primitive_vector(&x)
            })
            .collect()
    }
}

/// Clear denominators and normalize to a primitive integer vector whose first
/// nonzero entry is positive. The zero vector maps to zeros.
pub fn primitive_vector(x: &[BigRational]) -> Vec<BigInt> {
    let lcm = x
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    primitive_int_vector(ints)
}

pub fn primitive_int_vector(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    let negate = v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    for c in v.iter_mut() {
        *c = &*c / &g;
        if negate {
            *c = -&*c;
        }
    }
    v
}
