//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use admrank::BinaryForm;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

pub fn form(c: &[i64]) -> BinaryForm {
    BinaryForm::from_i64s(c).unwrap()
}

pub fn example_q() -> BinaryForm {
    "4:3/5,7/5,4/3,5/4,1".parse().unwrap()
}

/// The two printed generators of `Ann(q)_3`.
pub fn example_cubics() -> (BinaryForm, BinaryForm) {
    (form(&[0, 12915, -29088, 6220]), form(&[1435, 0, -5652, 1264]))
}

/// Uniform integer coefficients in `[-bound, bound]`, redrawn when zero.
pub fn random_form<R: Rng>(rng: &mut R, d: usize, bound: i64) -> BinaryForm {
    loop {
        let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(f) = BinaryForm::from_i64s(&c) {
            return f;
        }
    }
}

/// Sum of `n` integer multiples of `d`-th powers of small integer linear forms.
pub fn random_power_sum<R: Rng>(rng: &mut R, d: usize, n: usize) -> BinaryForm {
    loop {
        let mut acc = vec![BigInt::zero(); d + 1];
        for _ in 0..n {
            let a = BigInt::from(rng.gen_range(-3..=3));
            let b = BigInt::from(rng.gen_range(-3..=3));
            let s = BigInt::from(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 });
            if let Ok(p) = BinaryForm::linear_power(&a, &b, d) {
                for (x, c) in acc.iter_mut().zip(p.coeffs()) {
                    *x += &s * c;
                }
            }
        }
        if let Ok(f) = BinaryForm::from_integers(acc) {
            return f;
        }
    }
}

/// A mix of generic forms, short power sums and tangent-type forms
/// `l^(d-1) m`, which exercise every branch of the rank rules.
pub fn mixed_form<R: Rng>(rng: &mut R, d: usize) -> BinaryForm {
    match rng.gen_range(0..6) {
        0 | 1 => random_form(rng, d, 20),
        2 => random_power_sum(rng, d, 1),
        3 => random_power_sum(rng, d, 2),
        4 => {
            let n = rng.gen_range(2..=d.max(2));
            random_power_sum(rng, d, n)
        }
        _ => {
            let a = BigInt::from(rng.gen_range(1..=3));
            let b = BigInt::from(rng.gen_range(-3..=3));
            let l = BinaryForm::linear_power(&a, &b, d - 1).unwrap();
            let c = BigInt::from(rng.gen_range(-3..=3));
            let e = BigInt::from(rng.gen_range(1..=3));
            let m = BinaryForm::from_integers(vec![c, e]).unwrap();
            l.mul(&m)
        }
    }
}

fn det2(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    a * d - b * c
}

fn falling(n: usize, k: usize) -> i64 {
    (0..k).map(|i| (n - i) as i64).product()
}

/// Catalecticant entries written out directly from `∂x^(k-j) ∂y^j`.
fn cat(f: &BinaryForm, k: usize) -> Vec<Vec<BigInt>> {
    let d = f.degree();
    let c = f.coeffs();
    (0..=d - k)
        .map(|m| {
            (0..=k)
                .map(|j| &c[m + j] * falling(d - m - j, k - j) * falling(m + j, j))
                .collect()
        })
        .collect()
}

/// Rank class from catalecticant minors: 1, 2, or 3 meaning "more than 2".
/// Valid for degrees 2..=4.
pub fn minor_rank_class(f: &BinaryForm) -> usize {
    let d = f.degree();
    assert!((2..=4).contains(&d));
    let c1 = cat(f, 1);
    let rank_one = (0..c1.len()).all(|i| {
        (i + 1..c1.len()).all(|j| det2(&c1[i][0], &c1[i][1], &c1[j][0], &c1[j][1]).is_zero())
    });
    if rank_one {
        return 1;
    }
    let c2 = cat(f, 2);
    if c2.len() < 3 {
        // at most two rows against three columns: Ann_2 has dimension >= 1,
        // and a dimension-2 system is never made of squares only
        if c2.len() == 1 || cross(&c2[0], &c2[1]).iter().all(Zero::is_zero) {
            return 2;
        }
        return if quadric_is_squarefree(&cross(&c2[0], &c2[1])) { 2 } else { 3 };
    }
    let det3 = |r: &[Vec<BigInt>]| {
        &r[0][0] * det2(&r[1][1], &r[1][2], &r[2][1], &r[2][2])
            - &r[0][1] * det2(&r[1][0], &r[1][2], &r[2][0], &r[2][2])
            + &r[0][2] * det2(&r[1][0], &r[1][1], &r[2][0], &r[2][1])
    };
    if !det3(&c2).is_zero() {
        return 3;
    }
    // rank 2 (rank <= 1 of Cat_2 would force rank one of Cat_1 above)
    for i in 0..3 {
        for j in i + 1..3 {
            let k = cross(&c2[i], &c2[j]);
            if k.iter().any(|x| !x.is_zero()) {
                return if quadric_is_squarefree(&k) { 2 } else { 3 };
            }
        }
    }
    unreachable!("a rank-2 matrix has two independent rows")
}

fn cross(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// `a X^2 + b XY + c Y^2` has two distinct roots.
fn quadric_is_squarefree(q: &[BigInt]) -> bool {
    !(&q[1] * &q[1] - BigInt::from(4) * &q[0] * &q[2]).is_zero()
}

/// Fixed-point complex number `(re + i im) / 2^PREC`.
#[derive(Clone, Debug)]
struct Cx {
    re: BigInt,
    im: BigInt,
}

const PREC: usize = 420;

impl Cx {
    fn from_f64(re: f64, im: f64) -> Cx {
        let s = |v: f64| {
            let scaled = v * 2f64.powi(60);
            BigInt::from(scaled as i128) << (PREC - 60)
        };
        Cx { re: s(re), im: s(im) }
    }

    fn from_int(v: &BigInt) -> Cx {
        Cx {
            re: v << PREC,
            im: BigInt::zero(),
        }
    }

    fn add(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Cx) -> Cx {
        Cx {
            re: (&self.re * &o.re - &self.im * &o.im) >> PREC,
            im: (&self.re * &o.im + &self.im * &o.re) >> PREC,
        }
    }

    fn norm2(&self) -> BigInt {
        (&self.re * &self.re + &self.im * &self.im) >> PREC
    }

    fn div(&self, o: &Cx) -> Option<Cx> {
        let n = &o.re * &o.re + &o.im * &o.im;
        if n.is_zero() {
            return None;
        }
        Some(Cx {
            re: ((&self.re * &o.re + &self.im * &o.im) << PREC) / &n,
            im: ((&self.im * &o.re - &self.re * &o.im) << PREC) / &n,
        })
    }

    /// `|z|`, rounded up.
    fn abs_up(&self) -> BigInt {
        (self.norm2() << PREC).sqrt() + 1
    }
}

/// Horner evaluation of `p` (descending coefficients) and its derivative.
fn eval(p: &[BigInt], z: &Cx) -> (Cx, Cx) {
    let mut v = Cx::from_int(&BigInt::zero());
    let mut dv = v.clone();
    for c in p {
        dv = dv.mul(z).add(&v);
        v = v.mul(z).add(&Cx::from_int(c));
    }
    (v, dv)
}

/// Aberth iteration in double precision for a first approximation.
fn aberth_f64(p: &[f64]) -> Vec<(f64, f64)> {
    type C = (f64, f64);
    let n = p.len() - 1;
    let mul = |a: C, b: C| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: C, b: C| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    let ev = |z: C| {
        let mut v = (0.0, 0.0);
        let mut dv = (0.0, 0.0);
        for &c in p {
            let t = mul(dv, z);
            dv = (t.0 + v.0, t.1 + v.1);
            let t = mul(v, z);
            v = (t.0 + c, t.1);
        }
        (v, dv)
    };
    let bound = 1.0 + p[1..].iter().map(|c| (c / p[0]).abs()).fold(0.0, f64::max);
    let mut z: Vec<C> = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            (0.5 * bound * a.cos(), 0.5 * bound * a.sin())
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, dv) = ev(z[i]);
            if v.0 == 0.0 && v.1 == 0.0 {
                continue;
            }
            let ratio = div(v, dv);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let r = div((1.0, 0.0), (z[i].0 - z[j].0, z[i].1 - z[j].1));
                    s = (s.0 + r.0, s.1 + r.1);
                }
            }
            let denom = (1.0 - mul(ratio, s).0, -mul(ratio, s).1);
            let w = div(ratio, denom);
            if w.0.is_finite() && w.1.is_finite() {
                z[i] = (z[i].0 - w.0, z[i].1 - w.1);
                moved = moved.max(w.0.hypot(w.1));
            }
        }
        if moved < 1e-14 * bound {
            break;
        }
    }
    z
}

/// Real and nonreal root counts of a square-free form from certified
/// inclusion disks (420-bit arithmetic, radii floored at 2^-330, i.e.
/// about 100 digits). `None` when the disks do not
/// separate the roots.
pub fn numeric_classification(f: &BinaryForm) -> Option<(usize, usize)> {
    let c = f.coeffs();
    // a vanishing x^d coefficient is the real root [1:0]
    let lead = c.iter().position(|x| !x.is_zero()).unwrap();
    let at_infinity = lead;
    if at_infinity > 1 {
        return None;
    }
    let p: Vec<BigInt> = c[lead..].to_vec();
    let n = p.len() - 1;
    if n == 0 {
        return Some((at_infinity, 0));
    }
    let pf: Vec<f64> = p.iter().map(|x| x.to_f64().unwrap()).collect();
    let mut z: Vec<Cx> = aberth_f64(&pf)
        .into_iter()
        .map(|(re, im)| Cx::from_f64(re, im))
        .collect();
    for _ in 0..12 {
        for zi in z.iter_mut() {
            let (v, dv) = eval(&p, zi);
            if let Some(step) = v.div(&dv) {
                *zi = zi.sub(&step);
            }
        }
    }
    // Weierstrass corrections: disk i of radius n |W_i| around z_i; disjoint
    // disks each hold exactly one root.
    let lc = Cx::from_int(&p[0]);
    let mut radius = Vec::with_capacity(n);
    for i in 0..n {
        let mut prod = lc.clone();
        for j in 0..n {
            if j != i {
                prod = prod.mul(&z[i].sub(&z[j]));
            }
        }
        let w = eval(&p, &z[i]).0.div(&prod)?;
        // doubled, plus a 2^-330 floor for rounding in the evaluation
        radius.push(w.abs_up() * BigInt::from(2 * n) + (BigInt::from(1) << (PREC - 330)));
    }
    let apart = |a: &Cx, b: &Cx, r: &BigInt| {
        let d = a.sub(b);
        let dist2 = &d.re * &d.re + &d.im * &d.im;
        dist2 > r * r
    };
    for i in 0..n {
        for j in i + 1..n {
            if !apart(&z[i], &z[j], &(&radius[i] + &radius[j])) {
                return None;
            }
        }
    }
    let mut real = at_infinity;
    let mut nonreal = 0;
    for i in 0..n {
        let conj = Cx {
            re: z[i].re.clone(),
            im: -z[i].im.clone(),
        };
        if z[i].im.abs() > radius[i] {
            nonreal += 1;
            continue;
        }
        // the conjugate disk meets no other disk, so the root equals its conjugate
        let alone = (0..n).all(|j| j == i || apart(&conj, &z[j], &(&radius[i] + &radius[j])));
        if !alone {
            return None;
        }
        real += 1;
    }
    Some((real, nonreal))
}
