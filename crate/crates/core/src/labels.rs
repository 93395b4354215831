//! Labels of minimal admissible decompositions and the real rank.
//!
//! A conjugation-stable set of `2a + b` curve points with `b` fixed points
//! has label `(a, b)`. Under the standard structure the minimal admissible
//! decompositions of `f` are the square-free real forms in `Ann(f)_k`,
//! `k` the complex rank, and their labels are read off from real-root
//! counts. Under the fixed-point-free structure every label is `(k/2, 0)`
//! and the work is deciding the smallest `k` that admits a stable
//! square-free apolar form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{apolar_system, sigma_prime_coeffs, ApolarSystem, BinaryForm};
use crate::matrix::{primitive_int_vector, IntMatrix};
use crate::pencil::{candidate_weights, LambdaPoint, Pencil};
use crate::rank::complex_rank;
use crate::realroots::{
    count_real_roots, is_sigma_prime_stable, is_squarefree, GaussianForm, RealStructure,
    RootInterval,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label {
    pub a: usize,
    pub b: usize,
}

impl Label {
    pub fn new(a: usize, b: usize) -> Self {
        Label { a, b }
    }

    pub fn weight(&self) -> usize {
        2 * self.a + self.b
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Apolar form realizing a label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Real {
        form: BinaryForm,
        lambda: Option<LambdaPoint>,
    },
    /// `re + i·im`, stable under the fixed-point-free structure.
    Gaussian(GaussianForm),
}

impl Witness {
    /// Real part as a form (the whole form for real witnesses).
    pub fn real_part(&self) -> Option<BinaryForm> {
        match self {
            Witness::Real { form, .. } => Some(form.clone()),
            Witness::Gaussian(g) => BinaryForm::from_integers(g.re.clone()).ok(),
        }
    }

    pub fn imaginary_part(&self) -> Option<BinaryForm> {
        match self {
            Witness::Real { .. } => None,
            Witness::Gaussian(g) => BinaryForm::from_integers(g.im.clone()).ok(),
        }
    }

    pub fn lambda(&self) -> Option<&LambdaPoint> {
        match self {
            Witness::Real { lambda, .. } => lambda.as_ref(),
            Witness::Gaussian(_) => None,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Witness::Real { form, .. } => form.degree(),
            Witness::Gaussian(g) => g.degree(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// The apolar system of the rank degree is one-dimensional.
    Unique,
    /// Complete discriminant partition of a pencil.
    Pencil,
    /// Grid and random samples of a larger system.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSet {
    pub rank: usize,
    pub structure: RealStructure,
    /// Labels with one witness each, ordered by increasing `b`.
    pub labels: Vec<(Label, Witness)>,
    pub exact: bool,
    pub mode: SearchMode,
}

impl LabelSet {
    pub fn contains(&self, label: Label) -> bool {
        self.labels.iter().any(|(l, _)| *l == label)
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.labels.iter().map(|(l, _)| *l)
    }

    /// `{(1,1),(0,3)}`
    pub fn key(&self) -> String {
        let inner: Vec<String> = self.labels().map(|l| l.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }

    fn from_map(
        rank: usize,
        structure: RealStructure,
        map: BTreeMap<Label, Witness>,
        exact: bool,
        mode: SearchMode,
    ) -> Self {
        let mut labels: Vec<(Label, Witness)> = map.into_iter().collect();
        labels.sort_by_key(|(l, _)| (l.b, l.a));
        LabelSet {
            rank,
            structure,
            labels,
            exact,
            mode,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelOptions {
    /// Seed for the random part of sampled searches.
    pub seed: u64,
    /// Random combinations tried on top of the deterministic grid.
    pub random_samples: usize,
}

impl Default for LabelOptions {
    fn default() -> Self {
        LabelOptions {
            seed: 0,
            random_samples: 64,
        }
    }
}

pub fn label_set(f: &BinaryForm, structure: RealStructure) -> Result<LabelSet> {
    label_set_with(f, structure, &LabelOptions::default())
}

pub fn label_set_with(
    f: &BinaryForm,
    structure: RealStructure,
    opts: &LabelOptions,
) -> Result<LabelSet> {
    match structure {
        RealStructure::Standard => standard_label_set(f, opts),
        RealStructure::FixedPointFree => fpf_label_set(f, opts),
    }
}

fn label_of(member: &BinaryForm) -> Label {
    let c = count_real_roots(member, RealStructure::Standard).expect("positive degree");
    Label::new(c.conj_pairs, c.real_distinct)
}

fn standard_label_set(f: &BinaryForm, opts: &LabelOptions) -> Result<LabelSet> {
    let k = complex_rank(f)?;
    let sys = apolar_system(f, k)?;
    let mut found = BTreeMap::new();
    let (exact, mode) = match sys.dim() {
        1 => {
            let h = &sys.basis[0];
            if is_squarefree(h) {
                found.insert(
                    label_of(h),
                    Witness::Real {
                        form: h.clone(),
                        lambda: None,
                    },
                );
            }
            (true, SearchMode::Unique)
        }
        2 if k >= 2 => {
            let pencil = Pencil::from_system(&sys)?;
            for s in pencil.samples() {
                if s.squarefree {
                    let label = Label::new(s.roots.conj_pairs, s.roots.real_distinct);
                    found.entry(label).or_insert(Witness::Real {
                        form: s.member,
                        lambda: Some(s.lambda),
                    });
                }
            }
            (true, SearchMode::Pencil)
        }
        dim => {
            for w in candidate_weights(dim, opts.seed, opts.random_samples) {
                if let Some(h) = sys.combine(&w) {
                    if is_squarefree(&h) {
                        found.entry(label_of(&h)).or_insert(Witness::Real {
                            form: h,
                            lambda: None,
                        });
                    }
                }
            }
            (false, SearchMode::Sampled)
        }
    };
    if found.is_empty() {
        return Err(Error::CertificateSearchExhausted { degree: k });
    }
    Ok(LabelSet::from_map(k, RealStructure::Standard, found, exact, mode))
}

/// Bases of the `+1` and `-1` eigenspaces of `h -> h(-y, x)` restricted to
/// an apolar system of even degree.
fn sigma_prime_split(sys: &ApolarSystem) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let span = |sign: i64| -> Vec<Vec<BigInt>> {
        let rows: Vec<Vec<BigInt>> = sys
            .basis
            .iter()
            .map(|h| {
                let img = sigma_prime_coeffs(h.coeffs());
                h.coeffs()
                    .iter()
                    .zip(&img)
                    .map(|(a, b)| a + BigInt::from(sign) * b)
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(rows)
            .echelon()
            .rows
            .into_iter()
            .filter(|r| r.iter().any(|x| *x != BigInt::from(0)))
            .map(primitive_int_vector)
            .collect()
    };
    (span(1), span(-1))
}

fn combine_rows(rows: &[Vec<BigInt>], weights: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); len];
    for (w, r) in weights.iter().zip(rows) {
        for (o, v) in out.iter_mut().zip(r) {
            *o += w * v;
        }
    }
    out
}

/// First square-free member `u + i v` (`u` even, `v` odd under the
/// involution) of the system; such members are exactly the ones fixed by
/// the fixed-point-free real structure.
fn stable_squarefree_member(sys: &ApolarSystem, opts: &LabelOptions) -> Option<Witness> {
    let k = sys.operator_degree;
    if sys.dim() == 1 {
        let h = &sys.basis[0];
        return (is_sigma_prime_stable(h) && is_squarefree(h)).then(|| Witness::Real {
            form: h.clone(),
            lambda: None,
        });
    }
    let (plus, minus) = sigma_prime_split(sys);
    let dim = plus.len() + minus.len();
    for w in candidate_weights(dim, opts.seed, opts.random_samples) {
        let re = combine_rows(&plus, &w[..plus.len()], k + 1);
        let im = combine_rows(&minus, &w[plus.len()..], k + 1);
        let g = GaussianForm { re, im };
        if g.is_zero() || !g.is_squarefree() {
            continue;
        }
        debug_assert!(g.is_sigma_prime_real());
        let real_only = |v: &Vec<BigInt>| v.iter().all(|x| *x == BigInt::from(0));
        return Some(if real_only(&g.im) {
            Witness::Real {
                form: BinaryForm::from_integers(g.re).unwrap(),
                lambda: None,
            }
        } else if real_only(&g.re) {
            // i·v has the roots of v
            Witness::Real {
                form: BinaryForm::from_integers(g.im).unwrap(),
                lambda: None,
            }
        } else {
            Witness::Gaussian(g)
        });
    }
    None
}

fn fpf_label_set(f: &BinaryForm, opts: &LabelOptions) -> Result<LabelSet> {
    if !is_sigma_prime_stable(f) {
        return Err(Error::NotSigmaStable);
    }
    let d = f.degree();
    let rc = complex_rank(f)?;
    // stable sets have even size, and no decomposition is shorter than rc
    let mut k = rc + rc % 2;
    let mut exact = true;
    let mut mode = SearchMode::Unique;
    while k <= d + 2 {
        let sys = apolar_system(f, k)?;
        mode = match sys.dim() {
            1 => SearchMode::Unique,
            2 => SearchMode::Pencil,
            _ => SearchMode::Sampled,
        };
        if let Some(w) = stable_squarefree_member(&sys, opts) {
            let mut map = BTreeMap::new();
            map.insert(Label::new(k / 2, 0), w);
            return Ok(LabelSet::from_map(
                k,
                RealStructure::FixedPointFree,
                map,
                exact,
                mode,
            ));
        }
        // a one-dimensional system is excluded exactly; a failed search is not
        if sys.dim() > 1 {
            exact = false;
        }
        k += 2;
    }
    let _ = mode;
    Err(Error::CertificateSearchExhausted { degree: k })
}

/// Members of `label_set` with the most totally real points.
pub fn min_weight_label(f: &BinaryForm, structure: RealStructure) -> Result<Label> {
    let set = label_set(f, structure)?;
    Ok(set
        .labels()
        .max_by_key(|l| l.b)
        .expect("label sets are nonempty"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RealRank {
    Exact { value: usize },
    /// The real rank lies in `lo..=hi`; `hi` is certified by a witness.
    Undecided { lo: usize, hi: usize },
}

/// Smallest `k` with a square-free real-rooted form in `Ann(f)_k`.
pub fn real_rank(f: &BinaryForm) -> Result<RealRank> {
    real_rank_with(f, &LabelOptions::default())
}

pub fn real_rank_with(f: &BinaryForm, opts: &LabelOptions) -> Result<RealRank> {
    let start = complex_rank(f)?;
    let d = f.degree();
    let all_real = |h: &BinaryForm| {
        is_squarefree(h) && {
            let c = count_real_roots(h, RealStructure::Standard).expect("positive degree");
            c.real_distinct == c.total_distinct
        }
    };
    let mut undecided_from: Option<usize> = None;
    let conclude = |k: usize, undecided_from: Option<usize>| match undecided_from {
        Some(lo) => RealRank::Undecided { lo, hi: k },
        None => RealRank::Exact { value: k },
    };
    for k in start..=d {
        let sys = apolar_system(f, k)?;
        let found = match sys.dim() {
            0 => false,
            1 => all_real(&sys.basis[0]),
            2 if k >= 2 => {
                let pencil = Pencil::from_system(&sys)?;
                pencil
                    .samples()
                    .iter()
                    .any(|s| s.squarefree && s.roots.real_distinct == s.roots.total_distinct)
            }
            dim => {
                let hit = candidate_weights(dim, opts.seed, opts.random_samples)
                    .iter()
                    .filter_map(|w| sys.combine(w))
                    .any(|h| all_real(&h));
                if !hit && undecided_from.is_none() {
                    undecided_from = Some(k);
                }
                hit
            }
        };
        if found {
            return Ok(conclude(k, undecided_from));
        }
    }
    match undecided_from {
        // binary forms of degree d have real rank at most d
        Some(lo) => Ok(RealRank::Undecided { lo, hi: d }),
        None => Err(Error::CertificateSearchExhausted { degree: d }),
    }
}

/// `h + h(-y, x)`, a form whose root set is stable under the fixed-point-free
/// structure.
pub fn make_sigma_prime_real(h: &BinaryForm) -> Result<BinaryForm> {
    if h.degree() % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "degree {} is odd; only even degrees carry stable forms",
            h.degree()
        )));
    }
    let img = sigma_prime_coeffs(h.coeffs());
    BinaryForm::from_integers(h.coeffs().iter().zip(&img).map(|(a, b)| a + b).collect())
}

/// One open piece of the λ-line between consecutive discriminant roots.
#[derive(Clone, Debug)]
pub struct PartitionRegion {
    /// Root bounding the region from below; `None` for `-∞`.
    pub lo: Option<RootInterval>,
    /// Root bounding the region from above; `None` for `+∞`.
    pub hi: Option<RootInterval>,
    pub lambda: LambdaPoint,
    pub member: BinaryForm,
    /// `None` when the sampled member is not square-free.
    pub label: Option<Label>,
}

/// The pencil `Ann(f)_k`, `k` the complex rank, cut up by its
/// discriminant. The member at `λ = ∞` is reported separately; it lies in
/// the region that wraps around through infinity.
#[derive(Clone, Debug)]
pub struct PencilPartition {
    pub pencil: Pencil,
    pub regions: Vec<PartitionRegion>,
    pub at_infinity: PartitionRegion,
}

impl PencilPartition {
    pub fn labels(&self) -> Vec<Label> {
        let mut out: Vec<Label> = self
            .regions
            .iter()
            .chain(std::iter::once(&self.at_infinity))
            .filter_map(|r| r.label)
            .collect();
        out.sort_by_key(|l| (l.b, l.a));
        out.dedup();
        out
    }
}

pub fn pencil_partition(f: &BinaryForm) -> Result<PencilPartition> {
    let k = complex_rank(f)?;
    let sys = apolar_system(f, k)?;
    let pencil = Pencil::from_system(&sys)?;
    let samples = pencil.samples();
    let roots = &pencil.roots;
    let region = |lo: Option<&RootInterval>, hi: Option<&RootInterval>, i: usize| {
        let s = &samples[i];
        PartitionRegion {
            lo: lo.cloned(),
            hi: hi.cloned(),
            lambda: s.lambda.clone(),
            member: s.member.clone(),
            label: s
                .squarefree
                .then(|| Label::new(s.roots.conj_pairs, s.roots.real_distinct)),
        }
    };
    let regions = (0..=roots.len())
        .map(|i| region(i.checked_sub(1).map(|j| &roots[j]), roots.get(i), i))
        .collect();
    let at_infinity = region(roots.last(), roots.first(), samples.len() - 1);
    Ok(PencilPartition {
        pencil,
        regions,
        at_infinity,
    })
}
