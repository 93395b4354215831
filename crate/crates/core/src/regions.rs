//! Monte Carlo sampling of label regions and the boundary witness tracks.
//!
//! Samples are split into fixed-size shards; shard `s` draws from a ChaCha
//! stream keyed by `(seed, s)`, so the report does not depend on the number
//! of worker threads.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::{binomial, format_rational, sigma_prime_coeffs, BinaryForm};
use crate::labels::{label_set_with, make_sigma_prime_real, Label, LabelOptions, LabelSet};
use crate::rank::{border_rank, complex_rank, generic_rank, rank_profile, RankProfile};
use crate::realroots::RealStructure;

const SHARD_SIZE: usize = 32;
const WITNESSES_KEPT: usize = 3;
const PERTURBATION_POINTS: usize = 16;
/// Perturbation radius relative to the largest coefficient, as `1/N`.
const PERTURBATION_SCALE: i64 = 1000;

pub const DEFAULT_THRESHOLD: f64 = 0.01;

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_rational(r))
}

fn ser_opt_rational<S: Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug)]
pub struct SampleOptions {
    pub degree: usize,
    pub structure: RealStructure,
    pub n: usize,
    pub seed: u64,
    pub coeff_bound: u64,
    /// Minimum frequency for a label to count as typical.
    pub threshold: f64,
    /// Worker cap; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SampleOptions {
    pub fn new(degree: usize, structure: RealStructure, n: usize, seed: u64) -> Self {
        SampleOptions {
            degree,
            structure,
            n,
            seed,
            coeff_bound: 100,
            threshold: DEFAULT_THRESHOLD,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypicalLabel {
    pub label: Label,
    pub count: usize,
    pub frequency: f64,
    /// Best number of perturbed witnesses (out of 16) that keep the label.
    pub perturbation_agreement: usize,
    pub typical: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionReport {
    pub degree: usize,
    pub structure: RealStructure,
    pub n_samples: usize,
    pub seed: u64,
    pub coeff_bound: u64,
    pub threshold: f64,
    /// Samples per label-set key, degenerate ones included.
    pub counts: BTreeMap<String, usize>,
    /// Border rank below generic, or a label set that is not known to be
    /// complete.
    pub degenerate_count: usize,
    /// Non-degenerate samples per admissible rank.
    pub rank_counts: BTreeMap<usize, usize>,
    /// Non-degenerate samples whose label weight differs from the generic rank.
    pub weight_mismatch_count: usize,
    /// Non-degenerate samples whose admissible rank differs from the complex rank.
    pub complex_mismatch_count: usize,
    /// Non-degenerate samples with a label `(a, b)`, `b > 0`.
    pub totally_real_part_count: usize,
    /// Non-degenerate samples containing each label.
    pub label_counts: BTreeMap<String, usize>,
    pub labels: Vec<TypicalLabel>,
    pub typical_labels: Vec<Label>,
    pub note: &'static str,
}

impl RegionReport {
    pub fn non_degenerate(&self) -> usize {
        self.n_samples - self.degenerate_count
    }

    pub fn label_frequency(&self, label: Label) -> f64 {
        self.label_counts.get(&label.to_string()).copied().unwrap_or(0) as f64
            / self.n_samples as f64
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per label-set key: `key,count,frequency`.
    pub fn write_csv<W: Write>(&self, w: W) -> std::result::Result<(), csv::Error> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["key", "count", "frequency"])?;
        for (key, count) in &self.counts {
            let freq = *count as f64 / self.n_samples as f64;
            out.write_record([key.as_str(), &count.to_string(), &freq.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Default)]
struct ShardResult {
    counts: BTreeMap<String, usize>,
    degenerate: usize,
    rank_counts: BTreeMap<usize, usize>,
    weight_mismatch: usize,
    complex_mismatch: usize,
    totally_real: usize,
    label_counts: BTreeMap<Label, usize>,
    witnesses: BTreeMap<Label, Vec<(usize, BinaryForm)>>,
}

impl ShardResult {
    fn merge(mut self, other: ShardResult) -> ShardResult {
        fn add<K: Ord>(a: &mut BTreeMap<K, usize>, b: BTreeMap<K, usize>) {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
        }
        add(&mut self.counts, other.counts);
        add(&mut self.rank_counts, other.rank_counts);
        add(&mut self.label_counts, other.label_counts);
        self.degenerate += other.degenerate;
        self.weight_mismatch += other.weight_mismatch;
        self.complex_mismatch += other.complex_mismatch;
        self.totally_real += other.totally_real;
        for (label, ws) in other.witnesses {
            let entry = self.witnesses.entry(label).or_default();
            entry.extend(ws);
            entry.sort_by_key(|(i, _)| *i);
            entry.truncate(WITNESSES_KEPT);
        }
        self
    }
}

fn draw_form(rng: &mut ChaCha8Rng, opts: &SampleOptions) -> BinaryForm {
    let b = opts.coeff_bound as i64;
    loop {
        let c: Vec<BigInt> = (0..=opts.degree)
            .map(|_| BigInt::from(rng.gen_range(-b..=b)))
            .collect();
        let Ok(f) = BinaryForm::from_integers(c) else {
            continue;
        };
        match opts.structure {
            RealStructure::Standard => return f,
            RealStructure::FixedPointFree => {
                if let Ok(g) = make_sigma_prime_real(&f) {
                    return g;
                }
            }
        }
    }
}

struct Classified {
    set: Option<LabelSet>,
    degenerate: bool,
    complex: Option<usize>,
}

fn classify(f: &BinaryForm, structure: RealStructure, lopts: &LabelOptions) -> Classified {
    let below_generic = border_rank(f).map_or(true, |b| b < generic_rank(f.degree()));
    let set = label_set_with(f, structure, lopts).ok();
    let degenerate = below_generic || set.as_ref().map_or(true, |s| !s.exact);
    Classified {
        set,
        degenerate,
        complex: complex_rank(f).ok(),
    }
}

fn run_shard(shard: usize, opts: &SampleOptions) -> ShardResult {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(shard as u64);
    let lopts = LabelOptions {
        seed: opts.seed,
        ..LabelOptions::default()
    };
    let generic = generic_rank(opts.degree);
    let mut out = ShardResult::default();
    let start = shard * SHARD_SIZE;
    for idx in start..opts.n.min(start + SHARD_SIZE) {
        let f = draw_form(&mut rng, opts);
        let c = classify(&f, opts.structure, &lopts);
        let key = c.set.as_ref().map_or_else(|| "undetermined".to_string(), LabelSet::key);
        *out.counts.entry(key).or_insert(0) += 1;
        if c.degenerate {
            out.degenerate += 1;
            continue;
        }
        let set = c.set.expect("non-degenerate samples have label sets");
        *out.rank_counts.entry(set.rank).or_insert(0) += 1;
        if set.rank != generic {
            out.weight_mismatch += 1;
        }
        if Some(set.rank) != c.complex {
            out.complex_mismatch += 1;
        }
        if set.labels().any(|l| l.b > 0) {
            out.totally_real += 1;
        }
        for label in set.labels() {
            *out.label_counts.entry(label).or_insert(0) += 1;
            let ws = out.witnesses.entry(label).or_default();
            if ws.len() < WITNESSES_KEPT {
                ws.push((idx, f.clone()));
            }
        }
    }
    out
}

/// Number of 16 nearby points (relative radius 1/1000) whose label set still
/// contains `label`.
fn perturbation_agreement(
    f: &BinaryForm,
    label: Label,
    structure: RealStructure,
    rng: &mut ChaCha8Rng,
    lopts: &LabelOptions,
) -> usize {
    let scale = BigInt::from(PERTURBATION_SCALE * PERTURBATION_SCALE);
    let max = f.coeffs().iter().map(|c| c.abs()).max().expect("nonzero form");
    (0..PERTURBATION_POINTS)
        .filter(|_| {
            let mut t: Vec<BigInt> = (0..=f.degree())
                .map(|_| BigInt::from(rng.gen_range(-PERTURBATION_SCALE..=PERTURBATION_SCALE)))
                .collect();
            if structure == RealStructure::FixedPointFree {
                let img = sigma_prime_coeffs(&t);
                t = t.iter().zip(&img).map(|(a, b)| a + b).collect();
            }
            let c: Vec<BigInt> = f
                .coeffs()
                .iter()
                .zip(&t)
                .map(|(c, t)| c * &scale + &max * t)
                .collect();
            BinaryForm::from_integers(c)
                .ok()
                .and_then(|g| label_set_with(&g, structure, lopts).ok())
                .is_some_and(|s| s.contains(label))
        })
        .count()
}

pub fn sample_labels(opts: &SampleOptions) -> Result<RegionReport> {
    if opts.degree < 2 {
        return Err(Error::InvalidArgument(format!(
            "sampling needs degree >= 2, got {}",
            opts.degree
        )));
    }
    if opts.n == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    if opts.coeff_bound == 0 {
        return Err(Error::InvalidArgument("coefficient bound must be positive".into()));
    }
    if opts.structure == RealStructure::FixedPointFree && opts.degree % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "degree {} is odd; no form of odd degree is stable",
            opts.degree
        )));
    }
    let shards = opts.n.div_ceil(SHARD_SIZE);
    let compute = || {
        (0..shards)
            .into_par_iter()
            .map(|s| run_shard(s, opts))
            .reduce(ShardResult::default, ShardResult::merge)
    };
    let merged = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(compute),
        None => compute(),
    };

    let lopts = LabelOptions {
        seed: opts.seed,
        ..LabelOptions::default()
    };
    let mut labels = Vec::new();
    for (i, (label, count)) in merged.label_counts.iter().enumerate() {
        let frequency = *count as f64 / opts.n as f64;
        let mut agreement = 0;
        if frequency >= opts.threshold {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream((1u64 << 32) + i as u64);
            for (_, w) in &merged.witnesses[label] {
                agreement = agreement.max(perturbation_agreement(
                    w,
                    *label,
                    opts.structure,
                    &mut rng,
                    &lopts,
                ));
                if agreement == PERTURBATION_POINTS {
                    break;
                }
            }
        }
        labels.push(TypicalLabel {
            label: *label,
            count: *count,
            frequency,
            perturbation_agreement: agreement,
            typical: frequency >= opts.threshold && agreement == PERTURBATION_POINTS,
        });
    }
    labels.sort_by_key(|t| (t.label.weight(), t.label.b));
    let typical_labels = labels.iter().filter(|t| t.typical).map(|t| t.label).collect();
    Ok(RegionReport {
        degree: opts.degree,
        structure: opts.structure,
        n_samples: opts.n,
        seed: opts.seed,
        coeff_bound: opts.coeff_bound,
        threshold: opts.threshold,
        counts: merged.counts,
        degenerate_count: merged.degenerate,
        rank_counts: merged.rank_counts,
        weight_mismatch_count: merged.weight_mismatch,
        complex_mismatch_count: merged.complex_mismatch,
        totally_real_part_count: merged.totally_real,
        label_counts: merged
            .label_counts
            .iter()
            .map(|(l, c)| (l.to_string(), *c))
            .collect(),
        labels,
        typical_labels,
        note: "typical = frequency above threshold and stable under 16 perturbations \
               (empirical proxy for an open set)",
    })
}

type RatForm = Vec<BigRational>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(x + s y)^n`
fn linear_power(s: &BigRational, n: usize) -> RatForm {
    (0..=n)
        .map(|j| BigRational::from_integer(binomial(n, j)) * num_traits::pow(s.clone(), j))
        .collect()
}

fn mul(a: &RatForm, b: &RatForm) -> RatForm {
    let mut out = vec![rat(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_scaled(acc: &mut RatForm, c: &BigRational, f: &RatForm) {
    for (a, v) in acc.iter_mut().zip(f) {
        *a += c * v;
    }
}

/// Largest coefficient deviation after scaling both forms to 1 at `pivot`.
fn projective_distance(f: &RatForm, limit: &RatForm, pivot: usize) -> Option<BigRational> {
    if f[pivot].is_zero() {
        return None;
    }
    f.iter()
        .zip(limit)
        .map(|(a, b)| (a / &f[pivot] - b / &limit[pivot]).abs())
        .max()
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryStep {
    #[serde(serialize_with = "ser_rational")]
    pub epsilon: BigRational,
    pub p: BinaryForm,
    pub p_labels: Vec<Label>,
    pub p_key: String,
    pub p_prime: BinaryForm,
    pub p_prime_labels: Vec<Label>,
    pub p_prime_key: String,
    #[serde(serialize_with = "ser_opt_rational")]
    pub p_distance: Option<BigRational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub p_prime_distance: Option<BigRational>,
    pub labels_differ: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundarySequence {
    pub r: usize,
    #[serde(serialize_with = "ser_rational")]
    pub u: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub v: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub w: BigRational,
    pub base: BinaryForm,
    /// `w^r + r u^(r-1) v`
    pub limit: BinaryForm,
    pub limit_profile: RankProfile,
    pub steps: Vec<BoundaryStep>,
    /// Largest scheduled ε at and below which the two tracks always have
    /// different label sets.
    #[serde(serialize_with = "ser_opt_rational")]
    pub differs_below: Option<BigRational>,
}

impl BoundarySequence {
    pub fn distances_decreasing(&self) -> (bool, bool) {
        let decreasing = |get: &dyn Fn(&BoundaryStep) -> Option<BigRational>| {
            let ds: Vec<Option<BigRational>> = self.steps.iter().map(get).collect();
            ds.iter().all(Option::is_some)
                && ds.windows(2).all(|w| w[1].as_ref().unwrap() < w[0].as_ref().unwrap())
        };
        (
            decreasing(&|s| s.p_distance.clone()),
            decreasing(&|s| s.p_prime_distance.clone()),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sequence serializes")
    }
}

/// `10^-1, ..., 10^-6`
pub fn default_epsilons() -> Vec<BigRational> {
    (1..=6)
        .map(|k| BigRational::new(BigInt::from(1), BigInt::from(10).pow(k)))
        .collect()
}

/// Curve points are `(x + s y)^r` for the parameters `u, v, w`. The track
/// `p_ε` adds the real pair `(±iu + εv)^r`, rescaled so that it converges
/// to the same tangent point as the real track `p'_ε`.
pub fn boundary_tracks(
    r: usize,
    u: &BigRational,
    v: &BigRational,
    w: &BigRational,
    epsilons: &[BigRational],
) -> Result<BoundarySequence> {
    if r % 2 == 0 || r < 5 {
        return Err(Error::InvalidArgument(format!(
            "boundary tracks need odd r >= 5, got {r}"
        )));
    }
    if u == v || u == w || v == w {
        return Err(Error::DegenerateConfiguration(format!(
            "curve parameters must be distinct: u={}, v={}, w={}",
            format_rational(u),
            format_rational(v),
            format_rational(w)
        )));
    }
    if let Some(e) = epsilons.iter().find(|e| !e.is_positive()) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {}",
            format_rational(e)
        )));
    }
    let lv = linear_power(v, 1);
    let base = linear_power(w, r);
    // u^j v^(r-j)
    let mixed: Vec<RatForm> = (0..=r)
        .map(|j| mul(&linear_power(u, j), &linear_power(v, r - j)))
        .collect();
    let mut limit = base.clone();
    add_scaled(&mut limit, &rat(r as i64), &mul(&linear_power(u, r - 1), &lv));
    let pivot = (0..=r)
        .max_by_key(|&i| (limit[i].abs(), std::cmp::Reverse(i)))
        .expect("r >= 5");
    let half = (r - 1) / 2;
    let lopts = LabelOptions::default();
    let mut steps = Vec::new();
    for eps in epsilons {
        let mut p = base.clone();
        let mut pp = base.clone();
        for j in 0..r {
            let c = BigRational::from_integer(binomial(r, j)) * num_traits::pow(eps.clone(), r - j - 1);
            add_scaled(&mut pp, &c, &mixed[j]);
            if j % 2 == 0 {
                let sign = if (j / 2 + half) % 2 == 0 { 1 } else { -1 };
                add_scaled(&mut p, &(c * rat(sign)), &mixed[j]);
            }
        }
        let pf = BinaryForm::from_rationals(&p)?;
        let ppf = BinaryForm::from_rationals(&pp)?;
        let ps = label_set_with(&pf, RealStructure::Standard, &lopts)?;
        let pps = label_set_with(&ppf, RealStructure::Standard, &lopts)?;
        steps.push(BoundaryStep {
            epsilon: eps.clone(),
            p_labels: ps.labels().collect(),
            p_key: ps.key(),
            p_prime_labels: pps.labels().collect(),
            p_prime_key: pps.key(),
            labels_differ: ps.key() != pps.key(),
            p_distance: projective_distance(&p, &limit, pivot),
            p_prime_distance: projective_distance(&pp, &limit, pivot),
            p: pf,
            p_prime: ppf,
        });
    }
    let mut order: Vec<&BoundaryStep> = steps.iter().collect();
    order.sort_by(|a, b| a.epsilon.cmp(&b.epsilon));
    let mut differs_below = None;
    for s in order {
        if !s.labels_differ {
            break;
        }
        differs_below = Some(s.epsilon.clone());
    }
    let limit_form = BinaryForm::from_rationals(&limit)?;
    Ok(BoundarySequence {
        r,
        u: u.clone(),
        v: v.clone(),
        w: w.clone(),
        base: BinaryForm::from_rationals(&base)?,
        limit_profile: rank_profile(&limit_form)?,
        limit: limit_form,
        steps,
        differs_below,
    })
}
