//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

mod support;

use std::time::{Duration, Instant};

use admrank::forms::{annihilates, apolar_system};
use admrank::labels::pencil_partition;
use admrank::poly::UniPoly;
use admrank::rank::generic_rank;
use admrank::realroots::is_squarefree;
use admrank::{
    border_rank, boundary_tracks, complex_rank, count_real_roots, discriminant_in_lambda,
    isolate_real_roots, label_set, make_sigma_prime_real, min_weight_label, rank_profile,
    real_rank, sample_labels, Label, RealRank, RealStructure, SampleOptions,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::*;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn criterion_1() -> Outcome {
    let q = example_q();
    check(q.coeffs() == [36, 84, 80, 75, 60].map(BigInt::from), "canonical q")?;
    let sys = apolar_system(&q, 3).map_err(|e| e.to_string())?;
    let (g1, g2) = example_cubics();
    check(sys.spans_same(&[g1.clone(), g2.clone()]), "Ann(q)_3 != reference pencil")?;

    let disc = discriminant_in_lambda(&g1, &g2).map_err(|e| e.to_string())?;
    let printed = UniPoly::new(
        [
            "0",
            "-125609767833135474000",
            "-179185496017480948800",
            "-88301578772786601600",
            "-18287158078605830400",
            "-1359731348267443200",
        ]
        .iter()
        .map(|s| s.parse::<BigInt>().unwrap())
        .collect(),
    );
    check(disc.degree() == Some(5), "discriminant degree")?;
    let ratio = BigRational::new(printed.coeffs()[5].clone(), disc.coeffs()[5].clone());
    let proportional = disc.coeffs().iter().zip(printed.coeffs()).all(|(a, b)| {
        BigRational::from_integer(a.clone()) * &ratio == BigRational::from_integer(b.clone())
    });
    check(proportional, "discriminant not proportional to the printed one")?;
    let roots = isolate_real_roots(&disc);
    check(roots.len() == 5, format!("{} real roots", roots.len()))?;
    let zero = BigRational::from_integer(BigInt::from(0));
    check(disc.sign_at(&zero) == 0, "λ=0 is not a root")?;

    let set = label_set(&q, RealStructure::Standard).map_err(|e| e.to_string())?;
    let partition: Vec<Label> = pencil_partition(&q).map_err(|e| e.to_string())?.labels();
    let labels: Vec<Label> = set.labels().collect();
    check(set.exact, "label set not exact")?;
    check(labels == partition, "label set differs from the partition")?;
    check(
        set.contains(Label::new(1, 1)) && set.contains(Label::new(0, 3)),
        format!("labels {}", set.key()),
    )?;
    let p = rank_profile(&q).map_err(|e| e.to_string())?;
    check(p.admissible_rank == 3 && p.complex_rank == 3, "ranks")?;
    check(
        real_rank(&q).map_err(|e| e.to_string())? == RealRank::Exact { value: 3 },
        "real rank",
    )?;
    check(
        min_weight_label(&q, RealStructure::Standard).map_err(|e| e.to_string())?
            == Label::new(0, 3),
        "min-weight label",
    )?;
    Ok(format!("labels {} (extra labels: {})", set.key(), labels.len() - 2))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut total = 0;
    for d in 2..=8 {
        for _ in 0..500 {
            let f = mixed_form(&mut rng, d);
            let p = rank_profile(&f).map_err(|e| format!("{f}: {e}"))?;
            let b = p.border_rank;
            let ctx = |what: &str| format!("{what} at {f}");
            check(p.admissible_rank == p.complex_rank, ctx("admissible != complex"))?;
            check(
                p.certificate.form.degree() == p.admissible_rank
                    && annihilates(&p.certificate.form, &f)
                    && is_squarefree(&p.certificate.form),
                ctx("invalid certificate"),
            )?;
            check(p.cactus_rank == b, ctx("cactus != border"))?;
            check(
                p.complex_rank == b || p.complex_rank == d + 2 - b,
                ctx("complex rank outside {b, d+2-b}"),
            )?;
            check(p.admissible_rank <= d, ctx("admissible > d"))?;
            check(p.admissible_rank <= 2 * generic_rank(d), ctx("admissible > 2g"))?;
            if b <= (d + 1) / 2 {
                let dim = apolar_system(&f, b).map_err(|e| e.to_string())?.dim();
                check(dim == 1, ctx("dim Ann_b != 1"))?;
            }
            total += 1;
        }
    }
    Ok(format!("{total} forms"))
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for d in 3..=5 {
        let report = sample_labels(&SampleOptions::new(d, RealStructure::Standard, 2000, 3))
            .map_err(|e| e.to_string())?;
        let g = generic_rank(d);
        check(
            report.weight_mismatch_count == 0,
            format!("d={d}: {} weight mismatches", report.weight_mismatch_count),
        )?;
        for b in (g % 2..=g).step_by(2) {
            let label = Label::new((g - b) / 2, b);
            let freq = report.label_frequency(label);
            check(freq >= 0.01, format!("d={d}: {label} frequency {freq}"))?;
            notes.push(format!("d={d} {label} {freq:.3}"));
        }
        notes.push(format!("d={d} degenerate {}", report.degenerate_count));
    }
    Ok(notes.join(", "))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for d in [2, 4, 6] {
        let (mut degenerate, mut bad) = (0, 0);
        let mut first_bad = None;
        for _ in 0..500 {
            let f = loop {
                if let Ok(f) = make_sigma_prime_real(&random_form(&mut rng, d, 20)) {
                    break f;
                }
            };
            let set = match label_set(&f, RealStructure::FixedPointFree) {
                Ok(s) => s,
                Err(_) => {
                    degenerate += 1;
                    continue;
                }
            };
            let b = border_rank(&f).map_err(|e| e.to_string())?;
            if b < generic_rank(d) || !set.exact {
                degenerate += 1;
                continue;
            }
            let complex = complex_rank(&f).map_err(|e| e.to_string())?;
            let ok = set.rank % 2 == 0 && set.rank == complex && set.labels().all(|l| l.b == 0);
            if !ok {
                bad += 1;
                first_bad.get_or_insert(format!(
                    "{f}: rank {} complex {complex} labels {}",
                    set.rank,
                    set.key()
                ));
            }
        }
        notes.push(format!("d={d} bad {bad} degenerate {degenerate}"));
        if let Some(ex) = first_bad {
            failures.push(format!("d={d}: {bad}/500 violate, e.g. {ex}"));
        }
    }
    if failures.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_5() -> Outcome {
    let eps: Vec<BigRational> = [100i64, 10_000, 1_000_000]
        .iter()
        .map(|&n| BigRational::new(BigInt::from(1), BigInt::from(n)))
        .collect();
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    for (u, v, w) in [(1, -2, 3), (2, 5, -1), (-3, 1, 4)] {
        let s = boundary_tracks(5, &int(u), &int(v), &int(w), &eps).map_err(|e| e.to_string())?;
        for step in &s.steps {
            check(
                step.p_labels == [Label::new(1, 1)] && step.p_prime_labels == [Label::new(0, 3)],
                format!(
                    "(u,v,w)=({u},{v},{w}) ε={}: {} vs {}",
                    step.epsilon, step.p_key, step.p_prime_key
                ),
            )?;
        }
        check(
            s.distances_decreasing() == (true, true),
            format!("(u,v,w)=({u},{v},{w}): distances not strictly decreasing"),
        )?;
    }
    Ok("3 configurations".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut classes = [0usize; 4];
    for i in 0..500 {
        let f = mixed_form(&mut rng, 2 + i % 3);
        let oracle = minor_rank_class(&f);
        let engine = complex_rank(&f).map_err(|e| e.to_string())?.min(3);
        check(oracle == engine, format!("{f}: minors say {oracle}, engine {engine}"))?;
        classes[oracle] += 1;
    }
    let (mut certified, mut skipped) = (0, 0);
    let mut count = 0;
    while count < 1000 {
        let d = 1 + count % 8;
        let f = random_form(&mut rng, d, 20);
        if !is_squarefree(&f) {
            continue;
        }
        count += 1;
        let Some((real, nonreal)) = numeric_classification(&f) else {
            skipped += 1;
            continue;
        };
        let c = count_real_roots(&f, RealStructure::Standard).map_err(|e| e.to_string())?;
        check(
            c.real_distinct == real && 2 * c.conj_pairs == nonreal,
            format!("{f}: Sturm ({}, {}) numeric ({real}, {nonreal})", c.real_distinct, c.conj_pairs),
        )?;
        certified += 1;
    }
    check(certified > 0, "no numeric certificate")?;
    Ok(format!(
        "rank classes 1/2/>2: {}/{}/{}; roots certified {certified}, uncertified {skipped}",
        classes[1], classes[2], classes[3]
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 6] = [
        ("1 twolabels example end-to-end", criterion_1, Duration::from_secs(1)),
        ("2 admissible = complex rank suite", criterion_2, Duration::from_secs(60)),
        ("3 generic-weight labels by sampling", criterion_3, Duration::from_secs(120)),
        ("4 fixed-point-free structure suite", criterion_4, Duration::from_secs(60)),
        ("5 boundary tracks", criterion_5, Duration::from_secs(30)),
        ("6 oracle equivalence", criterion_6, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let timed = took <= limit;
        let (status, detail) = match (&outcome, timed) {
            (Ok(note), true) => ("PASS", note.clone()),
            (Ok(note), false) => ("FAIL", format!("over time limit {limit:?}; {note}")),
            (Err(why), _) => ("FAIL", why.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {name}: {status} ({:.2}s) {detail}", took.as_secs_f64());
    }
    println!("acceptance: {} of 6 criteria passed", 6 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
