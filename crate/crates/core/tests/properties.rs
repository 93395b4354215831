mod support;

use admrank::forms::{annihilates, apolar_system};
use admrank::labels::{label_set_with, pencil_partition, LabelOptions, SearchMode};
use admrank::pencil::LambdaPoint;
use admrank::poly::UniPoly;
use admrank::rank::generic_rank;
use admrank::realroots::{is_sigma_prime_stable, is_squarefree};
use admrank::{
    admissible_rank, border_rank, catalecticant, complex_rank, count_real_roots,
    discriminant_in_lambda, isolate_real_roots, label_set, make_sigma_prime_real, rank_profile,
    real_rank, sample_labels, BinaryForm, Label, RealRank, RealStructure, SampleOptions,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn form_strategy(degrees: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = BinaryForm> {
    degrees
        .prop_flat_map(|d| prop::collection::vec(-30i64..=30, d + 1))
        .prop_filter_map("zero form", |c| BinaryForm::from_i64s(&c).ok())
}

/// Forms that are often special: generic, short power sums, tangent type.
fn mixed_strategy(degrees: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = BinaryForm> {
    (degrees, any::<u64>()).prop_map(|(d, seed)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        support::mixed_form(&mut rng, d)
    })
}

fn sigma_prime_strategy() -> impl Strategy<Value = BinaryForm> {
    prop_oneof![Just(2usize), Just(4), Just(6)]
        .prop_flat_map(|d| prop::collection::vec(-20i64..=20, d + 1))
        .prop_filter_map("anti-invariant", |c| {
            BinaryForm::from_i64s(&c).ok().and_then(|f| make_sigma_prime_real(&f).ok())
        })
}

fn shift_up(h: &BinaryForm, var_y: bool) -> BinaryForm {
    let mut c = h.coeffs().to_vec();
    if var_y {
        c.insert(0, BigInt::from(0));
    } else {
        c.push(BigInt::from(0));
    }
    BinaryForm::from_integers(c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_dimension_matches_catalecticant_rank(f in form_strategy(1..=8)) {
        let d = f.degree();
        for k in 0..=d {
            let sys = apolar_system(&f, k).unwrap();
            prop_assert_eq!(sys.dim() + catalecticant(&f, k).unwrap().rank(), k + 1);
            for h in &sys.basis {
                prop_assert!(annihilates(h, &f));
            }
        }
    }

    #[test]
    fn apolar_ideal_is_closed_under_multiplication(f in form_strategy(2..=7)) {
        let d = f.degree();
        for k in 1..d {
            for h in apolar_system(&f, k).unwrap().basis {
                prop_assert!(annihilates(&shift_up(&h, false), &f));
                prop_assert!(annihilates(&shift_up(&h, true), &f));
            }
        }
    }

    #[test]
    fn catalecticant_ranks_are_symmetric(f in form_strategy(1..=8)) {
        let d = f.degree();
        for k in 0..=d {
            prop_assert_eq!(
                catalecticant(&f, k).unwrap().rank(),
                catalecticant(&f, d - k).unwrap().rank()
            );
        }
    }

    #[test]
    fn apolar_systems_ignore_scaling(f in form_strategy(1..=6), p in 1i64..50, q in 1i64..50) {
        let s = BigRational::new(BigInt::from(-p), BigInt::from(q));
        let scaled: Vec<BigRational> =
            f.rational_coeffs().into_iter().map(|c| c * &s).collect();
        let g = BinaryForm::from_rationals(&scaled).unwrap();
        for k in 0..=f.degree() {
            prop_assert_eq!(apolar_system(&g, k).unwrap(), apolar_system(&f, k).unwrap());
        }
    }

    #[test]
    fn root_counts_add_up(f in form_strategy(1..=8)) {
        let c = count_real_roots(&f, RealStructure::Standard).unwrap();
        prop_assert_eq!(c.real_distinct + 2 * c.conj_pairs, c.total_distinct);
        prop_assert_eq!(c.is_squarefree, is_squarefree(&f));
    }

    #[test]
    fn sturm_count_matches_isolation(c in prop::collection::vec(-20i64..=20, 1..=11)) {
        let p = UniPoly::new(c.iter().map(|&x| BigInt::from(x)).collect());
        prop_assume!(!p.is_zero());
        let roots = isolate_real_roots(&p);
        prop_assert_eq!(roots.len(), p.count_real_roots());
        for w in roots.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
    }

    #[test]
    fn self_pencil_discriminant_vanishes_only_for_repeated_roots(f in form_strategy(2..=6)) {
        let disc = discriminant_in_lambda(&f, &f).unwrap();
        prop_assert_eq!(disc.is_zero(), !is_squarefree(&f));
    }

    #[test]
    fn fixed_point_free_roots_are_never_real(f in sigma_prime_strategy()) {
        prop_assert!(is_sigma_prime_stable(&f));
        prop_assert_eq!(f.sigma_prime_image().sigma_prime_image(), f.clone());
        let c = count_real_roots(&f, RealStructure::FixedPointFree).unwrap();
        prop_assert_eq!(c.real_distinct, 0);
        prop_assert_eq!(2 * c.conj_pairs, c.total_distinct);
    }

    #[test]
    fn sylvester_rank_rules(f in mixed_strategy(1..=8)) {
        let d = f.degree();
        let p = rank_profile(&f).unwrap();
        let b = p.border_rank;
        prop_assert_eq!(p.cactus_rank, b);
        prop_assert!(b <= generic_rank(d));
        prop_assert!(p.complex_rank == b || p.complex_rank == d + 2 - b);
        prop_assert_eq!(p.admissible_rank, p.complex_rank);
        prop_assert!(p.admissible_rank <= d.max(1));
        prop_assert!(p.admissible_rank <= 2 * generic_rank(d));
        prop_assert!(annihilates(&p.certificate.form, &f));
        prop_assert!(is_squarefree(&p.certificate.form));
        if b <= (d + 1) / 2 {
            prop_assert_eq!(apolar_system(&f, b).unwrap().dim(), 1);
            prop_assert!(p.scheme_label.is_some());
        }
        if let Some(s) = &p.scheme_label {
            prop_assert_eq!(2 * s.a + s.b, s.degree());
            prop_assert_eq!(s.degree(), b);
        }
    }

    #[test]
    fn ranks_survive_real_coordinate_changes(f in mixed_strategy(1..=7)) {
        let r = (border_rank(&f).unwrap(), complex_rank(&f).unwrap());
        for g in [f.swap_variables(), f.negate_y()] {
            prop_assert_eq!((border_rank(&g).unwrap(), complex_rank(&g).unwrap()), r);
            prop_assert_eq!(admissible_rank(&g).unwrap().0, r.1);
        }
    }

    #[test]
    fn labels_have_the_rank_weight_and_valid_witnesses(f in mixed_strategy(2..=7)) {
        let set = label_set(&f, RealStructure::Standard).unwrap();
        prop_assert_eq!(set.rank, complex_rank(&f).unwrap());
        for (label, w) in &set.labels {
            prop_assert_eq!(label.weight(), set.rank);
            let form = w.real_part().unwrap();
            prop_assert!(annihilates(&form, &f));
            prop_assert!(is_squarefree(&form));
            let c = count_real_roots(&form, RealStructure::Standard).unwrap();
            prop_assert_eq!(Label::new(c.conj_pairs, c.real_distinct), *label);
        }
    }

    #[test]
    fn real_rank_matches_totally_real_label(f in mixed_strategy(2..=6)) {
        let set = label_set(&f, RealStructure::Standard).unwrap();
        let k = set.rank;
        let has_real = set.contains(Label::new(0, k));
        match real_rank(&f).unwrap() {
            RealRank::Exact { value } => {
                prop_assert!(value >= k);
                if set.exact {
                    prop_assert_eq!(value == k, has_real);
                }
            }
            RealRank::Undecided { lo, hi } => {
                prop_assert!(lo >= k && lo <= hi && hi <= f.degree());
            }
        }
    }

    #[test]
    fn fixed_point_free_labels_are_even(f in sigma_prime_strategy()) {
        let set = label_set(&f, RealStructure::FixedPointFree).unwrap();
        prop_assert_eq!(set.rank % 2, 0);
        prop_assert!(set.rank >= complex_rank(&f).unwrap());
        for l in set.labels() {
            prop_assert_eq!(l.b, 0);
            prop_assert_eq!(l.weight(), set.rank);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pencil_partition_is_complete(f in form_strategy(2..=6), extra in prop::collection::vec((-400i64..=400, 1i64..=40), 100)) {
        let set = label_set_with(&f, RealStructure::Standard, &LabelOptions::default()).unwrap();
        prop_assume!(set.mode == SearchMode::Pencil);
        let partition = pencil_partition(&f).unwrap();
        for (p, q) in extra {
            let l = LambdaPoint::Finite(BigRational::new(BigInt::from(p), BigInt::from(q)));
            let s = partition.pencil.sample(l);
            if s.squarefree {
                let label = Label::new(s.roots.conj_pairs, s.roots.real_distinct);
                prop_assert!(set.contains(label), "{} outside {}", label, set.key());
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_across_threads(seed in any::<u64>(), d in 2usize..=5) {
        let mut a = SampleOptions::new(d, RealStructure::Standard, 70, seed);
        a.threads = Some(1);
        let mut b = a.clone();
        b.threads = Some(3);
        let ra = sample_labels(&a).unwrap();
        prop_assert_eq!(ra.counts.values().sum::<usize>(), 70);
        prop_assert_eq!(ra, sample_labels(&b).unwrap());
    }
}
