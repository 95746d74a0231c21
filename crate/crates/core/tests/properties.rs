use proptest::prelude::*;

use pattern_lab::moments::BruteForce;
use pattern_lab::partition::Partition;
use pattern_lab::perm::{count_increasing, count_occurrences, cycle_type, enumerate_permutations, Permutation};
use pattern_lab::poly_lab::{interpolate_a, interpolation_nodes, lagrange, RationalPolynomial, SturmSequence};
use pattern_lab::rational::{binomial, frac, int, Rational};

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|w| Permutation::new(w).unwrap())
    })
}

fn same_size_pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| {
        let word = Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle();
        (word.clone(), word).prop_map(|(a, b)| (Permutation::new(a).unwrap(), Permutation::new(b).unwrap()))
    })
}

proptest! {
    #[test]
    fn cycle_type_is_a_class_invariant((pi, tau) in same_size_pair(9)) {
        let conj = tau.compose(&pi).compose(&tau.inverse());
        prop_assert_eq!(cycle_type(&pi), cycle_type(&conj));
    }

    #[test]
    fn increasing_count_matches_identity_pattern(pi in permutation(9), k in 1usize..=5) {
        prop_assert_eq!(count_increasing(k, &pi), count_occurrences(&Permutation::identity(k), &pi));
    }

    #[test]
    fn pattern_counts_sum_to_binomial(pi in permutation(9), k in 1usize..=4) {
        let total: u64 = enumerate_permutations(k, k).unwrap().map(|s| count_occurrences(&s, &pi)).sum();
        prop_assert_eq!(num_bigint::BigInt::from(total), binomial(pi.len() as i64, k as i64));
    }

    #[test]
    fn sturm_counts_are_additive(
        roots in prop::collection::vec(-6i64..=6, 1..6),
        cuts in prop::collection::vec(-80i64..=80, 3),
    ) {
        // Half-integers never hit an integer root.
        let mut cuts: Vec<Rational> = cuts.into_iter().map(|c| frac(2 * c + 1, 2)).collect();
        cuts.sort();
        let mut p = RationalPolynomial::constant(int(1));
        for r in &roots {
            p = &p * &RationalPolynomial::linear_root(&int(*r));
        }
        let sturm = SturmSequence::new(&p);
        let whole = sturm.count_half_open(&cuts[0], &cuts[2]);
        let split = sturm.count_half_open(&cuts[0], &cuts[1]) + sturm.count_half_open(&cuts[1], &cuts[2]);
        prop_assert_eq!(whole, split);
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        let inside = distinct.iter().filter(|&&r| cuts[0] < int(r) && int(r) <= cuts[2]).count();
        prop_assert_eq!(whole, inside);
    }

    #[test]
    fn lagrange_reproduces_its_nodes(values in prop::collection::vec(-50i64..=50, 1..7)) {
        let points: Vec<(Rational, Rational)> =
            values.iter().enumerate().map(|(i, &v)| (int(i as i64), int(v))).collect();
        let p = lagrange(&points);
        prop_assert!(p.degree().map_or(true, |d| d < points.len()));
        for (x, y) in &points {
            prop_assert_eq!(&p.eval(x), y);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn interpolant_degree_is_bounded(sigma in permutation(3), j in 0u32..=2) {
        let lambda = if j == 0 { Partition::empty() } else { Partition::new(vec![j]).unwrap() };
        prop_assume!(lambda.size() <= sigma.len());
        let (_, d) = interpolation_nodes(std::slice::from_ref(&sigma), &lambda).unwrap();
        let p = interpolate_a(&BruteForce::default(), std::slice::from_ref(&sigma), &lambda).unwrap();
        prop_assert!(p.degree().map_or(true, |deg| deg <= d));
    }
}
