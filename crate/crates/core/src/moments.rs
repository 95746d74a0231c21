//! Brute-force moment class functions `M_{σ_1,...,σ_d,n}` and their inner
//! products with irreducible characters.
//!
//! Every pass enumerates `S_n` in prefix shards. Shards accumulate plain
//! integer sums that are merged by addition, so results do not depend on
//! how many threads ran them. Division happens once, at the end.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::character::{mn_character, pad, CharacterTable};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::{
    class_size, count_increasing_in_word, count_occurrences_in_word, cycle_types, CycleType,
    PatternCounter, Permutation, PermutationStream, DEFAULT_ENUMERATION_CAP,
};
use crate::rational::{big, factorial, Rational};

/// A class function on `S_n`, one exact value per cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    n: usize,
    classes: Vec<CycleType>,
    values: Vec<Rational>,
}

impl ClassFunction {
    /// Values listed in the order of [`cycle_types`]`(n)`.
    pub fn from_values(n: usize, values: Vec<Rational>) -> Result<Self> {
        let classes = cycle_types(n);
        if classes.len() != values.len() {
            return Err(Error::Domain(format!(
                "S_{n} has {} classes, got {} values",
                classes.len(),
                values.len()
            )));
        }
        Ok(ClassFunction { n, classes, values })
    }

    /// The irreducible character `χ^λ` for `λ ⊢ n`.
    pub fn character(lambda: &Partition) -> Self {
        let n = lambda.size();
        let classes = cycle_types(n);
        let values = classes
            .iter()
            .map(|c| Rational::from_integer(mn_character(lambda, c.partition()).unwrap().into()))
            .collect();
        ClassFunction { n, classes, values }
    }

    pub fn trivial(n: usize) -> Self {
        let classes = cycle_types(n);
        let values = vec![Rational::from_integer(1.into()); classes.len()];
        ClassFunction { n, classes, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, ct: &CycleType) -> Option<&Rational> {
        self.classes.iter().position(|c| c == ct).map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CycleType, &Rational)> {
        self.classes.iter().zip(self.values.iter())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ClassFunction {
            n: self.n,
            classes: self.classes.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<Self> {
        same_group(self, other)?;
        Ok(ClassFunction {
            n: self.n,
            classes: self.classes.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }
}

fn same_group(f: &ClassFunction, g: &ClassFunction) -> Result<()> {
    if f.n != g.n {
        Err(Error::Domain(format!(
            "class functions live on S_{} and S_{}",
            f.n, g.n
        )))
    } else {
        Ok(())
    }
}

/// `<f, g> = (1/n!) sum_C |C| f(C) g(C)`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Rational> {
    same_group(f, g)?;
    let total = f
        .classes
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .map(|(c, (a, b))| big(class_size(c)) * a * b)
        .fold(Rational::zero(), |acc, x| acc + x);
    Ok(total / big(factorial(f.n as u64)))
}

/// Maps a one-line word to the index of its cycle type in [`cycle_types`].
struct ClassIndex {
    by_key: HashMap<u64, usize>,
}

impl ClassIndex {
    fn new(n: usize) -> Result<Self> {
        if n > 15 {
            return Err(Error::Domain(format!("class indexing supports n <= 15, got {n}")));
        }
        let by_key = cycle_types(n)
            .iter()
            .enumerate()
            .map(|(i, c)| (c.partition().packed_key().expect("n <= 15"), i))
            .collect();
        Ok(ClassIndex { by_key })
    }

    fn index(&self, word: &[u32]) -> usize {
        let mut seen = [false; 16];
        let mut lengths = [0u8; 16];
        let mut count = 0;
        for start in 0..word.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u8;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = word[i] as usize - 1;
            }
            lengths[count] = len;
            count += 1;
        }
        let parts = &mut lengths[..count];
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let key = parts.iter().fold(0u64, |acc, &p| (acc << 4) | p as u64);
        self.by_key[&key]
    }
}

/// Per-pattern evaluation strategy for the hot loop.
enum Counter {
    Increasing(usize),
    General(Permutation),
}

impl Counter {
    fn count(&self, word: &[u32]) -> u64 {
        match self {
            Counter::Increasing(k) => count_increasing_in_word(*k, word),
            Counter::General(sigma) => count_occurrences_in_word(sigma, word),
        }
    }
}

/// Distinct patterns with multiplicities, so repeated factors are counted once.
fn product_plan(patterns: &[Permutation]) -> Vec<(Counter, u32)> {
    let mut plan: Vec<(Permutation, u32)> = Vec::new();
    for p in patterns {
        match plan.iter_mut().find(|(q, _)| q == p) {
            Some((_, m)) => *m += 1,
            None => plan.push((p.clone(), 1)),
        }
    }
    plan.into_iter()
        .map(|(p, m)| {
            let counter = if p.is_identity() {
                Counter::Increasing(p.len())
            } else {
                Counter::General(p)
            };
            (counter, m)
        })
        .collect()
}

fn product_of_counts(plan: &[(Counter, u32)], word: &[u32]) -> i128 {
    let mut acc: i128 = 1;
    for (counter, mult) in plan {
        let c = counter.count(word) as i128;
        if c == 0 {
            return 0;
        }
        for _ in 0..*mult {
            acc = acc.checked_mul(c).expect("moment product overflows i128");
        }
    }
    acc
}

fn add_into(acc: &mut [i128], other: &[i128]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a = a.checked_add(*b).expect("class sum overflows i128");
    }
}

/// Integer class sums `S_C = sum_{π ∈ C} prod_i N_{σ_i}(π)` for one pattern
/// list on `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSums {
    pub n: usize,
    pub sums: Vec<i128>,
}

/// `S_{C,σ} = sum_{π ∈ C} N_σ(π)` for every `σ ∈ S_k` simultaneously;
/// `sums[class][σ.lex_rank()]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternClassSums {
    pub n: usize,
    pub k: usize,
    pub sums: Vec<Vec<u64>>,
}

impl PatternClassSums {
    /// `α^λ_{σ,n}` from the class sums, for `λ` already padded to `n`.
    pub fn alpha_for_padded(&self, sigma: &Permutation, padded: &Partition, table: &CharacterTable) -> Rational {
        assert_eq!(sigma.len(), self.k);
        let row = table.row(padded).expect("partition of n");
        let s = sigma.lex_rank();
        let total: i128 = self
            .sums
            .iter()
            .zip(row)
            .map(|(class, &chi)| class[s] as i128 * chi as i128)
            .sum();
        big(total) / big(factorial(self.n as u64))
    }

    pub fn moment(&self, sigma: &Permutation) -> ClassFunction {
        let s = sigma.lex_rank();
        let classes = cycle_types(self.n);
        let values = classes
            .iter()
            .zip(&self.sums)
            .map(|(c, row)| Rational::new(BigInt::from(row[s]), class_size(c)))
            .collect();
        ClassFunction {
            n: self.n,
            classes,
            values,
        }
    }
}

/// Exhaustive enumeration engine with a cap on `n` and a shard depth.
#[derive(Clone, Debug)]
pub struct BruteForce {
    cap: usize,
    shard_depth: usize,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce::new(DEFAULT_ENUMERATION_CAP)
    }
}

impl BruteForce {
    pub fn new(cap: usize) -> Self {
        BruteForce { cap, shard_depth: 2 }
    }

    /// Prefix length used to split `S_n` into parallel work units.
    pub fn with_shard_depth(mut self, depth: usize) -> Self {
        self.shard_depth = depth;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Runs `per_word` over all of `S_n` and sums the shard accumulators.
    fn reduce<F>(&self, n: usize, width: usize, per_word: F) -> Result<Vec<i128>>
    where
        F: Fn(&[u32], &mut [i128]) + Sync,
    {
        let stream = PermutationStream::new(n, self.cap)?;
        let shards = stream.shards(self.shard_depth);
        let total = shards
            .par_iter()
            .map(|shard| {
                let mut acc = vec![0i128; width];
                shard.for_each_word(|w| per_word(w, &mut acc));
                acc
            })
            .reduce(
                || vec![0i128; width],
                |mut a, b| {
                    add_into(&mut a, &b);
                    a
                },
            );
        Ok(total)
    }

    pub fn class_sums(&self, patterns: &[Permutation], n: usize) -> Result<ClassSums> {
        let index = ClassIndex::new(n)?;
        let width = cycle_types(n).len();
        let plan = product_plan(patterns);
        let sums = self.reduce(n, width, |w, acc| {
            let prod = product_of_counts(&plan, w);
            if prod != 0 {
                acc[index.index(w)] += prod;
            }
        })?;
        Ok(ClassSums { n, sums })
    }

    /// `M_{σ_1,...,σ_d,n}(C) = (1/|C|) sum_{π ∈ C} prod_i N_{σ_i}(π)`.
    pub fn moment_class_function(&self, patterns: &[Permutation], n: usize) -> Result<ClassFunction> {
        let sums = self.class_sums(patterns, n)?;
        let classes = cycle_types(n);
        let values = classes
            .iter()
            .zip(&sums.sums)
            .map(|(c, &s)| Rational::new(BigInt::from(s), class_size(c)))
            .collect();
        Ok(ClassFunction { n, classes, values })
    }

    /// `α^λ = <χ^{λ[n]}, M>` in a single pass over `S_n`, weighting each
    /// permutation's count product by the character at its class.
    pub fn coefficient_alpha(&self, patterns: &[Permutation], lambda: &Partition, n: usize) -> Result<Rational> {
        let padded = pad(lambda, n)?;
        PermutationStream::new(n, self.cap)?;
        let index = ClassIndex::new(n)?;
        let chi: Vec<i128> = cycle_types(n)
            .iter()
            .map(|c| mn_character(&padded, c.partition()).map(i128::from))
            .collect::<Result<_>>()?;
        let plan = product_plan(patterns);
        let total = self.reduce(n, 1, |w, acc| {
            let prod = product_of_counts(&plan, w);
            if prod != 0 {
                acc[0] += chi[index.index(w)] * prod;
            }
        })?;
        Ok(big(total[0]) / big(factorial(n as u64)))
    }

    /// Class sums for every pattern of size `k` in one pass over `S_n`.
    pub fn pattern_class_sums(&self, k: usize, n: usize) -> Result<PatternClassSums> {
        let index = ClassIndex::new(n)?;
        let counter = PatternCounter::new(k);
        let num_classes = cycle_types(n).len();
        let width = counter.num_patterns();
        let stream = PermutationStream::new(n, self.cap)?;
        let shards = stream.shards(self.shard_depth);
        let sums = shards
            .par_iter()
            .map(|shard| {
                let mut acc = vec![vec![0u64; width]; num_classes];
                shard.for_each_word(|w| counter.accumulate(w, &mut acc[index.index(w)]));
                acc
            })
            .reduce(
                || vec![vec![0u64; width]; num_classes],
                |mut a, b| {
                    for (ra, rb) in a.iter_mut().zip(&b) {
                        for (x, y) in ra.iter_mut().zip(rb) {
                            *x += y;
                        }
                    }
                    a
                },
            );
        Ok(PatternClassSums { n, k, sums })
    }
}

/// [`BruteForce::moment_class_function`] with the default cap.
pub fn moment_class_function(patterns: &[Permutation], n: usize) -> Result<ClassFunction> {
    BruteForce::default().moment_class_function(patterns, n)
}

/// [`BruteForce::coefficient_alpha`] with the default cap.
pub fn coefficient_alpha(patterns: &[Permutation], lambda: &Partition, n: usize) -> Result<Rational> {
    BruteForce::default().coefficient_alpha(patterns, lambda, n)
}

/// `α^λ` through the class-function route: `<χ^{λ[n]}, M>`.
pub fn coefficient_alpha_via_class_function(
    engine: &BruteForce,
    patterns: &[Permutation],
    lambda: &Partition,
    n: usize,
) -> Result<Rational> {
    let padded = pad(lambda, n)?;
    let m = engine.moment_class_function(patterns, n)?;
    inner_product(&ClassFunction::character(&padded), &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use crate::perm::{count_occurrences, enumerate_permutations};
    use crate::rational::{frac, int};

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn first_moment_of_twelve_on_s3() {
        let m = moment_class_function(&[perm("12")], 3).unwrap();
        assert_eq!(m.get(&CycleType::identity(3)), Some(&int(3)));
        assert_eq!(m.get(&CycleType::new(p(&[2, 1]))), Some(&frac(4, 3)));
        assert_eq!(m.get(&CycleType::new(p(&[3]))), Some(&int(1)));
    }

    #[test]
    fn identity_pattern_at_n_equals_k_is_regular() {
        for k in 1..=5 {
            let m = moment_class_function(&[Permutation::identity(k)], k).unwrap();
            for (c, v) in m.iter() {
                let want = if *c == CycleType::identity(k) { 1 } else { 0 };
                assert_eq!(*v, int(want), "k={k} class {c}");
            }
        }
    }

    #[test]
    fn non_identity_vanishes_on_identity_class() {
        for sigma in enumerate_permutations(3, 10).unwrap().filter(|s| !s.is_identity()) {
            for n in 3..=6 {
                let m = moment_class_function(&[sigma.clone()], n).unwrap();
                assert_eq!(m.get(&CycleType::identity(n)), Some(&int(0)));
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(inner_product(&ClassFunction::trivial(4), &ClassFunction::trivial(4)).unwrap(), int(1));
        let a = ClassFunction::character(&p(&[2, 1]));
        let b = ClassFunction::character(&p(&[3]));
        assert_eq!(inner_product(&a, &b).unwrap(), int(0));
        let m = moment_class_function(&[perm("12")], 3).unwrap();
        assert_eq!(inner_product(&a, &m).unwrap(), frac(2, 3));
        assert!(inner_product(&ClassFunction::trivial(3), &ClassFunction::trivial(4)).is_err());
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(coefficient_alpha(&[perm("12")], &p(&[1]), 3).unwrap(), frac(2, 3));
        assert_eq!(coefficient_alpha(&[perm("12")], &p(&[1]), 2).unwrap(), frac(1, 2));
        for k in 1..=3 {
            for n in 0..=7 {
                let got = coefficient_alpha(&[Permutation::identity(k)], &Partition::empty(), n).unwrap();
                let want = big(crate::rational::binomial(n as i64, k as i64)) / big(factorial(k as u64));
                assert_eq!(got, want, "k={k} n={n}");
            }
        }
        assert!(coefficient_alpha(&[perm("12")], &p(&[2]), 3).is_err());
        assert!(matches!(
            coefficient_alpha(&[perm("12")], &p(&[1]), 11),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn alpha_vanishes_above_total_pattern_size() {
        for sigma in enumerate_permutations(2, 10).unwrap() {
            for lam in partitions_of(3) {
                for n in 6..=8 {
                    assert_eq!(coefficient_alpha(&[sigma.clone()], &lam, n).unwrap(), int(0));
                }
            }
        }
    }

    #[test]
    fn two_alpha_routes_agree() {
        let engine = BruteForce::default();
        let lists = vec![
            vec![perm("12")],
            vec![perm("132"), perm("21")],
            vec![perm("21"), perm("21")],
        ];
        for patterns in &lists {
            for n in 2..=6 {
                for lam in crate::partition::partitions_up_to(3) {
                    let Ok(direct) = engine.coefficient_alpha(patterns, &lam, n) else {
                        continue;
                    };
                    let via = coefficient_alpha_via_class_function(&engine, patterns, &lam, n).unwrap();
                    assert_eq!(direct, via, "{patterns:?} λ={lam} n={n}");
                }
            }
        }
    }

    #[test]
    fn expansion_reconstructs_moment() {
        let lists = vec![
            vec![perm("12")],
            vec![perm("231")],
            vec![perm("12"), perm("12"), perm("21")],
            vec![perm("2413"), perm("12")],
        ];
        for patterns in &lists {
            for n in 1..=7 {
                let m = moment_class_function(patterns, n).unwrap();
                let mut rebuilt = ClassFunction::from_values(n, vec![int(0); m.classes().len()]).unwrap();
                for lam in partitions_of(n) {
                    let chi = ClassFunction::character(&lam);
                    let c = inner_product(&chi, &m).unwrap();
                    rebuilt = rebuilt.add(&chi.scale(&c)).unwrap();
                }
                assert_eq!(rebuilt, m, "{patterns:?} n={n}");
            }
        }
    }

    #[test]
    fn second_moment_mean_matches_direct_sum() {
        for sigma in [perm("12"), perm("132"), perm("312")] {
            for n in 3..=7 {
                let m = moment_class_function(&[sigma.clone(), sigma.clone()], n).unwrap();
                let mean = inner_product(&ClassFunction::trivial(n), &m).unwrap();
                let direct: u64 = enumerate_permutations(n, 10)
                    .unwrap()
                    .map(|pi| count_occurrences(&sigma, &pi).pow(2))
                    .sum();
                assert_eq!(mean, big(direct) / big(factorial(n as u64)));
            }
        }
    }

    #[test]
    fn alpha_nonnegative_at_n_equals_k() {
        for k in 1..=5 {
            for lam in crate::partition::partitions_up_to(k) {
                if let Ok(a) = coefficient_alpha(&[Permutation::identity(k)], &lam, k) {
                    assert!(a >= int(0), "k={k} λ={lam}");
                }
            }
        }
    }

    #[test]
    fn shard_depth_does_not_change_results() {
        let patterns = [perm("132"), perm("12")];
        let base = BruteForce::new(10).with_shard_depth(0).moment_class_function(&patterns, 7).unwrap();
        for depth in 1..=4 {
            let other = BruteForce::new(10)
                .with_shard_depth(depth)
                .moment_class_function(&patterns, 7)
                .unwrap();
            assert_eq!(base, other);
        }
    }

    #[test]
    fn pattern_class_sums_agree_with_single_pattern_path() {
        let engine = BruteForce::default();
        for k in 2..=3 {
            for n in k..=6 {
                let table = CharacterTable::new(n);
                let all = engine.pattern_class_sums(k, n).unwrap();
                for sigma in enumerate_permutations(k, 10).unwrap() {
                    assert_eq!(all.moment(&sigma), engine.moment_class_function(&[sigma.clone()], n).unwrap());
                    for lam in crate::partition::partitions_up_to(2) {
                        let Ok(padded) = pad(&lam, n) else { continue };
                        assert_eq!(
                            all.alpha_for_padded(&sigma, &padded, &table),
                            engine.coefficient_alpha(&[sigma.clone()], &lam, n).unwrap()
                        );
                    }
                }
            }
        }
    }
}
