//! Permutations in one-line notation, cycle types, conjugacy-class sizes,
//! exhaustive enumeration, and pattern-occurrence counting.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::rational::factorial;

/// Default largest `n` for which `S_n` may be enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::Domain(format!("not a permutation of 1..{n}: {word:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u32).collect(),
        }
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Value at the 1-indexed position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { word: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation {
            word: other.word.iter().map(|&v| self.word[v as usize - 1]).collect(),
        }
    }

    pub fn inversions(&self) -> usize {
        let w = &self.word;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    /// Position of `self` in the lexicographic listing of `S_n`, from 0.
    pub fn lex_rank(&self) -> usize {
        let w = &self.word;
        let n = w.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller_later = (i + 1..n).filter(|&j| w[j] < w[i]).count();
            rank = rank * (n - i) + smaller_later;
        }
        rank
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(n: usize, mut rank: usize) -> Permutation {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let radix = n - i;
            digits[i] = rank % radix;
            rank /= radix;
        }
        let mut pool: Vec<u32> = (1..=n as u32).collect();
        let word = digits.into_iter().map(|d| pool.remove(d)).collect();
        Permutation { word }
    }

    /// Cycles as lists of 1-indexed points, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i as u32 + 1);
                i = self.word[i] as usize - 1;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation, e.g. `(1 3)(2)`.
    pub fn cycle_notation(&self) -> String {
        self.cycles()
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(u32::to_string).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Digit strings (`"4321"`) for `n <= 9`, comma-separated words otherwise.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad pattern entry {t:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad pattern digit {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Multiset of cycle lengths of a permutation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleType(Partition);

impl CycleType {
    pub fn new(parts: Partition) -> Self {
        CycleType(parts)
    }

    pub fn identity(n: usize) -> Self {
        CycleType(Partition::from_unsorted(vec![1; n]))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.size()
    }

    /// `m_i`, the number of `i`-cycles.
    pub fn m(&self, i: u32) -> usize {
        self.0.multiplicity(i)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn cycle_type(pi: &Permutation) -> CycleType {
    CycleType(cycle_type_of_word(pi.word()))
}

pub(crate) fn cycle_type_of_word(word: &[u32]) -> Partition {
    let n = word.len();
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            len += 1;
            i = word[i] as usize - 1;
        }
        lengths.push(len);
    }
    Partition::from_unsorted(lengths)
}

/// Every cycle type of `S_n`, in the order of [`partitions_of`].
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    partitions_of(n).into_iter().map(CycleType).collect()
}

/// `|C| = n! / prod_i (i^{m_i} m_i!)`.
pub fn class_size(ct: &CycleType) -> BigInt {
    let n = ct.n() as u64;
    let denom = ct
        .0
        .multiplicities()
        .into_iter()
        .fold(BigInt::from(1), |acc, (i, m)| {
            acc * BigInt::from(i).pow(m as u32) * factorial(m as u64)
        });
    factorial(n) / denom
}

/// Checks `n` against an enumeration cap.
pub fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Rearranges `w` into the next word in lexicographic order. Returns false
/// (leaving `w` sorted ascending) after the last one.
pub(crate) fn next_permutation(w: &mut [u32]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        w.reverse();
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// The permutations of `S_n` whose one-line word starts with `prefix`.
/// Shards of a [`PermutationStream`] are disjoint and, taken in order, list
/// `S_n` lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shard {
    n: usize,
    prefix: Vec<u32>,
}

impl Shard {
    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    /// Calls `f` on every word of the shard, in lexicographic order, reusing
    /// one buffer.
    pub fn for_each_word(&self, mut f: impl FnMut(&[u32])) {
        let mut word = self.prefix.clone();
        let mut rest: Vec<u32> = (1..=self.n as u32).filter(|v| !self.prefix.contains(v)).collect();
        let fixed = word.len();
        word.append(&mut rest);
        loop {
            f(&word);
            if !next_permutation(&mut word[fixed..]) {
                break;
            }
        }
    }

    pub fn permutations(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        self.for_each_word(|w| out.push(Permutation { word: w.to_vec() }));
        out
    }
}

/// Exhaustive lexicographic stream over `S_n`.
#[derive(Clone, Debug)]
pub struct PermutationStream {
    n: usize,
}

impl PermutationStream {
    pub fn new(n: usize, cap: usize) -> Result<Self> {
        check_cap(n, cap)?;
        Ok(PermutationStream { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Splits the stream by the first `depth` letters (clamped to `n`).
    pub fn shards(&self, depth: usize) -> Vec<Shard> {
        let depth = depth.min(self.n);
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(depth);
        self.collect_prefixes(depth, &mut prefix, &mut out);
        out
    }

    fn collect_prefixes(&self, depth: usize, prefix: &mut Vec<u32>, out: &mut Vec<Shard>) {
        if prefix.len() == depth {
            out.push(Shard {
                n: self.n,
                prefix: prefix.clone(),
            });
            return;
        }
        for v in 1..=self.n as u32 {
            if !prefix.contains(&v) {
                prefix.push(v);
                self.collect_prefixes(depth, prefix, out);
                prefix.pop();
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Permutation> {
        let mut word: Vec<u32> = (1..=self.n as u32).collect();
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let current = Permutation { word: word.clone() };
            done = !next_permutation(&mut word);
            Some(current)
        })
    }
}

/// All `n!` permutations in lexicographic order, refusing `n > cap`.
pub fn enumerate_permutations(n: usize, cap: usize) -> Result<impl Iterator<Item = Permutation>> {
    Ok(PermutationStream::new(n, cap)?.iter())
}

/// `N_σ(π)` by scanning every `k`-subset of positions of `π`.
pub fn count_occurrences(sigma: &Permutation, pi: &Permutation) -> u64 {
    count_occurrences_in_word(sigma, pi.word())
}

pub(crate) fn count_occurrences_in_word(sigma: &Permutation, word: &[u32]) -> u64 {
    let k = sigma.len();
    let n = word.len();
    if k > n {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    // order[a] = index (0-based within the occurrence) holding the a-th smallest value
    let order: Vec<usize> = sigma.inverse().word().iter().map(|&v| v as usize - 1).collect();
    let mut idx: Vec<usize> = (0..k).collect();
    let mut count = 0u64;
    loop {
        if order
            .windows(2)
            .all(|w| word[idx[w[0]]] < word[idx[w[1]]])
        {
            count += 1;
        }
        // advance to the next k-subset in lexicographic order
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return count;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Number of increasing subsequences of length `k` in `π`.
///
/// One Fenwick tree pass per length: the count of length-`l` increasing
/// subsequences ending at position `i` is the prefix sum, over smaller
/// values seen so far, of the length-`(l-1)` counts.
pub fn count_increasing(k: usize, pi: &Permutation) -> u64 {
    count_increasing_in_word(k, pi.word())
}

pub(crate) fn count_increasing_in_word(k: usize, word: &[u32]) -> u64 {
    let n = word.len();
    if k == 0 {
        return 1;
    }
    if k > n {
        return 0;
    }
    let mut ending: Vec<u64> = vec![1; n];
    let mut tree = Fenwick::new(n);
    for _ in 1..k {
        tree.clear();
        let mut next = vec![0u64; n];
        for (i, &v) in word.iter().enumerate() {
            next[i] = tree.prefix_sum(v as usize - 1);
            tree.add(v as usize, ending[i]);
        }
        ending = next;
    }
    ending.iter().sum()
}

/// Fenwick tree over values `1..=n`.
struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick { tree: vec![0; n + 1] }
    }

    fn clear(&mut self) {
        self.tree.iter_mut().for_each(|t| *t = 0);
    }

    fn add(&mut self, mut i: usize, delta: u64) {
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over `1..=i`.
    fn prefix_sum(&self, mut i: usize) -> u64 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i &= i - 1;
        }
        s
    }
}

/// Counts occurrences of every pattern of `S_k` at once.
///
/// Depth-first over increasing position tuples; the lexicographic rank of
/// the pattern formed so far is maintained incrementally from its Lehmer
/// code, so each tuple costs `O(k)` comparisons.
#[derive(Clone, Debug)]
pub struct PatternCounter {
    k: usize,
    /// `weights[a] = (k-1-a)!`
    weights: Vec<usize>,
}

impl PatternCounter {
    pub fn new(k: usize) -> Self {
        assert!((1..=12).contains(&k), "pattern size must be in 1..=12");
        let weights = (0..k)
            .map(|a| (1..=(k - 1 - a)).product::<usize>())
            .collect();
        PatternCounter { k, weights }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of patterns, `k!`.
    pub fn num_patterns(&self) -> usize {
        self.weights[0] * self.k
    }

    /// Adds `N_σ(word)` into `counts[σ.lex_rank()]` for every `σ ∈ S_k`.
    pub fn accumulate(&self, word: &[u32], counts: &mut [u64]) {
        debug_assert_eq!(counts.len(), self.num_patterns());
        if word.len() < self.k {
            return;
        }
        let mut values = [0u32; 12];
        self.descend(word, 0, 0, 0, &mut values, counts);
    }

    pub fn counts(&self, pi: &Permutation) -> Vec<u64> {
        let mut counts = vec![0; self.num_patterns()];
        self.accumulate(pi.word(), &mut counts);
        counts
    }

    fn descend(
        &self,
        word: &[u32],
        depth: usize,
        start: usize,
        rank: usize,
        values: &mut [u32; 12],
        counts: &mut [u64],
    ) {
        let last_start = word.len() - (self.k - depth);
        for p in start..=last_start {
            let v = word[p];
            let mut r = rank;
            for a in 0..depth {
                if values[a] > v {
                    r += self.weights[a];
                }
            }
            if depth + 1 == self.k {
                counts[r] += 1;
            } else {
                values[depth] = v;
                self.descend(word, depth + 1, p + 1, r, values, counts);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_small_cases() {
        let s0: Vec<_> = enumerate_permutations(0, 10).unwrap().collect();
        assert_eq!(s0, vec![Permutation::identity(0)]);
        let s3: Vec<_> = enumerate_permutations(3, 10).unwrap().collect();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3[0], perm("123"));
        assert_eq!(s3[5], perm("321"));
        assert_eq!(enumerate_permutations(5, 10).unwrap().count(), 120);
        assert!(matches!(
            enumerate_permutations(11, 10).err(),
            Some(Error::CapExceeded { n: 11, cap: 10 })
        ));
    }

    #[test]
    fn shards_concatenate_to_lex_order() {
        let stream = PermutationStream::new(5, 10).unwrap();
        let whole: Vec<_> = stream.iter().collect();
        for depth in 0..=5 {
            let joined: Vec<_> = stream.shards(depth).iter().flat_map(|s| s.permutations()).collect();
            assert_eq!(joined, whole, "depth {depth}");
        }
        assert_eq!(stream.shards(2).len(), 20);
    }

    #[test]
    fn lex_rank_round_trip() {
        for (r, p) in enumerate_permutations(5, 10).unwrap().enumerate() {
            assert_eq!(p.lex_rank(), r);
            assert_eq!(Permutation::from_lex_rank(5, r), p);
        }
    }

    #[test]
    fn cycle_types_by_hand() {
        assert_eq!(cycle_type(&Permutation::identity(4)), CycleType::identity(4));
        assert_eq!(cycle_type(&perm("321")).partition().parts(), &[2, 1]);
        assert_eq!(cycle_type(&perm("231")).partition().parts(), &[3]);
        assert_eq!(perm("321").cycle_notation(), "(1 3)(2)");
        assert_eq!(CycleType::identity(4).m(1), 4);
    }

    #[test]
    fn class_sizes() {
        let ct = |s: &[u32]| CycleType::new(Partition::new(s.to_vec()).unwrap());
        assert_eq!(class_size(&ct(&[1, 1, 1])), BigInt::from(1));
        assert_eq!(class_size(&ct(&[2, 1])), BigInt::from(3));
        assert_eq!(class_size(&ct(&[3])), BigInt::from(2));
        for n in 0..=12 {
            let total: BigInt = cycle_types(n).iter().map(class_size).sum();
            assert_eq!(total, factorial(n as u64));
        }
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(count_occurrences(&perm("12"), &perm("321")), 0);
        assert_eq!(count_occurrences(&perm("21"), &perm("231")), 2);
        assert_eq!(count_occurrences(&perm("123"), &perm("12")), 0);
        assert_eq!(count_occurrences(&Permutation::identity(3), &Permutation::identity(7)), 35);
        assert_eq!(count_increasing(2, &Permutation::identity(6)), 15);
        assert_eq!(count_increasing(3, &perm("321")), 0);
        assert_eq!(count_increasing(4, &perm("12")), 0);
    }

    #[test]
    fn worked_witness_occurrence() {
        // pi = (4 7 9 11 15)(2 8 10)(12 14 13)(1 3)(5 6) in S_15
        let pi: Permutation = "3,8,1,7,6,5,9,10,11,2,15,14,12,13,4".parse().unwrap();
        assert_eq!(
            pi.cycle_notation(),
            "(1 3)(2 8 10)(4 7 9 11 15)(5 6)(12 14 13)"
        );
        // T_1 = (2,5,6,8,10) realizes 43251, T_2 = (4,5,7,9,11) realizes 21345
        let standardize = |idx: &[usize]| {
            let vals: Vec<u32> = idx.iter().map(|&i| pi.at(i)).collect();
            let ranks = vals
                .iter()
                .map(|v| vals.iter().filter(|w| *w <= v).count() as u32)
                .collect();
            Permutation::new(ranks).unwrap()
        };
        assert_eq!(standardize(&[2, 5, 6, 8, 10]), perm("43251"));
        assert_eq!(standardize(&[4, 5, 7, 9, 11]), perm("21345"));
        assert!(count_occurrences(&perm("43251"), &pi) >= 1);
        assert!(count_occurrences(&perm("21345"), &pi) >= 1);
    }

    #[test]
    fn pattern_counter_matches_subset_scan() {
        for k in 1..=4 {
            let counter = PatternCounter::new(k);
            let patterns: Vec<_> = enumerate_permutations(k, 10).unwrap().collect();
            for pi in enumerate_permutations(6, 10).unwrap() {
                let counts = counter.counts(&pi);
                for sigma in &patterns {
                    assert_eq!(counts[sigma.lex_rank()], count_occurrences(sigma, &pi));
                }
            }
        }
    }

    #[test]
    fn parse_patterns() {
        assert_eq!(perm("4321").word(), &[4, 3, 2, 1]);
        let long: Permutation = "10,9,8,7,6,5,4,3,2,1".parse().unwrap();
        assert_eq!(long.len(), 10);
        assert_eq!(long.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert!("122".parse::<Permutation>().is_err());
        assert!("1a".parse::<Permutation>().is_err());
    }
}
