//! Integer partitions. A partition doubles as a cycle type and as the label
//! of an irreducible character.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Weakly decreasing list of positive integers. The empty list is the
/// partition of zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Domain(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("partition parts must be weakly decreasing: {parts:?}")));
        }
        parts.shrink_to_fit();
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros; never fails.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// `m_i`: number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// `(i, m_i)` pairs with `m_i > 0`, ascending in `i`.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in self.0.iter().rev() {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first();
        let parts = (1..=width)
            .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Whether `self` is obtained from `inner` by adding at most one box in
    /// each row.
    pub fn is_vertical_strip_over(&self, inner: &Partition) -> bool {
        if inner.len() > self.len() {
            return false;
        }
        self.0.iter().enumerate().all(|(i, &outer)| {
            let inner_part = inner.0.get(i).copied().unwrap_or(0);
            outer >= inner_part && outer - inner_part <= 1
        })
    }

    /// Dense key for small partitions (every part < 16, at most 16 parts).
    pub(crate) fn packed_key(&self) -> Option<u64> {
        if self.len() > 16 || self.0.iter().any(|&p| p >= 16) {
            return None;
        }
        Some(self.0.iter().fold(0u64, |acc, &p| (acc << 4) | p as u64))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Parses comma-separated parts, optionally wrapped in parentheses.
/// `""`, `"0"` and `"()"` give the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() || body == "0" || body == "∅" {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, in reverse-lexicographic order: `(n)` first,
/// `(1,...,1)` last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    assert!(n <= 60, "partitions_of is limited to n <= 60");
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n as u32, n as u32, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// Partitions of every size `0..=max`, smallest size first.
pub fn partitions_up_to(max: usize) -> Vec<Partition> {
    (0..=max).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(10).len(), 42);
        assert_eq!(partitions_of(20).len(), 627);
    }

    #[test]
    fn reverse_lex_order() {
        let got = partitions_of(4);
        let want = vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])];
        assert_eq!(got, want);
        for w in partitions_of(9).windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn validation_and_parsing() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!("1,1".parse::<Partition>().unwrap(), p(&[1, 1]));
        assert_eq!("(3, 1)".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("2,x".parse::<Partition>().is_err());
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!(p(&[2, 1]).to_string(), "(2,1)");
    }

    #[test]
    fn shape_helpers() {
        let lam = p(&[3, 1, 1]);
        assert_eq!(lam.conjugate(), p(&[3, 1, 1]));
        assert_eq!(p(&[4, 2]).conjugate(), p(&[2, 2, 1, 1]));
        assert_eq!(lam.multiplicities(), vec![(1, 2), (3, 1)]);
        assert!(p(&[2, 1]).is_vertical_strip_over(&p(&[1])));
        assert!(!p(&[2]).is_vertical_strip_over(&Partition::empty()));
        assert!(p(&[1, 1]).is_vertical_strip_over(&Partition::empty()));
        assert!(!p(&[1]).is_vertical_strip_over(&p(&[1, 1])));
    }
}
