//! Exact real-root counting and isolation via Sturm sequences.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::RationalPolynomial;
use crate::error::{Error, Result};
use crate::rational::{big, frac, int, simplest_in_interval, Rational};

/// Bisection stops once every isolating interval is at most this wide.
pub fn isolation_width() -> Rational {
    frac(1, 1024)
}

/// Sturm chain `p, p', -rem(p, p'), ...` of the square-free part of `p`.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<RationalPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &RationalPolynomial) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of the zero polynomial");
        let base = p.square_free_part();
        let mut chain = vec![base.clone(), base.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            chain.push(-&r);
        }
        chain.pop();
        SturmSequence { chain }
    }

    pub fn base(&self) -> &RationalPolynomial {
        &self.chain[0]
    }

    fn sign_changes(&self, signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        self.sign_changes(self.chain.iter().map(|q| sign(&q.eval(x))))
    }

    fn variations_at_pos_inf(&self) -> usize {
        self.sign_changes(self.chain.iter().map(|q| sign(q.leading_coefficient().unwrap())))
    }

    fn variations_at_neg_inf(&self) -> usize {
        self.sign_changes(self.chain.iter().map(|q| {
            let s = sign(q.leading_coefficient().unwrap());
            if q.degree().unwrap() % 2 == 1 { -s } else { s }
        }))
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    /// Distinct real roots on the whole line.
    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
/// Endpoints that are roots are rejected, so callers perturb explicitly.
pub fn sturm_root_count(p: &RationalPolynomial, lo: &Rational, hi: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain("root count of the zero polynomial".into()));
    }
    if lo >= hi {
        return Err(Error::Domain(format!("empty interval ({lo}, {hi})")));
    }
    for e in [lo, hi] {
        if p.eval(e).is_zero() {
            return Err(Error::Domain(format!("endpoint {e} is a root")));
        }
    }
    Ok(SturmSequence::new(p).count_half_open(lo, hi))
}

/// Cauchy bound: every root has absolute value below `1 + max |a_i / a_d|`.
pub fn cauchy_bound(p: &RationalPolynomial) -> Rational {
    let lc = p.leading_coefficient().expect("nonzero polynomial").abs();
    let d = p.degree().unwrap();
    let m = p.coeffs()[..d]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    int(1) + m
}

/// Result of exact real-root analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    /// One half-open interval `(lo, hi]` per distinct real root, ascending.
    pub isolating_intervals: Vec<(Rational, Rational)>,
    pub exact_rational_roots: Vec<Rational>,
    /// Multiplicity of each distinct real root, aligned with the intervals.
    pub multiplicities: Vec<usize>,
    pub is_real_rooted: bool,
    pub all_roots_below_bound: bool,
    /// An upper bound on every real root: the right end of the last interval.
    pub max_root_upper_bound: Option<Rational>,
}

impl RootReport {
    pub fn has_root(&self, x: &Rational) -> bool {
        self.exact_rational_roots.contains(x)
    }
}

/// Isolates every real root of `p`, finds the rational ones exactly, decides
/// real-rootedness, and checks every root is `< bound`.
pub fn analyze_roots(p: &RationalPolynomial, bound: &Rational) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::Domain("root analysis of the zero polynomial".into()));
    }
    let sturm = SturmSequence::new(p);
    let cb = cauchy_bound(p);
    let mut pending = vec![(-cb.clone(), cb)];
    let mut isolated = Vec::new();
    let width = isolation_width();
    while let Some((a, b)) = pending.pop() {
        let count = sturm.count_half_open(&a, &b);
        if count == 0 {
            continue;
        }
        if count == 1 && &b - &a <= width {
            isolated.push((a, b));
            continue;
        }
        let mid = (&a + &b) / int(2);
        pending.push((a, mid.clone()));
        pending.push((mid, b));
    }
    isolated.sort();

    let rational_roots = rational_roots(sturm.base(), &isolated);

    let factors = p.square_free_factors();
    let mut multiplicities = vec![0usize; isolated.len()];
    let mut accounted = 0usize;
    for (i, f) in factors.iter().enumerate() {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        let fs = SturmSequence::new(f);
        accounted += fs.count_real() * (i + 1);
        for (slot, (a, b)) in multiplicities.iter_mut().zip(&isolated) {
            if fs.count_half_open(a, b) == 1 {
                *slot = i + 1;
            }
        }
    }
    let degree = p.degree().unwrap();
    let max_root_upper_bound = isolated.last().map(|(_, b)| b.clone());
    let all_roots_below_bound = match isolated.last() {
        None => true,
        Some((a, b)) => {
            if b < bound {
                true
            } else if a >= bound {
                false
            } else {
                // The interval straddles the bound; the root is in (a, b].
                sturm.count_half_open(a, bound) == 1 && sign(&p.eval(bound)) != 0
            }
        }
    };
    Ok(RootReport {
        isolating_intervals: isolated,
        exact_rational_roots: rational_roots,
        multiplicities,
        is_real_rooted: accounted == degree,
        all_roots_below_bound,
        max_root_upper_bound,
    })
}

/// Rational roots of the square-free `base`: by the rational root theorem the
/// denominator of any root divides the leading coefficient `d` of the
/// primitive integer form, so after narrowing each interval below `1/d` every
/// candidate `p/q` inside it is tested exactly for each divisor `q` of `d`.
fn rational_roots(base: &RationalPolynomial, isolated: &[(Rational, Rational)]) -> Vec<Rational> {
    let ints = base.primitive_integer_coeffs();
    let lead = ints.last().unwrap().abs();
    let divisors = divisors_of(&lead);
    let sturm = SturmSequence::new(base);
    let limit = Rational::new(BigInt::one(), lead.clone());
    let mut out = Vec::new();
    for (a, b) in isolated {
        let (mut a, mut b) = (a.clone(), b.clone());
        if base.eval(&b).is_zero() {
            out.push(b);
            continue;
        }
        while &b - &a >= limit {
            let mid = (&a + &b) / int(2);
            if base.eval(&mid).is_zero() {
                a = mid.clone();
                b = mid;
                break;
            }
            if sturm.count_half_open(&a, &mid) == 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
        if a == b {
            out.push(a);
            continue;
        }
        match &divisors {
            Some(divs) => {
                for q in divs {
                    let qr = big(q.clone());
                    let lo_p = (&a * &qr).floor().to_integer();
                    let hi_p = (&b * &qr).floor().to_integer();
                    let mut num = lo_p;
                    while num <= hi_p {
                        let cand = Rational::new(num.clone(), q.clone());
                        if cand > a && cand <= b && base.eval(&cand).is_zero() {
                            out.push(cand);
                        }
                        num += 1;
                    }
                }
                out.dedup();
            }
            None => {
                // Leading coefficient too large to factor: the unique
                // simplest fraction in a narrow enough interval is the only
                // possible rational root.
                while &b - &a >= &limit * &limit {
                    let mid = (&a + &b) / int(2);
                    if sturm.count_half_open(&a, &mid) == 1 {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                let cand = simplest_in_interval(&a, &b);
                if base.eval(&cand).is_zero() {
                    out.push(cand);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Positive divisors by trial division, or `None` when `n` is too large.
fn divisors_of(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u128().filter(|&v| v < 1u128 << 80)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let root = n.sqrt();
    for d in 1..=root {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d != n / d {
                large.push(BigInt::from(n / d));
            }
        }
    }
    small.extend(large.into_iter().rev());
    Some(small)
}
