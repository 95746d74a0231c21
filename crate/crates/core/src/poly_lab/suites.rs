//! Report-producing checks on root layouts, positivity, and vanishing
//! patterns of the coefficient polynomials.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::closed_forms::{a_id_closed_shape, a_sigma_one_leading, SmallShape};
use crate::error::{Error, Result};
use crate::moments::BruteForce;
use crate::partition::{partitions_of, Partition};
use crate::perm::{enumerate_permutations, Permutation};
use crate::rational::{big, binomial, factorial, int, to_display_string, Rational};
use crate::report::Report;

use super::interp::{interpolate_a, observed_agreement_start, SigmaInterpolator};
use super::poly::RationalPolynomial;
use super::roots::{analyze_roots, sturm_root_count};

/// Integers `n` in `[k, k + 20]` checked for nonnegativity.
pub const POSITIVITY_WINDOW: i64 = 20;

fn shape_label(shape: SmallShape) -> String {
    shape.partition().to_string()
}

/// `(first i, last i)` of the unit intervals `(i, i+1)` holding one root
/// each, and whether `-1` is an exact root.
fn expected_layout(shape: SmallShape, k: i64) -> Option<(i64, i64, bool)> {
    match shape {
        SmallShape::Empty => None,
        SmallShape::One => Some((1, k - 2, true)),
        SmallShape::Two => Some((1, k - 3, true)),
        SmallShape::OneOne => Some((0, k - 3, false)),
    }
}

/// Exact root count in each unit interval plus the `-1` root; `None` if the
/// layout matches.
fn layout_failure(p: &RationalPolynomial, first: i64, last: i64, minus_one: bool) -> Option<String> {
    if minus_one && !p.eval(&int(-1)).is_zero() {
        return Some(format!("p(-1) = {}", to_display_string(&p.eval(&int(-1)))));
    }
    for i in first..=last {
        match sturm_root_count(p, &int(i), &int(i + 1)) {
            Ok(1) => {}
            Ok(c) => return Some(format!("{c} roots in ({i},{})", i + 1)),
            Err(e) => return Some(format!("interval ({i},{}): {e}", i + 1)),
        }
    }
    let expected = (last - first + 1).max(0) as usize + usize::from(minus_one);
    let degree = p.degree().unwrap_or(0);
    (expected != degree).then(|| format!("layout accounts for {expected} roots, degree is {degree}"))
}

/// Real-rootedness, roots below `k`, and nonnegativity on `[k, k + 20]`.
fn positivity_failure(p: &RationalPolynomial, k: i64) -> Result<Option<String>> {
    if p.is_zero() {
        return Ok(None);
    }
    let report = analyze_roots(p, &int(k))?;
    if !report.is_real_rooted {
        return Ok(Some("not real-rooted".into()));
    }
    if !report.all_roots_below_bound {
        return Ok(Some(format!("a root is >= {k}")));
    }
    for n in k..=k + POSITIVITY_WINDOW {
        let v = p.eval(&int(n));
        if v.is_negative() {
            return Ok(Some(format!("value {} at n={n}", to_display_string(&v))));
        }
    }
    Ok(None)
}

/// Degree `k-2` coefficient of `a^{(2)}_{id_k}` and `a^{(1,1)}_{id_k}` in
/// factored form: `c/(2(2k-1)!) ((k+1) C(2k-1,k-1) - 2^{2k-1})` with
/// `c = k-2` and `c = k` respectively.
pub fn degree_two_leading(shape: SmallShape, k: u32) -> Rational {
    let k = k as i64;
    let c = if shape == SmallShape::Two { k - 2 } else { k };
    let inner = big(binomial(2 * k - 1, k - 1)) * int(k + 1) - big(num_bigint::BigInt::from(1) << (2 * k - 1) as usize);
    int(c) * inner / (int(2) * big(factorial(2 * k as u64 - 1)))
}

/// Root layouts, leading coefficients, and positivity of the closed forms
/// for `k <= k_max`, all in exact arithmetic.
pub fn closed_form_root_report(k_max: u32) -> Result<Report> {
    let mut report = Report::new();
    for shape in [SmallShape::One, SmallShape::Two, SmallShape::OneOne] {
        for k in 2..=k_max {
            let p = a_id_closed_shape(shape, k)?;
            let name = format!("root layout a^{}_id, k={k}", shape_label(shape));
            if p.is_zero() {
                report.pass(name, "identically zero");
                continue;
            }
            let (first, last, minus_one) = expected_layout(shape, k as i64).unwrap();
            let mut parts = Vec::new();
            if minus_one {
                parts.push("root -1".to_string());
            }
            if first <= last {
                parts.push(format!("one root in each (i,i+1) for i={first}..{last}"));
            }
            let detail = parts.join(", ");
            report.expect(name, detail, layout_failure(&p, first, last, minus_one));
        }
    }
    for shape in [SmallShape::Two, SmallShape::OneOne] {
        let bad = (2..=k_max).find_map(|k| {
            let p = a_id_closed_shape(shape, k).ok()?;
            let got = p.coefficient(k as usize - 2);
            let want = degree_two_leading(shape, k);
            if got != want {
                Some(format!("k={k}: {got} vs {want}"))
            } else if got.is_negative() {
                Some(format!("k={k}: negative {got}"))
            } else {
                None
            }
        });
        report.expect(
            format!("degree k-2 coefficient of a^{}_id", shape_label(shape)),
            format!("matches factored form and is >= 0 for k=2..{k_max}"),
            bad,
        );
    }
    for shape in SmallShape::ALL {
        let mut bad = None;
        for k in shape.min_k().max(1)..=k_max {
            let p = a_id_closed_shape(shape, k)?;
            if let Some(why) = positivity_failure(&p, k as i64)? {
                bad = Some(format!("k={k}: {why}"));
                break;
            }
        }
        report.expect(
            format!("real-rooted, roots < k, nonnegative: a^{}_id", shape_label(shape)),
            format!("k <= {k_max}, n in [k, k+{POSITIVITY_WINDOW}]"),
            bad,
        );
    }
    Ok(report)
}

/// Covers of `sigma` in weak order: swap adjacent positions holding an
/// ascent.
pub fn weak_order_covers(sigma: &Permutation) -> Vec<Permutation> {
    let w = sigma.word();
    (0..w.len().saturating_sub(1))
        .filter(|&i| w[i] < w[i + 1])
        .map(|i| {
            let mut v = w.to_vec();
            v.swap(i, i + 1);
            Permutation::new(v).unwrap()
        })
        .collect()
}

/// Whether the patterns with nonnegative leading coefficient of `a^{(1)}_σ`
/// form a lower set in weak order on `S_k`. Returns the set size and a
/// violating cover `(u, v)` with `v` in the set and `u` not, if any.
pub fn weak_order_lower_set(k: usize) -> Result<(usize, usize, Option<(Permutation, Permutation)>)> {
    let all: Vec<Permutation> = enumerate_permutations(k, k.max(1))?.collect();
    let good: BTreeSet<Vec<u32>> = all
        .iter()
        .filter(|s| !a_sigma_one_leading(s).map(|c| c.is_negative()).unwrap_or(true))
        .map(|s| s.word().to_vec())
        .collect();
    let violation = all.iter().find_map(|u| {
        if good.contains(u.word()) {
            return None;
        }
        weak_order_covers(u)
            .into_iter()
            .find(|v| good.contains(v.word()))
            .map(|v| (u.clone(), v))
    });
    Ok((good.len(), all.len(), violation))
}

fn one_row(j: u32) -> Partition {
    Partition::new(vec![j]).unwrap()
}

/// Conjectural patterns checked by interpolation from brute force for
/// `k <= k_max`, plus closed-form positivity for `k <= closed_k_max`.
pub fn conjecture_suite(engine: &BruteForce, k_max: u32, closed_k_max: u32) -> Result<Report> {
    let mut report = Report::new();
    for k in 1..=k_max as usize {
        let mut lab = SigmaInterpolator::new(engine, k);
        let patterns: Vec<Permutation> = enumerate_permutations(k, k)?.collect();

        for j in 1..=k as u32 {
            let lam = one_row(j);
            let mut misses = Vec::new();
            for sigma in &patterns {
                match lab.interpolate(sigma, &lam) {
                    Ok(p) => {
                        if !p.eval(&int(-1)).is_zero() {
                            misses.push(sigma.to_string());
                        }
                    }
                    Err(e @ Error::PolynomialityViolation { .. }) => misses.push(format!("{sigma} ({e})")),
                    Err(e) => return Err(e),
                }
            }
            let failure = (!misses.is_empty()).then(|| format!("counterexamples: {}", misses.join(" ")));
            report.expect(
                format!("a_σ^{lam} vanishes at n=-1, all σ in S_{k}"),
                format!("{} patterns", patterns.len()),
                failure,
            );
        }

        let id = Permutation::identity(k);
        let top = one_row(k as u32);
        match lab.interpolate(&id, &top) {
            Ok(p) if p.is_zero() => report.pass(format!("a_id^{top} is zero, k={k}"), "interpolated polynomial is 0"),
            Ok(p) => report.fail(format!("a_id^{top} is zero, k={k}"), format!("got {p}")),
            Err(e @ Error::PolynomialityViolation { .. }) => report.fail(format!("a_id^{top} is zero, k={k}"), e.to_string()),
            Err(e) => return Err(e),
        }

        for size in 2..=k as u32 {
            for lam in partitions_of(size as usize) {
                if lam.len() == 1 {
                    continue;
                }
                let mut vanish = 0;
                for sigma in &patterns {
                    if lab.interpolate(sigma, &lam)?.eval(&int(-1)).is_zero() {
                        vanish += 1;
                    }
                }
                report.info(
                    format!("a_σ^{lam} at n=-1, S_{k}"),
                    format!("{vanish} of {} vanish", patterns.len()),
                );
            }
        }

        let mut not_rooted = Vec::new();
        for size in 0..=k as u32 {
            for lam in partitions_of(size as usize) {
                let p = lab.interpolate(&id, &lam)?;
                if let Some(why) = positivity_failure(&p, k as i64)? {
                    not_rooted.push(format!("{lam}: {why}"));
                }
            }
        }
        report.info(
            format!("a_id^λ real-rooted with roots < k and nonnegative, all |λ| <= {k}"),
            if not_rooted.is_empty() { "holds".to_string() } else { not_rooted.join("; ") },
        );
    }

    report.extend(closed_form_root_report(closed_k_max)?);

    for k in 2..=closed_k_max.min(8) as usize {
        let (count, total, violation) = weak_order_lower_set(k)?;
        let detail = match violation {
            None => format!("{count} of {total} have nonnegative leading coefficient; lower set in weak order"),
            Some((u, v)) => format!(
                "{count} of {total} have nonnegative leading coefficient; not a lower set ({u} < {v})"
            ),
        };
        report.info(format!("weak order, nonnegative a_σ^(1) leading coefficient, S_{k}"), detail);
    }

    let mixed: [(&[&str], &[u32]); 4] = [
        (&["12", "12"], &[]),
        (&["12", "21"], &[]),
        (&["12", "21"], &[1]),
        (&["21", "21"], &[1, 1]),
    ];
    for (words, parts) in mixed {
        let patterns: Vec<Permutation> = words.iter().map(|w| w.parse().unwrap()).collect();
        let lam = Partition::new(parts.to_vec()).unwrap();
        let name = format!("agreement start {} λ={lam}", words.join(","));
        match interpolate_a(engine, &patterns, &lam) {
            Ok(p) => {
                let total: usize = patterns.iter().map(Permutation::len).sum();
                let top = total + lam.size() + 1;
                let start = observed_agreement_start(engine, &patterns, &lam, &p, top)?;
                report.info(name, format!("agrees from n={start}, guaranteed from n={}", total + lam.size()));
            }
            Err(Error::CapExceeded { n, cap }) => report.info(name, format!("skipped: needs n={n} > cap {cap}")),
            Err(e) => report.fail(name, e.to_string()),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::report::Status;

    #[test]
    fn closed_form_roots_to_eight() {
        let r = closed_form_root_report(8).unwrap();
        for c in &r.checks {
            assert_eq!(c.status, Status::Pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn degree_two_leading_values() {
        assert_eq!(degree_two_leading(SmallShape::Two, 3), frac(1, 30));
        assert_eq!(degree_two_leading(SmallShape::Two, 2), int(0));
        assert_eq!(degree_two_leading(SmallShape::OneOne, 2), frac(1, 6));
    }

    #[test]
    fn weak_order_covers_s3() {
        let covers = weak_order_covers(&"123".parse().unwrap());
        assert_eq!(covers.len(), 2);
        assert!(weak_order_covers(&"321".parse().unwrap()).is_empty());
        let (count, total, _) = weak_order_lower_set(2).unwrap();
        assert_eq!((count, total), (1, 2));
    }

    #[test]
    fn conjectures_small() {
        let r = conjecture_suite(&BruteForce::default(), 3, 5).unwrap();
        for c in r.failures() {
            panic!("{}: {}", c.name, c.detail);
        }
    }
}
