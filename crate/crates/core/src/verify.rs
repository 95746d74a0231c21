//! Named verification suites that cross-check independent computation paths
//! and collect the outcome into a [`Report`].

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::character::{char_poly, eval_char_poly, mn_character, pad};
use crate::closed_forms::{
    a_id_closed_shape, a_sigma_one, a_sigma_one_leading, check_e_forms, check_genfun, check_recurrences,
    inner_m1_choose_r, inner_m2, positivity_test, SmallShape,
};
use crate::error::{Error, Result};
use crate::moments::{inner_product, BruteForce, ClassFunction};
use crate::partition::{partitions_of, partitions_up_to};
use crate::perm::{class_size, cycle_types, enumerate_permutations, Permutation};
use crate::poly_lab::{conjecture_suite, degree_two_leading, SigmaInterpolator};
use crate::rational::{big, binomial, factorial, frac, int, to_display_string, Rational};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    ClosedForms,
    Lemmas,
    Genfun,
    Recurrences,
    Conjectures,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["closed-forms", "lemmas", "genfun", "recurrences", "conjectures", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClosedForms => "closed-forms",
            Suite::Lemmas => "lemmas",
            Suite::Genfun => "genfun",
            Suite::Recurrences => "recurrences",
            Suite::Conjectures => "conjectures",
            Suite::All => "all",
        }
    }

    /// Whether `--max-n` bounds a brute-force enumeration for this suite
    /// (as opposed to an exact identity range).
    pub fn enumerates(self) -> bool {
        !matches!(self, Suite::Genfun | Suite::Recurrences)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "closed-forms" => Suite::ClosedForms,
            "lemmas" => Suite::Lemmas,
            "genfun" => Suite::Genfun,
            "recurrences" => Suite::Recurrences,
            "conjectures" => Suite::Conjectures,
            "all" => Suite::All,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

/// Ranges for the suites. `brute_max_n` bounds enumerated `S_n`;
/// `identity_max_n` bounds exact identity checks; `root_max_k` bounds the
/// closed-form root analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub brute_max_n: usize,
    pub identity_max_n: u32,
    pub max_k: usize,
    pub root_max_k: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            brute_max_n: 8,
            identity_max_n: 12,
            max_k: 3,
            root_max_k: 8,
        }
    }
}

pub fn run_suite(suite: Suite, engine: &BruteForce, cfg: &VerifyConfig) -> Result<Report> {
    if suite.enumerates() && cfg.brute_max_n > engine.cap() {
        return Err(Error::CapExceeded {
            n: cfg.brute_max_n,
            cap: engine.cap(),
        });
    }
    match suite {
        Suite::ClosedForms => closed_forms_suite(engine, cfg),
        Suite::Lemmas => lemmas_suite(engine, cfg),
        Suite::Genfun => check_genfun(cfg.identity_max_n),
        Suite::Recurrences => check_recurrences(cfg.identity_max_n),
        Suite::Conjectures => conjecture_suite(engine, cfg.max_k as u32, cfg.root_max_k),
        Suite::All => {
            let mut report = Report::new();
            for s in [Suite::ClosedForms, Suite::Lemmas, Suite::Genfun, Suite::Recurrences, Suite::Conjectures] {
                report.extend(run_suite(s, engine, cfg)?);
            }
            Ok(report)
        }
    }
}

/// `a_id^λ(n)` from the closed form against brute force, for the four small
/// shapes, `k = 1..=max_k` and `n` from the formula's validity start.
pub fn closed_form_vs_brute_force(engine: &BruteForce, max_k: usize, max_n: usize) -> Result<Report> {
    let mut report = Report::new();
    for shape in SmallShape::ALL {
        let lam = shape.partition();
        for k in (shape.min_k() as usize)..=max_k {
            let poly = a_id_closed_shape(shape, k as u32)?;
            let start = shape.validity_start(k as u32) as usize;
            let mut checked = 0;
            let mut bad = None;
            for n in start..=max_n {
                if pad(&lam, n).is_err() {
                    continue;
                }
                let alpha = engine.coefficient_alpha(&[Permutation::identity(k)], &lam, n)?;
                let closed = poly.eval(&int(n as i64));
                checked += 1;
                if alpha != closed {
                    bad = Some(format!("n={n}: brute force {} vs closed form {}", to_display_string(&alpha), to_display_string(&closed)));
                    break;
                }
            }
            report.expect(
                format!("closed form a^{lam}_id, k={k}"),
                format!("{checked} values, n={start}..{max_n}"),
                bad,
            );
        }
    }
    Ok(report)
}

/// `a_σ^{(1)}(n)` from the position sum against brute force for every
/// `σ ∈ S_k`, `k <= max_k`. Agreement is required for `n > k` and reported
/// at `n = k`.
pub fn sigma_one_vs_brute_force(engine: &BruteForce, max_k: usize, max_n: usize) -> Result<Report> {
    let mut report = Report::new();
    let one = crate::partition::Partition::new(vec![1]).unwrap();
    for k in 1..=max_k {
        let mut lab = SigmaInterpolator::new(engine, k);
        let mut bad = None;
        let mut at_k = 0;
        let patterns: Vec<Permutation> = enumerate_permutations(k, k)?.collect();
        for sigma in &patterns {
            if k <= max_n && pad(&one, k).is_ok() && lab.alpha(sigma, &one, k)? == a_sigma_one(sigma, k as u32)? {
                at_k += 1;
            }
            for n in k + 1..=max_n {
                let formula = a_sigma_one(sigma, n as u32)?;
                let alpha = lab.alpha(sigma, &one, n)?;
                if formula != alpha && bad.is_none() {
                    bad = Some(format!("σ={sigma} n={n}: {} vs {}", to_display_string(&formula), to_display_string(&alpha)));
                }
            }
        }
        report.expect(
            format!("a_σ^(1) position sum, all σ in S_{k}"),
            format!("n={}..{max_n}", k + 1),
            bad,
        );
        report.info(format!("a_σ^(1) position sum at n=k, S_{k}"), format!("{at_k} of {} agree", patterns.len()));
    }
    Ok(report)
}

/// Leading coefficient of interpolated `a_σ^{(1)}` against the closed
/// expression, for every `σ ∈ S_k`.
pub fn leading_vs_interpolation(engine: &BruteForce, k: usize) -> Result<Report> {
    let mut report = Report::new();
    let one = crate::partition::Partition::new(vec![1]).unwrap();
    let mut lab = SigmaInterpolator::new(engine, k);
    let mut bad = None;
    let mut count = 0;
    for sigma in enumerate_permutations(k, k)? {
        let poly = lab.interpolate(&sigma, &one)?;
        let interp = poly.coefficient(k - 1);
        let closed = a_sigma_one_leading(&sigma)?;
        count += 1;
        if interp != closed && bad.is_none() {
            bad = Some(format!("σ={sigma}: interpolated {interp} vs {closed}"));
        }
    }
    report.expect(format!("a_σ^(1) leading coefficient, all σ in S_{k}"), format!("{count} patterns"), bad);
    Ok(report)
}

fn closed_forms_suite(engine: &BruteForce, cfg: &VerifyConfig) -> Result<Report> {
    let mut report = check_e_forms(cfg.identity_max_n);
    report.extend(closed_form_vs_brute_force(engine, cfg.max_k, cfg.brute_max_n)?);
    report.extend(sigma_one_vs_brute_force(engine, cfg.max_k, cfg.brute_max_n)?);
    for k in 2..=cfg.max_k {
        report.extend(leading_vs_interpolation(engine, k)?);
    }

    let values: [(&str, Rational, Rational); 4] = [
        ("leading coefficient a_12^(1)", a_sigma_one_leading(&"12".parse()?)?, frac(1, 6)),
        ("leading coefficient a_21^(1)", a_sigma_one_leading(&"21".parse()?)?, frac(-1, 6)),
        ("degree 1 coefficient a^(2)_id, k=3", a_id_closed_shape(SmallShape::Two, 3)?.coefficient(1), frac(1, 30)),
        ("leading coefficient a^(1,1)_id, k=2", a_id_closed_shape(SmallShape::OneOne, 2)?.coefficient(0), frac(1, 6)),
    ];
    for (name, got, want) in values {
        report.expect(name, to_display_string(&want), (got != want).then(|| format!("got {got}")));
    }
    let cross = degree_two_leading(SmallShape::Two, 3) == frac(1, 30);
    report.expect("factored degree k-2 coefficient, k=3", "1/30", (!cross).then(|| "mismatch".to_string()));

    let bad = (1..=6)
        .find(|&k| !positivity_test(&Permutation::identity(k)).positive)
        .map(|k| format!("fails at k={k}"));
    report.expect("positivity test holds for identity, k <= 6", "", bad);
    let t = positivity_test(&"21".parse()?);
    report.expect(
        "positivity test fails for 21",
        format!("margin {}", t.margin),
        t.positive.then(|| "unexpectedly positive".to_string()),
    );
    Ok(report)
}

/// `<f, M_{id_k, n}>` by direct enumeration, where `f` is given on cycle
/// types through `weight`.
fn brute_inner(engine: &BruteForce, k: usize, n: usize, weight: impl Fn(&crate::perm::CycleType) -> Rational) -> Result<Rational> {
    let m = engine.moment_class_function(&[Permutation::identity(k)], n)?;
    let values = m.classes().iter().map(&weight).collect();
    inner_product(&ClassFunction::from_values(n, values)?, &m)
}

fn lemmas_suite(engine: &BruteForce, cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report::new();
    let max_n = cfg.brute_max_n;

    let mut bad = None;
    let mut checked = 0;
    'outer: for lam in partitions_up_to(4) {
        let cp = char_poly(&lam);
        for n in 2 * lam.size()..=max_n {
            let padded = pad(&lam, n)?;
            for ct in cycle_types(n) {
                let mn = mn_character(&padded, ct.partition())?;
                checked += 1;
                if eval_char_poly(&cp, &ct) != int(mn) {
                    bad = Some(format!("λ={lam} n={n} class {ct}"));
                    break 'outer;
                }
            }
        }
    }
    report.expect("character polynomials match characters, |λ| <= 4", format!("{checked} values, n <= {max_n}"), bad);

    let mut bad = None;
    for n in 0..=max_n.min(7) {
        let classes = cycle_types(n);
        let irreps = partitions_of(n);
        let fact = big(factorial(n as u64));
        for (i, a) in irreps.iter().enumerate() {
            for b in &irreps[i..] {
                let mut s = Rational::zero();
                for c in &classes {
                    let x = mn_character(a, c.partition())? * mn_character(b, c.partition())?;
                    s += big(class_size(c)) * int(x);
                }
                let want = if a == b { int(1) } else { int(0) };
                if s / &fact != want && bad.is_none() {
                    bad = Some(format!("n={n}: <χ^{a}, χ^{b}>"));
                }
            }
        }
    }
    report.expect("character orthonormality", format!("n <= {}", max_n.min(7)), bad);

    let mut bad = None;
    let mut checked = 0;
    for k in 1..=cfg.max_k {
        for r in 0..=2usize {
            for n in k + r..=max_n {
                let brute = brute_inner(engine, k, n, |c| big(binomial(c.m(1) as i64, r as i64)))?;
                let formula = inner_m1_choose_r(k as u32, r as u32, n as u32)?;
                checked += 1;
                if brute != formula && bad.is_none() {
                    bad = Some(format!("k={k} r={r} n={n}: {brute} vs {formula}"));
                }
            }
        }
    }
    report.expect("<C(m1,r), M_id> decomposition, r <= 2", format!("{checked} values, k <= {}", cfg.max_k), bad);

    let mut bad = None;
    let mut checked = 0;
    for k in 2..=cfg.max_k {
        for n in k + 2..=max_n {
            let brute = brute_inner(engine, k, n, |c| int(c.m(2) as i64))?;
            let formula = inner_m2(k as u32, n as u32)?;
            checked += 1;
            if brute != formula && bad.is_none() {
                bad = Some(format!("k={k} n={n}: {brute} vs {formula}"));
            }
        }
    }
    report.expect("<m2, M_id> decomposition", format!("{checked} values, k <= {}", cfg.max_k), bad);
    Ok(report)
}
