//! Exit criteria, one line each. Every comparison is exact rational
//! equality; there is no tolerance.

use std::process::{Command, ExitCode};
use std::time::Instant;

use pattern_lab::character::{char_poly, eval_char_poly, mn_character, pad};
use pattern_lab::closed_forms::{
    a_id_closed_shape, a_sigma_one, a_sigma_one_leading, check_genfun, check_recurrences, e_closed, e_one_product,
    e_sum, inner_m1_choose_r, inner_m2, positivity_test, SmallShape,
};
use pattern_lab::moments::BruteForce;
use pattern_lab::partition::{partitions_of, partitions_up_to, Partition};
use pattern_lab::perm::{class_size, count_increasing, cycle_type, cycle_types, enumerate_permutations, Permutation};
use pattern_lab::poly_lab::{analyze_roots, interpolate_a, sturm_root_count, SigmaInterpolator};
use pattern_lab::rational::{big, binomial, factorial, frac, int, Rational};

type Outcome = Result<String, String>;

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn perms(k: usize) -> Vec<Permutation> {
    enumerate_permutations(k, k).unwrap().collect()
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn closed_form_vs_enumeration() -> Outcome {
    let engine = BruteForce::default();
    let mut count = 0;
    for k in 2..=4usize {
        for shape in SmallShape::ALL {
            let lam = shape.partition();
            let poly = a_id_closed_shape(shape, k as u32).map_err(|e| e.to_string())?;
            for n in shape.validity_start(k as u32) as usize..=8 {
                if pad(&lam, n).is_err() {
                    continue;
                }
                let alpha = engine
                    .coefficient_alpha(&[Permutation::identity(k)], &lam, n)
                    .map_err(|e| e.to_string())?;
                let closed = poly.eval(&int(n as i64));
                ensure(alpha == closed, || format!("k={k} λ={lam} n={n}: {alpha} vs {closed}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} values"))
}

fn e_formulas() -> Outcome {
    let mut count = 0;
    for n in 1..=12u32 {
        for k in 1..=n {
            for r in 0..=k {
                let s = e_sum(n, k, r).map_err(|e| e.to_string())?;
                let c = e_closed(&int(n as i64), k, r);
                ensure(s == c, || format!("E({n},{k},{r}): {s} vs {c}"))?;
                count += 1;
            }
            let c = e_closed(&int(n as i64), k, 1);
            let p = e_one_product(&int(n as i64), k);
            ensure(c == p, || format!("E({n},{k},1) product form: {c} vs {p}"))?;
        }
    }
    Ok(format!("{count} triples"))
}

fn identity_suite() -> Outcome {
    let mut report = check_genfun(12).map_err(|e| e.to_string())?;
    report.extend(check_recurrences(12).map_err(|e| e.to_string())?);
    if let Some(c) = report.failures().next() {
        return Err(format!("{}: {}", c.name, c.detail));
    }
    Ok(format!("{} identity families", report.checks.len()))
}

fn position_sum_vs_enumeration() -> Outcome {
    let engine = BruteForce::default();
    let one = part(&[1]);
    let mut count = 0;
    for k in 2..=4usize {
        for sigma in perms(k) {
            for n in k + 1..=8 {
                let formula = a_sigma_one(&sigma, n as u32).map_err(|e| e.to_string())?;
                let alpha = engine
                    .coefficient_alpha(std::slice::from_ref(&sigma), &one, n)
                    .map_err(|e| e.to_string())?;
                ensure(formula == alpha, || format!("σ={sigma} n={n}: {formula} vs {alpha}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} values, all of S_2, S_3, S_4"))
}

fn leading_coefficients() -> Outcome {
    let engine = BruteForce::default();
    let one = part(&[1]);
    let mut count = 0;
    for k in 3..=4usize {
        for sigma in perms(k) {
            let poly = interpolate_a(&engine, std::slice::from_ref(&sigma), &one).map_err(|e| e.to_string())?;
            let lead = poly.leading_coefficient().map_err(|e| e.to_string())?.clone();
            let closed = a_sigma_one_leading(&sigma).map_err(|e| e.to_string())?;
            ensure(poly.degree() == Some(k - 1) && lead == closed, || {
                format!("σ={sigma}: interpolated {poly} vs leading {closed}")
            })?;
            count += 1;
        }
    }
    for k in 1..=6 {
        ensure(positivity_test(&Permutation::identity(k)).positive, || format!("positivity fails for id_{k}"))?;
    }
    ensure(!positivity_test(&perm("21")).positive, || "positivity holds for 21".into())?;
    let pinned: [(&str, Rational, Rational); 4] = [
        ("id_2", a_sigma_one_leading(&perm("12")).unwrap(), frac(1, 6)),
        ("21", a_sigma_one_leading(&perm("21")).unwrap(), frac(-1, 6)),
        ("a^(2), k=3", a_id_closed_shape(SmallShape::Two, 3).unwrap().coefficient(1), frac(1, 30)),
        ("a^(1,1), k=2", a_id_closed_shape(SmallShape::OneOne, 2).unwrap().coefficient(0), frac(1, 6)),
    ];
    for (name, got, want) in pinned {
        ensure(got == want, || format!("{name}: {got} vs {want}"))?;
    }
    Ok(format!("{count} patterns, pinned values reproduced"))
}

fn root_layouts() -> Outcome {
    let layouts = [
        (SmallShape::One, 1i64, 2i64, true),
        (SmallShape::Two, 1, 3, true),
        (SmallShape::OneOne, 0, 3, false),
    ];
    let mut count = 0;
    for (shape, first, back, minus_one) in layouts {
        for k in 2..=8i64 {
            let p = a_id_closed_shape(shape, k as u32).map_err(|e| e.to_string())?;
            if p.is_zero() {
                ensure(shape == SmallShape::Two && k == 2, || format!("{shape:?} k={k} vanishes"))?;
                continue;
            }
            let mut roots = 0;
            if minus_one {
                ensure(p.eval(&int(-1)) == int(0), || format!("{shape:?} k={k}: -1 is not a root"))?;
                roots += 1;
            }
            for i in first..=k - back {
                let c = sturm_root_count(&p, &int(i), &int(i + 1)).map_err(|e| format!("{shape:?} k={k}: {e}"))?;
                ensure(c == 1, || format!("{shape:?} k={k}: {c} roots in ({i},{})", i + 1))?;
                roots += 1;
            }
            ensure(p.degree() == Some(roots), || format!("{shape:?} k={k}: layout covers {roots} roots"))?;
            let report = analyze_roots(&p, &int(k)).map_err(|e| e.to_string())?;
            ensure(report.is_real_rooted && report.all_roots_below_bound, || {
                format!("{shape:?} k={k}: real-rooted {}, below k {}", report.is_real_rooted, report.all_roots_below_bound)
            })?;
            for n in k..=k + 20 {
                ensure(p.eval(&int(n)) >= int(0), || format!("{shape:?} k={k}: negative at n={n}"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} polynomials"))
}

fn conjectures() -> Outcome {
    let engine = BruteForce::default();
    for k in 2..=3usize {
        let p = interpolate_a(&engine, &[Permutation::identity(k)], &part(&[k as u32])).map_err(|e| e.to_string())?;
        ensure(p.is_zero(), || format!("a_id^({k}) = {p}"))?;
    }
    let mut count = 0;
    for k in 1..=3usize {
        for j in 1..=k as u32 {
            for sigma in perms(k) {
                let p = interpolate_a(&engine, std::slice::from_ref(&sigma), &part(&[j])).map_err(|e| e.to_string())?;
                ensure(p.eval(&int(-1)) == int(0), || format!("σ={sigma} λ=({j}): p(-1) = {}", p.eval(&int(-1))))?;
                count += 1;
            }
        }
    }
    // Optional range: k = 4 through the shared class-sum path.
    let mut lab = SigmaInterpolator::new(&engine, 4);
    let p = lab.interpolate(&Permutation::identity(4), &part(&[4])).map_err(|e| e.to_string())?;
    ensure(p.is_zero(), || format!("a_id^(4) = {p}"))?;
    for j in 1..=4 {
        for sigma in perms(4) {
            let p = lab.interpolate(&sigma, &part(&[j])).map_err(|e| e.to_string())?;
            ensure(p.eval(&int(-1)) == int(0), || format!("σ={sigma} λ=({j}): p(-1) = {}", p.eval(&int(-1))))?;
            count += 1;
        }
    }
    Ok(format!("{count} vanishing checks, zero for k=2,3,4"))
}

fn characters() -> Outcome {
    let mut count = 0;
    for lam in partitions_up_to(4) {
        let cp = char_poly(&lam);
        for n in 2 * lam.size()..=8 {
            let padded = pad(&lam, n).map_err(|e| e.to_string())?;
            for ct in cycle_types(n) {
                let mn = mn_character(&padded, ct.partition()).map_err(|e| e.to_string())?;
                ensure(eval_char_poly(&cp, &ct) == int(mn), || format!("λ={lam} n={n} class {ct}"))?;
                count += 1;
            }
        }
    }
    for n in 0..=7 {
        let fact = big(factorial(n as u64));
        for a in partitions_of(n) {
            for b in partitions_of(n) {
                let mut s = Rational::from_integer(0.into());
                for ct in cycle_types(n) {
                    let x = mn_character(&a, ct.partition()).unwrap() * mn_character(&b, ct.partition()).unwrap();
                    s += big(class_size(&ct)) * int(x);
                }
                let want = if a == b { int(1) } else { int(0) };
                ensure(s / &fact == want, || format!("<χ^{a}, χ^{b}> on S_{n}"))?;
            }
        }
    }
    Ok(format!("{count} character values, orthonormal through n=7"))
}

/// `(1/n!) sum_π weight(π) N_{id_k}(π)` by direct enumeration.
fn enumerated_inner(k: usize, n: usize, weight: impl Fn(&Partition) -> Rational) -> Rational {
    let mut total = Rational::from_integer(0.into());
    for pi in enumerate_permutations(n, 10).unwrap() {
        let c = count_increasing(k, &pi);
        if c > 0 {
            total += weight(cycle_type(&pi).partition()) * int(c as i64);
        }
    }
    total / big(factorial(n as u64))
}

fn decompositions() -> Outcome {
    let mut count = 0;
    for k in 1..=4usize {
        for r in 0..=2usize {
            for n in k + r..=8 {
                let brute = enumerated_inner(k, n, |p| big(binomial(p.multiplicity(1) as i64, r as i64)));
                let formula = inner_m1_choose_r(k as u32, r as u32, n as u32).map_err(|e| e.to_string())?;
                ensure(brute == formula, || format!("C(m1,{r}) k={k} n={n}: {brute} vs {formula}"))?;
                count += 1;
            }
        }
        if k >= 2 {
            for n in k + 2..=8 {
                let brute = enumerated_inner(k, n, |p| int(p.multiplicity(2) as i64));
                let formula = inner_m2(k as u32, n as u32).map_err(|e| e.to_string())?;
                ensure(brute == formula, || format!("m2 k={k} n={n}: {brute} vs {formula}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} inner products"))
}

fn determinism() -> Outcome {
    let run = |threads: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_pattern-lab"))
            .args(["verify", "--suite", "all", "--format", "json", "--threads", threads])
            .env_remove("PATTERN_LAB_CAP")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("exit status {} at --threads {threads}", out.status))?;
        Ok(out.stdout)
    };
    let one = run("1")?;
    let eight = run("8")?;
    ensure(one == eight, || "reports differ between --threads 1 and --threads 8".into())?;
    Ok(format!("{} identical bytes", one.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("closed forms match enumeration for identity patterns", closed_form_vs_enumeration),
        ("composition sum and closed form of E agree", e_formulas),
        ("generating-function identity and recurrences", identity_suite),
        ("position-sum formula matches enumeration for λ=(1)", position_sum_vs_enumeration),
        ("leading coefficients and positivity test", leading_coefficients),
        ("root layouts and positivity of closed forms", root_layouts),
        ("vanishing at n=-1 and zero top coefficient", conjectures),
        ("character polynomials and orthonormality", characters),
        ("inner-product decompositions match enumeration", decompositions),
        ("verify output independent of thread count", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {:>2}  {name}  [{detail}; exact; {secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}  [{why}; {secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
