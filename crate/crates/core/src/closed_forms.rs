//! Explicit formulas for the identity-pattern coefficients and their
//! building blocks, each paired with a definitional form for cross-checks.
//!
//! `E(n, k, r)` is the expected number of pairs (set of `r` fixed points,
//! increasing `k`-subsequence containing them) for uniform `π ∈ S_n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::poly_lab::RationalPolynomial;
use crate::rational::{big, binomial, binomial_rational, double_factorial, factorial, frac, int, Rational};
use crate::report::{first_failure, Report};

pub use crate::rational::falling_factorial;

fn pow2(e: i64) -> Rational {
    if e >= 0 {
        big(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

fn fact(n: i64) -> Rational {
    big(factorial(n as u64))
}

/// Calls `visit` with every pair of compositions `(n_1..n_{parts})` of `n`
/// and `(k_1..k_{parts})` of `k` with `k_i <= n_i`, passing the product of
/// `C(n_i, k_i)^2`.
fn composition_pairs(n: u32, k: u32, parts: u32, acc: &BigInt, visit: &mut impl FnMut(&BigInt)) {
    if parts == 1 {
        if k <= n {
            let b = binomial(n as i64, k as i64);
            visit(&(acc * &b * &b));
        }
        return;
    }
    for ni in 0..=n {
        for ki in 0..=ni.min(k) {
            let b = binomial(ni as i64, ki as i64);
            composition_pairs(n - ni, k - ki, parts - 1, &(acc * &b * &b), visit);
        }
    }
}

/// `E(n, k, r)` as a normalized sum over compositions of `n - r` and `k - r`
/// into `r + 1` parts.
pub fn e_sum(n: u32, k: u32, r: u32) -> Result<Rational> {
    if n < k {
        return Err(Error::Domain(format!("E({n},{k},{r}) needs n >= k")));
    }
    if r > k {
        return Err(Error::Domain(format!("E({n},{k},{r}) needs r <= k")));
    }
    let mut total = BigInt::zero();
    composition_pairs(n - r, k - r, r + 1, &BigInt::one(), &mut |t| total += t);
    Ok(big(total) / falling_factorial(&int(n as i64), k))
}

/// `2^{k-r} / ((r-1)!! (2k-r)!!)`, shared by `E` and `E'`.
fn e_prefactor(k: u32, r: u32) -> Rational {
    let (k, r) = (k as i64, r as i64);
    pow2(k - r) / big(double_factorial(r - 1) * double_factorial(2 * k - r))
}

/// Closed form of `E(n, k, r)` at any rational `n`, with a half-integer
/// binomial `C(n - r/2, k - r)`. Panics if `r > k`.
pub fn e_closed(n: &Rational, k: u32, r: u32) -> Rational {
    assert!(r <= k, "E(n,{k},{r}) needs r <= k");
    let shifted = n - frac(r as i64, 2);
    e_prefactor(k, r) * binomial_rational(&shifted, k - r)
}

/// `E` over the integers with its combinatorial meaning outside the closed
/// form's window: zero when `r < 0`, `r > k`, `k < 0` or `n < k`.
pub fn e_value(n: i64, k: i64, r: i64) -> Rational {
    if r < 0 || k < 0 || r > k || n < k {
        return Rational::zero();
    }
    e_closed(&int(n), k as u32, r as u32)
}

/// Product form of `E(n, k, 1)`: `2^{k-1} (2n-1)(2n-3)...(2n-2k+3) / (2k-1)!`.
pub fn e_one_product(n: &Rational, k: u32) -> Rational {
    assert!(k >= 1);
    let mut acc = pow2(k as i64 - 1);
    for i in 1..k as i64 {
        acc *= int(2) * n - int(2 * i - 1);
    }
    acc / fact(2 * k as i64 - 1)
}

/// `E'(n, k, r)` from its defining double sum, `r >= 2`.
///
/// Sums over all `0 <= i <= n`, `0 <= j <= k` of
/// `P(i,j) E(i,j,r-2) C(2(n-i-1), 2(k-j-1)) / 2`, normalized by `P(n,k)`.
/// The `i = j = 0` term is where the two-cycle sits at the very start.
pub fn e_prime(n: u32, k: u32, r: u32) -> Result<Rational> {
    if n < k {
        return Err(Error::Domain(format!("E'({n},{k},{r}) needs n >= k")));
    }
    if r < 2 {
        return Err(Error::Domain(format!("E'({n},{k},{r}) is defined by its sum for r >= 2")));
    }
    let (n, k, r) = (n as i64, k as i64, r as i64);
    let mut total = Rational::zero();
    for i in 0..=n {
        for j in 0..=k {
            let e = e_value(i, j, r - 2);
            if e.is_zero() {
                continue;
            }
            let b = binomial(2 * (n - i - 1), 2 * (k - j - 1));
            if b.is_zero() {
                continue;
            }
            total += falling_factorial(&int(i), j as u32) * e * big(b) / int(2);
        }
    }
    Ok(total / falling_factorial(&int(n), k as u32))
}

/// Closed form `2^{k-r} / ((r-1)!! (2k-r)!!) C(n - r/2, k + 1 - r)`.
/// Panics if `r > k + 1`.
pub fn e_prime_closed(n: &Rational, k: u32, r: u32) -> Rational {
    assert!(r <= k + 1, "E'(n,{k},{r}) needs r <= k + 1");
    let shifted = n - frac(r as i64, 2);
    e_prefactor(k, r) * binomial_rational(&shifted, k + 1 - r)
}

/// `E'` over the integers for the recurrences: the closed form when
/// `n >= k` and `0 <= r <= k + 1`, zero otherwise. For `r < 2` there is no
/// defining sum and the closed form is taken as the definition.
pub fn e_prime_value(n: i64, k: i64, r: i64) -> Rational {
    if r < 0 || k < 0 || r > k + 1 || n < k {
        return Rational::zero();
    }
    e_prime_closed(&int(n), k as u32, r as u32)
}

/// `<C(m_1, r), M_{id_k, n}> = sum_{j=0}^{r} E(n - r + j, k, j) / (r - j)!`.
pub fn inner_m1_choose_r(k: u32, r: u32, n: u32) -> Result<Rational> {
    if k == 0 || n < k + r {
        return Err(Error::Domain(format!("<C(m1,{r}), M> with k={k} needs n >= k + r, got n={n}")));
    }
    // Terms with j > k vanish: a k-subsequence holds at most k fixed points.
    Ok((0..=r.min(k))
        .map(|j| e_closed(&int((n - r + j) as i64), k, j) / fact((r - j) as i64))
        .sum())
}

/// `<m_2, M_{id_k, n}> = E(n-2,k,0)/2 + (1/k)(1 - 1/n) E(n-2,k-1,0) + E(n-1,k,1)/n`.
pub fn inner_m2(k: u32, n: u32) -> Result<Rational> {
    if k < 2 || n < k + 2 {
        return Err(Error::Domain(format!("<m2, M> needs k >= 2 and n >= k + 2, got k={k} n={n}")));
    }
    let nr = int(n as i64);
    let kr = int(k as i64);
    Ok(e_closed(&int(n as i64 - 2), k, 0) / int(2)
        + (int(1) - nr.recip()) / kr * e_closed(&int(n as i64 - 2), k - 1, 0)
        + e_closed(&int(n as i64 - 1), k, 1) / nr)
}

/// `C(n - shift, j)` as a polynomial in `n`.
fn binomial_poly(shift: i64, j: i64) -> RationalPolynomial {
    if j < 0 {
        return RationalPolynomial::zero();
    }
    let mut acc = RationalPolynomial::constant(int(1));
    for i in 0..j {
        acc = &acc * &RationalPolynomial::linear_root(&int(shift + i));
    }
    acc.scale(&fact(j).recip())
}

/// `prod_{i=lo}^{hi} (2n - (2i + offset))`, empty product 1.
fn odd_product(lo: i64, hi: i64, offset: i64) -> RationalPolynomial {
    let mut acc = RationalPolynomial::constant(int(1));
    for i in lo..=hi {
        acc = &acc * &RationalPolynomial::from_i64(&[-(2 * i + offset), 2]);
    }
    acc
}

/// The four partitions with explicit identity-pattern formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmallShape {
    Empty,
    One,
    Two,
    OneOne,
}

impl SmallShape {
    pub const ALL: [SmallShape; 4] = [SmallShape::Empty, SmallShape::One, SmallShape::Two, SmallShape::OneOne];

    pub fn from_partition(lambda: &Partition) -> Option<Self> {
        match lambda.parts() {
            [] => Some(SmallShape::Empty),
            [1] => Some(SmallShape::One),
            [2] => Some(SmallShape::Two),
            [1, 1] => Some(SmallShape::OneOne),
            _ => None,
        }
    }

    pub fn partition(self) -> Partition {
        let parts = match self {
            SmallShape::Empty => vec![],
            SmallShape::One => vec![1],
            SmallShape::Two => vec![2],
            SmallShape::OneOne => vec![1, 1],
        };
        Partition::new(parts).unwrap()
    }

    /// Smallest `k` for which the formula is stated.
    pub fn min_k(self) -> u32 {
        match self {
            SmallShape::Empty | SmallShape::One => 1,
            SmallShape::Two | SmallShape::OneOne => 2,
        }
    }

    /// Smallest `n` from which the formula matches the brute-force coefficient.
    pub fn validity_start(self, k: u32) -> u32 {
        match self {
            SmallShape::Empty => 0,
            SmallShape::One => k,
            SmallShape::Two | SmallShape::OneOne => k + 1,
        }
    }
}

/// `a^λ_{id_k}(n)` as an exact polynomial for `λ ∈ {∅, (1), (2), (1,1)}`.
///
/// The `(2)` and `(1,1)` formulas carry terms over `n`; those are combined
/// into one numerator that must be divisible by `n`.
pub fn a_id_closed(lambda: &Partition, k: u32) -> Result<RationalPolynomial> {
    let shape = SmallShape::from_partition(lambda)
        .ok_or_else(|| Error::Domain(format!("no closed form for λ = {lambda}")))?;
    a_id_closed_shape(shape, k)
}

pub fn a_id_closed_shape(shape: SmallShape, k: u32) -> Result<RationalPolynomial> {
    if k < shape.min_k() {
        return Err(Error::Domain(format!("closed form for λ = {} needs k >= {}", shape.partition(), shape.min_k())));
    }
    let k = k as i64;
    let kf = fact(k);
    let half_km1f = int(2) * fact(k - 1);
    let top = pow2(k - 1) / fact(2 * k - 1);
    match shape {
        SmallShape::Empty => Ok(binomial_poly(0, k).scale(&kf.recip())),
        SmallShape::One => {
            // 2^{k-1} (2n-1)(2n-3)...(2n-2k+3) / (2k-1)!  -  C(n-1, k-1)/k!
            let lead = odd_product(1, k - 1, -1).scale(&top);
            Ok(&lead - &binomial_poly(1, k - 1).scale(&kf.recip()))
        }
        SmallShape::Two | SmallShape::OneOne => {
            let tail = odd_product(1, k - 2, 1);
            let (whole, over_n) = if shape == SmallShape::Two {
                let whole = binomial_poly(1, k - 2).scale(&half_km1f.recip());
                let lin = RationalPolynomial::from_i64(&[2 * k - 1, 2 * k - 4]);
                let over_n = &(-&binomial_poly(2, k - 1).scale(&kf.recip())) - &(&lin * &tail).scale(&top);
                (whole, over_n)
            } else {
                let whole = &binomial_poly(2, k - 2).scale(&kf.recip())
                    + &binomial_poly(1, k - 2).scale(&half_km1f.recip());
                let lin = RationalPolynomial::from_i64(&[-(2 * k - 1), 2 * k]);
                let over_n = &binomial_poly(2, k - 1).scale(&kf.recip()) - &(&lin * &tail).scale(&top);
                (whole, over_n)
            };
            let numerator = &(&whole * &RationalPolynomial::x()) + &over_n;
            let (q, rem) = numerator.div_rem(&RationalPolynomial::x());
            if !rem.is_zero() {
                return Err(Error::Consistency(format!(
                    "closed form for λ = {} at k = {k} leaves remainder {rem} after dividing by n",
                    shape.partition()
                )));
            }
            Ok(q)
        }
    }
}

/// `a^{(1)}_σ(n)` from the sum over positions `i` and pattern slots `j`.
pub fn a_sigma_one(sigma: &Permutation, n: u32) -> Result<Rational> {
    let k = sigma.len() as i64;
    if k == 0 || (n as i64) < k {
        return Err(Error::Domain(format!("a_σ^(1)(n) needs 1 <= k <= n, got k={k} n={n}")));
    }
    let n = n as i64;
    let mut total = BigInt::zero();
    for i in 1..=n {
        for j in 1..=k {
            let s = sigma.at(j as usize) as i64;
            total += binomial(i - 1, j - 1) * binomial(i - 1, s - 1) * binomial(n - i, k - j) * binomial(n - i, k - s);
        }
    }
    Ok(big(total) / falling_factorial(&int(n), k as u32) - big(binomial(n - 1, k - 1)) / fact(k))
}

/// `sum_j C(j + σ(j) - 2, j - 1) C(2k - j - σ(j), k - j)`.
pub fn leading_sum(sigma: &Permutation) -> BigInt {
    let k = sigma.len() as i64;
    (1..=k)
        .map(|j| {
            let s = sigma.at(j as usize) as i64;
            binomial(j + s - 2, j - 1) * binomial(2 * k - j - s, k - j)
        })
        .sum()
}

/// Leading (degree `k - 1`) coefficient of `a^{(1)}_σ`.
pub fn a_sigma_one_leading(sigma: &Permutation) -> Result<Rational> {
    let k = sigma.len() as i64;
    if k == 0 {
        return Err(Error::Domain("leading coefficient needs a nonempty pattern".into()));
    }
    Ok(big(leading_sum(sigma)) / fact(2 * k - 1) - (fact(k) * fact(k - 1)).recip())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positivity {
    pub positive: bool,
    pub sum: BigInt,
    pub threshold: BigInt,
    /// `sum - threshold`.
    pub margin: BigInt,
}

/// Whether the leading sum reaches `C(2k-1, k)`, i.e. `a^{(1)}_σ` has a
/// nonnegative leading coefficient.
pub fn positivity_test(sigma: &Permutation) -> Positivity {
    let k = sigma.len() as i64;
    let sum = leading_sum(sigma);
    let threshold = binomial(2 * k - 1, k);
    let margin = &sum - &threshold;
    Positivity {
        positive: sum >= threshold,
        sum,
        threshold,
        margin,
    }
}

/// Truncated power series in `X = x^2`, `Y = y^2` with integer coefficients,
/// indexed `[n][k]` for `X^n Y^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Series {
    c: Vec<Vec<BigInt>>,
}

impl Series {
    fn zero(max_n: usize, max_k: usize) -> Self {
        Series {
            c: vec![vec![BigInt::zero(); max_k + 1]; max_n + 1],
        }
    }

    /// `F = sum C(n,k)^2 X^n Y^k`.
    fn f(max_n: usize, max_k: usize) -> Self {
        let mut s = Series::zero(max_n, max_k);
        for (n, row) in s.c.iter_mut().enumerate() {
            for (k, v) in row.iter_mut().enumerate() {
                let b = binomial(n as i64, k as i64);
                *v = &b * &b;
            }
        }
        s
    }

    fn mul(&self, other: &Series) -> Series {
        let max_n = self.c.len() - 1;
        let max_k = self.c[0].len() - 1;
        let mut out = Series::zero(max_n, max_k);
        for n1 in 0..=max_n {
            for k1 in 0..=max_k {
                let a = &self.c[n1][k1];
                if a.is_zero() {
                    continue;
                }
                for n2 in 0..=max_n - n1 {
                    for k2 in 0..=max_k - k1 {
                        let b = &other.c[n2][k2];
                        if !b.is_zero() {
                            out.c[n1 + n2][k1 + k2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    fn shifted(&self, by: usize) -> Series {
        let max_n = self.c.len() - 1;
        let max_k = self.c[0].len() - 1;
        let mut out = Series::zero(max_n, max_k);
        for n in by..=max_n {
            for k in by..=max_k {
                out.c[n][k] = self.c[n - by][k - by].clone();
            }
        }
        out
    }
}

const GENFUN_LIMIT: usize = 64;

fn genfun_series(power: u32, r: u32, max_n: usize, max_k: usize) -> Result<Series> {
    if max_n > GENFUN_LIMIT || max_k > GENFUN_LIMIT {
        return Err(Error::Domain(format!("series truncation is limited to {GENFUN_LIMIT}")));
    }
    if power == 0 {
        return Err(Error::Domain("power must be positive".into()));
    }
    let f = Series::f(max_n, max_k);
    let mut acc = f.clone();
    for _ in 1..power {
        acc = acc.mul(&f);
    }
    Ok(acc.shifted(r as usize))
}

/// Coefficients of `x^{2n} y^{2k}` in `(xy)^{2r} F^{power}`, indexed `[n][k]`.
pub fn genfun_coeffs(power: u32, r: u32, max_n: usize, max_k: usize) -> Result<Vec<Vec<Rational>>> {
    let s = genfun_series(power, r, max_n, max_k)?;
    Ok(s.c.into_iter().map(|row| row.into_iter().map(big).collect()).collect())
}

/// Coefficients of `G = (1/2) sum C(2n, 2k-1) x^{2n} y^{2k}`.
pub fn g_coeffs(max_n: usize, max_k: usize) -> Vec<Vec<Rational>> {
    (0..=max_n)
        .map(|n| {
            (0..=max_k)
                .map(|k| big(binomial(2 * n as i64, 2 * k as i64 - 1)) / int(2))
                .collect()
        })
        .collect()
}

/// Triples `(n, k, r)` with `1 <= n <= max_n`, `1 <= k <= n`, `r_min <= r <= k`.
fn triples(max_n: i64, r_min: i64) -> impl Iterator<Item = (i64, i64, i64)> {
    (1..=max_n).flat_map(move |n| (1..=n).flat_map(move |k| (r_min..=k).map(move |r| (n, k, r))))
}

fn check_range(max_n: u32) -> Result<()> {
    if max_n > 32 {
        return Err(Error::Domain(format!("identity checks support max_n <= 32, got {max_n}")));
    }
    Ok(())
}

/// Generating-function identities, coefficientwise for `n, k <= max_n`.
pub fn check_genfun(max_n: u32) -> Result<Report> {
    check_range(max_n)?;
    let m = max_n as usize;
    let mut report = Report::new();

    let f2 = genfun_series(2, 1, m, m)?;
    let g = g_coeffs(m, m);
    let bad = first_failure((0..=m).flat_map(|n| (0..=m).map(move |k| (n, k))), |(n, k)| {
        let lhs = big(f2.c[n][k].clone());
        (lhs != g[n][k]).then(|| format!("coefficient (n,k)=({n},{k}): {} vs {}", lhs, g[n][k]))
    });
    report.expect("genfun: x^2 y^2 F^2 = G", format!("all coefficients n,k <= {max_n}"), bad);

    let bad = first_failure(0..=max_n, |r| {
        let table = genfun_series(r + 1, r, m, m).ok()?;
        (r as usize..=m).flat_map(|n| (r as usize..=n).map(move |k| (n, k))).find_map(|(n, k)| {
            let want = falling_factorial(&int(n as i64), k as u32) * e_value(n as i64, k as i64, r as i64);
            (big(table.c[n][k].clone()) != want).then(|| format!("(n,k,r)=({n},{k},{r})"))
        })
    });
    report.expect("genfun: (xy)^{2r} F^{r+1} = P(n,k) E(n,k,r)", format!("n <= {max_n}, r <= k <= n"), bad);

    Ok(report)
}

/// The `E`/`E'` recurrences, both definitions of `E'`, and the diagonal
/// base cases, for every `n <= max_n`.
pub fn check_recurrences(max_n: u32) -> Result<Report> {
    check_range(max_n)?;
    let mut report = Report::new();

    let bad = first_failure(triples(max_n as i64, 0), |(n, k, r)| {
        let lhs = int(n) * e_value(n, k, r);
        let rhs = e_value(n - 1, k - 1, r) + int(n - k) * e_value(n - 1, k, r) + int(2) * e_prime_value(n - 1, k - 1, r);
        (lhs != rhs).then(|| format!("(n,k,r)=({n},{k},{r}): {lhs} vs {rhs}"))
    });
    report.expect("recurrence for E", format!("n <= {max_n}, 0 <= r <= k <= n"), bad);

    let bad = first_failure(triples(max_n as i64, 1), |(n, k, r)| {
        let lhs = int(n) * e_prime_value(n, k, r);
        let rhs = e_value(n - 1, k - 1, r - 2) / int(2)
            + e_prime_value(n - 1, k - 1, r)
            + int(n - k) * e_prime_value(n - 1, k, r)
            + int(2 * (n - k)) * e_value(n - 1, k, r);
        (lhs != rhs).then(|| format!("(n,k,r)=({n},{k},{r}): {lhs} vs {rhs}"))
    });
    report.expect("recurrence for E'", format!("n <= {max_n}, 1 <= r <= k <= n"), bad);

    let bad = first_failure(triples(max_n as i64, 2), |(n, k, r)| {
        let def = e_prime(n as u32, k as u32, r as u32).ok()?;
        let closed = e_prime_closed(&int(n), k as u32, r as u32);
        (def != closed).then(|| format!("(n,k,r)=({n},{k},{r}): {def} vs {closed}"))
    });
    report.expect("E' sum = E' closed form", format!("n <= {max_n}, 2 <= r <= k <= n"), bad);

    let bad = first_failure(1..=max_n, |k| {
        (0..=k).find_map(|r| {
            let base = big(binomial(k as i64, r as i64)) / fact(k as i64);
            let e = e_closed(&int(k as i64), k, r);
            let ep = (r >= 1).then(|| e_prime_closed(&int(k as i64), k, r));
            let ep_want = big(binomial(k as i64, r as i64 - 1)) / fact(k as i64) / int(2);
            if e != base {
                Some(format!("E({k},{k},{r}) = {e}"))
            } else if ep.is_some_and(|v| v != ep_want) {
                Some(format!("E'({k},{k},{r}) base case"))
            } else {
                None
            }
        })
    });
    report.expect("base cases E(k,k,r), E'(k,k,r)", format!("k <= {max_n}"), bad);

    Ok(report)
}

/// [`check_genfun`] followed by [`check_recurrences`].
pub fn check_identities(max_n: u32) -> Result<Report> {
    let mut report = check_genfun(max_n)?;
    report.extend(check_recurrences(max_n)?);
    Ok(report)
}

/// `e_sum = e_closed` and the `r = 1` product form, for `n <= max_n`.
pub fn check_e_forms(max_n: u32) -> Report {
    let mut report = Report::new();
    let bad = first_failure(triples(max_n as i64, 0), |(n, k, r)| {
        let s = e_sum(n as u32, k as u32, r as u32).ok()?;
        let c = e_closed(&int(n), k as u32, r as u32);
        (s != c).then(|| format!("(n,k,r)=({n},{k},{r}): {s} vs {c}"))
    });
    report.expect("E composition sum = E closed form", format!("n <= {max_n}, 0 <= r <= k <= n"), bad);
    let bad = first_failure((1..=max_n as i64).flat_map(|n| (1..=n).map(move |k| (n, k))), |(n, k)| {
        let c = e_closed(&int(n), k as u32, 1);
        let p = e_one_product(&int(n), k as u32);
        (c != p).then(|| format!("(n,k)=({n},{k}): {c} vs {p}"))
    });
    report.expect("E(n,k,1) product form", format!("n <= {max_n}, k <= n"), bad);
    report
}
