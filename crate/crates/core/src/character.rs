//! Irreducible characters of symmetric groups and their character
//! polynomials in the cycle counts `m_1, m_2, ...`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, partitions_up_to, Partition};
use crate::perm::{cycle_types, CycleType};
use crate::rational::{big, binomial, Rational};

/// `λ[n] = (n - |λ|, λ_1, λ_2, ...)`.
pub fn pad(lambda: &Partition, n: usize) -> Result<Partition> {
    let size = lambda.size();
    if n < size || n - size < lambda.first() as usize {
        return Err(Error::Domain(format!("{lambda}[{n}] undefined")));
    }
    let mut parts = Vec::with_capacity(lambda.len() + 1);
    parts.push((n - size) as u32);
    parts.extend_from_slice(lambda.parts());
    Ok(Partition::from_unsorted(parts))
}

thread_local! {
    static MN_MEMO: RefCell<HashMap<(Partition, Partition), i64>> = RefCell::new(HashMap::new());
}

/// `χ^λ_ρ` by the Murnaghan–Nakayama rule.
pub fn mn_character(lambda: &Partition, rho: &Partition) -> Result<i64> {
    if lambda.size() != rho.size() {
        return Err(Error::Domain(format!(
            "character of {lambda} at class {rho}: sizes differ"
        )));
    }
    Ok(mn_memo(lambda, rho.parts()))
}

fn mn_memo(lambda: &Partition, rho: &[u32]) -> i64 {
    let Some((&strip, rest)) = rho.split_first() else {
        return 1;
    };
    let key = (lambda.clone(), Partition::from_unsorted(rho.to_vec()));
    if let Some(v) = MN_MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    let mut total = 0i64;
    for (smaller, height) in remove_rim_hooks(lambda, strip) {
        let term = mn_memo(&smaller, rest);
        total = if height % 2 == 0 {
            total.checked_add(term)
        } else {
            total.checked_sub(term)
        }
        .expect("character value overflows i64");
    }
    MN_MEMO.with(|m| m.borrow_mut().insert(key, total));
    total
}

/// Every partition obtained by removing a border strip of `len` boxes,
/// with the strip's height (rows spanned minus one).
fn remove_rim_hooks(lambda: &Partition, len: u32) -> Vec<(Partition, usize)> {
    let parts = lambda.parts();
    let l = parts.len() as i64;
    let beta: Vec<i64> = parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + l - 1 - i as i64)
        .collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        let target = b - len as i64;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let new_parts = moved
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (l - 1 - j as i64)) as u32)
            .collect();
        out.push((Partition::from_unsorted(new_parts), height));
    }
    out
}

/// Character table of `S_n`: rows are irreducibles, columns are classes,
/// both in the order of [`partitions_of`].
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub n: usize,
    pub irreps: Vec<Partition>,
    pub classes: Vec<CycleType>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        let irreps = partitions_of(n);
        let classes = cycle_types(n);
        let values = irreps
            .iter()
            .map(|lam| classes.iter().map(|c| mn_memo(lam, c.partition().parts())).collect())
            .collect();
        CharacterTable {
            n,
            irreps,
            classes,
            values,
        }
    }

    pub fn row(&self, lambda: &Partition) -> Option<&[i64]> {
        self.irreps
            .iter()
            .position(|l| l == lambda)
            .map(|i| self.values[i].as_slice())
    }
}

/// A product `prod_i C(m_i, r_i)`, stored sparsely as `(i, r_i)` pairs with
/// `r_i > 0`, ascending in `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleMonomial(Vec<(u32, u32)>);

impl CycleMonomial {
    /// The monomial for `ρ = 1^{r_1} 2^{r_2} ...`.
    pub fn from_cycle_type(rho: &Partition) -> Self {
        CycleMonomial(
            rho.multiplicities()
                .into_iter()
                .map(|(i, m)| (i, m as u32))
                .collect(),
        )
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.0
    }

    /// Weighted degree `sum_i i r_i`.
    pub fn weighted_degree(&self) -> usize {
        self.0.iter().map(|&(i, r)| (i * r) as usize).sum()
    }

    pub fn eval(&self, ct: &CycleType) -> num_bigint::BigInt {
        self.0
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, &(i, r)| {
                acc * binomial(ct.m(i) as i64, r as i64)
            })
    }
}

impl fmt::Display for CycleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let factors: Vec<String> = self
            .0
            .iter()
            .map(|&(i, r)| {
                if r == 1 {
                    format!("m{i}")
                } else {
                    format!("C(m{i},{r})")
                }
            })
            .collect();
        write!(f, "{}", factors.join("*"))
    }
}

/// A polynomial in the cycle counts, written in the binomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CycleCountPolynomial {
    terms: BTreeMap<CycleMonomial, Rational>,
}

impl CycleCountPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, monomial: CycleMonomial, coeff: Rational) {
        let entry = self.terms.entry(monomial.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CycleMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &CycleMonomial) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn weighted_degree(&self) -> usize {
        self.terms.keys().map(CycleMonomial::weighted_degree).max().unwrap_or(0)
    }

    pub fn eval(&self, ct: &CycleType) -> Rational {
        self.terms
            .iter()
            .map(|(mono, c)| c * big(mono.eval(ct)))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for CycleCountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest weighted degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.weighted_degree().cmp(&a.0.weighted_degree()).then(b.0.cmp(a.0)));
        for (idx, (mono, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mono_str = mono.to_string();
            if mag.is_one() {
                write!(f, "{mono_str}")?;
            } else if mono.0.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{mono_str}")?;
            }
        }
        Ok(())
    }
}

/// Character polynomial of `χ^{λ[n]}`:
/// `sum_{|ρ| <= |λ|} F_ρ^λ prod_i C(m_i, r_i)` with
/// `F_ρ^λ = (-1)^{|λ|-|ρ|} sum_μ χ^μ_ρ`, the sum over `μ ⊢ |ρ|` such that
/// `λ/μ` is a vertical strip.
pub fn char_poly(lambda: &Partition) -> CycleCountPolynomial {
    let size = lambda.size();
    assert!(size <= 12, "char_poly supports |λ| <= 12");
    let mut poly = CycleCountPolynomial::new();
    for rho in partitions_up_to(size) {
        let s = rho.size();
        let inner: i64 = partitions_of(s)
            .iter()
            .filter(|mu| lambda.is_vertical_strip_over(mu))
            .map(|mu| mn_memo(mu, rho.parts()))
            .sum();
        if inner == 0 {
            continue;
        }
        let sign = if (size - s) % 2 == 0 { 1 } else { -1 };
        poly.add_term(CycleMonomial::from_cycle_type(&rho), crate::rational::int(sign * inner));
    }
    poly
}

pub fn eval_char_poly(cp: &CycleCountPolynomial, ct: &CycleType) -> Rational {
    cp.eval(ct)
}
