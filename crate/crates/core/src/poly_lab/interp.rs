use std::collections::BTreeMap;

use crate::character::{pad, CharacterTable};
use crate::error::{Error, Result};
use crate::moments::{BruteForce, PatternClassSums};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::rational::{int, to_display_string, Rational};

use super::poly::RationalPolynomial;

/// The unique polynomial of degree `< points.len()` through `points`.
pub fn lagrange(points: &[(Rational, Rational)]) -> RationalPolynomial {
    let mut acc = RationalPolynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = RationalPolynomial::constant(int(1));
        let mut denom = int(1);
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &RationalPolynomial::linear_root(xj);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

/// Interpolation nodes for `a^λ_{σ_1..σ_d}`: the first `D + 1` integers from
/// `n0 = sum k_i + |λ|`, where `D = sum k_i - |λ|`, plus one check node.
pub fn interpolation_nodes(patterns: &[Permutation], lambda: &Partition) -> Result<(usize, usize)> {
    let total: usize = patterns.iter().map(Permutation::len).sum();
    let size = lambda.size();
    if size > total {
        return Err(Error::Domain(format!(
            "|λ| = {size} exceeds total pattern size {total}; the polynomial is zero"
        )));
    }
    Ok((total + size, total - size))
}

/// Interpolates `a^λ_{σ_1..σ_d}(n)` from exact brute-force values and
/// confirms the result at one extra node.
pub fn interpolate_a(engine: &BruteForce, patterns: &[Permutation], lambda: &Partition) -> Result<RationalPolynomial> {
    let (n0, degree) = interpolation_nodes(patterns, lambda)?;
    let check = n0 + degree + 1;
    if check > engine.cap() {
        return Err(Error::CapExceeded { n: check, cap: engine.cap() });
    }
    let points = (n0..=n0 + degree)
        .map(|n| Ok((int(n as i64), engine.coefficient_alpha(patterns, lambda, n)?)))
        .collect::<Result<Vec<_>>>()?;
    let poly = lagrange(&points);
    let actual = engine.coefficient_alpha(patterns, lambda, check)?;
    let predicted = poly.eval(&int(check as i64));
    if predicted != actual {
        return Err(Error::PolynomialityViolation {
            n: check,
            predicted: to_display_string(&predicted),
            actual: to_display_string(&actual),
        });
    }
    Ok(poly)
}

/// Smallest `n` such that the brute-force coefficient equals `poly(n)` for
/// every `n` from there up to `n_max`, scanning downward from `n_max`.
pub fn observed_agreement_start(
    engine: &BruteForce,
    patterns: &[Permutation],
    lambda: &Partition,
    poly: &RationalPolynomial,
    n_max: usize,
) -> Result<usize> {
    let mut start = n_max + 1;
    for n in (0..=n_max).rev() {
        match engine.coefficient_alpha(patterns, lambda, n) {
            Ok(v) if v == poly.eval(&int(n as i64)) => start = n,
            Ok(_) | Err(Error::Domain(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn lagrange_recovers_quadratic() {
        let f = RationalPolynomial::new(vec![frac(1, 3), int(-2), frac(5, 7)]);
        let pts: Vec<_> = (0..3).map(|x| (int(x), f.eval(&int(x)))).collect();
        assert_eq!(lagrange(&pts), f);
    }

    #[test]
    fn interpolates_small_cases() {
        let engine = BruteForce::default();
        let one = Partition::new(vec![1]).unwrap();
        let p = interpolate_a(&engine, &[perm("12")], &one).unwrap();
        assert_eq!(p, RationalPolynomial::new(vec![frac(1, 6), frac(1, 6)]));
        let p = interpolate_a(&engine, &[perm("21")], &one).unwrap();
        assert_eq!(p, RationalPolynomial::new(vec![frac(-1, 6), frac(-1, 6)]));
        // (3n - 4)(n + 1)/60
        let p = interpolate_a(&engine, &[perm("123")], &one).unwrap();
        assert_eq!(p, RationalPolynomial::new(vec![frac(-4, 60), frac(-1, 60), frac(3, 60)]));
        assert!(interpolate_a(&engine, &[perm("12")], &Partition::new(vec![3]).unwrap()).is_err());
    }

    #[test]
    fn agreement_start_for_identity() {
        let engine = BruteForce::default();
        let one = Partition::new(vec![1]).unwrap();
        let p = interpolate_a(&engine, &[perm("12")], &one).unwrap();
        assert_eq!(observed_agreement_start(&engine, &[perm("12")], &one, &p, 7).unwrap(), 2);
    }
}

/// Interpolates `a^λ_σ` for many single patterns of one size `k`, sharing
/// one enumeration pass per `n` across all of `S_k`.
pub struct SigmaInterpolator<'a> {
    engine: &'a BruteForce,
    k: usize,
    sums: BTreeMap<usize, (PatternClassSums, CharacterTable)>,
}

impl<'a> SigmaInterpolator<'a> {
    pub fn new(engine: &'a BruteForce, k: usize) -> Self {
        SigmaInterpolator {
            engine,
            k,
            sums: BTreeMap::new(),
        }
    }

    fn ensure(&mut self, n: usize) -> Result<&(PatternClassSums, CharacterTable)> {
        if !self.sums.contains_key(&n) {
            if n > self.engine.cap() {
                return Err(Error::CapExceeded { n, cap: self.engine.cap() });
            }
            let sums = self.engine.pattern_class_sums(self.k, n)?;
            self.sums.insert(n, (sums, CharacterTable::new(n)));
        }
        Ok(&self.sums[&n])
    }

    pub fn alpha(&mut self, sigma: &Permutation, lambda: &Partition, n: usize) -> Result<Rational> {
        assert_eq!(sigma.len(), self.k);
        let padded = pad(lambda, n)?;
        let (sums, table) = self.ensure(n)?;
        Ok(sums.alpha_for_padded(sigma, &padded, table))
    }

    pub fn interpolate(&mut self, sigma: &Permutation, lambda: &Partition) -> Result<RationalPolynomial> {
        let patterns = std::slice::from_ref(sigma);
        let (n0, degree) = interpolation_nodes(patterns, lambda)?;
        let check = n0 + degree + 1;
        let points = (n0..=n0 + degree)
            .map(|n| Ok((int(n as i64), self.alpha(sigma, lambda, n)?)))
            .collect::<Result<Vec<_>>>()?;
        let poly = lagrange(&points);
        let actual = self.alpha(sigma, lambda, check)?;
        let predicted = poly.eval(&int(check as i64));
        if predicted != actual {
            return Err(Error::PolynomialityViolation {
                n: check,
                predicted: to_display_string(&predicted),
                actual: to_display_string(&actual),
            });
        }
        Ok(poly)
    }
}
