use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, int, to_display_string, Rational};

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![int(0), int(1)])
    }

    /// `x - a`.
    pub fn linear_root(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), int(1)])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Result<&Rational> {
        self.coeffs
            .last()
            .ok_or_else(|| Error::Domain("zero polynomial has no leading coefficient".into()))
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coefficient(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlc = divisor.coeffs.last().expect("division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / dlc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Square-free factors `[f_1, f_2, ...]` with `p = c * prod f_i^i`
    /// (Yun's algorithm); each `f_i` is monic and may be the constant 1.
    pub fn square_free_factors(&self) -> Vec<Self> {
        assert!(!self.is_zero(), "square-free decomposition of zero");
        let mut out = Vec::new();
        let d = self.derivative();
        let mut a = self.gcd(&d);
        if a.is_zero() {
            a = Self::constant(int(1));
        }
        let mut b = self.div_rem(&a).0;
        let mut c = d.div_rem(&a).0;
        loop {
            let diff = &c - &b.derivative();
            if b.degree() == Some(0) {
                break;
            }
            let f = b.gcd(&diff);
            b = b.div_rem(&f).0;
            c = diff.div_rem(&f).0;
            out.push(f);
        }
        out
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn square_free_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.is_zero() {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// Integer content-free form with positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let den = common_denominator(&self.coeffs);
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() {
            let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
            for c in &mut ints {
                *c = &*c / &g * &sign;
            }
        }
        ints
    }

    /// Divides by `x - a` exactly, or `None` if `a` is not a root.
    pub fn deflate(&self, a: &Rational) -> Option<Self> {
        let (q, r) = self.div_rem(&Self::linear_root(a));
        r.is_zero().then_some(q)
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..len).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl fmt::Display for RationalPolynomial {
    /// Descending powers in `n`, e.g. `1/6*n^2 - n + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let coeff = to_display_string(&mag);
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{coeff}")?,
                (_, true) => {}
                (_, false) => write!(f, "{coeff}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "n")?,
                _ => write!(f, "n^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_i64(c)
    }

    #[test]
    fn trims_and_reports_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).leading_coefficient().is_err());
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a - &a, RationalPolynomial::zero());
        assert_eq!((&a * &b).eval(&int(3)), int(8));
        assert_eq!(p(&[0, 0, 3]).derivative(), p(&[0, 6]));
    }

    #[test]
    fn division_and_gcd() {
        let f = &p(&[-1, 0, 1]) * &p(&[2, 1]);
        let (q, r) = f.div_rem(&p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, &p(&[-1, 1]) * &p(&[2, 1]));
        assert_eq!(f.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn yun_factors() {
        // (x-1)(x+2)^2(x-3)^3
        let a = p(&[-1, 1]);
        let b = p(&[2, 1]);
        let c = p(&[-3, 1]);
        let f = &(&a * &(&b * &b)) * &(&c * &(&c * &c));
        let factors = f.scale(&frac(7, 3)).square_free_factors();
        assert_eq!(factors, vec![a, b, c]);
        assert_eq!(f.square_free_part().degree(), Some(3));
    }

    #[test]
    fn primitive_form() {
        let f = RationalPolynomial::new(vec![frac(-1, 6), frac(-1, 6)]);
        let ints: Vec<i64> = f.primitive_integer_coeffs().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(ints, vec![1, 1]);
    }

    #[test]
    fn display() {
        let f = RationalPolynomial::new(vec![int(3), int(-1), frac(1, 6)]);
        assert_eq!(f.to_string(), "1/6*n^2 - n + 3");
        assert_eq!(p(&[0, -1]).to_string(), "-n");
    }
}
