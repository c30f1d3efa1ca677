use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use super::rational::{from_biguint, Rational};

/// Univariate polynomial with rational coefficients, lowest degree first.
/// Trailing zero coefficients are always trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(alloc::vec![c])
    }

    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// `Σ |a_j|` over all coefficients.
    pub fn abs_coeff_sum(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, a| acc + a.abs())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = alloc::vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `C(k, p) = k(k-1)…(k-p+1) / p!` as a polynomial in `k`.
    pub fn binomial(p: usize) -> Self {
        let mut acc = Poly::constant(Rational::one());
        let mut fact = Rational::one();
        for i in 0..p {
            acc = acc.mul(&Poly::new(alloc::vec![-Rational::from_integer((i as i64).into()), Rational::one()]));
            fact *= Rational::from_integer(((i + 1) as i64).into());
        }
        acc.scale(&fact.recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_at(&self, k: &BigUint) -> Rational {
        self.eval(&from_biguint(k))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if first {
                if a.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if a.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let m = a.abs();
            match i {
                0 => write!(f, "{}", m)?,
                _ if m.is_one() => {}
                _ => write!(f, "{}*", m)?,
            }
            match i {
                0 => {}
                1 => f.write_str("k")?,
                _ => write!(f, "k^{}", i)?,
            }
        }
        Ok(())
    }
}
