use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use super::UnaryError;
use crate::linalg::{jordan_decompose, pow, JordanDecomposition, Poly, RMatrix, Rational};

/// One `p(k) λᵏ` summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub eigenvalue: Rational,
    pub poly: Poly,
}

/// `uᵀ Uᵏ v = c + Σᵢ pᵢ(k) λᵢᵏ` for every `k ≥ transient`.
///
/// Eigenvalues are strictly descending and lie in `(0, 1)`; every polynomial
/// is nonzero. Nilpotent parts are left out and covered by `transient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    limit: Rational,
    terms: Vec<Term>,
    transient: usize,
    max_block: usize,
}

impl ClosedForm {
    /// The constant `c = lim_{k→∞} uᵀ Uᵏ v`.
    pub fn limit(&self) -> &Rational {
        &self.limit
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Below this exponent the form may disagree with direct powering.
    pub fn transient(&self) -> usize {
        self.transient
    }

    /// Largest Jordan block of the underlying matrix.
    pub fn max_block_size(&self) -> usize {
        self.max_block
    }

    /// Maximum degree over all polynomials (0 without terms).
    pub fn degree_bound(&self) -> usize {
        self.terms.iter().filter_map(|t| t.poly.degree()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ_{i ≥ from} Σ_j |a_{i,j}|`.
    pub fn coefficient_sum(&self, from: usize) -> Rational {
        self.terms
            .iter()
            .skip(from)
            .fold(Rational::zero(), |acc, t| acc + t.poly.abs_coeff_sum())
    }

    pub fn evaluate(&self, k: &BigUint) -> Rational {
        self.terms.iter().fold(self.limit.clone(), |acc, t| {
            acc + t.poly.eval_at(k) * pow(&t.eigenvalue, k)
        })
    }

    /// `Σᵢ pᵢ(k) λᵢᵏ`, the signed distance from the limit.
    pub fn deviation(&self, k: &BigUint) -> Rational {
        self.evaluate(k) - &self.limit
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.limit)?;
        for t in &self.terms {
            write!(f, " + ({})*({})^k", t.poly, t.eigenvalue)?;
        }
        if self.transient > 0 {
            write!(f, "  [k >= {}]", self.transient)?;
        }
        Ok(())
    }
}

pub fn closed_form(u: &[Rational], upper: &RMatrix, v: &[Rational]) -> Result<ClosedForm, UnaryError> {
    let jd = jordan_decompose(upper)?;
    closed_form_with(&jd, u, v)
}

/// Closed form from a precomputed Jordan decomposition of `U`.
pub fn closed_form_with(jd: &JordanDecomposition, u: &[Rational], v: &[Rational]) -> Result<ClosedForm, UnaryError> {
    let n = jd.s.rows();
    for w in [u, v] {
        if w.len() != n {
            return Err(UnaryError::VectorLength { expected: n, found: w.len() });
        }
    }
    let x = jd.s_inv.left_mul_vec(u)?;
    let y = jd.s.mul_vec(v)?;

    let mut limit = Rational::zero();
    let mut nilpotent = false;
    let mut terms: Vec<Term> = Vec::new();
    for (o, b) in jd.block_offsets() {
        let lambda = &b.eigenvalue;
        if lambda.is_negative() || *lambda > Rational::one() {
            return Err(UnaryError::EigenvalueOutOfRange(lambda.clone()));
        }
        if lambda.is_one() {
            if b.size > 1 {
                return Err(UnaryError::UnitJordanBlock(b.size));
            }
            limit += &x[o] * &y[o];
            continue;
        }
        if lambda.is_zero() {
            nilpotent = true;
            continue;
        }
        // (J_ℓ(λ)ᵏ)_{i,i+p} = C(k,p) λ^{k-p}.
        let inv = lambda.recip();
        let mut scale = Rational::one();
        let mut poly = Poly::zero();
        for p in 0..b.size {
            let w = (0..b.size - p).fold(Rational::zero(), |acc, i| acc + &x[o + i] * &y[o + i + p]);
            if !w.is_zero() {
                poly = poly.add(&Poly::binomial(p).scale(&(w * &scale)));
            }
            scale *= &inv;
        }
        match terms.last_mut() {
            Some(t) if t.eigenvalue == *lambda => t.poly = t.poly.add(&poly),
            _ => terms.push(Term { eigenvalue: lambda.clone(), poly }),
        }
    }
    terms.retain(|t| !t.poly.is_zero());
    Ok(ClosedForm {
        limit,
        terms,
        transient: if nilpotent { n } else { 0 },
        max_block: jd.max_block_size(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot, int, rat};
    use alloc::vec;

    /// Independent check: `uᵀ Uᵏ v` by repeated vector-matrix products.
    fn direct(u: &[Rational], a: &RMatrix, v: &[Rational], upto: u64) -> Vec<Rational> {
        let mut x = u.to_vec();
        let mut out = Vec::new();
        for _ in 0..=upto {
            out.push(dot(&x, v));
            x = a.left_mul_vec(&x).unwrap();
        }
        out
    }

    fn assert_matches(cf: &ClosedForm, u: &[Rational], a: &RMatrix, v: &[Rational]) {
        for (k, p) in direct(u, a, v, 50).into_iter().enumerate() {
            if k >= cf.transient() {
                assert_eq!(cf.evaluate(&BigUint::from(k)), p, "k = {k}");
            }
        }
    }

    #[test]
    fn halving() {
        let a = RMatrix::from_fracs(&[&[(1, 2), (1, 2)], &[(0, 1), (1, 1)]]);
        let (u, v) = (vec![int(1), int(0)], vec![int(0), int(1)]);
        let cf = closed_form(&u, &a, &v).unwrap();
        assert_eq!(cf.limit(), &int(1));
        assert_eq!(cf.terms(), &[Term { eigenvalue: rat(1, 2), poly: Poly::constant(int(-1)) }]);
        assert_eq!(cf.transient(), 0);
        assert_matches(&cf, &u, &a, &v);
    }

    #[test]
    fn identity_is_constant() {
        let a = RMatrix::identity(3);
        let (u, v) = (vec![rat(1, 4), rat(1, 4), rat(1, 2)], vec![int(1), int(0), int(1)]);
        let cf = closed_form(&u, &a, &v).unwrap();
        assert!(cf.is_constant());
        assert_eq!(cf.limit(), &rat(3, 4));
    }

    #[test]
    fn jordan_block_gives_linear_polynomial() {
        let a = RMatrix::from_fracs(&[&[(1, 2), (1, 1)], &[(0, 1), (1, 2)]]);
        let (u, v) = (vec![int(1), int(0)], vec![int(0), int(1)]);
        let cf = closed_form(&u, &a, &v).unwrap();
        assert_eq!(cf.limit(), &int(0));
        assert_eq!(cf.terms(), &[Term { eigenvalue: rat(1, 2), poly: Poly::new(vec![int(0), int(2)]) }]);
        assert_matches(&cf, &u, &a, &v);
    }

    #[test]
    fn nilpotent_part_sets_transient() {
        let a = RMatrix::from_fracs(&[
            &[(0, 1), (1, 2), (1, 2), (0, 1)],
            &[(0, 1), (0, 1), (0, 1), (1, 1)],
            &[(0, 1), (0, 1), (1, 3), (2, 3)],
            &[(0, 1), (0, 1), (0, 1), (1, 1)],
        ]);
        let (u, v) = (vec![int(1), int(0), int(0), int(0)], vec![int(0), int(1), int(0), int(1)]);
        let cf = closed_form(&u, &a, &v).unwrap();
        assert_eq!(cf.transient(), 4);
        assert_eq!(cf.limit(), &int(1));
        assert_matches(&cf, &u, &a, &v);
    }

    #[test]
    fn rejects_unit_jordan_block() {
        let a = RMatrix::from_ints(&[&[1, 1], &[0, 1]]);
        let r = closed_form(&[int(1), int(0)], &a, &[int(0), int(1)]);
        assert_eq!(r.unwrap_err(), UnaryError::UnitJordanBlock(2));
    }

    #[test]
    fn rejects_non_triangular() {
        let a = RMatrix::from_fracs(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]);
        let r = closed_form(&[int(1), int(0)], &a, &[int(0), int(1)]);
        assert!(matches!(r, Err(UnaryError::Linalg(_))));
    }
}
