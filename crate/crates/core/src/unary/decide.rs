use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{
    bound_at_limit, bound_constant, bound_not_limit, closed_form_with, triangular_reduction, ClosedForm,
    HorizonBound, TriangularReduction, UnaryError,
};
use crate::linalg::{dot, jordan_decompose, JordanDecomposition, Rational};
use crate::pfa::{Pfa, Query};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Maximum number of exponents scanned exactly, over all residues.
    pub budget: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { budget: 1_000_000 }
    }
}

/// A word `a^{residue + quotient · period}` satisfying the query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryWitness {
    pub residue: BigUint,
    pub quotient: BigUint,
    pub period: BigUint,
    pub probability: Rational,
}

impl UnaryWitness {
    pub fn length(&self) -> BigUint {
        &self.residue + &self.quotient * &self.period
    }
}

/// Work done for one residue class.
#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub residue: BigUint,
    pub closed_form: ClosedForm,
    pub bound: HorizonBound,
    /// Exponents evaluated exactly for this residue.
    pub scanned: u64,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub query: Query,
    pub period: BigUint,
    /// Smallest witness by residue, then quotient; `None` means no word satisfies the query.
    pub witness: Option<UnaryWitness>,
    /// One report per residue examined, in order.
    pub residues: Vec<ResidueReport>,
}

impl Decision {
    pub fn is_empty(&self) -> bool {
        self.witness.is_none()
    }
}

struct Decider {
    reduction: TriangularReduction,
    jordan: JordanDecomposition,
    remaining: u64,
    budget: u64,
}

impl Decider {
    fn new(pfa: &Pfa, opts: DecideOptions) -> Result<Self, UnaryError> {
        let reduction = triangular_reduction(pfa)?;
        let jordan = jordan_decompose(reduction.upper())?;
        Ok(Decider { reduction, jordan, remaining: opts.budget, budget: opts.budget })
    }

    fn residue(
        &mut self,
        query: &Query,
        s: &BigUint,
        u_s: Vec<Rational>,
    ) -> Result<(ResidueReport, Option<UnaryWitness>), UnaryError> {
        let v = self.reduction.final_vector();
        let cf = closed_form_with(&self.jordan, &u_s, v)?;
        let lambda = query.lambda();
        let bound = if lambda != cf.limit() {
            bound_not_limit(&cf, lambda)?
        } else if cf.is_constant() {
            bound_constant(&cf)
        } else {
            bound_at_limit(&cf)?
        };

        let witness = |r: &BigUint, p: Rational| UnaryWitness {
            residue: s.clone(),
            quotient: r.clone(),
            period: self.reduction.period().clone(),
            probability: p,
        };
        let upper = self.reduction.upper();
        let mut x = u_s;
        let mut r = BigUint::zero();
        let mut scanned = 0u64;
        let mut found = None;
        while r <= bound.k_star {
            if self.remaining == 0 {
                return Err(UnaryError::BudgetExceeded {
                    budget: self.budget,
                    residue: s.clone(),
                    k_star: bound.k_star.clone(),
                });
            }
            self.remaining -= 1;
            scanned += 1;
            let p = dot(&x, v);
            if query.holds(&p) {
                found = Some(witness(&r, p));
                break;
            }
            x = upper.left_mul_vec(&x)?;
            r += 1u32;
        }
        if found.is_none() && query.mode().accepts(bound.eventual_sign()) {
            // x now sits at r = k_star + 1, inside the certified region.
            let p = dot(&x, v);
            if !query.holds(&p) {
                return Err(UnaryError::CertificateViolated { residue: s.clone() });
            }
            found = Some(witness(&r, p));
        }
        let report = ResidueReport { residue: s.clone(), closed_form: cf, bound, scanned };
        Ok((report, found))
    }
}

/// Decides whether some `aᵏ` satisfies `query`, residues in ascending order.
pub fn decide(pfa: &Pfa, query: &Query, opts: DecideOptions) -> Result<Decision, UnaryError> {
    let mut decider = Decider::new(pfa, opts)?;
    let period = decider.reduction.period().clone();
    let mut residues = Vec::new();
    let mut s = BigUint::zero();
    let mut u_s = decider.reduction.initial().to_vec();
    while s < period {
        let next = decider.reduction.block_matrix().left_mul_vec(&u_s)?;
        let (report, witness) = decider.residue(query, &s, u_s)?;
        residues.push(report);
        if witness.is_some() {
            return Ok(Decision { query: query.clone(), period, witness, residues });
        }
        u_s = next;
        s += BigUint::one();
    }
    Ok(Decision { query: query.clone(), period, witness: None, residues })
}

/// Decides the query restricted to lengths `k ≡ s (mod d)`.
pub fn decide_residue(pfa: &Pfa, query: &Query, s: &BigUint, opts: DecideOptions) -> Result<Decision, UnaryError> {
    let mut decider = Decider::new(pfa, opts)?;
    let period = decider.reduction.period().clone();
    if *s >= period {
        return Err(UnaryError::ResidueOutOfRange { residue: s.clone(), period });
    }
    let u_s = decider.reduction.residue_vector(s);
    let (report, witness) = decider.residue(query, s, u_s)?;
    Ok(Decision { query: query.clone(), period, witness, residues: alloc::vec![report] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat, RMatrix};
    use crate::pfa::Mode;
    use alloc::vec;

    fn halving() -> Pfa {
        Pfa::unary(
            vec![int(1), int(0)],
            RMatrix::from_fracs(&[&[(1, 2), (1, 2)], &[(0, 1), (1, 1)]]),
            vec![false, true],
        )
        .unwrap()
    }

    fn run(pfa: &Pfa, mode: Mode, lambda: Rational) -> Decision {
        decide(pfa, &Query::new(mode, lambda).unwrap(), DecideOptions::default()).unwrap()
    }

    #[test]
    fn reach_three_quarters() {
        let d = run(&halving(), Mode::Reach, rat(3, 4));
        let w = d.witness.unwrap();
        assert_eq!(w.length(), BigUint::from(2u32));
        assert_eq!(w.probability, rat(3, 4));
    }

    #[test]
    fn never_reaches_one() {
        let d = run(&halving(), Mode::EmptyGe, int(1));
        assert!(d.is_empty());
        assert_eq!(d.residues[0].bound.eventual_sign(), core::cmp::Ordering::Less);
    }

    #[test]
    fn one_third_is_not_in_range() {
        assert!(run(&halving(), Mode::Reach, rat(1, 3)).is_empty());
    }

    #[test]
    fn certified_region_supplies_witness() {
        // P(aᵏ) = 1 - 2⁻ᵏ exceeds 0.99 only from k = 7 on.
        let d = run(&halving(), Mode::EmptyGt, rat(99, 100));
        assert_eq!(d.witness.unwrap().length(), BigUint::from(7u32));
        let d = run(&halving(), Mode::EmptyLt, rat(1, 100));
        assert_eq!(d.witness.unwrap().length(), BigUint::zero());
    }

    #[test]
    fn residues_of_a_cycle() {
        let mut a = RMatrix::zeros(3, 3);
        for i in 0..3 {
            a[(i, (i + 1) % 3)] = int(1);
        }
        let pfa = Pfa::unary(vec![int(1), int(0), int(0)], a, vec![false, false, true]).unwrap();
        let d = run(&pfa, Mode::Reach, int(1));
        let w = d.witness.unwrap();
        assert_eq!((w.residue, w.quotient, w.period), (BigUint::from(2u32), BigUint::zero(), BigUint::from(3u32)));
        let q = Query::new(Mode::Reach, int(1)).unwrap();
        let only = decide_residue(&pfa, &q, &BigUint::one(), DecideOptions::default()).unwrap();
        assert!(only.is_empty());
        assert!(matches!(
            decide_residue(&pfa, &q, &BigUint::from(3u32), DecideOptions::default()),
            Err(UnaryError::ResidueOutOfRange { .. })
        ));
    }

    #[test]
    fn budget_is_enforced() {
        // Cutpoint 1/3 is off the limit, so the horizon is 108.
        let q = Query::new(Mode::Reach, rat(1, 3)).unwrap();
        let err = decide(&halving(), &q, DecideOptions { budget: 5 }).unwrap_err();
        assert!(matches!(err, UnaryError::BudgetExceeded { budget: 5, .. }));
    }
}
