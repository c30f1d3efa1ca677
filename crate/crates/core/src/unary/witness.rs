use num_bigint::BigUint;

use super::{cycle_period, UnaryError};
use crate::pfa::{Pfa, Query};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub holds: bool,
    pub probability: crate::linalg::Rational,
    pub period: BigUint,
    pub length: BigUint,
    /// Whether the transition matrix has only {0,1} entries. Only then do all
    /// intermediate powers stay {0,1} and the check runs in time polynomial
    /// in the bit lengths of `s` and `r`.
    pub zero_one: bool,
}

/// Evaluates `uᵀ Aˢ (A^d)ʳ v` by squaring and tests it against `query`.
pub fn verify_witness(pfa: &Pfa, query: &Query, s: &BigUint, r: &BigUint) -> Result<WitnessCheck, UnaryError> {
    let a = pfa.unary_matrix().map_err(|_| UnaryError::NotUnary)?;
    let period = cycle_period(pfa)?;
    if *s >= period {
        return Err(UnaryError::ResidueOutOfRange { residue: s.clone(), period });
    }
    let step = a.pow(&period)?;
    let x = a.pow(s)?.left_mul_vec(pfa.initial())?;
    let x = step.pow(r)?.left_mul_vec(&x)?;
    let probability = pfa.finish(&x);
    Ok(WitnessCheck {
        holds: query.holds(&probability),
        probability,
        length: s + r * &period,
        period,
        zero_one: a.is_zero_one(),
    })
}
