//! Cutpoint questions for unary automata without exponential ambiguity.
//!
//! The transition matrix is reordered into a block upper-triangular form
//! whose `d`-th power is upper-triangular. Each residue class `k ≡ s mod d`
//! then has an exact closed form `c + Σ pᵢ(k) λᵢᵏ`, and explicit horizons
//! bound how far the exact scan must go before the sign of `P - λ` is fixed.

mod closed_form;
mod decide;
mod horizon;
mod reduction;
mod witness;

use alloc::vec::Vec;

use num_bigint::BigUint;

pub use closed_form::{closed_form, closed_form_with, ClosedForm, Term};
pub use decide::{decide, decide_residue, DecideOptions, Decision, ResidueReport, UnaryWitness};
pub use horizon::{bound_at_limit, bound_constant, bound_not_limit, HorizonBound, Regime};
pub use reduction::{cycle_period, triangular_reduction, TriangularReduction};
pub use witness::{verify_witness, WitnessCheck};

use crate::ambiguity::EdaWitness;
use crate::linalg::{LinalgError, Rational};
use crate::pfa::PfaError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnaryError {
    #[error("automaton is not unary")]
    NotUnary,
    #[error("automaton is exponentially ambiguous (state {} on a word of length {})", .0.state, .0.word.len())]
    Exponential(EdaWitness),
    #[error("component {states:?} is not a single cycle")]
    NotSingleCycle { states: Vec<usize> },
    #[error("eigenvalue {0} is outside [0, 1]")]
    EigenvalueOutOfRange(Rational),
    #[error("eigenvalue 1 has a Jordan block of size {0}")]
    UnitJordanBlock(usize),
    #[error("vector length {found} does not match dimension {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("cutpoint equals the limit {0}")]
    CutpointAtLimit(Rational),
    #[error("closed form is constant")]
    ConstantFunction,
    #[error("residue {residue} is not below the period {period}")]
    ResidueOutOfRange { residue: BigUint, period: BigUint },
    #[error("scan budget of {budget} steps exceeded at residue {residue} with horizon {k_star}; bound too large for desk scale")]
    BudgetExceeded { budget: u64, residue: BigUint, k_star: BigUint },
    #[error("certified regime disagrees with exact evaluation at residue {residue}")]
    CertificateViolated { residue: BigUint },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Pfa(#[from] PfaError),
}
