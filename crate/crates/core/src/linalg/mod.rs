//! Exact rational linear algebra: matrices, elimination, powering,
//! Kronecker/direct-sum constructions and Jordan decomposition.

mod elim;
mod jordan;
mod matrix;
mod poly;
mod rational;

pub use elim::{inverse, nullspace, rank, rref, Span};
pub use jordan::{jordan_decompose, JordanBlock, JordanDecomposition};
pub use matrix::{dot, RMatrix};
pub use poly::Poly;
pub use rational::{
    bins, ceil_nonneg, from_biguint, in_unit_interval, int, lcm_all, pow, pow_u64, rat, to_u64,
    Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} against {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not upper-triangular")]
    NotUpperTriangular,
    #[error("failed to assemble a complete Jordan basis")]
    JordanFailed,
}
