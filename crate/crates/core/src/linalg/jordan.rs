//! Jordan normal form of upper-triangular rational matrices.
//!
//! For an upper-triangular input every eigenvalue is a diagonal entry, so the
//! whole decomposition stays inside ℚ. Chains are built from the kernels of
//! `(A - λI)^j`, highest level first.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::elim::{inverse, nullspace, Span};
use super::matrix::RMatrix;
use super::rational::Rational;
use super::LinalgError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlock {
    pub eigenvalue: Rational,
    pub size: usize,
}

/// `A = S⁻¹ · J · S`, where `J` is the direct sum of `blocks` in order.
///
/// The columns of `s_inv` are the generalised eigenvectors; within a block
/// the chain runs from the true eigenvector to the chain head.
#[derive(Clone, Debug)]
pub struct JordanDecomposition {
    pub s: RMatrix,
    pub s_inv: RMatrix,
    pub blocks: Vec<JordanBlock>,
}

impl JordanDecomposition {
    /// Reassembles `J` from the block list.
    pub fn jordan_matrix(&self) -> RMatrix {
        let n = self.blocks.iter().map(|b| b.size).sum();
        let mut j = RMatrix::zeros(n, n);
        let mut o = 0;
        for b in &self.blocks {
            for i in 0..b.size {
                j[(o + i, o + i)] = b.eigenvalue.clone();
                if i + 1 < b.size {
                    j[(o + i, o + i + 1)] = Rational::one();
                }
            }
            o += b.size;
        }
        j
    }

    /// Block offsets into the basis, paired with the blocks.
    pub fn block_offsets(&self) -> impl Iterator<Item = (usize, &JordanBlock)> {
        self.blocks.iter().scan(0usize, |o, b| {
            let start = *o;
            *o += b.size;
            Some((start, b))
        })
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(|b| b.size).max().unwrap_or(0)
    }
}

/// Distinct diagonal values, strictly descending, with their multiplicities.
fn spectrum(a: &RMatrix) -> Vec<(Rational, usize)> {
    let mut diag = a.diagonal_entries();
    diag.sort_by(|x, y| y.cmp(x));
    let mut out: Vec<(Rational, usize)> = Vec::new();
    for d in diag {
        match out.last_mut() {
            Some((v, m)) if *v == d => *m += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

pub fn jordan_decompose(a: &RMatrix) -> Result<JordanDecomposition, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if !a.is_upper_triangular() {
        return Err(LinalgError::NotUpperTriangular);
    }
    let n = a.rows();
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();

    for (lambda, mult) in spectrum(a) {
        let shift = a.sub(&RMatrix::identity(n).scale(&lambda))?;
        // kernels[j] spans ker(N^j); kernels[0] is the trivial space.
        let mut kernels: Vec<Vec<Vec<Rational>>> = alloc::vec![Vec::new()];
        let mut power = RMatrix::identity(n);
        while kernels.last().map_or(0, Vec::len) < mult {
            if kernels.len() > n {
                return Err(LinalgError::JordanFailed);
            }
            power = power.mul(&shift)?;
            kernels.push(nullspace(&power));
        }
        let top = kernels.len() - 1;

        // Chain heads with their lengths, longest first.
        let mut heads: Vec<(Vec<Rational>, usize)> = Vec::new();
        for level in (1..=top).rev() {
            let mut span = Span::new();
            for v in &kernels[level - 1] {
                span.insert(v);
            }
            for (h, len) in &heads {
                let mut w = h.clone();
                for _ in 0..(len - level) {
                    w = shift.mul_vec(&w)?;
                }
                span.insert(&w);
            }
            for b in &kernels[level] {
                if span.insert(b) {
                    heads.push((b.clone(), level));
                }
            }
        }

        for (h, len) in heads {
            let mut chain = alloc::vec![h];
            for _ in 1..len {
                let next = shift.mul_vec(chain.last().expect("nonempty"))?;
                chain.push(next);
            }
            chain.reverse();
            columns.extend(chain);
            blocks.push(JordanBlock { eigenvalue: lambda.clone(), size: len });
        }
    }

    if columns.len() != n {
        return Err(LinalgError::JordanFailed);
    }
    let mut s_inv = RMatrix::zeros(n, n);
    for (j, col) in columns.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            if !x.is_zero() {
                s_inv[(i, j)] = x.clone();
            }
        }
    }
    let s = inverse(&s_inv)?;
    Ok(JordanDecomposition { s, s_inv, blocks })
}
