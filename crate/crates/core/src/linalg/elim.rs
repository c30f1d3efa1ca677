//! Exact Gaussian elimination.
//!
//! Pivot rule everywhere: the first nonzero entry in the column, scanning rows
//! from the lowest index. Results are therefore fully deterministic.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::matrix::RMatrix;
use super::rational::Rational;
use super::LinalgError;

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &RMatrix) -> (RMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let delta = &f * &a[(r, j)];
                a[(i, j)] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &RMatrix) -> usize {
    rref(m).1.len()
}

/// Basis of the right null space `{x : m·x = 0}`, one vector per free column
/// in increasing column order.
pub fn nullspace(m: &RMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = alloc::vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = alloc::vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -r[(row, f)].clone();
            }
            x
        })
        .collect()
}

/// Exact inverse via Gauss-Jordan on `[m | I]`.
pub fn inverse(m: &RMatrix) -> Result<RMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut aug = RMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = Rational::one();
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(LinalgError::Singular);
    }
    let mut inv = RMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = r[(i, n + j)].clone();
        }
    }
    Ok(inv)
}

/// Incrementally maintained span used for independence tests.
///
/// Stored vectors are kept reduced against each other's pivots so membership
/// is a single forward reduction.
#[derive(Clone, Debug, Default)]
pub struct Span {
    basis: Vec<(usize, Vec<Rational>)>,
}

impl Span {
    pub fn new() -> Self {
        Span { basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (p, b) in &self.basis {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (wi, bi) in w.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *wi -= &f * bi;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if it is independent of the current span; returns whether it was added.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for (_, b) in self.basis.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let f = b[p].clone();
            for (bi, wi) in b.iter_mut().zip(&w) {
                if !wi.is_zero() {
                    *bi -= &f * wi;
                }
            }
        }
        self.basis.push((p, w));
        true
    }
}
