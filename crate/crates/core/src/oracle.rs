//! Brute-force ground truth by exact enumeration over bounded lengths.
//!
//! The oracle is one-sided: it can exhibit witnesses but never certifies
//! that none exists.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::linalg::Rational;
use crate::pfa::{Pfa, Query};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("automaton is not unary")]
    NotUnary,
    #[error("automaton has {0} letters, expected 2")]
    NotBinary(usize),
    #[error("letter matrices do not commute; h^x g^y does not cover all words")]
    NotCommuting,
}

/// Which word a sweep entry stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Point {
    /// `aᵏ`
    Unary(u64),
    /// `h^x g^y`
    Grid(u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepResult {
    pub entries: Vec<(Point, Rational)>,
}

impl SweepResult {
    pub fn probabilities(&self) -> impl Iterator<Item = &Rational> {
        self.entries.iter().map(|(_, p)| p)
    }

    /// Smallest and largest probability, `None` for an empty sweep.
    pub fn extremes(&self) -> Option<(&Rational, &Rational)> {
        let min = self.probabilities().min()?;
        let max = self.probabilities().max()?;
        Some((min, max))
    }

    pub fn hits<'a>(&'a self, q: &'a Query) -> impl Iterator<Item = &'a (Point, Rational)> + 'a {
        self.entries.iter().filter(move |(_, p)| q.holds(p))
    }

    /// One `k,p/q` (or `x,y,p/q`) line per entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (pt, p) in &self.entries {
            match pt {
                Point::Unary(k) => write!(out, "{k},"),
                Point::Grid(x, y) => write!(out, "{x},{y},"),
            }
            .expect("string write");
            writeln!(out, "{}/{}", p.numer(), p.denom()).expect("string write");
        }
        out
    }
}

/// `P(aᵏ)` for `k = 0..=max_k`, one vector-matrix product per step.
pub fn sweep_unary(pfa: &Pfa, max_k: u64) -> Result<SweepResult, OracleError> {
    let a = pfa.unary_matrix().map_err(|_| OracleError::NotUnary)?;
    let mut x = pfa.initial().to_vec();
    let mut entries = Vec::new();
    for k in 0..=max_k {
        entries.push((Point::Unary(k), pfa.finish(&x)));
        if k < max_k {
            x = a.left_mul_vec(&x).expect("square");
        }
    }
    Ok(SweepResult { entries })
}

/// `P(h^x g^y)` over the grid, for two commuting letter matrices.
pub fn sweep_grid(pfa: &Pfa, max_x: u64, max_y: u64) -> Result<SweepResult, OracleError> {
    let ms = pfa.transitions();
    if ms.len() != 2 {
        return Err(OracleError::NotBinary(ms.len()));
    }
    let (h, g) = (&ms[0], &ms[1]);
    if h.mul(g).expect("square") != g.mul(h).expect("square") {
        return Err(OracleError::NotCommuting);
    }
    let mut entries = Vec::new();
    let mut row = pfa.initial().to_vec();
    for x in 0..=max_x {
        let mut col = row.clone();
        for y in 0..=max_y {
            entries.push((Point::Grid(x, y), pfa.finish(&col)));
            col = g.left_mul_vec(&col).expect("square");
        }
        row = h.left_mul_vec(&row).expect("square");
    }
    Ok(SweepResult { entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Witness { word: Vec<usize>, probability: Rational },
    /// No word up to the length bound satisfies the query.
    Unknown,
}

/// Searches all words of length `≤ max_len` in length-lexicographic order.
pub fn oracle_decide(pfa: &Pfa, q: &Query, max_len: usize) -> OracleOutcome {
    let ms = pfa.transitions();
    let mut level: Vec<(Vec<usize>, Vec<Rational>)> = alloc::vec![(Vec::new(), pfa.initial().to_vec())];
    for len in 0..=max_len {
        for (word, x) in &level {
            let p = pfa.finish(x);
            if q.holds(&p) {
                return OracleOutcome::Witness { word: word.clone(), probability: p };
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::with_capacity(level.len() * ms.len());
        for (word, x) in &level {
            for (a, m) in ms.iter().enumerate() {
                let mut w = word.clone();
                w.push(a);
                next.push((w, m.left_mul_vec(x).expect("square")));
            }
        }
        level = next;
    }
    OracleOutcome::Unknown
}
