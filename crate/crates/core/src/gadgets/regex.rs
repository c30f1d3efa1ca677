use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::GadgetError;
use crate::linalg::{RMatrix, Rational};
use crate::pfa::Pfa;

/// Pairs `(z_j, r_j)`, one lollipop component each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegexUnionSpec {
    pairs: Vec<(u64, u64)>,
}

impl RegexUnionSpec {
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<Self, GadgetError> {
        if pairs.is_empty() {
            return Err(GadgetError::NoPairs);
        }
        if let Some(index) = pairs.iter().position(|&(_, r)| r == 0) {
            return Err(GadgetError::ZeroPeriod { index });
        }
        Ok(RegexUnionSpec { pairs })
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    /// Whether some component accepts `aᵏ`: component `(z, r)` accepts
    /// exactly the lengths `z + 1 + m·r`.
    pub fn accepts_length(&self, k: &BigUint) -> bool {
        self.pairs.iter().any(|&(z, r)| {
            let start = BigUint::from(z) + 1u32;
            *k >= start && ((k - &start) % r).is_zero()
        })
    }

    /// Number of components accepting `aᵏ`.
    pub fn accepting_components(&self, k: &BigUint) -> usize {
        self.pairs
            .iter()
            .filter(|&&(z, r)| {
                let start = BigUint::from(z) + 1u32;
                *k >= start && ((k - &start) % r).is_zero()
            })
            .count()
    }
}

/// Disjoint union of components `n_0 → n_1 → … → n_{z+r} → n_{z+1}`, each
/// with final state `n_{z+1}`, started uniformly at every `n_0`.
pub fn regex_union_gadget(spec: &RegexUnionSpec) -> Pfa {
    let sizes: Vec<usize> = spec.pairs.iter().map(|&(z, r)| (z + r + 1) as usize).collect();
    let n: usize = sizes.iter().sum();
    let mut a = RMatrix::zeros(n, n);
    let mut initial = vec![Rational::zero(); n];
    let mut finals = vec![false; n];
    let weight = Rational::new(1.into(), (spec.pairs.len() as i64).into());
    let mut base = 0;
    for (&(z, r), &size) in spec.pairs.iter().zip(&sizes) {
        let (z, r) = (z as usize, r as usize);
        for i in 0..size - 1 {
            a[(base + i, base + i + 1)] = Rational::one();
        }
        a[(base + z + r, base + z + 1)] = Rational::one();
        initial[base] = weight.clone();
        finals[base + z + 1] = true;
        base += size;
    }
    Pfa::unary(initial, a, finals).expect("valid gadget")
}
