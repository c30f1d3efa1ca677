use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::UnaryError;
use crate::ambiguity::has_eda;
use crate::graph::Components;
use crate::linalg::{lcm_all, RMatrix, Rational};
use crate::pfa::Pfa;

/// Reachable part of a unary automaton. States that cannot reach a final
/// state are merged into one absorbing non-final sink, placed last.
struct Trimmed {
    matrix: RMatrix,
    initial: Vec<Rational>,
    finals: Vec<bool>,
    /// Original state of each kept state; `None` for the sink.
    origin: Vec<Option<usize>>,
}

fn trim(pfa: &Pfa) -> Result<Trimmed, UnaryError> {
    let a = pfa.unary_matrix().map_err(|_| UnaryError::NotUnary)?;
    let nfa = pfa.embed_nfa();
    let reach = nfa.reachable_from(nfa.initials());
    let coreach = nfa.coreachable_to(nfa.finals());
    let n = pfa.states();

    let kept: Vec<usize> = (0..n).filter(|&q| reach[q] && coreach[q]).collect();
    let has_sink = (0..n).any(|q| reach[q] && !coreach[q]);
    let m = kept.len() + usize::from(has_sink);
    let sink = kept.len();
    let mut index = vec![None; n];
    for (i, &q) in kept.iter().enumerate() {
        index[q] = Some(i);
    }
    let target = |q: usize| index[q].unwrap_or(sink);

    let mut matrix = RMatrix::zeros(m, m);
    let mut initial = vec![Rational::zero(); m];
    for q in (0..n).filter(|&q| reach[q]) {
        initial[target(q)] += &pfa.initial()[q];
    }
    for (i, &p) in kept.iter().enumerate() {
        for q in (0..n).filter(|&q| !a[(p, q)].is_zero()) {
            matrix[(i, target(q))] += &a[(p, q)];
        }
    }
    let mut origin: Vec<Option<usize>> = kept.iter().copied().map(Some).collect();
    let mut finals: Vec<bool> = kept.iter().map(|&q| pfa.finals()[q]).collect();
    if has_sink {
        matrix[(sink, sink)] = Rational::one();
        origin.push(None);
        finals.push(false);
    }
    Ok(Trimmed { matrix, initial, finals, origin })
}

/// State order making the matrix block upper-triangular, and the lengths of
/// the cyclic components.
struct Layout {
    order: Vec<usize>,
    cycles: Vec<usize>,
}

fn layout(t: &Trimmed) -> Result<Layout, UnaryError> {
    let m = t.matrix.rows();
    let succ = |p: usize| -> Vec<usize> { (0..m).filter(|&q| !t.matrix[(p, q)].is_zero()).collect() };
    let comps = Components::compute(m, succ);
    let mut order = Vec::with_capacity(m);
    let mut cycles = Vec::new();
    for (ci, members) in comps.members.iter().enumerate() {
        let inner = |p: usize| -> Vec<usize> { succ(p).into_iter().filter(|&q| comps.of[q] == ci).collect() };
        let cyclic = members.len() > 1 || !inner(members[0]).is_empty();
        if !cyclic {
            order.push(members[0]);
            continue;
        }
        let mut next = Vec::with_capacity(members.len());
        for &p in members {
            match inner(p).as_slice() {
                [q] => next.push(*q),
                _ => {
                    let states = members.iter().filter_map(|&q| t.origin[q]).collect();
                    return Err(UnaryError::NotSingleCycle { states });
                }
            }
        }
        // Follow the cycle from its smallest member.
        let mut p = members[0];
        for _ in 0..members.len() {
            order.push(p);
            let k = members.binary_search(&p).expect("member");
            p = next[k];
        }
        cycles.push(members.len());
    }
    Ok(Layout { order, cycles })
}

/// Block upper-triangular form of a unary automaton.
///
/// With `B = P A P⁻¹` the reordered matrix and `d` the lcm of cycle lengths,
/// `U = B^d` is upper-triangular and `P(a^{rd+s}) = u_sᵀ Uʳ v'` where
/// `u_sᵀ = uᵀ P⁻¹ Bˢ`. All matrices refer to the trimmed automaton.
#[derive(Clone, Debug)]
pub struct TriangularReduction {
    trimmed: RMatrix,
    origin: Vec<Option<usize>>,
    order: Vec<usize>,
    cycles: Vec<usize>,
    period: BigUint,
    block: RMatrix,
    upper: RMatrix,
    initial: Vec<Rational>,
    final_vector: Vec<Rational>,
}

impl TriangularReduction {
    /// The lcm `d` of all cycle lengths.
    pub fn period(&self) -> &BigUint {
        &self.period
    }

    /// Lengths of the cyclic components, in topological order.
    pub fn cycle_lengths(&self) -> &[usize] {
        &self.cycles
    }

    /// Transition matrix of the trimmed automaton (before reordering).
    pub fn trimmed_matrix(&self) -> &RMatrix {
        &self.trimmed
    }

    /// Original state behind each trimmed state; `None` marks the sink.
    pub fn origin(&self) -> &[Option<usize>] {
        &self.origin
    }

    /// `order[i]` is the trimmed state placed at position `i`.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `B = P A P⁻¹`.
    pub fn block_matrix(&self) -> &RMatrix {
        &self.block
    }

    /// `U = B^d`.
    pub fn upper(&self) -> &RMatrix {
        &self.upper
    }

    /// `v'`, the reordered final vector.
    pub fn final_vector(&self) -> &[Rational] {
        &self.final_vector
    }

    /// `u_0`, the reordered initial distribution.
    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    /// `u_s` computed by squaring.
    pub fn residue_vector(&self, s: &BigUint) -> Vec<Rational> {
        self.block
            .pow(s)
            .and_then(|bs| bs.left_mul_vec(&self.initial))
            .expect("square matrix")
    }

    /// `u_0, u_1, …` computed incrementally (unbounded; callers stop at `d`).
    pub fn residues(&self) -> impl Iterator<Item = Vec<Rational>> + '_ {
        core::iter::successors(Some(self.initial.clone()), move |x| {
            Some(self.block.left_mul_vec(x).expect("square matrix"))
        })
    }
}

fn check_no_eda(pfa: &Pfa) -> Result<(), UnaryError> {
    if !pfa.is_unary() {
        return Err(UnaryError::NotUnary);
    }
    match has_eda(&pfa.embed_nfa()) {
        Some(w) => Err(UnaryError::Exponential(w)),
        None => Ok(()),
    }
}

pub fn triangular_reduction(pfa: &Pfa) -> Result<TriangularReduction, UnaryError> {
    check_no_eda(pfa)?;
    let t = trim(pfa)?;
    let Layout { order, cycles } = layout(&t)?;
    let period = lcm_all(cycles.iter().map(|&c| BigUint::from(c)).collect::<Vec<_>>().iter());
    let block = t.matrix.permute(&order);
    let upper = block.pow(&period)?;
    debug_assert!(upper.is_upper_triangular());
    let initial = order.iter().map(|&q| t.initial[q].clone()).collect();
    let final_vector = order
        .iter()
        .map(|&q| if t.finals[q] { Rational::one() } else { Rational::zero() })
        .collect();
    Ok(TriangularReduction {
        trimmed: t.matrix,
        origin: t.origin,
        order,
        cycles,
        period,
        block,
        upper,
        initial,
        final_vector,
    })
}

/// The period `d` alone, without powering.
pub fn cycle_period(pfa: &Pfa) -> Result<BigUint, UnaryError> {
    check_no_eda(pfa)?;
    let t = trim(pfa)?;
    let l = layout(&t)?;
    Ok(lcm_all(l.cycles.iter().map(|&c| BigUint::from(c)).collect::<Vec<_>>().iter()))
}
