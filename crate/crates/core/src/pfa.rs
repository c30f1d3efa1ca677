//! Probabilistic finite automata, exact acceptance, and the support NFA.

use alloc::collections::VecDeque;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::linalg::{Rational, RMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PfaError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("letter `{0}` appears twice in the alphabet")]
    DuplicateLetter(String),
    #[error("automaton has no states")]
    NoStates,
    #[error("initial vector has {found} entries, expected {expected}")]
    InitialLength { expected: usize, found: usize },
    #[error("initial vector is not a probability distribution")]
    InitialNotDistribution,
    #[error("{found} transition matrices for {expected} letters")]
    MatrixCount { expected: usize, found: usize },
    #[error("matrix for `{letter}` is {rows}x{cols}, expected {n}x{n}")]
    MatrixShape { letter: String, rows: usize, cols: usize, n: usize },
    #[error("matrix for `{letter}`: row {row} is not stochastic")]
    NotStochastic { letter: String, row: usize },
    #[error("final vector has {found} entries, expected {expected}")]
    FinalLength { expected: usize, found: usize },
    #[error("final vector entry {state} is not 0 or 1")]
    FinalNotBinary { state: usize },
    #[error("letter index {0} is outside the alphabet")]
    UnknownLetter(usize),
    #[error("automaton is not unary")]
    NotUnary,
}

/// `P = (u, {M_a}, v)`: stochastic initial vector, row-stochastic matrix per
/// letter, and a 0/1 final vector. Always valid once constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pfa {
    alphabet: Vec<String>,
    initial: Vec<Rational>,
    transitions: Vec<RMatrix>,
    finals: Vec<bool>,
}

impl Pfa {
    pub fn new(
        alphabet: Vec<String>,
        initial: Vec<Rational>,
        transitions: Vec<RMatrix>,
        finals: Vec<bool>,
    ) -> Result<Self, PfaError> {
        if alphabet.is_empty() {
            return Err(PfaError::EmptyAlphabet);
        }
        for (i, a) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(a) {
                return Err(PfaError::DuplicateLetter(a.clone()));
            }
        }
        let n = initial.len();
        if n == 0 {
            return Err(PfaError::NoStates);
        }
        if initial.iter().any(Signed::is_negative)
            || initial.iter().fold(Rational::zero(), |acc, x| acc + x) != Rational::one()
        {
            return Err(PfaError::InitialNotDistribution);
        }
        if transitions.len() != alphabet.len() {
            return Err(PfaError::MatrixCount { expected: alphabet.len(), found: transitions.len() });
        }
        for (letter, m) in alphabet.iter().zip(&transitions) {
            if m.rows() != n || m.cols() != n {
                return Err(PfaError::MatrixShape {
                    letter: letter.clone(),
                    rows: m.rows(),
                    cols: m.cols(),
                    n,
                });
            }
            if let Some(row) = m.first_non_stochastic_row() {
                return Err(PfaError::NotStochastic { letter: letter.clone(), row });
            }
        }
        if finals.len() != n {
            return Err(PfaError::FinalLength { expected: n, found: finals.len() });
        }
        Ok(Pfa { alphabet, initial, transitions, finals })
    }

    /// Like [`Pfa::new`] but takes the final vector as rationals, which must all be 0 or 1.
    pub fn with_final_vector(
        alphabet: Vec<String>,
        initial: Vec<Rational>,
        transitions: Vec<RMatrix>,
        final_vector: &[Rational],
    ) -> Result<Self, PfaError> {
        let n = initial.len();
        if final_vector.len() != n {
            return Err(PfaError::FinalLength { expected: n, found: final_vector.len() });
        }
        let mut finals = Vec::with_capacity(n);
        for (state, x) in final_vector.iter().enumerate() {
            if x.is_zero() {
                finals.push(false);
            } else if x.is_one() {
                finals.push(true);
            } else {
                return Err(PfaError::FinalNotBinary { state });
            }
        }
        Self::new(alphabet, initial, transitions, finals)
    }

    /// Single-letter automaton over the alphabet `{a}`.
    pub fn unary(initial: Vec<Rational>, matrix: RMatrix, finals: Vec<bool>) -> Result<Self, PfaError> {
        Self::new(vec!["a".to_string()], initial, vec![matrix], finals)
    }

    pub fn states(&self) -> usize {
        self.initial.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == name)
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    pub fn transitions(&self) -> &[RMatrix] {
        &self.transitions
    }

    pub fn transition(&self, letter: usize) -> Option<&RMatrix> {
        self.transitions.get(letter)
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn final_vector(&self) -> Vec<Rational> {
        self.finals
            .iter()
            .map(|&f| if f { Rational::one() } else { Rational::zero() })
            .collect()
    }

    pub fn is_unary(&self) -> bool {
        self.alphabet.len() == 1
    }

    /// The transition matrix of a unary automaton.
    pub fn unary_matrix(&self) -> Result<&RMatrix, PfaError> {
        if self.is_unary() {
            Ok(&self.transitions[0])
        } else {
            Err(PfaError::NotUnary)
        }
    }

    /// `uᵀ M_{w1} ⋯ M_{wk} v`, evaluated left to right.
    pub fn accept_prob(&self, word: &[usize]) -> Result<Rational, PfaError> {
        let mut x = self.initial.clone();
        for &a in word {
            let m = self.transitions.get(a).ok_or(PfaError::UnknownLetter(a))?;
            x = m.left_mul_vec(&x).expect("square");
        }
        Ok(self.finish(&x))
    }

    /// Acceptance of `w1^{e1} w2^{e2} …` with each power computed by squaring.
    pub fn accept_powers(&self, factors: &[(usize, BigUint)]) -> Result<Rational, PfaError> {
        let mut x = self.initial.clone();
        for (a, e) in factors {
            let m = self.transitions.get(*a).ok_or(PfaError::UnknownLetter(*a))?;
            x = m.pow(e).expect("square").left_mul_vec(&x).expect("square");
        }
        Ok(self.finish(&x))
    }

    /// `uᵀ A^k v` for a unary automaton.
    pub fn accept_unary(&self, k: &BigUint) -> Result<Rational, PfaError> {
        self.unary_matrix()?;
        self.accept_powers(&[(0, k.clone())])
    }

    /// Acceptance probability of the state distribution `x`.
    pub fn finish(&self, x: &[Rational]) -> Rational {
        x.iter()
            .zip(&self.finals)
            .filter(|(_, &f)| f)
            .fold(Rational::zero(), |acc, (p, _)| acc + p)
    }

    /// Support NFA: an edge wherever a transition probability is nonzero.
    pub fn embed_nfa(&self) -> Nfa {
        let n = self.states();
        let succ = self
            .transitions
            .iter()
            .map(|m| {
                (0..n)
                    .map(|i| (0..n).filter(|&j| !m[(i, j)].is_zero()).collect())
                    .collect()
            })
            .collect();
        Nfa {
            states: n,
            succ,
            initials: self.initial.iter().map(|x| !x.is_zero()).collect(),
            finals: self.finals.clone(),
        }
    }
}

/// Nondeterministic automaton given by per-letter successor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    states: usize,
    /// `succ[letter][state]`, sorted ascending.
    succ: Vec<Vec<Vec<usize>>>,
    initials: Vec<bool>,
    finals: Vec<bool>,
}

impl Nfa {
    /// `edges` are `(from, letter, to)` triples.
    pub fn from_edges(
        states: usize,
        letters: usize,
        edges: &[(usize, usize, usize)],
        initials: &[usize],
        finals: &[usize],
    ) -> Self {
        let mut succ = vec![vec![Vec::new(); states]; letters];
        for &(p, a, q) in edges {
            succ[a][p].push(q);
        }
        for per_letter in succ.iter_mut() {
            for list in per_letter.iter_mut() {
                list.sort_unstable();
                list.dedup();
            }
        }
        let mut ini = vec![false; states];
        initials.iter().for_each(|&i| ini[i] = true);
        let mut fin = vec![false; states];
        finals.iter().for_each(|&i| fin[i] = true);
        Nfa { states, succ, initials: ini, finals: fin }
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn letters(&self) -> usize {
        self.succ.len()
    }

    pub fn succ(&self, letter: usize, state: usize) -> &[usize] {
        &self.succ[letter][state]
    }

    pub fn has_edge(&self, from: usize, letter: usize, to: usize) -> bool {
        self.succ[letter][from].binary_search(&to).is_ok()
    }

    pub fn is_initial(&self, q: usize) -> bool {
        self.initials[q]
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn initials(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states).filter(|&q| self.initials[q])
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states).filter(|&q| self.finals[q])
    }

    /// `(from, letter, to)` triples in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.states).flat_map(move |p| {
            (0..self.letters()).flat_map(move |a| self.succ[a][p].iter().map(move |&q| (p, a, q)))
        })
    }

    /// Successors over any letter, deduplicated.
    pub fn any_succ(&self, state: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.succ.iter().flat_map(|l| l[state].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn reachable_from(&self, sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut seen = vec![false; self.states];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for s in sources {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(p) = queue.pop_front() {
            for a in 0..self.letters() {
                for &q in &self.succ[a][p] {
                    if !seen[q] {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        seen
    }

    pub fn coreachable_to(&self, targets: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut pred = vec![Vec::new(); self.states];
        for (p, _, q) in self.edges() {
            pred[q].push(p);
        }
        let mut seen = vec![false; self.states];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for t in targets {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &p in &pred[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// States that lie on some accepting path.
    pub fn useful_states(&self) -> Vec<bool> {
        let fwd = self.reachable_from(self.initials());
        let bwd = self.coreachable_to(self.finals());
        fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect()
    }

    /// Shortest word leading from `from` to `to` (empty if equal), ties broken
    /// by letter order.
    pub fn shortest_word(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.states];
        let mut seen = vec![false; self.states];
        let mut queue = VecDeque::new();
        seen[from] = true;
        queue.push_back(from);
        while let Some(p) = queue.pop_front() {
            if p == to {
                let mut word = Vec::new();
                let mut cur = to;
                while let Some((prev, a)) = parent[cur] {
                    word.push(a);
                    cur = prev;
                }
                word.reverse();
                return Some(word);
            }
            for a in 0..self.letters() {
                for &q in &self.succ[a][p] {
                    if !seen[q] {
                        seen[q] = true;
                        parent[q] = Some((p, a));
                        queue.push_back(q);
                    }
                }
            }
        }
        None
    }

    /// Number of distinct `from → to` paths labelled by `word`, saturating.
    pub fn count_paths(&self, from: usize, word: &[usize], to: usize) -> u64 {
        let mut counts = vec![0u64; self.states];
        counts[from] = 1;
        for &a in word {
            let mut next = vec![0u64; self.states];
            for (p, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &q in &self.succ[a][p] {
                    next[q] = next[q].saturating_add(c);
                }
            }
            counts = next;
        }
        counts[to]
    }
}

/// Comparison between the acceptance probability and the cutpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `P(w) = λ`
    Reach,
    /// `P(w) ≥ λ`
    EmptyGe,
    /// `P(w) > λ`
    EmptyGt,
    /// `P(w) ≤ λ`
    EmptyLe,
    /// `P(w) < λ`
    EmptyLt,
}

impl Mode {
    pub const ALL: [Mode; 5] = [Mode::Reach, Mode::EmptyGe, Mode::EmptyGt, Mode::EmptyLe, Mode::EmptyLt];

    pub fn holds(self, p: &Rational, lambda: &Rational) -> bool {
        self.accepts(p.cmp(lambda))
    }

    /// Whether a probability comparing to the cutpoint as `ord` satisfies the mode.
    pub fn accepts(self, ord: Ordering) -> bool {
        match self {
            Mode::Reach => ord == Ordering::Equal,
            Mode::EmptyGe => ord != Ordering::Less,
            Mode::EmptyGt => ord == Ordering::Greater,
            Mode::EmptyLe => ord != Ordering::Greater,
            Mode::EmptyLt => ord == Ordering::Less,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Reach => "reach",
            Mode::EmptyGe => "empty-ge",
            Mode::EmptyGt => "empty-gt",
            Mode::EmptyLe => "empty-le",
            Mode::EmptyLt => "empty-lt",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| alloc::format!("unknown mode `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cutpoint {0} is outside [0, 1]")]
pub struct CutpointOutOfRange(pub Rational);

/// A cutpoint question: does some word satisfy `mode` against `lambda`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    lambda: Rational,
    mode: Mode,
}

impl Query {
    pub fn new(mode: Mode, lambda: Rational) -> Result<Self, CutpointOutOfRange> {
        if lambda.is_negative() || lambda > Rational::one() {
            return Err(CutpointOutOfRange(lambda));
        }
        Ok(Query { lambda, mode })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn holds(&self, p: &Rational) -> bool {
        self.mode.holds(p, &self.lambda)
    }
}
