//! Degree-of-ambiguity classification.
//!
//! Exponential ambiguity is detected through the EDA criterion (a useful
//! state with two distinct runs back to itself on one word) and the growth
//! degree through chains of IDA pairs. Both checks only look at useful
//! states.
//!
//! Witness words are shortest words, ties broken lexicographically by letter
//! index.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Components;
use crate::pfa::{Nfa, Pfa};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbiguityClass {
    Exponential,
    Polynomial,
    Finite,
}

/// A useful state `state` with at least two distinct runs `state → state` on `word`.
/// `split` is a pair of distinct states both runs occupy at the same position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdaWitness {
    pub state: usize,
    pub word: Vec<usize>,
    pub split: (usize, usize),
}

/// One link `(r, s, v, u)` of an IDA chain: `r → r`, `r → s`, `s → s` all on
/// `loop_word`, and `connector` leads from the previous link's `s` to `r`
/// (empty for the first link).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdaLink {
    pub r: usize,
    pub s: usize,
    pub loop_word: Vec<usize>,
    pub connector: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguityReport {
    pub class: AmbiguityClass,
    pub eda_witness: Option<EdaWitness>,
    /// Longest IDA chain found; its length is a lower bound on the growth degree.
    pub degree_witness: Vec<IdaLink>,
}

impl AmbiguityReport {
    pub fn degree_lower_bound(&self) -> usize {
        self.degree_witness.len()
    }
}

struct UsefulView<'a> {
    nfa: &'a Nfa,
    useful: Vec<bool>,
    comps: Components,
}

impl<'a> UsefulView<'a> {
    fn new(nfa: &'a Nfa) -> Self {
        let useful = nfa.useful_states();
        let mask = &useful;
        let comps = Components::compute(nfa.states(), |p| {
            let keep = mask[p];
            nfa.any_succ(p).into_iter().filter(move |&q| keep && mask[q])
        });
        UsefulView { nfa, useful, comps }
    }

    /// Does `q` lie on a cycle made of useful states?
    fn on_cycle(&self, q: usize) -> bool {
        self.useful[q]
            && (self.comps.members[self.comps.of[q]].len() > 1
                || (0..self.nfa.letters()).any(|a| self.nfa.has_edge(q, a, q)))
    }
}

/// Searches for an EDA witness among useful states.
pub fn has_eda(nfa: &Nfa) -> Option<EdaWitness> {
    let view = UsefulView::new(nfa);
    let mut best: Option<EdaWitness> = None;
    for members in &view.comps.members {
        if !view.useful[members[0]] || !view.on_cycle(members[0]) {
            continue;
        }
        // Two runs from q back to q never leave q's component.
        let m = members.len();
        let local = |q: usize| members.binary_search(&q).ok();
        let node = |i: usize, j: usize| i * m + j;
        let pair_succ = |x: usize| -> Vec<(usize, usize)> {
            let (i, j) = (x / m, x % m);
            let mut out = Vec::new();
            for a in 0..nfa.letters() {
                for &p in nfa.succ(a, members[i]) {
                    let Some(pi) = local(p) else { continue };
                    for &q in nfa.succ(a, members[j]) {
                        if let Some(qj) = local(q) {
                            out.push((a, node(pi, qj)));
                        }
                    }
                }
            }
            out
        };
        let pair_comps = Components::compute(m * m, |x| pair_succ(x).into_iter().map(|(_, y)| y));
        for (i, &q) in members.iter().enumerate() {
            let c = pair_comps.of[node(i, i)];
            let mixed = pair_comps.members[c].iter().any(|&x| x / m != x % m);
            if !mixed {
                continue;
            }
            if let Some(w) = eda_word(m, node(i, i), &pair_succ) {
                let better = best.as_ref().is_none_or(|b| w.0.len() < b.word.len());
                if better {
                    let split = (members[w.1 / m], members[w.1 % m]);
                    best = Some(EdaWitness { state: q, word: w.0, split });
                }
            }
        }
    }
    best
}

/// Shortest cycle from `start` back to itself through an off-diagonal node.
fn eda_word(
    m: usize,
    start: usize,
    pair_succ: &impl Fn(usize) -> Vec<(usize, usize)>,
) -> Option<(Vec<usize>, usize)> {
    // Layered state: (pair node, seen off-diagonal?).
    let idx = |x: usize, flag: bool| 2 * x + usize::from(flag);
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; 2 * m * m];
    let mut seen = vec![false; 2 * m * m];
    let mut queue = VecDeque::new();
    queue.push_back(idx(start, false));
    seen[idx(start, false)] = true;
    let target = idx(start, true);
    while let Some(cur) = queue.pop_front() {
        let (x, flag) = (cur / 2, cur % 2 == 1);
        for (a, y) in pair_succ(x) {
            let nf = flag || y / m != y % m;
            let next = idx(y, nf);
            if seen[next] {
                continue;
            }
            seen[next] = true;
            parent[next] = Some((cur, a));
            if next == target {
                let mut word = Vec::new();
                let mut split = None;
                let mut c = next;
                while let Some((p, a)) = parent[c] {
                    word.push(a);
                    let node = c / 2;
                    if node / m != node % m && split.is_none() {
                        split = Some(node);
                    }
                    c = p;
                }
                word.reverse();
                return Some((word, split.expect("off-diagonal node on path")));
            }
            queue.push_back(next);
        }
    }
    None
}

/// Finds a word `v` with `r → r`, `r → s`, `s → s` simultaneously.
fn ida_pair_word(view: &UsefulView<'_>, r: usize, s: usize, between: &[usize]) -> Option<Vec<usize>> {
    let nfa = view.nfa;
    let first = &view.comps.members[view.comps.of[r]];
    let third = &view.comps.members[view.comps.of[s]];
    let (n1, n2, n3) = (first.len(), between.len(), third.len());
    let pos = |set: &[usize], q: usize| set.binary_search(&q).ok();
    let enc = |i: usize, j: usize, k: usize| (i * n2 + j) * n3 + k;
    let start = enc(pos(first, r)?, pos(between, r)?, pos(third, s)?);
    let target = enc(pos(first, r)?, pos(between, s)?, pos(third, s)?);
    let total = n1 * n2 * n3;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; total];
    let mut seen = vec![false; total];
    let mut queue = VecDeque::new();
    seen[start] = true;
    queue.push_back(start);
    while let Some(cur) = queue.pop_front() {
        let (i, j, k) = (cur / (n2 * n3), (cur / n3) % n2, cur % n3);
        for a in 0..nfa.letters() {
            for &x in nfa.succ(a, first[i]) {
                let Some(xi) = pos(first, x) else { continue };
                for &y in nfa.succ(a, between[j]) {
                    let Some(yj) = pos(between, y) else { continue };
                    for &z in nfa.succ(a, third[k]) {
                        let Some(zk) = pos(third, z) else { continue };
                        let next = enc(xi, yj, zk);
                        if seen[next] {
                            continue;
                        }
                        seen[next] = true;
                        parent[next] = Some((cur, a));
                        if next == target {
                            let mut word = Vec::new();
                            let mut c = next;
                            while let Some((p, a)) = parent[c] {
                                word.push(a);
                                c = p;
                            }
                            word.reverse();
                            return Some(word);
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    None
}

/// All IDA pairs `(r, s, v)` over useful states, ordered by `(r, s)`.
fn ida_pairs(view: &UsefulView<'_>) -> Vec<(usize, usize, Vec<usize>)> {
    let nfa = view.nfa;
    let n = nfa.states();
    let cyclic: Vec<usize> = (0..n).filter(|&q| view.on_cycle(q)).collect();
    let mut out = Vec::new();
    for &r in &cyclic {
        let fwd = nfa.reachable_from([r]);
        for &s in &cyclic {
            if s == r || !fwd[s] {
                continue;
            }
            let bwd = nfa.coreachable_to([s]);
            let between: Vec<usize> = (0..n).filter(|&q| fwd[q] && bwd[q] && view.useful[q]).collect();
            if let Some(v) = ida_pair_word(view, r, s, &between) {
                out.push((r, s, v));
            }
        }
    }
    out
}

/// Longest IDA chain. Assumes no EDA witness exists; in that case every chain
/// edge strictly advances the component of `r` in topological order.
pub fn ida_degree_lower_bound(nfa: &Nfa) -> (usize, Vec<IdaLink>) {
    let view = UsefulView::new(nfa);
    let pairs = ida_pairs(&view);
    if pairs.is_empty() {
        return (0, Vec::new());
    }
    let reach: Vec<Vec<bool>> = pairs.iter().map(|(_, s, _)| nfa.reachable_from([*s])).collect();
    let topo = |i: usize| view.comps.of[pairs[i].0];
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&x, &y| topo(y).cmp(&topo(x)).then(x.cmp(&y)));
    // best[i] = (chain length starting at pair i, successor)
    let mut best: Vec<(usize, Option<usize>)> = vec![(1, None); pairs.len()];
    for &i in &order {
        for j in 0..pairs.len() {
            if topo(j) > topo(i) && reach[i][pairs[j].0] && best[j].0 + 1 > best[i].0 {
                best[i] = (best[j].0 + 1, Some(j));
            }
        }
    }
    let start = (0..pairs.len())
        .max_by(|&x, &y| best[x].0.cmp(&best[y].0).then(y.cmp(&x)))
        .expect("nonempty");
    let mut chain = Vec::new();
    let mut cur = Some(start);
    let mut prev_s: Option<usize> = None;
    while let Some(i) = cur {
        let (r, s, v) = &pairs[i];
        let connector = match prev_s {
            Some(p) => nfa.shortest_word(p, *r).expect("reachable"),
            None => Vec::new(),
        };
        chain.push(IdaLink { r: *r, s: *s, loop_word: v.clone(), connector });
        prev_s = Some(*s);
        cur = best[i].1;
    }
    (chain.len(), chain)
}

pub fn classify_nfa(nfa: &Nfa) -> AmbiguityReport {
    if let Some(w) = has_eda(nfa) {
        return AmbiguityReport {
            class: AmbiguityClass::Exponential,
            eda_witness: Some(w),
            degree_witness: Vec::new(),
        };
    }
    let (d, chain) = ida_degree_lower_bound(nfa);
    AmbiguityReport {
        class: if d == 0 { AmbiguityClass::Finite } else { AmbiguityClass::Polynomial },
        eda_witness: None,
        degree_witness: chain,
    }
}

pub fn classify(pfa: &Pfa) -> AmbiguityReport {
    classify_nfa(&pfa.embed_nfa())
}

/// Whether every component of the useful subgraph is a single directed cycle
/// (or a single state).
pub fn useful_components_are_cycles(nfa: &Nfa) -> bool {
    let view = UsefulView::new(nfa);
    view.comps.members.iter().all(|c| {
        c.len() == 1
            || c.iter().all(|&p| {
                (0..nfa.letters())
                    .map(|a| nfa.succ(a, p).iter().filter(|q| c.binary_search(q).is_ok()).count())
                    .sum::<usize>()
                    == 1
            })
    })
}
