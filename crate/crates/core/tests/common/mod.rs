#![allow(dead_code)]

use num_bigint::BigUint;
use pfakit::linalg::{dot, RMatrix, Rational};
use pfakit::pfa::Pfa;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(n: i64, d: i64) -> Rational {
    pfakit::linalg::rat(n, d)
}

/// Random unary automaton whose support graph is a DAG of simple cycles
/// (lengths 1 to 3) and loop-free singletons, with states shuffled. Such
/// automata never have exponential ambiguity.
#[allow(clippy::needless_range_loop)]
pub fn cycle_dag(rng: &mut impl Rng, max_n: usize) -> Pfa {
    let n = rng.gen_range(1..=max_n);
    // Components as (start, len, cyclic), in topological order.
    let mut comps = Vec::new();
    let mut start = 0;
    while start < n {
        let len = rng.gen_range(1..=3usize).min(n - start);
        let last = start + len == n;
        let cyclic = len > 1 || last || rng.gen_bool(0.6);
        comps.push((start, len, cyclic));
        start += len;
    }
    let mut weights = vec![vec![0u32; n]; n];
    for (ci, &(start, len, cyclic)) in comps.iter().enumerate() {
        let later = comps.get(ci + 1).map_or(n, |c| c.0);
        for p in start..start + len {
            if cyclic {
                let next = if p + 1 == start + len { start } else { p + 1 };
                weights[p][next] = rng.gen_range(1..=4);
            }
            for q in later..n {
                if rng.gen_bool(0.35) {
                    weights[p][q] = rng.gen_range(1..=4);
                }
            }
            if weights[p].iter().all(|&w| w == 0) {
                let q = rng.gen_range(later..n);
                weights[p][q] = rng.gen_range(1..=4);
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut a = RMatrix::zeros(n, n);
    for p in 0..n {
        let total: u32 = weights[p].iter().sum();
        for q in 0..n {
            if weights[p][q] > 0 {
                a[(perm[p], perm[q])] = r(weights[p][q] as i64, total as i64);
            }
        }
    }
    let mut init_w: Vec<u32> = (0..n).map(|_| if rng.gen_bool(0.5) { rng.gen_range(1..=3) } else { 0 }).collect();
    if init_w.iter().all(|&w| w == 0) {
        init_w[rng.gen_range(0..n)] = 1;
    }
    let total: u32 = init_w.iter().sum();
    let mut u = vec![Rational::from_integer(0.into()); n];
    for p in 0..n {
        u[perm[p]] = r(init_w[p] as i64, total as i64);
    }
    let finals: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Pfa::unary(u, a, finals).expect("generated automaton is valid")
}

/// Random unary automaton with a {0,1} (functional) transition matrix.
pub fn zero_one_unary(rng: &mut impl Rng, n: usize) -> Pfa {
    let mut a = RMatrix::zeros(n, n);
    for p in 0..n {
        a[(p, rng.gen_range(0..n))] = r(1, 1);
    }
    let mut u = vec![r(0, 1); n];
    u[rng.gen_range(0..n)] = r(1, 1);
    let finals = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    Pfa::unary(u, a, finals).expect("valid")
}

/// `P(a^k)` for `k = 0..=upto` by repeated vector-matrix products.
pub fn direct(pfa: &Pfa, upto: usize) -> Vec<Rational> {
    let a = pfa.unary_matrix().unwrap();
    let v = pfa.final_vector();
    let mut x = pfa.initial().to_vec();
    let mut out = Vec::with_capacity(upto + 1);
    for _ in 0..=upto {
        out.push(dot(&x, &v));
        x = a.left_mul_vec(&x).unwrap();
    }
    out
}

/// `xᵀ M^k v` for `k = from..=to`, powering once and then stepping.
pub fn window(x: &[Rational], m: &RMatrix, v: &[Rational], from: &BigUint, to: &BigUint) -> Vec<Rational> {
    let mut y = m.pow(from).unwrap().left_mul_vec(x).unwrap();
    let mut out = Vec::new();
    let mut k = from.clone();
    while &k <= to {
        out.push(dot(&y, v));
        y = m.left_mul_vec(&y).unwrap();
        k += 1u32;
    }
    out
}
