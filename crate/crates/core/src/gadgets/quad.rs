use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{cutpoint, GadgetBundle, QuadInstance, QuadVariant};
use crate::linalg::{int, RMatrix, Rational};
use crate::pfa::Pfa;

/// `[[1, 1], [0, 1]]`, whose `k`-th power carries `k` in the corner.
fn shear() -> RMatrix {
    RMatrix::from_ints(&[&[1, 1], &[0, 1]])
}

fn kron_all(ms: &[RMatrix]) -> RMatrix {
    ms[1..].iter().fold(ms[0].clone(), |acc, m| acc.kron(m))
}

fn dsum_all(ms: &[RMatrix]) -> RMatrix {
    ms[1..].iter().fold(ms[0].clone(), |acc, m| acc.dsum(m))
}

/// Appends a column topping every row up to `target` and an absorbing last
/// row, then divides by `target`. Panics if a row already exceeds `target`.
pub fn stochasticize(m: &RMatrix, target: i64) -> RMatrix {
    let n = m.rows();
    let t = int(target);
    let mut out = RMatrix::zeros(n + 1, n + 1);
    for (i, sum) in m.row_sums().into_iter().enumerate() {
        assert!(sum <= t, "row {i} sums to {sum}, above {target}");
        for j in 0..n {
            out[(i, j)] = m[(i, j)].clone();
        }
        out[(i, n)] = &t - sum;
    }
    out[(n, n)] = t.clone();
    out.scale(&t.recip())
}

fn binary(initial: Vec<Rational>, h: RMatrix, g: RMatrix, finals: Vec<bool>) -> Pfa {
    Pfa::new(vec!["h".to_string(), "g".to_string()], initial, vec![h, g], finals).expect("valid gadget")
}

fn indicator(n: usize, ones: &[usize]) -> Vec<bool> {
    let mut v = vec![false; n];
    for &i in ones {
        v[i] = true;
    }
    v
}

/// Letter matrices of the `ax² + by` counter and the `c(1 - 4^{-n})` clock.
fn reach_matrices() -> (RMatrix, RMatrix) {
    let a = shear();
    let i2 = RMatrix::identity(2);
    let clock = RMatrix::from_fracs(&[&[(1, 4), (3, 4)], &[(0, 1), (1, 1)]]);
    let h = stochasticize(&a.kron(&a).dsum(&i2), 4).dsum(&clock);
    let g = stochasticize(&RMatrix::identity(4).dsum(&a), 4).dsum(&clock);
    (h, g)
}

/// 9 states with `P(h^x g^y) = (c + (ax² + by - c)/4^{x+y}) / (a+b+c)`.
pub fn quad_reach_gadget(q: &QuadInstance) -> GadgetBundle {
    let (a, b, c) = q.coeffs();
    let total = &a + &b + &c;
    let mut u = vec![Rational::zero(); 9];
    u[0] = &a / &total;
    u[4] = &b / &total;
    u[7] = &c / &total;
    let (h, g) = reach_matrices();
    GadgetBundle {
        pfa: binary(u, h, g, indicator(9, &[3, 5, 8])),
        lambda: cutpoint(q, QuadVariant::Reach9),
        variant: QuadVariant::Reach9,
        instance: *q,
    }
}

/// The 37-state letter matrices: the positive part (30 states, counting
/// `x⁴, x²y, y², 1`) followed by the negative part (7 states, `x², y`).
fn nonstrict_matrices() -> (RMatrix, RMatrix) {
    let a = shear();
    let i2 = RMatrix::identity(2);
    let one = RMatrix::identity(1);
    let h_pos = dsum_all(&[
        kron_all(&[a.clone(), a.clone(), a.clone(), a.clone()]),
        kron_all(&[a.clone(), a.clone(), i2.clone()]),
        i2.kron(&i2),
        one.clone(),
    ]);
    let g_pos = dsum_all(&[
        RMatrix::identity(16),
        kron_all(&[i2.clone(), i2.clone(), a.clone()]),
        a.kron(&a),
        one,
    ]);
    let h_neg = a.kron(&a).dsum(&i2);
    let g_neg = i2.kron(&i2).dsum(&a);
    let h = stochasticize(&h_pos, 16).dsum(&stochasticize(&h_neg, 16));
    let g = stochasticize(&g_pos, 16).dsum(&stochasticize(&g_neg, 16));
    (h, g)
}

/// Initial distribution and final set of the 37-state gadget.
fn nonstrict_vectors(q: &QuadInstance) -> (Vec<Rational>, Vec<bool>) {
    let (a, b, c) = q.coeffs();
    let z = q.z();
    let two = int(2);
    let mut u = vec![Rational::zero(); 37];
    u[0] = &a * &a;
    u[16] = &two * &a * &b;
    u[24] = &b * &b;
    u[28] = &c * &c;
    u[30] = &two * &a * &c;
    u[34] = &two * &b * &c;
    for x in &mut u {
        *x /= &z;
    }
    // Positive part: the corners of each counter and the constant state.
    // Negative part: complement of its corners, padding state included.
    let mut finals = indicator(37, &[15, 23, 27, 28]);
    for (i, f) in finals.iter_mut().enumerate().skip(30) {
        *f = i != 33 && i != 35;
    }
    (u, finals)
}

/// 37 states with `P(h^x g^y) = ((2ac + 2bc) + (ax² + by - c)²/16^{x+y}) / z`.
pub fn quad_nonstrict_gadget(q: &QuadInstance) -> GadgetBundle {
    let (h, g) = nonstrict_matrices();
    let (u, finals) = nonstrict_vectors(q);
    GadgetBundle {
        pfa: binary(u, h, g, finals),
        lambda: cutpoint(q, QuadVariant::Nonstrict37),
        variant: QuadVariant::Nonstrict37,
        instance: *q,
    }
}

/// 40 states: a start state that, on either letter, moves half its mass into
/// the 37-state gadget and half into a two-state clock whose accepting mass
/// after `n` letters is `1 - (16z)^{-n}`.
///
/// Layout: start, 37 gadget states, pending (non-final), accept (absorbing).
/// The start state is final so the empty word (probability 1) never
/// satisfies the strict query.
pub fn quad_strict_gadget(q: &QuadInstance) -> GadgetBundle {
    let (h37, g37) = nonstrict_matrices();
    let (u37, finals37) = nonstrict_vectors(q);
    let leak = (int(16) * q.z()).recip();
    let half = Rational::new(1.into(), 2.into());
    let (pending, accept) = (38, 39);

    let wrap = |m: &RMatrix| -> RMatrix {
        let mut out = RMatrix::zeros(40, 40);
        for (j, x) in u37.iter().enumerate() {
            out[(0, 1 + j)] = &half * x;
        }
        out[(0, pending)] = &half * &leak;
        out[(0, accept)] = &half * (Rational::one() - &leak);
        for i in 0..37 {
            for j in 0..37 {
                out[(1 + i, 1 + j)] = m[(i, j)].clone();
            }
        }
        out[(pending, pending)] = leak.clone();
        out[(pending, accept)] = Rational::one() - &leak;
        out[(accept, accept)] = Rational::one();
        out
    };

    let mut u = vec![Rational::zero(); 40];
    u[0] = Rational::one();
    let mut finals = vec![true];
    finals.extend(finals37);
    finals.extend([false, true]);
    GadgetBundle {
        pfa: binary(u, wrap(&h37), wrap(&g37), finals),
        lambda: cutpoint(q, QuadVariant::Strict40),
        variant: QuadVariant::Strict40,
        instance: *q,
    }
}

pub fn quad_gadget(q: &QuadInstance, variant: QuadVariant) -> GadgetBundle {
    match variant {
        QuadVariant::Reach9 => quad_reach_gadget(q),
        QuadVariant::Nonstrict37 => quad_nonstrict_gadget(q),
        QuadVariant::Strict40 => quad_strict_gadget(q),
    }
}
