use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use super::{GadgetBundle, QuadVariant, G, H};
use crate::ambiguity::{classify, AmbiguityClass};
use crate::linalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of every identity checked by [`verify_bundle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleReport {
    pub variant: QuadVariant,
    pub max_xy: usize,
    pub checks: Vec<BundleCheck>,
}

impl BundleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BundleCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for BundleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{} {} {}: {}", status, self.variant, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// `P(h^x g^y)` for all `0 ≤ x, y ≤ max`, indexed `[x][y]`.
fn grid(b: &GadgetBundle, max: usize) -> Vec<Vec<Rational>> {
    let (h, g) = (&b.pfa.transitions()[H], &b.pfa.transitions()[G]);
    let mut out = Vec::with_capacity(max + 1);
    let mut row = b.pfa.initial().to_vec();
    for _ in 0..=max {
        let mut col = row.clone();
        let mut line = Vec::with_capacity(max + 1);
        for _ in 0..=max {
            line.push(b.pfa.finish(&col));
            col = g.left_mul_vec(&col).expect("square");
        }
        out.push(line);
        row = h.left_mul_vec(&row).expect("square");
    }
    out
}

fn check(name: &'static str, passed: bool, detail: String) -> BundleCheck {
    BundleCheck { name, passed, detail }
}

/// Checks a gadget exactly: shape, stochasticity, triangularity,
/// commutativity, ambiguity class, the closed form and the threshold
/// relation on every `h^x g^y` with `x, y ≤ max_xy`.
pub fn verify_bundle(b: &GadgetBundle, max_xy: usize) -> BundleReport {
    let mut checks = Vec::new();
    let n = b.pfa.states();
    checks.push(check(
        "state-count",
        n == b.variant.states(),
        format!("{} states, expected {}", n, b.variant.states()),
    ));

    let ms = b.pfa.transitions();
    let stochastic = ms.iter().all(|m| m.is_row_stochastic());
    checks.push(check("row-stochastic", stochastic, String::from("every letter matrix")));
    let upper = ms.iter().all(|m| m.is_upper_triangular());
    checks.push(check("upper-triangular", upper, String::from("every letter matrix")));

    let hg = ms[H].mul(&ms[G]).expect("square");
    let gh = ms[G].mul(&ms[H]).expect("square");
    let commute_detail = match (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| hg[(i, j)] != gh[(i, j)]) {
        None => String::from("HG = GH"),
        Some((i, j)) => format!("(HG)[{i},{j}] = {} but (GH)[{i},{j}] = {}", hg[(i, j)], gh[(i, j)]),
    };
    checks.push(check("commute", hg == gh, commute_detail));

    let class = classify(&b.pfa).class;
    checks.push(check("ambiguity", class == AmbiguityClass::Polynomial, format!("{class:?}")));

    let probs = grid(b, max_xy);
    let mut closed_form = None;
    let mut threshold = None;
    for (x, line) in probs.iter().enumerate() {
        for (y, p) in line.iter().enumerate() {
            let (bx, by) = (BigUint::from(x), BigUint::from(y));
            let predicted = b.predicted(&bx, &by);
            if closed_form.is_none() && *p != predicted {
                closed_form = Some(format!("(x,y)=({x},{y}): automaton {p}, closed form {predicted}"));
            }
            let solution = b.encodes_solution(&bx, &by);
            let lambda = &b.lambda;
            let ok = match b.variant {
                QuadVariant::Reach9 => (p == lambda) == solution,
                QuadVariant::Nonstrict37 => p >= lambda && (p == lambda) == solution,
                QuadVariant::Strict40 => (p < lambda) == solution,
            };
            if threshold.is_none() && !ok {
                threshold = Some(format!("(x,y)=({x},{y}): p = {p}, lambda = {lambda}, solution = {solution}"));
            }
        }
    }
    let points = (max_xy + 1) * (max_xy + 1);
    let summary = |fail: Option<String>| match fail {
        None => (true, format!("{points} points")),
        Some(d) => (false, d),
    };
    let (ok, d) = summary(closed_form);
    checks.push(check("closed-form", ok, d));
    let (ok, d) = summary(threshold);
    checks.push(check("threshold", ok, d));

    BundleReport { variant: b.variant, max_xy, checks }
}
