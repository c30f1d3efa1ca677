//! Hardness instances: binary automata encoding `ax² + by - c = 0`, and unary
//! automata accepting a union of arithmetic progressions.

mod quad;
mod regex;
mod verify;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub use quad::{quad_gadget, quad_nonstrict_gadget, quad_reach_gadget, quad_strict_gadget, stochasticize};
pub use regex::{regex_union_gadget, RegexUnionSpec};
pub use verify::{verify_bundle, BundleCheck, BundleReport};

use crate::linalg::{pow, Rational};
use crate::pfa::{Mode, Pfa, Query};

/// Letter indices of the binary gadgets.
pub const H: usize = 0;
pub const G: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GadgetError {
    #[error("coefficients must be positive, got a={a} b={b} c={c}")]
    ZeroCoefficient { a: u64, b: u64, c: u64 },
    #[error("pair list is empty")]
    NoPairs,
    #[error("pair {index} has period 0")]
    ZeroPeriod { index: usize },
    #[error("unknown gadget variant `{0}`")]
    UnknownVariant(String),
}

/// The equation `a x² + b y - c = 0` over natural numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadInstance {
    a: u64,
    b: u64,
    c: u64,
}

impl QuadInstance {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self, GadgetError> {
        if a == 0 || b == 0 || c == 0 {
            return Err(GadgetError::ZeroCoefficient { a, b, c });
        }
        Ok(QuadInstance { a, b, c })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub(crate) fn coeffs(&self) -> (Rational, Rational, Rational) {
        let r = |n: u64| Rational::from_integer(n.into());
        (r(self.a), r(self.b), r(self.c))
    }

    /// `z = (a + b + c)²`.
    pub fn z(&self) -> Rational {
        let (a, b, c) = self.coeffs();
        let s = a + b + c;
        &s * &s
    }

    /// `a x² + b y - c`.
    pub fn residual(&self, x: &BigUint, y: &BigUint) -> BigInt {
        BigInt::from(self.a) * BigInt::from(x * x) + BigInt::from(self.b) * BigInt::from(y.clone())
            - BigInt::from(self.c)
    }

    pub fn is_solution(&self, x: &BigUint, y: &BigUint) -> bool {
        self.residual(x, y).is_zero()
    }
}

impl fmt::Display for QuadInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x^2 + {}y - {} = 0", self.a, self.b, self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadVariant {
    /// 9 states; a solution exists iff some word has probability exactly λ.
    Reach9,
    /// 37 states; a solution exists iff some word has probability ≤ λ.
    Nonstrict37,
    /// 40 states; a solution exists iff some word has probability < λ.
    Strict40,
}

impl QuadVariant {
    pub const ALL: [QuadVariant; 3] = [QuadVariant::Reach9, QuadVariant::Nonstrict37, QuadVariant::Strict40];

    pub fn states(self) -> usize {
        match self {
            QuadVariant::Reach9 => 9,
            QuadVariant::Nonstrict37 => 37,
            QuadVariant::Strict40 => 40,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadVariant::Reach9 => "reach",
            QuadVariant::Nonstrict37 => "nonstrict",
            QuadVariant::Strict40 => "strict",
        }
    }

    /// The question whose answer encodes solvability.
    pub fn mode(self) -> Mode {
        match self {
            QuadVariant::Reach9 => Mode::Reach,
            QuadVariant::Nonstrict37 => Mode::EmptyLe,
            QuadVariant::Strict40 => Mode::EmptyLt,
        }
    }
}

impl fmt::Display for QuadVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QuadVariant {
    type Err = GadgetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QuadVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| GadgetError::UnknownVariant(s.into()))
    }
}

/// A binary gadget together with its cutpoint and closed-form acceptance.
#[derive(Clone, Debug)]
pub struct GadgetBundle {
    pub pfa: Pfa,
    pub lambda: Rational,
    pub variant: QuadVariant,
    pub instance: QuadInstance,
}

impl GadgetBundle {
    pub fn query(&self) -> Query {
        Query::new(self.variant.mode(), self.lambda.clone()).expect("cutpoint in [0, 1]")
    }

    /// Closed-form acceptance probability of `h^x g^y`.
    pub fn predicted(&self, x: &BigUint, y: &BigUint) -> Rational {
        let q = &self.instance;
        match self.variant {
            QuadVariant::Reach9 => predicted_reach(q, x, y),
            QuadVariant::Nonstrict37 => predicted_nonstrict(q, x, y),
            QuadVariant::Strict40 => {
                if x.is_zero() && y.is_zero() {
                    return Rational::one();
                }
                // The first letter only dispatches into the 37-state part.
                let (rx, ry) = if x.is_zero() { (x.clone(), y - 1u32) } else { (x - 1u32, y.clone()) };
                let n = x + y;
                let half = Rational::new(1.into(), 2.into());
                let leak = pow(&(Rational::from_integer(16.into()) * q.z()).recip(), &n);
                &half * predicted_nonstrict(q, &rx, &ry) + half * (Rational::one() - leak)
            }
        }
    }

    /// Whether `h^x g^y` satisfies the gadget's query according to the
    /// encoded equation (not by evaluating the automaton).
    pub fn encodes_solution(&self, x: &BigUint, y: &BigUint) -> bool {
        match self.variant {
            QuadVariant::Reach9 | QuadVariant::Nonstrict37 => self.instance.is_solution(x, y),
            QuadVariant::Strict40 => {
                if x.is_zero() && y.is_zero() {
                    false
                } else if x.is_zero() {
                    self.instance.is_solution(x, &(y - 1u32))
                } else {
                    self.instance.is_solution(&(x - 1u32), y)
                }
            }
        }
    }

    /// `h^x g^y` as a list of letter indices.
    pub fn word(x: usize, y: usize) -> Vec<usize> {
        let mut w = alloc::vec![H; x];
        w.extend(core::iter::repeat_n(G, y));
        w
    }
}

/// `(c + (ax² + by - c) / 4^{x+y}) / (a + b + c)`.
fn predicted_reach(q: &QuadInstance, x: &BigUint, y: &BigUint) -> Rational {
    let (a, b, c) = q.coeffs();
    let n = x + y;
    let res = Rational::from_integer(q.residual(x, y));
    let scale = pow(&Rational::new(1.into(), 4.into()), &n);
    (&c + res * scale) / (a + b + c)
}

/// `((2ac + 2bc) + (ax² + by - c)² / 16^{x+y}) / z`.
fn predicted_nonstrict(q: &QuadInstance, x: &BigUint, y: &BigUint) -> Rational {
    let (a, b, c) = q.coeffs();
    let n = x + y;
    let res = Rational::from_integer(q.residual(x, y));
    let scale = pow(&Rational::new(1.into(), 16.into()), &n);
    let two = Rational::from_integer(2.into());
    (&two * &a * &c + two * b * c + &res * &res * scale) / q.z()
}

/// `λ` for each variant.
pub(crate) fn cutpoint(q: &QuadInstance, variant: QuadVariant) -> Rational {
    let (a, b, c) = q.coeffs();
    let two = Rational::from_integer(2.into());
    match variant {
        QuadVariant::Reach9 => &c / (&a + &b + &c),
        QuadVariant::Nonstrict37 => (&two * &a * &c + &two * &b * &c) / q.z(),
        QuadVariant::Strict40 => {
            let l2 = (&two * &a * &c + &two * &b * &c) / q.z();
            (l2 + Rational::one()) / two
        }
    }
}
