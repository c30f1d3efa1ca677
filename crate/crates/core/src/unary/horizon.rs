//! Horizons beyond which the sign of `P(aᵏ) - λ` is certified.
//!
//! All bounds use `bins(n)` (bit length) as an integer upper bound on `ln n`
//! and ceil every non-integer expression, so they only ever grow.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use super::{ClosedForm, UnaryError};
use crate::linalg::{bins, ceil_nonneg, from_biguint, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `P(aᵏ) = c` exactly beyond the horizon.
    Constant,
    /// `|P(aᵏ) - c| < epsilon` beyond the horizon; `side` compares `c` with the cutpoint.
    NotLimit { epsilon: Rational, side: Ordering },
    /// The cutpoint is `c`; `P(aᵏ) - c` has sign `sign` beyond the horizon.
    AtLimit { sign: Ordering },
}

/// `k_star` and the certified behaviour for every `k > k_star`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorizonBound {
    pub k_star: BigUint,
    pub regime: Regime,
    /// Intermediate quantities, in the order they were computed.
    pub audit: Vec<(&'static str, Rational)>,
}

impl HorizonBound {
    /// Sign of `P(aᵏ) - λ` for every `k > k_star`.
    pub fn eventual_sign(&self) -> Ordering {
        match self.regime {
            Regime::Constant => Ordering::Equal,
            Regime::NotLimit { side, .. } => side,
            Regime::AtLimit { sign } => sign,
        }
    }
}

fn sign_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "below",
        Ordering::Equal => "equal to",
        Ordering::Greater => "above",
    }
}

impl fmt::Display for HorizonBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.regime {
            Regime::Constant => writeln!(f, "regime: constant")?,
            Regime::NotLimit { epsilon, side } => {
                writeln!(f, "regime: not-limit, limit {} cutpoint, epsilon = {}", sign_name(*side), epsilon)?
            }
            Regime::AtLimit { sign } => writeln!(f, "regime: at-limit, probability {} limit", sign_name(*sign))?,
        }
        writeln!(f, "k_star = {}", self.k_star)?;
        for (name, value) in &self.audit {
            writeln!(f, "  {} = {}", name, value)?;
        }
        Ok(())
    }
}

fn r(n: &BigUint) -> Rational {
    from_biguint(n)
}

fn ru(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// `3⌈x⌉ · bins(⌈x⌉)`: past this point `y > x ln y`, valid for `x ≥ 9`.
fn log_threshold(x: &Rational) -> (BigUint, u64) {
    let c = ceil_nonneg(x);
    let b = bins(&c);
    (big(3) * &c * big(b), b)
}

/// For a function with no decaying terms: `P(aᵏ) = c` from the transient on.
pub fn bound_constant(cf: &ClosedForm) -> HorizonBound {
    HorizonBound {
        k_star: BigUint::from(cf.transient()),
        regime: Regime::Constant,
        audit: alloc::vec![("c", cf.limit().clone()), ("transient", ru(cf.transient() as u64))],
    }
}

/// Horizon past which `P(aᵏ)` is within `|c - λ|/2` of `c`, for `λ ≠ c`.
pub fn bound_not_limit(cf: &ClosedForm, lambda: &Rational) -> Result<HorizonBound, UnaryError> {
    let c = cf.limit();
    if lambda == c {
        return Err(UnaryError::CutpointAtLimit(c.clone()));
    }
    let epsilon = (c - lambda).abs() / ru(2);
    let side = c.cmp(lambda);
    let transient = big(cf.transient() as u64);
    let mut audit = alloc::vec![("c", c.clone()), ("epsilon", epsilon.clone())];
    let Some(top) = cf.terms().first() else {
        audit.push(("transient", r(&transient)));
        return Ok(HorizonBound { k_star: transient, regime: Regime::NotLimit { epsilon, side }, audit });
    };

    let d_sum = cf.coefficient_sum(0);
    let s = cf.degree_bound() as u64;
    let gap = Rational::one() - &top.eigenvalue;
    // k^s < λ₁^{-k/2} for all k > k1.
    let d_big = (ru(2 * s) / &gap).max(ru(9));
    let (k1, d_bins) = log_threshold(&d_big);
    audit.extend([
        ("d_sum", d_sum.clone()),
        ("s", ru(s)),
        ("lambda_1", top.eigenvalue.clone()),
        ("D", d_big),
        ("bins(ceil(D))", ru(d_bins)),
        ("k1", r(&k1)),
    ]);
    // d_sum · λ₁^{k/2} < ε for all k > k0.
    let k0 = if &epsilon / &d_sum >= Rational::one() {
        k1
    } else {
        let ratio = ceil_nonneg(&(&d_sum / &epsilon));
        let b = bins(&ratio);
        let first = ceil_nonneg(&(ru(2 * b) / &gap));
        audit.extend([("bins(ceil(d_sum/epsilon))", ru(b)), ("k0_first", r(&first))]);
        first.max(k1)
    };
    audit.push(("k0", r(&k0)));
    audit.push(("transient", r(&transient)));
    Ok(HorizonBound { k_star: k0.max(transient), regime: Regime::NotLimit { epsilon, side }, audit })
}

/// Horizon past which `P(aᵏ) - c` has the sign of the leading coefficient
/// of the dominant polynomial.
pub fn bound_at_limit(cf: &ClosedForm) -> Result<HorizonBound, UnaryError> {
    let terms = cf.terms();
    let Some(top) = terms.first() else {
        return Err(UnaryError::ConstantFunction);
    };
    let lead = top.poly.leading().expect("terms carry nonzero polynomials");
    let sign = if lead.is_positive() { Ordering::Greater } else { Ordering::Less };
    // The negative case is the positive case for -f; only absolute values enter.
    let a = lead.abs();
    let t = top.poly.degree().expect("nonzero") as u64;
    let s = cf.degree_bound() as u64;
    let low: Rational = top.poly.coeffs()[..t as usize].iter().fold(Rational::zero(), |acc, x| acc + x.abs());
    // p₁(k) > a kᵗ / 2 for k > k0.
    let k0 = ceil_nonneg(&(ru(2) * &low / &a)).max(BigUint::one());
    let mut audit = alloc::vec![
        ("c", cf.limit().clone()),
        ("a_lead", lead.clone()),
        ("t", ru(t)),
        ("s", ru(s)),
        ("lambda_1", top.eigenvalue.clone()),
        ("k0", r(&k0)),
    ];

    let k1 = match terms.get(1) {
        None => k0.clone(),
        Some(second) => {
            // d k^s λ₂ᵏ < (a/2) kᵗ λ₁ᵏ for k > k1.
            let d = cf.coefficient_sum(1);
            let gap = &top.eigenvalue - &second.eigenvalue;
            let ratio = ru(2) * &d / &a;
            audit.extend([("d", d.clone()), ("lambda_2", second.eigenvalue.clone()), ("2d/a", ratio.clone())]);
            if t == s {
                if ratio <= Rational::one() {
                    BigUint::zero()
                } else {
                    let b = bins(&ceil_nonneg(&ratio));
                    audit.push(("bins(ceil(2d/a))", ru(b)));
                    ceil_nonneg(&(ru(b) / &gap))
                }
            } else if ratio >= Rational::one() {
                let e = (&ratio * ru(s - t) / &gap).max(ru(9));
                let (k1, b) = log_threshold(&e);
                audit.extend([("E", e), ("bins(ceil(E))", ru(b))]);
                k1
            } else {
                let e = (ru(s - t) / &gap).max(ru(9));
                let ec = ceil_nonneg(&e);
                let b = bins(&ec);
                let scaled = ceil_nonneg(&(ratio.recip() * &e));
                audit.extend([("E", e), ("bins(ceil(E))", ru(b))]);
                big(3) * scaled * big(b)
            }
        }
    };
    audit.push(("k1", r(&k1)));
    let transient = big(cf.transient() as u64);
    audit.push(("transient", r(&transient)));
    let k_star = k0.max(k1).max(transient);
    Ok(HorizonBound { k_star, regime: Regime::AtLimit { sign }, audit })
}
