//! Scalar helpers over [`BigRational`].
//!
//! `num_rational` already keeps every value in lowest terms with a positive
//! denominator, so `Rational` is a plain alias rather than a newtype.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `n / d` from machine integers. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// Number of bits in the binary representation of `n` (`bins(0) = 1`).
pub fn bins(n: &BigUint) -> u64 {
    n.bits().max(1)
}

/// Smallest integer `>= r`, clamped at zero.
pub fn ceil_nonneg(r: &Rational) -> BigUint {
    let c = r.ceil().to_integer();
    if c.is_negative() {
        BigUint::zero()
    } else {
        c.to_biguint().expect("nonnegative")
    }
}

/// `r^e` by repeated squaring; `0^0 = 1`.
pub fn pow(r: &Rational, e: &BigUint) -> Rational {
    let mut result = Rational::one();
    let mut base = r.clone();
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result *= &base;
        }
        if i + 1 < bits {
            base = &base * &base;
        }
    }
    result
}

pub fn pow_u64(r: &Rational, e: u64) -> Rational {
    pow(r, &BigUint::from(e))
}

/// `lcm` over a list of positive integers; `1` for an empty list.
pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigUint>) -> BigUint {
    values
        .into_iter()
        .fold(BigUint::one(), |acc, v| acc.lcm(v))
}

pub fn in_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// Best-effort conversion for display or loop bounds.
pub fn to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}
