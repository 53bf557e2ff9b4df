//! The rational numbering `c_Q(⟨a, b, c⟩) = (-1)^a · b/(c+1)`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::kernel::{triple, untriple};
use crate::nat::Nat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad rational {0:?}: expected p/q or an integer")]
pub struct ParseRationalError(pub String);

/// Total decoding of a rational code.
pub fn cq_decode(code: &Nat) -> BigRational {
    let (a, b, c) = untriple(code);
    let num = BigInt::from_biguint(if a.bit(0) { Sign::Minus } else { Sign::Plus }, b.to_biguint());
    BigRational::new(num, BigInt::from(c.succ().to_biguint()))
}

/// Canonical code: sign bit in {0, 1}, reduced fraction, sign 0 for zero.
pub fn cq_encode(q: &BigRational) -> Nat {
    let a = if q.is_negative() { Nat::ONE } else { Nat::ZERO };
    let b = Nat::from(q.numer().abs().to_biguint().expect("non-negative"));
    let c = Nat::from(q.denom().to_biguint().expect("positive") - BigUint::one());
    triple(&a, &b, &c)
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `2^-n`.
pub fn pow2_neg(n: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << n as usize)
}

/// Parses `p/q` or a bare integer, with an optional leading `-`.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| err())?;
    let q: BigInt = den.parse().map_err(|_| err())?;
    if q.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(p, q))
}

pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// `|q - r| ≤ bound`.
pub fn within(q: &BigRational, r: &BigRational, bound: &BigRational) -> bool {
    (q - r).abs() <= *bound
}

/// Floor of `q`.
pub fn floor(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}
