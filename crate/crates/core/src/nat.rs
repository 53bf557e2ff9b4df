//! Arbitrary-precision naturals with an inline fast path for values that fit
//! in a machine word. Register contents, program codes and names are all
//! `Nat`s.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(u64),
    // Invariant: always > u64::MAX.
    Big(BigUint),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Nat(Repr);

impl Nat {
    pub const ZERO: Nat = Nat(Repr::Small(0));
    pub const ONE: Nat = Nat(Repr::Small(1));

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.0 {
            Repr::Small(v) => Some(v),
            Repr::Big(_) => None,
        }
    }

    /// Saturating conversion, handy for indices and fuel.
    pub fn to_u64_saturating(&self) -> u64 {
        self.to_u64().unwrap_or(u64::MAX)
    }

    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Repr::Small(v) => BigUint::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Small(v) => 64 - u64::from(v.leading_zeros()),
            Repr::Big(b) => b.bits(),
        }
    }

    pub fn bit(&self, i: u64) -> bool {
        match &self.0 {
            Repr::Small(v) => i < 64 && (v >> i) & 1 == 1,
            Repr::Big(b) => b.bit(i),
        }
    }

    pub fn add(&self, other: &Nat) -> Nat {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(s) = a.checked_add(*b) {
                return Nat(Repr::Small(s));
            }
        }
        Nat::from(self.to_biguint() + other.to_biguint())
    }

    /// Truncated subtraction.
    pub fn monus(&self, other: &Nat) -> Nat {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => Nat(Repr::Small(a.saturating_sub(*b))),
            (Repr::Small(_), Repr::Big(_)) => Nat::ZERO,
            (Repr::Big(a), Repr::Small(b)) => Nat::from(a - BigUint::from(*b)),
            (Repr::Big(a), Repr::Big(b)) => {
                if a <= b {
                    Nat::ZERO
                } else {
                    Nat::from(a - b)
                }
            }
        }
    }

    pub fn mul(&self, other: &Nat) -> Nat {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(p) = a.checked_mul(*b) {
                return Nat(Repr::Small(p));
            }
        }
        Nat::from(self.to_biguint() * other.to_biguint())
    }

    pub fn succ(&self) -> Nat {
        self.add(&Nat::ONE)
    }

    pub fn pred(&self) -> Nat {
        self.monus(&Nat::ONE)
    }

    pub fn pow2(k: u64) -> Nat {
        if k < 64 {
            Nat(Repr::Small(1u64 << k))
        } else {
            Nat::from(BigUint::from(1u8) << k)
        }
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat(Repr::Small(v))
    }
}

impl From<u32> for Nat {
    fn from(v: u32) -> Self {
        Nat(Repr::Small(u64::from(v)))
    }
}

impl From<usize> for Nat {
    fn from(v: usize) -> Self {
        Nat(Repr::Small(v as u64))
    }
}

impl From<BigUint> for Nat {
    fn from(b: BigUint) -> Self {
        match b.to_u64() {
            Some(v) => Nat(Repr::Small(v)),
            None => Nat(Repr::Big(b)),
        }
    }
}

impl From<&Nat> for BigUint {
    fn from(n: &Nat) -> Self {
        n.to_biguint()
    }
}

impl Default for Nat {
    fn default() -> Self {
        Nat::ZERO
    }
}

impl Ord for Nat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            (Repr::Small(_), Repr::Big(_)) => Ordering::Less,
            (Repr::Big(_), Repr::Small(_)) => Ordering::Greater,
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<u64> for Nat {
    fn eq(&self, other: &u64) -> bool {
        matches!(self.0, Repr::Small(v) if v == *other)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a decimal natural number: {0:?}")]
pub struct ParseNatError(pub String);

impl FromStr for Nat {
    type Err = ParseNatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseNatError(s.to_string()));
        }
        BigUint::from_str(t)
            .map(Nat::from)
            .map_err(|_| ParseNatError(s.to_string()))
    }
}

impl serde::Serialize for Nat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Nat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Nat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a natural number or a decimal string")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Nat, E> {
                Ok(Nat::from(v))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Nat, E> {
                u64::try_from(v)
                    .map(Nat::from)
                    .map_err(|_| E::custom("negative number"))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Nat, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// Integer square root, floor.
pub(crate) fn isqrt_big(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    n.sqrt()
}
