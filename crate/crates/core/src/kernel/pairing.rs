use num_bigint::BigUint;

use crate::nat::{isqrt_big, Nat};

/// Cantor pairing: `(n+m)(n+m+1)/2 + m`.
pub fn pair(n: &Nat, m: &Nat) -> Nat {
    if let (Some(a), Some(b)) = (n.to_u64(), m.to_u64()) {
        let s = u128::from(a) + u128::from(b);
        // s*(s+1)/2 + b fits in u128 whenever s < 2^63.
        if s < (1u128 << 63) {
            let v = s * (s + 1) / 2 + u128::from(b);
            if let Ok(v) = u64::try_from(v) {
                return Nat::from(v);
            }
            return Nat::from(BigUint::from(v));
        }
    }
    let s = n.to_biguint() + m.to_biguint();
    let t = (&s * (&s + 1u8)) >> 1u8;
    Nat::from(t + m.to_biguint())
}

pub fn pair_u64(n: u64, m: u64) -> Nat {
    pair(&Nat::from(n), &Nat::from(m))
}

fn isqrt_u128(v: u128) -> u128 {
    let mut r = (v as f64).sqrt() as u128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// Inverse of [`pair`].
pub fn unpair(k: &Nat) -> (Nat, Nat) {
    if let Some(k) = k.to_u64() {
        let k = u128::from(k);
        let w = (isqrt_u128(8 * k + 1) - 1) / 2;
        let t = w * (w + 1) / 2;
        let m = k - t;
        let n = w - m;
        return (Nat::from(n as u64), Nat::from(m as u64));
    }
    let k = k.to_biguint();
    let w = (isqrt_big(&((&k << 3u8) + 1u8)) - 1u8) >> 1u8;
    let t = (&w * (&w + 1u8)) >> 1u8;
    let m = &k - t;
    let n = &w - &m;
    (Nat::from(n), Nat::from(m))
}

pub fn unpair_left(k: &Nat) -> Nat {
    unpair(k).0
}

pub fn unpair_right(k: &Nat) -> Nat {
    unpair(k).1
}

/// `⟨a, b, c⟩ = ⟨a, ⟨b, c⟩⟩`.
pub fn triple(a: &Nat, b: &Nat, c: &Nat) -> Nat {
    pair(a, &pair(b, c))
}

pub fn untriple(k: &Nat) -> (Nat, Nat, Nat) {
    let (a, bc) = unpair(k);
    let (b, c) = unpair(&bc);
    (a, b, c)
}
