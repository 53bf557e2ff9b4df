//! Instruction set and the total Gödel numbering of programs.
//!
//! A program code `c` is read as the bit string obtained by dropping the
//! leading one of `c + 1`. That string is parsed as a sequence of Elias-gamma
//! words `y ≥ 1`, each carrying the instruction code `y - 1`; an incomplete
//! trailing word is ignored. An instruction code `x` has opcode
//! `x mod 14` and payload `x div 14`, unpaired according to the opcode's
//! arity. `CONST r v` instead stores `r` as a gamma word in front of the
//! bits of `v`, so embedding a large constant costs its size and no more.
//! Every natural number therefore decodes to exactly one program.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use super::pairing::{pair, unpair};
use crate::nat::Nat;

pub const OPCODE_COUNT: u64 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Opcode {
    Halt = 0,
    Const = 1,
    Copy = 2,
    Inc = 3,
    Add = 4,
    Monus = 5,
    Mul = 6,
    Pair = 7,
    Unl = 8,
    Unr = 9,
    Jz = 10,
    Jmp = 11,
    Ueval = 12,
    Beval = 13,
}

impl Opcode {
    pub fn from_index(i: u64) -> Opcode {
        use Opcode::*;
        match i % OPCODE_COUNT {
            0 => Halt,
            1 => Const,
            2 => Copy,
            3 => Inc,
            4 => Add,
            5 => Monus,
            6 => Mul,
            7 => Pair,
            8 => Unl,
            9 => Unr,
            10 => Jz,
            11 => Jmp,
            12 => Ueval,
            _ => Beval,
        }
    }

    pub fn mnemonic(self) -> &'static str {
        use Opcode::*;
        match self {
            Halt => "HALT",
            Const => "CONST",
            Copy => "COPY",
            Inc => "INC",
            Add => "ADD",
            Monus => "MONUS",
            Mul => "MUL",
            Pair => "PAIR",
            Unl => "UNL",
            Unr => "UNR",
            Jz => "JZ",
            Jmp => "JMP",
            Ueval => "UEVAL",
            Beval => "BEVAL",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Opcode> {
        (0..OPCODE_COUNT)
            .map(Opcode::from_index)
            .find(|op| op.mnemonic().eq_ignore_ascii_case(s))
    }
}

/// One machine instruction. Register operands are arbitrary naturals;
/// jump offsets are relative to the jumping instruction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Instruction {
    Halt,
    Const { r: Nat, v: Nat },
    Copy { r: Nat, s: Nat },
    Inc { r: Nat },
    Add { r: Nat, s: Nat, t: Nat },
    Monus { r: Nat, s: Nat, t: Nat },
    Mul { r: Nat, s: Nat, t: Nat },
    Pair { r: Nat, s: Nat, t: Nat },
    Unl { r: Nat, s: Nat },
    Unr { r: Nat, s: Nat },
    Jz { r: Nat, offset: i64 },
    Jmp { offset: i64 },
    /// `r := φ_{reg s}(reg t)`, run on the caller's remaining fuel.
    Ueval { r: Nat, s: Nat, t: Nat },
    /// Step-bounded evaluation. With `reg t = ⟨x, b⟩`, runs `φ_{reg s}(x)` for
    /// at most `b` steps; `r := 1 + ⟨value, steps⟩` on halting, `0` otherwise.
    Beval { r: Nat, s: Nat, t: Nat },
}

fn zigzag(o: i64) -> Nat {
    if o >= 0 {
        Nat::from(o as u64).mul(&Nat::from(2u64))
    } else {
        Nat::from(o.unsigned_abs()).mul(&Nat::from(2u64)).pred()
    }
}

fn unzigzag(z: &Nat) -> i64 {
    // Offsets beyond the i64 range leave every program anyway; saturate.
    let odd = z.bit(0);
    let half = match z.to_u64() {
        Some(v) => v / 2 + u64::from(odd),
        None => u64::MAX,
    };
    let half = i64::try_from(half).unwrap_or(i64::MAX);
    if odd {
        -half
    } else {
        half
    }
}

fn split3(p: &Nat) -> (Nat, Nat, Nat) {
    let (r, st) = unpair(p);
    let (s, t) = unpair(&st);
    (r, s, t)
}

fn join3(r: &Nat, s: &Nat, t: &Nat) -> Nat {
    pair(r, &pair(s, t))
}

/// `1` followed by the gamma word of `r + 1`, read in binary.
pub(crate) fn const_prefix(r: &Nat) -> Nat {
    let y = r.succ();
    Nat::pow2(2 * y.bits() - 1).add(&y)
}

/// `CONST` payload: `(prefix(r) - 1)·2^t + v` with `2^t ≤ v + 1 < 2^(t+1)`.
/// Read as a bit string this is the gamma word of `r + 1` followed by the
/// bits of `v + 1` below its leading one.
fn const_join(r: &Nat, v: &Nat) -> Nat {
    let t = v.succ().bits() - 1;
    const_prefix(r).pred().mul(&Nat::pow2(t)).add(v)
}

fn const_split(p: &Nat) -> (Nat, Nat) {
    let s = p.succ().to_biguint();
    let m = s.bits() - 1;
    let rest = &s - (BigUint::from(1u8) << m);
    let z = m - rest.bits();
    if rest.bits() == 0 || m < 2 * z + 1 {
        // no complete gamma word
        return (Nat::ZERO, Nat::ZERO);
    }
    let tlen = m - (2 * z + 1);
    let y = &rest >> tlen;
    let tail = &rest - (&y << tlen);
    let v = (BigUint::from(1u8) << tlen) + tail - 1u8;
    (Nat::from(y).pred(), Nat::from(v))
}

impl Instruction {
    pub fn opcode(&self) -> Opcode {
        use Instruction::*;
        match self {
            Halt => Opcode::Halt,
            Const { .. } => Opcode::Const,
            Copy { .. } => Opcode::Copy,
            Inc { .. } => Opcode::Inc,
            Add { .. } => Opcode::Add,
            Monus { .. } => Opcode::Monus,
            Mul { .. } => Opcode::Mul,
            Pair { .. } => Opcode::Pair,
            Unl { .. } => Opcode::Unl,
            Unr { .. } => Opcode::Unr,
            Jz { .. } => Opcode::Jz,
            Jmp { .. } => Opcode::Jmp,
            Ueval { .. } => Opcode::Ueval,
            Beval { .. } => Opcode::Beval,
        }
    }

    fn payload(&self) -> Nat {
        use Instruction::*;
        match self {
            Halt => Nat::ZERO,
            Const { r, v } => const_join(r, v),
            Copy { r, s } | Unl { r, s } | Unr { r, s } => pair(r, s),
            Inc { r } => r.clone(),
            Add { r, s, t }
            | Monus { r, s, t }
            | Mul { r, s, t }
            | Pair { r, s, t }
            | Ueval { r, s, t }
            | Beval { r, s, t } => join3(r, s, t),
            Jz { r, offset } => pair(r, &zigzag(*offset)),
            Jmp { offset } => zigzag(*offset),
        }
    }

    pub fn encode(&self) -> Nat {
        let op = Nat::from(self.opcode() as u64);
        self.payload().mul(&Nat::from(OPCODE_COUNT)).add(&op)
    }

    pub fn decode(x: &Nat) -> Instruction {
        let (payload, op) = match x.to_u64() {
            Some(v) => (Nat::from(v / OPCODE_COUNT), v % OPCODE_COUNT),
            None => {
                let (q, r) = x.to_biguint().div_rem(&BigUint::from(OPCODE_COUNT));
                (Nat::from(q), r.to_u64_digits().first().copied().unwrap_or(0))
            }
        };
        use Instruction::*;
        match Opcode::from_index(op) {
            Opcode::Halt => Halt,
            Opcode::Const => {
                let (r, v) = const_split(&payload);
                Const { r, v }
            }
            Opcode::Copy => {
                let (r, s) = unpair(&payload);
                Copy { r, s }
            }
            Opcode::Inc => Inc { r: payload },
            Opcode::Add => {
                let (r, s, t) = split3(&payload);
                Add { r, s, t }
            }
            Opcode::Monus => {
                let (r, s, t) = split3(&payload);
                Monus { r, s, t }
            }
            Opcode::Mul => {
                let (r, s, t) = split3(&payload);
                Mul { r, s, t }
            }
            Opcode::Pair => {
                let (r, s, t) = split3(&payload);
                Pair { r, s, t }
            }
            Opcode::Unl => {
                let (r, s) = unpair(&payload);
                Unl { r, s }
            }
            Opcode::Unr => {
                let (r, s) = unpair(&payload);
                Unr { r, s }
            }
            Opcode::Jz => {
                let (r, z) = unpair(&payload);
                Jz {
                    r,
                    offset: unzigzag(&z),
                }
            }
            Opcode::Jmp => Jmp {
                offset: unzigzag(&payload),
            },
            Opcode::Ueval => {
                let (r, s, t) = split3(&payload);
                Ueval { r, s, t }
            }
            Opcode::Beval => {
                let (r, s, t) = split3(&payload);
                Beval { r, s, t }
            }
        }
    }

    /// Register operands, in operand order.
    pub fn registers(&self) -> Vec<&Nat> {
        use Instruction::*;
        match self {
            Halt | Jmp { .. } => vec![],
            Const { r, .. } | Inc { r } | Jz { r, .. } => vec![r],
            Copy { r, s } | Unl { r, s } | Unr { r, s } => vec![r, s],
            Add { r, s, t }
            | Monus { r, s, t }
            | Mul { r, s, t }
            | Pair { r, s, t }
            | Ueval { r, s, t }
            | Beval { r, s, t } => vec![r, s, t],
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Instruction::*;
        let m = self.opcode().mnemonic();
        match self {
            Halt => write!(f, "{m}"),
            Const { r, v } => write!(f, "{m} {r} {v}"),
            Copy { r, s } | Unl { r, s } | Unr { r, s } => write!(f, "{m} {r} {s}"),
            Inc { r } => write!(f, "{m} {r}"),
            Add { r, s, t }
            | Monus { r, s, t }
            | Mul { r, s, t }
            | Pair { r, s, t }
            | Ueval { r, s, t }
            | Beval { r, s, t } => write!(f, "{m} {r} {s} {t}"),
            Jz { r, offset } => write!(f, "{m} {r} {offset}"),
            Jmp { offset } => write!(f, "{m} {offset}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Program {
    pub instructions: Vec<Instruction>,
}

/// A natural number read as a program index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct ProgramCode(pub Nat);

impl ProgramCode {
    pub fn nat(&self) -> &Nat {
        &self.0
    }

    pub fn decode(&self) -> Program {
        Program::decode(&self.0)
    }
}

impl From<Nat> for ProgramCode {
    fn from(n: Nat) -> Self {
        ProgramCode(n)
    }
}

impl From<u64> for ProgramCode {
    fn from(n: u64) -> Self {
        ProgramCode(Nat::from(n))
    }
}

impl fmt::Display for ProgramCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Bits of `c + 1` below its leading one, most significant first.
fn payload_bits(c: &Nat) -> Vec<bool> {
    let n = c.succ();
    let len = n.bits();
    (0..len.saturating_sub(1)).rev().map(|i| n.bit(i)).collect()
}

fn gamma_push(bits: &mut Vec<bool>, y: &Nat) {
    debug_assert!(!y.is_zero());
    let len = y.bits();
    bits.extend(std::iter::repeat_n(false, (len - 1) as usize));
    bits.extend((0..len).rev().map(|i| y.bit(i)));
}

impl Program {
    pub fn new(instructions: Vec<Instruction>) -> Self {
        Program { instructions }
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn decode(c: &Nat) -> Program {
        let bits = payload_bits(c);
        let mut out = Vec::new();
        let mut i = 0usize;
        loop {
            let mut zeros = 0usize;
            while i < bits.len() && !bits[i] {
                zeros += 1;
                i += 1;
            }
            // the marker one plus `zeros` more bits must be present
            if i + zeros >= bits.len() {
                break;
            }
            let digits: Vec<u8> = bits[i..=i + zeros].iter().map(|&b| u8::from(b)).collect();
            let y = BigUint::from_radix_be(&digits, 2).expect("binary digits");
            i += zeros + 1;
            let x = Nat::from(y).pred();
            out.push(Instruction::decode(&x));
        }
        Program { instructions: out }
    }

    pub fn encode(&self) -> ProgramCode {
        let mut bits = vec![true];
        for ins in &self.instructions {
            gamma_push(&mut bits, &ins.encode().succ());
        }
        let digits: Vec<u8> = bits.iter().map(|&b| u8::from(b)).collect();
        let n = BigUint::from_radix_be(&digits, 2).expect("binary digits");
        ProgramCode(Nat::from(n).pred())
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ins in &self.instructions {
            writeln!(f, "{ins}")?;
        }
        Ok(())
    }
}
