//! Gödel-numbered register machine: the enumeration φ₀, φ₁, … on which every
//! other module is built.

pub mod builder;
pub mod machine;
pub mod pairing;
pub mod program;
pub mod routines;
pub mod text;

use std::collections::BTreeSet;
use std::sync::LazyLock;

use thiserror::Error;

pub use builder::{Builder, Label, Reg};
pub use machine::{Fuel, Machine, Outcome};
pub use pairing::{pair, pair_u64, triple, unpair, untriple};
pub use program::{Instruction, Opcode, Program, ProgramCode};
pub use routines::{compose_code, const_code, finite_acceptor, finite_table, smn_code, smn_wrapper};

use crate::nat::Nat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("line {line}: {msg}")]
    Assembly { line: usize, msg: String },
    #[error("machine list line {line}: {msg}")]
    MachineList { line: usize, msg: String },
}

/// Runs `φ_p(input)` for at most `fuel` steps.
pub fn run(p: &ProgramCode, input: &Nat, fuel: Fuel) -> Outcome {
    Machine::new().run(p, input, fuel)
}

/// `φ_{smn(p,a)}(x) ≃ φ_p(⟨a, x⟩)`, with five extra steps on halting runs.
pub fn smn(p: &ProgramCode, a: &Nat) -> ProgramCode {
    smn_code(p, a)
}

pub const SMN_OVERHEAD: u64 = 5;

/// `φ_{compose(i,j)} ≃ φ_i ∘ φ_j`.
pub fn compose(i: &ProgramCode, j: &ProgramCode) -> ProgramCode {
    compose_code(i, j)
}

/// Exact step count when `φ_p(n)` halts within `k` steps.
pub fn halts_within(p: &ProgramCode, n: &Nat, k: Fuel) -> Option<u64> {
    match run(p, n, k) {
        Outcome::Halted { steps, .. } => Some(steps),
        Outcome::OutOfFuel { .. } => None,
    }
}

/// Dovetailed enumeration of `W_i = dom(φ_i)`: in round `t` (for
/// `t < rounds`), inputs `0..=t` are each run with fuel `t`. Inputs are
/// reported once, in discovery order.
pub fn w_enumerate(i: &ProgramCode, rounds: u64) -> Vec<Nat> {
    let mut m = Machine::new();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in 0..rounds {
        for x in 0..=t {
            if seen.contains(&x) {
                continue;
            }
            if m.run(i, &Nat::from(x), Fuel(t)).is_halted() {
                seen.insert(x);
                out.push(Nat::from(x));
            }
        }
    }
    out
}

// Input ⟨⟨i, j⟩, x⟩: run both on x with doubling budgets until one halts.
static UNION2: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (ij, x, i, j, budget, res) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let done = b.label();
    b.unl(ij, Reg::IO);
    b.unr(x, Reg::IO);
    b.unl(i, ij);
    b.unr(j, ij);
    b.konst(budget, 1u64);
    let lp = b.here();
    routines::bounded(&mut b, res, i, x, budget);
    b.jnz(res, done);
    routines::bounded(&mut b, res, j, x, budget);
    b.jnz(res, done);
    b.add(budget, budget, budget);
    b.jmp(lp);
    b.bind(done);
    b.konst(Reg::IO, 0u64);
    b.halt();
    b.code()
});

// Input ⟨⟨i, j⟩, x⟩: run i then j.
static INTERSECT2: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (ij, x, i, j, t) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    b.unl(ij, Reg::IO);
    b.unr(x, Reg::IO);
    b.unl(i, ij);
    b.unr(j, ij);
    b.ueval(t, i, x);
    b.ueval(t, j, x);
    b.konst(Reg::IO, 0u64);
    b.halt();
    b.code()
});

pub fn union2_template() -> &'static ProgramCode {
    &UNION2
}

pub fn intersect2_template() -> &'static ProgramCode {
    &INTERSECT2
}

/// `dom(φ_{w_union(i,j)}) = W_i ∪ W_j`.
pub fn w_union(i: &ProgramCode, j: &ProgramCode) -> ProgramCode {
    smn(&UNION2, &pair(i.nat(), j.nat()))
}

/// `dom(φ_{w_intersect(i,j)}) = W_i ∩ W_j`.
pub fn w_intersect(i: &ProgramCode, j: &ProgramCode) -> ProgramCode {
    smn(&INTERSECT2, &pair(i.nat(), j.nat()))
}

/// Small programs used throughout tests and fixtures.
pub mod programs {
    use super::*;

    pub fn identity() -> ProgramCode {
        Program::new(vec![Instruction::Halt]).encode()
    }

    /// `[JMP 0]`.
    pub fn diverge() -> ProgramCode {
        Program::new(vec![Instruction::Jmp { offset: 0 }]).encode()
    }

    pub fn successor() -> ProgramCode {
        Program::new(vec![Instruction::Inc { r: Nat::ZERO }, Instruction::Halt]).encode()
    }

    /// Left unpairing projection.
    pub fn pair_left() -> ProgramCode {
        Program::new(vec![Instruction::Unl { r: Nat::ZERO, s: Nat::ZERO }, Instruction::Halt]).encode()
    }

    pub fn pair_right() -> ProgramCode {
        Program::new(vec![Instruction::Unr { r: Nat::ZERO, s: Nat::ZERO }, Instruction::Halt]).encode()
    }

    pub fn constant(v: &Nat) -> ProgramCode {
        const_code(v)
    }

    fn parity_acceptor(accept_odd: bool) -> ProgramCode {
        // strip two at a time; JZ on what is left decides
        let mut b = Builder::new();
        let t = b.reg();
        let even = b.label();
        let odd = b.label();
        b.copy(t, Reg::IO);
        let lp = b.here();
        b.jz(t, even);
        b.dec(t);
        b.jz(t, odd);
        b.dec(t);
        b.jmp(lp);
        let (acc, rej) = if accept_odd { (odd, even) } else { (even, odd) };
        b.bind(rej);
        b.forever();
        b.bind(acc);
        b.halt();
        b.code()
    }

    pub fn evens_acceptor() -> ProgramCode {
        parity_acceptor(false)
    }

    pub fn odds_acceptor() -> ProgramCode {
        parity_acceptor(true)
    }

    /// Halts on every input after exactly `k ≥ 1` steps.
    pub fn padded_halter(k: u64) -> ProgramCode {
        assert!(k >= 1, "a halting run takes at least one step");
        let mut ins: Vec<Instruction> = (1..k).map(|_| Instruction::Inc { r: Nat::ONE }).collect();
        ins.push(Instruction::Halt);
        Program::new(ins).encode()
    }

    /// Syntactic loops: variants of `[JMP 0]` padded in different ways.
    pub fn syntactic_loop(variant: u64) -> ProgramCode {
        let mut ins: Vec<Instruction> = (0..variant % 5).map(|i| Instruction::Inc { r: Nat::from(i + 1) }).collect();
        if variant >= 5 {
            // loop body with work inside
            ins.push(Instruction::Inc { r: Nat::from(7u64) });
            ins.push(Instruction::Jmp { offset: -1 });
        } else {
            ins.push(Instruction::Jmp { offset: 0 });
        }
        Program::new(ins).encode()
    }
}

/// One entry of a machine-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineEntry {
    pub code: ProgramCode,
    pub annotation: Option<HaltingAnnotation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaltingAnnotation {
    Halts(u64),
    Loops,
}

/// Parses decimal codes, one per line, optionally followed by `#halts k`
/// or `#loops`. Blank lines and lines starting with `//` are skipped.
pub fn parse_machine_list(src: &str) -> Result<Vec<MachineEntry>, KernelError> {
    let mut out = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with("//") {
            continue;
        }
        let err = |msg: String| KernelError::MachineList { line: idx + 1, msg };
        let (code_part, note) = match line.find('#') {
            Some(p) => (line[..p].trim(), Some(line[p + 1..].trim())),
            None => (line, None),
        };
        let code: Nat = code_part.parse().map_err(|e: crate::nat::ParseNatError| err(e.to_string()))?;
        let annotation = match note {
            None => None,
            Some(n) => {
                let mut w = n.split_whitespace();
                match (w.next(), w.next(), w.next()) {
                    (Some("loops"), None, None) => Some(HaltingAnnotation::Loops),
                    (Some("halts"), Some(k), None) => Some(HaltingAnnotation::Halts(
                        k.parse().map_err(|_| err(format!("bad step count {k:?}")))?,
                    )),
                    _ => return Err(err(format!("unknown annotation #{n}"))),
                }
            }
        };
        out.push(MachineEntry { code: ProgramCode(code), annotation });
    }
    Ok(out)
}

pub fn format_machine_list(entries: &[MachineEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        s.push_str(&e.code.to_string());
        match e.annotation {
            Some(HaltingAnnotation::Halts(k)) => s.push_str(&format!(" #halts {k}")),
            Some(HaltingAnnotation::Loops) => s.push_str(" #loops"),
            None => {}
        }
        s.push('\n');
    }
    s
}
