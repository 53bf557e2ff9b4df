//! Witnesses of the three effective closures and the records built from them.

use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use super::SpaceDescriptor;
use crate::kernel::routines;
use crate::kernel::{self, pair, Builder, Fuel, Outcome, ProgramCode, Reg};
use crate::nat::Nat;
use crate::numberings::SemiDeciderName;

/// Realizes `x ∈ Ā⁺`: on a τ-name of an open containing `point`, halts with
/// the name of a point of `A` inside that open.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureWitness {
    pub code: ProgramCode,
    pub point: Nat,
}

impl ClosureWitness {
    pub fn find(&self, open: &Nat, fuel: Fuel) -> Outcome {
        kernel::run(&self.code, open, fuel)
    }
}

/// `x ∈ Ā^{+seq}`: a computable sequence in `A` converging to `point`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqClosureWitness {
    pub seq_code: ProgramCode,
    pub point: Nat,
}

/// `x ∈ Ā^{+seq,N}`: the sequence plus a norm mapping a τ-name of an open
/// `O ∋ x` to some `N` with `u_n ∈ O` for every `n ≥ N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormedWitness {
    pub seq_code: ProgramCode,
    pub norm_code: ProgramCode,
    pub point: Nat,
}

impl NormedWitness {
    pub fn norm(&self, open: &Nat, fuel: Fuel) -> Outcome {
        kernel::run(&self.norm_code, open, fuel)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Witness {
    Closure(ClosureWitness),
    Seq(SeqClosureWitness),
    Normed(NormedWitness),
}

pub fn weaken_normed(w: &NormedWitness) -> SeqClosureWitness {
    SeqClosureWitness { seq_code: w.seq_code.clone(), point: w.point.clone() }
}

// ⟨⟨seq, malcev⟩, o⟩: dovetails membership of u_n in o over n, returns the
// first u_n name found inside.
static SEQ_TO_CLOSURE: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (sm, seq, mal, o) = (b.reg(), b.reg(), b.reg(), b.reg());
    let (r, k, budget, res, sd, v) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (round, inner, skip, next) = (b.label(), b.label(), b.label(), b.label());
    b.unl(sm, Reg::IO);
    b.unr(o, Reg::IO);
    b.unl(seq, sm);
    b.unr(mal, sm);
    b.konst(budget, 1u64);
    b.konst(r, 0u64);
    b.bind(round);
    routines::bounded(&mut b, res, mal, o, budget);
    routines::bounded_value(&mut b, sd, res, next);
    b.konst(k, 0u64);
    b.bind(inner);
    b.jlt(r, k, next);
    routines::bounded(&mut b, res, seq, k, budget);
    routines::bounded_value(&mut b, v, res, skip);
    routines::bounded(&mut b, res, sd, v, budget);
    let found = b.label();
    b.jnz(res, found);
    b.bind(skip);
    b.inc(k);
    b.jmp(inner);
    b.bind(next);
    b.inc(r);
    b.add(budget, budget, budget);
    b.jmp(round);
    b.bind(found);
    b.halt_with(v);
    b.code()
});

/// `Ā^{+seq} ⊆ Ā⁺`: the closure witness searches the sequence for an entry
/// inside the given open.
pub fn weaken_seq(w: &SeqClosureWitness, space: &SpaceDescriptor) -> ClosureWitness {
    ClosureWitness {
        code: kernel::smn(&SEQ_TO_CLOSURE, &pair(w.seq_code.nat(), space.malcev.nat())),
        point: w.point.clone(),
    }
}

/// One step down the chain `Ā^{+seq,N} ⊆ Ā^{+seq} ⊆ Ā⁺`.
pub fn weaken_witness(w: &Witness, space: &SpaceDescriptor) -> Option<Witness> {
    match w {
        Witness::Normed(n) => Some(Witness::Seq(weaken_normed(n))),
        Witness::Seq(s) => Some(Witness::Closure(weaken_seq(s, space))),
        Witness::Closure(_) => None,
    }
}

/// Effective discontinuity of `f` at `x`: an open `O₂ ∋ f(x)` of the
/// codomain and a witness that `x` adheres to `f⁻¹(O₂)ᶜ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscontinuityRecord {
    pub x_name: Nat,
    pub o2_name: Nat,
    pub witness: Witness,
}

/// A recorded claim about whether `B` is semi-decidable inside `A ∪ B`,
/// over finite name samples of `A` and `B`. `claimed` is true when `B` is
/// claimed not to be semi-decidable there; a witness refutes that.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelSDClaim {
    pub a_names: Vec<Nat>,
    pub b_names: Vec<Nat>,
    pub claimed: bool,
    pub witness: Option<SemiDeciderName>,
}

impl RelSDClaim {
    /// True when the witness halts on every sampled B-name and on no
    /// sampled A-name within `fuel`.
    pub fn witness_holds(&self, fuel: Fuel) -> Option<bool> {
        let w = self.witness.as_ref()?;
        Some(separates(&w.code, &self.a_names, &self.b_names, fuel))
    }
}

pub(crate) fn separates(code: &ProgramCode, a_names: &[Nat], b_names: &[Nat], fuel: Fuel) -> bool {
    let mut m = kernel::Machine::new();
    b_names.iter().all(|b| m.run(code, b, fuel).is_halted()) && a_names.iter().all(|a| !m.run(code, a, fuel).is_halted())
}
