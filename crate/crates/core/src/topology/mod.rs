//! Type-1 computable topological spaces: a point numbering together with
//! programs realizing membership, unions and intersections of effective
//! opens. Everything a space hands out is a program code, so spaces can be
//! passed to other programs.

pub mod finite;
mod witness;
pub(crate) use witness::separates;

use std::sync::LazyLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::routines::{self, Word};
use crate::kernel::{self, pair, Builder, Fuel, Instruction, Outcome, ProgramCode, Reg};
use crate::nat::Nat;
use crate::numberings::{CoSemiDeciderName, SemiDeciderName};

pub use finite::{all_topologies, finite_space, finite_tau_from_sd, markov_obstructions, FiniteOpen, FiniteSpace};
pub use witness::{
    weaken_normed, weaken_seq, weaken_witness, ClosureWitness, DiscontinuityRecord, NormedWitness, RelSDClaim,
    SeqClosureWitness, Witness,
};

/// Fuel granted to the constant-time constructions a space performs on
/// names (building a union name, an intersection name, a semi-decider).
pub const CONSTRUCTION_FUEL: Fuel = Fuel(1_000_000);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("{what} did not finish within {fuel} steps")]
    ConstructionDiverged { what: &'static str, fuel: u64 },
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("no stable open after {rounds} rounds")]
    InsufficientRounds { rounds: u32 },
    #[error("bad space file: {0}")]
    Format(String),
}

/// The programs making up a Type-1 computable topological space.
///
/// `malcev` maps a τ-name to a semi-decider of the open over point names,
/// `union_code` maps a name of a total sequence of τ-names to a τ-name of
/// the union, `intersect_code` maps `⟨o1, o2⟩` to a τ-name of `o1 ∩ o2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub id: String,
    pub malcev: ProgramCode,
    pub union_code: ProgramCode,
    pub intersect_code: ProgramCode,
    pub empty_name: Nat,
    pub full_name: Nat,
}

/// An effective open's τ-name, tagged with its space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenName {
    pub name: Nat,
    pub space: String,
}

/// A τ*-name: halts exactly on the τ-names of the opens containing a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauStarName {
    pub code: ProgramCode,
}

impl TauStarName {
    pub fn accepts(&self, open: &Nat, fuel: Fuel) -> Outcome {
        kernel::run(&self.code, open, fuel)
    }
}

/// A τ-name `n` read as a name of the neighbourhood filter `{A : τ(n) ⊆ A}`
/// of `point`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodName {
    pub name: Nat,
    pub point: Nat,
}

impl SpaceDescriptor {
    pub fn malcev_semidecider(&self, open: &Nat, fuel: Fuel) -> Option<SemiDeciderName> {
        kernel::run(&self.malcev, open, fuel)
            .into_value()
            .map(|c| SemiDeciderName::new(ProgramCode(c), self.id.clone()))
    }

    pub fn open(&self, name: Nat) -> OpenName {
        OpenName { name, space: self.id.clone() }
    }
}

/// Runs the malcev translation of `open` and then the resulting
/// semi-decider on `point`; steps of both stages count against `fuel`.
pub fn member(space: &SpaceDescriptor, point: &Nat, open: &Nat, fuel: Fuel) -> Outcome {
    let mut m = kernel::Machine::new();
    match m.run(&space.malcev, open, fuel) {
        Outcome::Halted { value, steps } => match m.run(&ProgramCode(value), point, Fuel(fuel.0 - steps)) {
            Outcome::Halted { value, steps: s2 } => Outcome::Halted { value, steps: steps + s2 },
            Outcome::OutOfFuel { steps: s2 } => Outcome::OutOfFuel { steps: steps + s2 },
        },
        out => out,
    }
}

fn construct(code: &ProgramCode, input: &Nat, what: &'static str) -> Result<Nat, TopologyError> {
    kernel::run(code, input, CONSTRUCTION_FUEL)
        .into_value()
        .ok_or(TopologyError::ConstructionDiverged { what, fuel: CONSTRUCTION_FUEL.0 })
}

/// τ-name of the union of the sequence named by `seq` (a total program
/// producing τ-names).
pub fn open_union(space: &SpaceDescriptor, seq: &ProgramCode) -> Result<Nat, TopologyError> {
    construct(&space.union_code, seq.nat(), "union")
}

pub fn open_intersect(space: &SpaceDescriptor, o1: &Nat, o2: &Nat) -> Result<Nat, TopologyError> {
    construct(&space.intersect_code, &pair(o1, o2), "intersection")
}

/// Name of the total sequence listing `names` and then repeating the last.
pub fn open_sequence(names: &[Nat]) -> ProgramCode {
    routines::finite_table(names)
}

// o ↦ runs malcev(o) on x, as words with x supplied by `x`.
fn taustar_words(malcev: &Nat, x: Word) -> Vec<Word> {
    let r = |v: u64| Nat::from(v);
    vec![
        Word::Fixed(Instruction::Const { r: r(1), v: malcev.clone() }),
        Word::Fixed(Instruction::Ueval { r: r(1), s: r(1), t: r(0) }),
        x,
        Word::Fixed(Instruction::Ueval { r: r(0), s: r(1), t: r(2) }),
        Word::Fixed(Instruction::Const { r: r(0), v: r(0) }),
        Word::Fixed(Instruction::Halt),
    ]
}

/// `ν ≤ τ*`: a code halting exactly on τ-names of opens containing the
/// point named by `point`.
pub fn nu_to_taustar(space: &SpaceDescriptor, point: &Nat) -> TauStarName {
    let x = Word::Fixed(Instruction::Const { r: Nat::from(2u64), v: point.clone() });
    TauStarName { code: routines::fixed_code(&taustar_words(space.malcev.nat(), x)) }
}

/// The program `x ↦ recovery(τ*-name of f(x))`, where the τ*-name is
/// `O ↦ member(x, f⁻¹(O))` and `preimage` maps codomain τ-names to
/// domain τ-names. `recovery` turns a codomain τ*-name into a point name.
pub fn sober_map_code(preimage: &ProgramCode, recovery: &ProgramCode, domain: &SpaceDescriptor) -> ProgramCode {
    let m = kernel::compose(&domain.malcev, preimage);
    let mut b = Builder::new();
    let (t, rec, out) = (b.reg(), b.reg(), b.reg());
    routines::emit_program(&mut b, t, &taustar_words(m.nat(), Word::ConstOf(2, Reg::IO)));
    b.konst(rec, recovery.nat().clone());
    b.ueval(out, rec, t);
    b.halt_with(out);
    b.code()
}

/// Computes a codomain name of `f(x)` from an effectively continuous `f`
/// given by its preimage map, provided the codomain is computably sober.
pub fn sober_apply(
    preimage: &ProgramCode,
    recovery: &ProgramCode,
    domain: &SpaceDescriptor,
    x: &Nat,
    fuel: Fuel,
) -> Outcome {
    kernel::run(&sober_map_code(preimage, recovery, domain), x, fuel)
}

// ⟨s, x⟩: halts iff x is in the domain of some φ_{φ_s(k)}.
static DOMAIN_UNION_SEQ: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (s, x, r, k, budget, res, o) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (round, inner, skip, next, done) = (b.label(), b.label(), b.label(), b.label(), b.label());
    b.unl(s, Reg::IO);
    b.unr(x, Reg::IO);
    b.konst(budget, 1u64);
    b.konst(r, 0u64);
    b.bind(round);
    b.konst(k, 0u64);
    b.bind(inner);
    b.jlt(r, k, next);
    routines::bounded(&mut b, res, s, k, budget);
    routines::bounded_value(&mut b, o, res, skip);
    routines::bounded(&mut b, res, o, x, budget);
    b.jnz(res, done);
    b.bind(skip);
    b.inc(k);
    b.jmp(inner);
    b.bind(next);
    b.inc(r);
    b.add(budget, budget, budget);
    b.jmp(round);
    b.bind(done);
    b.konst(Reg::IO, 0u64);
    b.halt();
    b.code()
});

/// `s ↦` a code whose domain is the union of the domains of `φ_s(0), φ_s(1), …`.
pub fn domain_union_code() -> ProgramCode {
    routines::smn_wrapper(&DOMAIN_UNION_SEQ)
}

/// `⟨i, j⟩ ↦` a code whose domain is `W_i ∩ W_j`.
pub fn domain_intersect_code() -> ProgramCode {
    routines::smn_wrapper(kernel::intersect2_template())
}

/// The Ershov space of a numbering: τ = ν_SD, so the τ-names are the
/// semi-deciders themselves.
pub fn ershov_space(numbering_id: &str) -> SpaceDescriptor {
    SpaceDescriptor {
        id: format!("ershov({numbering_id})"),
        malcev: kernel::programs::identity(),
        union_code: domain_union_code(),
        intersect_code: domain_intersect_code(),
        empty_name: kernel::programs::diverge().0,
        full_name: kernel::programs::identity().0,
    }
}

/// Effective neighbourhood basis at a point. `refine_code` maps a τ-name
/// of a neighbourhood to a β-name of a basic set inside it; when `point`
/// is set the basis is uniform and `refine_code` takes `⟨point, τ-name⟩`.
/// `cosd_code`, when present, maps β-names to co-semi-decider codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDescriptor {
    pub refine_code: ProgramCode,
    pub cosd_code: Option<ProgramCode>,
    pub point: Option<Nat>,
}

impl BasisDescriptor {
    /// β = τ with the identity refinement.
    pub fn trivial() -> Self {
        BasisDescriptor { refine_code: kernel::programs::identity(), cosd_code: None, point: None }
    }

    pub fn cosemidecider(&self, beta_name: &Nat, fuel: Fuel) -> Option<CoSemiDeciderName> {
        let code = self.cosd_code.as_ref()?;
        kernel::run(code, beta_name, fuel)
            .into_value()
            .map(|c| CoSemiDeciderName::new(ProgramCode(c), "basis"))
    }
}

pub fn refine_neighborhood(basis: &BasisDescriptor, nb: &Nat, fuel: Fuel) -> Outcome {
    let input = match &basis.point {
        Some(x) => pair(x, nb),
        None => nb.clone(),
    };
    kernel::run(&basis.refine_code, &input, fuel)
}

/// Checks membership answers against expected ones: each case is
/// `(point, open, expected)`, with negatives meaning "no halt within fuel".
/// Returns the indices of failing cases.
pub fn membership_failures(space: &SpaceDescriptor, cases: &[(Nat, Nat, bool)], fuel: Fuel) -> Vec<usize> {
    cases
        .iter()
        .enumerate()
        .filter(|(_, (x, o, want))| member(space, x, o, fuel).is_halted() != *want)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::programs;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn ershov_membership_follows_the_semidecider() {
        let sp = ershov_space("identity");
        let evens = programs::evens_acceptor().0;
        assert!(!member(&sp, &n(5), &evens, Fuel(100_000)).is_halted());
        assert!(member(&sp, &n(4), &evens, Fuel(100_000)).is_halted());
        for x in 0..10 {
            assert!(member(&sp, &n(x), &sp.full_name, Fuel(100)).is_halted());
            assert!(!member(&sp, &n(x), &sp.empty_name, Fuel(100_000)).is_halted());
        }
    }

    #[test]
    fn ershov_union_and_intersection() {
        let sp = ershov_space("identity");
        let (e, o) = (programs::evens_acceptor().0, programs::odds_acceptor().0);
        let u = open_union(&sp, &open_sequence(&[e.clone(), o.clone()])).unwrap();
        for x in 0..=50 {
            assert!(member(&sp, &n(x), &u, Fuel(1_000_000)).is_halted(), "{x}");
        }
        let none = open_union(&sp, &open_sequence(std::slice::from_ref(&sp.empty_name))).unwrap();
        for x in 0..5 {
            assert!(!member(&sp, &n(x), &none, Fuel(100_000)).is_halted());
        }
        let i = open_intersect(&sp, &sp.full_name, &e).unwrap();
        for x in 0..20 {
            assert_eq!(member(&sp, &n(x), &i, Fuel(100_000)).is_halted(), x % 2 == 0);
        }
    }

    #[test]
    fn taustar_of_a_point() {
        let sp = ershov_space("identity");
        let t = nu_to_taustar(&sp, &n(4));
        assert!(t.accepts(&programs::evens_acceptor().0, Fuel(100_000)).is_halted());
        assert!(!t.accepts(&programs::odds_acceptor().0, Fuel(100_000)).is_halted());
        assert!(t.accepts(&sp.full_name, Fuel(1000)).is_halted());
        assert!(!t.accepts(&sp.empty_name, Fuel(100_000)).is_halted());
    }

    #[test]
    fn trivial_basis_is_identity() {
        let b = BasisDescriptor::trivial();
        assert_eq!(refine_neighborhood(&b, &n(12345), Fuel(10)).into_value(), Some(n(12345)));
        assert!(!refine_neighborhood(&b, &n(1), Fuel(0)).is_halted());
    }
}
