//! The space ℕ⁺ = ℕ ∪ {∞}, normed sequences as maps out of ℕ⁺, weak
//! sequential openness, and the Markov diagonalization.
//!
//! A point name is a program listing a non-decreasing 0/1 sequence: the
//! first 1 at position n names n, no 1 at all names ∞. An open name is a
//! program whose domain lists basic codes, with β(2n) = {n} and
//! β(2n+1) = {k : k ≥ n}.

use std::sync::LazyLock;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::routines::{self, bounded, bounded_value, emit_smn_with, Word};
use crate::kernel::{
    self, const_code, pair, programs, Builder, Fuel, HaltingAnnotation, Instruction, Outcome, ProgramCode, Reg,
};
use crate::nat::Nat;
use crate::numberings::SemiDeciderName;
use crate::reals::{self, machine as rm};
use crate::topology::{
    self, domain_union_code, DiscontinuityRecord, NormedWitness, RelSDClaim, SpaceDescriptor, TopologyError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NPlusError {
    #[error("position {position} holds {value}, not 0 or 1")]
    NotBinary { position: u64, value: Nat },
    #[error("sequence drops from 1 to 0 at position {position}")]
    NotMonotone { position: u64 },
    #[error("position {position} ran out of fuel after {steps} steps")]
    OutOfFuel { position: u64, steps: u64 },
}

/// What a finite prefix of an ℕ⁺-name shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NPlusValue {
    Equals(u64),
    /// No 1 up to the horizon; the point is at least this value.
    AtLeast(u64),
}

/// Reads positions `0..=horizon` of the name, each with the given fuel.
pub fn nplus_value(name: &ProgramCode, horizon: u64, fuel: Fuel) -> Result<NPlusValue, NPlusError> {
    let mut m = kernel::Machine::new();
    let mut first_one = None;
    for position in 0..=horizon {
        let v = match m.run(name, &Nat::from(position), fuel) {
            Outcome::Halted { value, .. } => value,
            Outcome::OutOfFuel { steps } => return Err(NPlusError::OutOfFuel { position, steps }),
        };
        match (v.to_u64(), first_one) {
            (Some(0), None) => {}
            (Some(0), Some(_)) => return Err(NPlusError::NotMonotone { position }),
            (Some(1), None) => first_one = Some(position),
            (Some(1), Some(_)) => {}
            _ => return Err(NPlusError::NotBinary { position, value: v }),
        }
    }
    Ok(first_one.map_or(NPlusValue::AtLeast(horizon + 1), NPlusValue::Equals))
}

// ⟨n, k⟩ ↦ [k ≥ n]
static CANON: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (n, k, out) = (b.reg(), b.reg(), b.reg());
    let below = b.label();
    b.unl(n, Reg::IO);
    b.unr(k, Reg::IO);
    b.konst(out, 0u64);
    b.jlt(k, n, below);
    b.konst(out, 1u64);
    b.bind(below);
    b.halt_with(out);
    b.code()
});

/// Canonical name of `n`: `0^n 1^∞`.
pub fn canonical_name(n: u64) -> ProgramCode {
    kernel::smn(&CANON, &Nat::from(n))
}

/// Canonical name of ∞: the constant 0 sequence.
pub fn infinity_name() -> ProgramCode {
    const_code(&Nat::ZERO)
}

/// Open listing exactly the basic codes given.
pub fn basic_open(codes: &[u64]) -> ProgramCode {
    if codes.is_empty() {
        return programs::diverge();
    }
    kernel::finite_acceptor(&codes.iter().map(|&c| Nat::from(c)).collect::<Vec<_>>())
}

/// Host reading of `x ∈ β(code)` for a known point (`None` is ∞).
pub fn beta_contains(code: u64, x: Option<u64>) -> bool {
    let n = code / 2;
    match (code % 2, x) {
        (0, Some(k)) => k == n,
        (0, None) => false,
        (_, Some(k)) => k >= n,
        (_, None) => true,
    }
}

// ⟨o, x⟩: round r runs the codes c ≤ r through o with budget 2^r and halts
// once an accepted code's basic set visibly contains x.
static MEMBER: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (o, x, r, c, budget, res, half, par, pos, v) =
        (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (round, inner, next_c, next_r, found, even, odd_check) =
        (b.label(), b.label(), b.label(), b.label(), b.label(), b.label(), b.label());
    b.unl(o, Reg::IO);
    b.unr(x, Reg::IO);
    b.konst(r, 0u64);
    b.konst(budget, 1u64);
    b.bind(round);
    b.konst(c, 0u64);
    b.bind(inner);
    b.jlt(r, c, next_r);
    bounded(&mut b, res, o, c, budget);
    b.jz(res, next_c);
    routines::halve(&mut b, half, par, c);
    b.jz(par, even);
    // β(2n+1) ∋ x iff n = 0 or x(n-1) = 0
    b.bind(odd_check);
    b.jz(half, found);
    b.copy(pos, half);
    b.dec(pos);
    bounded(&mut b, res, x, pos, budget);
    bounded_value(&mut b, v, res, next_c);
    b.jz(v, found);
    b.jmp(next_c);
    // β(2n) ∋ x iff x(n) = 1 and (n = 0 or x(n-1) = 0)
    b.bind(even);
    bounded(&mut b, res, x, half, budget);
    bounded_value(&mut b, v, res, next_c);
    b.jz(v, next_c);
    b.jmp(odd_check);
    b.bind(next_c);
    b.inc(c);
    b.jmp(inner);
    b.bind(next_r);
    b.inc(r);
    b.add(budget, budget, budget);
    b.jmp(round);
    b.bind(found);
    b.konst(Reg::IO, 0u64);
    b.halt();
    b.code()
});

pub fn member_nplus(x: &ProgramCode, o: &ProgramCode, fuel: Fuel) -> Outcome {
    kernel::run(&MEMBER, &pair(o.nat(), x.nat()), fuel)
}

// ⟨⟨o1, o2⟩, c⟩: halts iff β(c) lies inside a basic set listed by o1 and
// inside one listed by o2. The basic sets containing β(2n) are β(2n) and
// β(2m+1) for m ≤ n; those containing β(2n+1) are β(2m+1) for m ≤ n.
static INTERSECT: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (oo, c, o1, o2, half, par, budget, m, cover, res, got1, got2, one) =
        (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (round, scan, next, check_self, after_self, done_round, halt) =
        (b.label(), b.label(), b.label(), b.label(), b.label(), b.label(), b.label());
    b.unl(oo, Reg::IO);
    b.unr(c, Reg::IO);
    b.unl(o1, oo);
    b.unr(o2, oo);
    routines::halve(&mut b, half, par, c);
    b.konst(one, 1u64);
    b.konst(budget, 1u64);
    b.konst(got1, 0u64);
    b.konst(got2, 0u64);
    b.bind(round);
    b.konst(m, 0u64);
    b.bind(scan);
    b.jlt(half, m, check_self);
    // cover = 2m + 1
    b.add(cover, m, m);
    b.inc(cover);
    for (o, got) in [(o1, got1), (o2, got2)] {
        let skip = b.label();
        bounded(&mut b, res, o, cover, budget);
        b.jz(res, skip);
        b.copy(got, one);
        b.bind(skip);
    }
    b.bind(next);
    b.inc(m);
    b.jmp(scan);
    b.bind(check_self);
    b.jnz(par, after_self);
    for (o, got) in [(o1, got1), (o2, got2)] {
        let skip = b.label();
        bounded(&mut b, res, o, c, budget);
        b.jz(res, skip);
        b.copy(got, one);
        b.bind(skip);
    }
    b.bind(after_self);
    b.jz(got1, done_round);
    b.jnz(got2, halt);
    b.bind(done_round);
    b.add(budget, budget, budget);
    b.jmp(round);
    b.bind(halt);
    b.konst(Reg::IO, 0u64);
    b.halt();
    b.code()
});

/// ℕ⁺ with the β-generated topology.
pub fn nplus_space() -> SpaceDescriptor {
    SpaceDescriptor {
        id: "nplus".into(),
        malcev: kernel::smn_wrapper(&MEMBER),
        union_code: domain_union_code(),
        intersect_code: kernel::smn_wrapper(&INTERSECT),
        empty_name: programs::diverge().0,
        full_name: programs::identity().0,
    }
}

// ⟨p, o⟩: dovetails the odd codes 2N+1 through φ_p(o), returns N.
static NORM_FROM_MAP: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (p, o, pre, r, n, c, budget, res) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (round, inner, next_r, found) = (b.label(), b.label(), b.label(), b.label());
    b.unl(p, Reg::IO);
    b.unr(o, Reg::IO);
    b.ueval(pre, p, o);
    b.konst(r, 0u64);
    b.konst(budget, 1u64);
    b.bind(round);
    b.konst(n, 0u64);
    b.bind(inner);
    b.jlt(r, n, next_r);
    b.add(c, n, n);
    b.inc(c);
    bounded(&mut b, res, pre, c, budget);
    b.jnz(res, found);
    b.inc(n);
    b.jmp(inner);
    b.bind(next_r);
    b.inc(r);
    b.add(budget, budget, budget);
    b.jmp(round);
    b.bind(found);
    b.halt_with(n);
    b.code()
});

/// From a preimage map `O ↦ f⁻¹(O)` into ℕ⁺, finds `N` with
/// `{k : k ≥ N} ⊆ f⁻¹(O)` by searching the preimage for an odd code.
pub fn norm_from_map(preimage: &ProgramCode, o: &Nat, fuel: Fuel) -> Outcome {
    kernel::run(&NORM_FROM_MAP, &pair(preimage.nat(), o), fuel)
}

/// The preimage map of `n ↦ u_n, ∞ ↦ x` for a normed witness over `space`:
/// the open of `O` lists `2n` when `u_n ∈ O` and `2m+1` when `m` is at
/// least the norm of `O`.
pub fn map_from_normed(w: &NormedWitness, space: &SpaceDescriptor) -> ProgramCode {
    // ⟨O, c⟩
    let mut b = Builder::new();
    let (seq, norm, mal, o, c, half, par, v, sd, big_n) =
        (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (odd, hit) = (b.label(), b.label());
    b.konst(seq, w.seq_code.nat().clone());
    b.konst(norm, w.norm_code.nat().clone());
    b.konst(mal, space.malcev.nat().clone());
    b.unl(o, Reg::IO);
    b.unr(c, Reg::IO);
    routines::halve(&mut b, half, par, c);
    b.jnz(par, odd);
    b.ueval(v, seq, half);
    b.ueval(sd, mal, o);
    b.ueval(v, sd, v);
    b.jmp(hit);
    b.bind(odd);
    b.ueval(big_n, norm, o);
    b.jge(half, big_n, hit);
    b.forever();
    b.bind(hit);
    b.konst(Reg::IO, 0u64);
    b.halt();
    kernel::smn_wrapper(&b.code())
}

// ⟨a, inf⟩: runs a on the ∞-name first, then dovetails a over the
// canonical names of 0, 1, 2, … and returns ⟨n, name⟩.
static WSO: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (a, inf, gate, r, n, budget, name, res) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (round, inner, next_r, found) = (b.label(), b.label(), b.label(), b.label());
    b.unl(a, Reg::IO);
    b.unr(inf, Reg::IO);
    b.ueval(gate, a, inf);
    b.konst(r, 0u64);
    b.konst(budget, 1u64);
    b.bind(round);
    b.konst(n, 0u64);
    b.bind(inner);
    b.jlt(r, n, next_r);
    emit_smn_with(&mut b, name, &CANON, n);
    bounded(&mut b, res, a, name, budget);
    b.jnz(res, found);
    b.inc(n);
    b.jmp(inner);
    b.bind(next_r);
    b.inc(r);
    b.add(budget, budget, budget);
    b.jmp(round);
    b.bind(found);
    b.pair(Reg::IO, n, name);
    b.halt();
    b.code()
});

/// Semi-decider halting on a name `x` as soon as some listed `(i, v)` has
/// `x(i) = v`.
pub fn position_test(conds: &[(u64, u64)]) -> ProgramCode {
    let mut b = Builder::new();
    let (i, v, got) = (b.reg(), b.reg(), b.reg());
    let hit = b.label();
    for &(pos, want) in conds {
        b.konst(i, pos);
        b.konst(v, want);
        b.ueval(got, Reg::IO, i);
        b.jeq(got, v, hit);
    }
    b.forever();
    b.bind(hit);
    b.konst(Reg::IO, 0u64);
    b.halt();
    b.code()
}

/// Semi-deciders over ℕ⁺-names whose sets contain ∞.
pub fn wso_fixtures() -> Vec<(String, ProgramCode)> {
    let sp = nplus_space();
    let mut out = vec![("full".to_string(), programs::identity())];
    for k in [1u64, 2, 3, 5] {
        out.push((format!("at-least-{k}"), position_test(&[(k - 1, 0)])));
    }
    out.push(("not-3".into(), position_test(&[(3, 0), (2, 1)])));
    out.push(("zero-or-above-9".into(), position_test(&[(9, 0), (0, 1)])));
    for code in [1u64, 3, 7] {
        let sd = sp.malcev_semidecider(&basic_open(&[code]).0, topology::CONSTRUCTION_FUEL).expect("malcev is total");
        out.push((format!("beta-{code}"), sd.code));
    }
    out
}

/// A finite point found inside a semi-decidable set containing ∞.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WsoPoint {
    pub n: u64,
    pub name: ProgramCode,
    pub steps: u64,
}

/// Returns the first `n` (in dovetailing order) whose canonical name `a`
/// accepts. Runs `a` on `infinity` first, so a set missing ∞ gives
/// `None` once the fuel is spent.
pub fn wso_search(a: &ProgramCode, infinity: &ProgramCode, fuel: Fuel) -> Option<WsoPoint> {
    match kernel::run(&WSO, &pair(a.nat(), infinity.nat()), fuel) {
        Outcome::Halted { value, steps } => {
            let (n, name) = kernel::unpair(&value);
            Some(WsoPoint { n: n.to_u64_saturating(), name: ProgramCode(name), steps })
        }
        Outcome::OutOfFuel { .. } => None,
    }
}

/// Reals converging to `x` indexed by programs: `w_p = u_k` when `φ_p(p)`
/// halts after exactly `k` steps and `w_p = x` when it never halts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalFamily {
    pub u_code: ProgramCode,
    /// `p ↦` a real name of `w_p`; one program for every `p`.
    pub w_code: ProgramCode,
}

/// Builds the family for a sequence of real names `u_n` with
/// `|u_n - x| < 2^-n`.
pub fn diagonal_family(u_code: &ProgramCode) -> DiagonalFamily {
    // ⟨p, n⟩ ↦ u_{min(n, k_p)}
    let mut b = Builder::new();
    let (u, p, n, arg, res, idx) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let run_out = b.label();
    b.konst(u, u_code.nat().clone());
    b.unl(p, Reg::IO);
    b.unr(n, Reg::IO);
    b.copy(idx, n);
    b.pair(arg, p, n);
    b.beval(res, p, arg);
    b.jz(res, run_out);
    b.dec(res);
    b.unr(idx, res);
    b.bind(run_out);
    b.ueval(Reg::IO, u, idx);
    b.halt();
    let seq_template = b.code();

    // p ↦ limit_fast(smn(seq_template, p))
    let mut b = Builder::new();
    let (seq, out) = (b.reg(), b.reg());
    emit_smn_with(&mut b, seq, &seq_template, Reg::IO);
    routines::emit_program(&mut b, out, &rm::limit_words(Word::ConstOf(1, seq)));
    b.halt_with(out);
    DiagonalFamily { u_code: u_code.clone(), w_code: b.code() }
}

impl DiagonalFamily {
    pub fn w_name(&self, p: &ProgramCode, fuel: Fuel) -> Outcome {
        kernel::run(&self.w_code, p.nat(), fuel)
    }

    /// `approx(w_p, bits)`, with one fuel budget for each stage.
    pub fn approx_w(&self, p: &ProgramCode, bits: u64, fuel: Fuel) -> Result<BigRational, reals::RealsError> {
        let name = match self.w_name(p, fuel) {
            Outcome::Halted { value, .. } => ProgramCode(value),
            Outcome::OutOfFuel { steps } => return Err(reals::RealsError::OutOfFuel { steps }),
        };
        reals::approx_rational(&name, bits, fuel)
    }
}

/// Halting status of a program without conditional jumps or calls, found
/// by following its control flow: `Halts(k)` after exactly `k` steps on
/// every input, or `Loops`. `None` for any other program.
pub fn syntactic_status(code: &ProgramCode) -> Option<HaltingAnnotation> {
    let prog = code.decode();
    let len = prog.len() as i64;
    let mut seen = vec![false; prog.len()];
    let mut pc: i64 = 0;
    let mut steps = 0u64;
    loop {
        steps += 1;
        if pc < 0 || pc >= len {
            return Some(HaltingAnnotation::Halts(steps));
        }
        let i = pc as usize;
        if seen[i] {
            return Some(HaltingAnnotation::Loops);
        }
        seen[i] = true;
        match &prog.instructions[i] {
            Instruction::Halt => return Some(HaltingAnnotation::Halts(steps)),
            Instruction::Jmp { offset } => pc = pc.saturating_add(*offset),
            Instruction::Jz { .. } | Instruction::Ueval { .. } | Instruction::Beval { .. } => return None,
            _ => pc += 1,
        }
    }
}

/// Halting times of the ten halting probes.
pub const PROBE_HALT_TIMES: [u64; 10] = [1, 2, 3, 5, 7, 12, 17, 23, 31, 50];

/// Ten padded halters and ten syntactic loops.
pub fn probe_machines() -> Vec<kernel::MachineEntry> {
    let halters = PROBE_HALT_TIMES.iter().map(|&k| kernel::MachineEntry {
        code: programs::padded_halter(k),
        annotation: Some(HaltingAnnotation::Halts(k)),
    });
    let loops = (0..10).map(|v| kernel::MachineEntry {
        code: programs::syntactic_loop(v),
        annotation: Some(HaltingAnnotation::Loops),
    });
    halters.chain(loops).collect()
}

/// One row of the diagonalization table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagRow {
    pub code: ProgramCode,
    pub halts_known: Option<u64>,
    pub w_approx: String,
    pub expected: String,
    pub ok: bool,
}

/// Halting time of `φ_p(p)` from syntactic analysis, else from
/// `halts_within` at `fuel`, else from the file annotation. `None` means
/// looping, or still running when nothing else is known.
pub fn halting_time(m: &kernel::MachineEntry, fuel: Fuel) -> Option<u64> {
    let status = syntactic_status(&m.code)
        .or_else(|| kernel::halts_within(&m.code, m.code.nat(), fuel).map(HaltingAnnotation::Halts))
        .or(m.annotation);
    match status {
        Some(HaltingAnnotation::Halts(k)) => Some(k),
        _ => None,
    }
}

/// Compares `approx(w_p, bits)` against `u_k` for `p` halting after `k`
/// steps and against `x` otherwise, with ground truth from
/// [`halting_time`].
pub fn diagonal_table(
    fam: &DiagonalFamily,
    x: &BigRational,
    machines: &[kernel::MachineEntry],
    bits: u64,
    fuel: Fuel,
) -> Result<Vec<DiagRow>, reals::RealsError> {
    machines
        .par_iter()
        .map(|m| {
            let halts = halting_time(m, fuel);
            let expected = match halts {
                Some(k) => reals::approx_rational(&u_name(fam, k, fuel)?, bits + 2, fuel)?,
                None => x.clone(),
            };
            let got = fam.approx_w(&m.code, bits, fuel)?;
            let ok = (&got - &expected).abs() < reals::pow2_neg(bits);
            Ok(DiagRow {
                code: m.code.clone(),
                halts_known: halts,
                w_approx: reals::format_rational(&got),
                expected: reals::format_rational(&expected),
                ok,
            })
        })
        .collect()
}

fn u_name(fam: &DiagonalFamily, k: u64, fuel: Fuel) -> Result<ProgramCode, reals::RealsError> {
    match kernel::run(&fam.u_code, &Nat::from(k), fuel) {
        Outcome::Halted { value, .. } => Ok(ProgramCode(value)),
        Outcome::OutOfFuel { steps } => Err(reals::RealsError::OutOfFuel { steps }),
    }
}

/// The semi-decider `i ↦ member(F(i), O₂)` for a candidate `F` and a
/// discontinuity record. If `F` computed `f`, it would semi-decide `{x}`
/// inside `{x} ∪ f⁻¹(O₂)ᶜ`.
pub fn refuter(
    f: &ProgramCode,
    rec: &DiscontinuityRecord,
    codomain: &SpaceDescriptor,
) -> Result<SemiDeciderName, TopologyError> {
    let sd = codomain
        .malcev_semidecider(&rec.o2_name, topology::CONSTRUCTION_FUEL)
        .ok_or(TopologyError::ConstructionDiverged { what: "malcev", fuel: topology::CONSTRUCTION_FUEL.0 })?;
    Ok(SemiDeciderName::new(kernel::compose(&sd.code, f), codomain.id.clone()))
}

/// An unsound attempt at `δ₀` on reals: answers a name of 1 when
/// `|approx(x, 10)| ≤ 2^-10` and a name of 0 otherwise.
pub fn delta0_candidate() -> ProgramCode {
    static CODE: LazyLock<ProgramCode> = LazyLock::new(|| {
        let mut b = Builder::new();
        let (ten, qc, bc, num, den, lhs, k, v, out) =
            (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
        let (small, emit) = (b.label(), b.label());
        b.konst(ten, 10u64);
        b.ueval(qc, Reg::IO, ten);
        // |q| ≤ 2^-10 iff 1024·|numerator| ≤ denominator
        b.unr(bc, qc);
        b.unl(num, bc);
        b.unr(den, bc);
        b.inc(den);
        b.konst(k, 1024u64);
        b.mul(lhs, num, k);
        b.jge(den, lhs, small);
        b.konst(v, reals::cq_encode(&BigRational::zero()));
        b.jmp(emit);
        b.bind(small);
        b.konst(v, reals::cq_encode(&reals::rational(1, 1)));
        b.bind(emit);
        routines::emit_const_program(&mut b, out, v);
        b.halt_with(out);
        b.code()
    });
    CODE.clone()
}

/// Outcome of running a candidate `F` for `δ₀` on the diagonal family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationRow {
    pub code: ProgramCode,
    pub halts_known: Option<u64>,
    /// Whether the refuter accepted `w_p`, i.e. `F(w_p)` landed in `O₂`.
    pub accepted: bool,
    /// Whether `w_p = x`.
    pub is_x: bool,
    pub contradiction: bool,
}

/// Runs the refuter on `w_p` for every machine. A row contradicts ground
/// truth when the refuter accepts `w_p` though `φ_p(p)` halts (so
/// `w_p ≠ x`), or rejects it within fuel though `φ_p(p)` loops.
pub fn refuter_probe(
    sd: &SemiDeciderName,
    fam: &DiagonalFamily,
    machines: &[kernel::MachineEntry],
    fuel: Fuel,
) -> Vec<RefutationRow> {
    machines
        .par_iter()
        .map(|m| {
            let halts = halting_time(m, fuel);
            let accepted = match fam.w_name(&m.code, fuel) {
                Outcome::Halted { value, .. } => sd.semidecide(&value, fuel).is_halted(),
                Outcome::OutOfFuel { .. } => false,
            };
            let is_x = halts.is_none();
            RefutationRow { code: m.code.clone(), halts_known: halts, accepted, is_x, contradiction: accepted != is_x }
        })
        .collect()
}

/// Result of a bounded search for a semi-decider separating sampled
/// B-names from sampled A-names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub refuted_by: Option<ProgramCode>,
    pub max_code: u64,
    pub fuel: u64,
}

/// Tries every code `≤ max_code`; reports the least one halting on all
/// B-names and on no A-name within `fuel`. Finding one refutes the claim
/// at this scale; finding none proves nothing.
pub fn bounded_nonsd_search(claim: &RelSDClaim, max_code: u64, fuel: Fuel) -> SweepReport {
    let refuted_by = (0..=max_code)
        .into_par_iter()
        .find_first(|&c| {
            let code = ProgramCode(Nat::from(c));
            topology::separates(&code, &claim.a_names, &claim.b_names, fuel)
        })
        .map(|c| ProgramCode(Nat::from(c)));
    SweepReport { refuted_by, max_code, fuel: fuel.0 }
}

/// Fixture normed witnesses on the reals: `2^-n → 0`, `1 - 2^-n → 1`,
/// `-2^-n → 0` and the truncations of `√2`.
pub fn real_normed_witnesses() -> Vec<(String, NormedWitness, BigRational)> {
    use reals::sequences as s;
    let zero = reals::real_from_rational(&BigRational::zero());
    let one = reals::real_from_rational(&reals::rational(1, 1));
    vec![
        ("pow2".into(), reals::normed_witness(&s::pow2_neg(), &zero), BigRational::zero()),
        ("one-minus-pow2".into(), reals::normed_witness(&s::one_minus_pow2_neg(), &one), reals::rational(1, 1)),
        ("neg-pow2".into(), reals::normed_witness(&s::neg_pow2_neg(), &zero), BigRational::zero()),
    ]
}
