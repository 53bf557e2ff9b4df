//! Reusable in-machine routines: arithmetic helpers, bounded evaluation,
//! and construction of program codes from inside a running program.

use super::builder::{Builder, Label, Reg};
use super::program::{const_prefix, Instruction, Program, ProgramCode};
use crate::nat::Nat;
use std::sync::LazyLock;

/// `dst := src mod 2`. Linear in `src`.
pub fn parity(b: &mut Builder, dst: Reg, src: Reg) {
    let half = b.reg();
    halve(b, half, dst, src);
}

/// `half := src div 2`, `par := src mod 2`. Linear in `src`.
pub fn halve(b: &mut Builder, half: Reg, par: Reg, src: Reg) {
    let t = b.reg();
    let lp = b.label();
    let even = b.label();
    let odd = b.label();
    let done = b.label();
    b.copy(t, src);
    b.konst(half, 0u64);
    b.bind(lp);
    b.jz(t, even);
    b.dec(t);
    b.jz(t, odd);
    b.dec(t);
    b.inc(half);
    b.jmp(lp);
    b.bind(odd);
    b.konst(par, 1u64);
    b.jmp(done);
    b.bind(even);
    b.konst(par, 0u64);
    b.bind(done);
}

/// `dst := 2^n`.
pub fn pow2(b: &mut Builder, dst: Reg, n: Reg) {
    let i = b.reg();
    let lp = b.label();
    let done = b.label();
    b.copy(i, n);
    b.konst(dst, 1u64);
    b.bind(lp);
    b.jz(i, done);
    b.add(dst, dst, dst);
    b.dec(i);
    b.jmp(lp);
    b.bind(done);
}

/// `dst := BEVAL(prog, ⟨input, budget⟩)`: zero when the run did not halt
/// within `budget` steps, `1 + ⟨value, steps⟩` otherwise.
pub fn bounded(b: &mut Builder, dst: Reg, prog: Reg, input: Reg, budget: Reg) {
    let t = b.reg();
    b.pair(t, input, budget);
    b.beval(dst, prog, t);
}

/// Jumps to `miss` when `res` reports a timeout, else extracts the value.
pub fn bounded_value(b: &mut Builder, value: Reg, res: Reg, miss: Label) {
    b.jz(res, miss);
    let t = b.reg();
    b.copy(t, res);
    b.dec(t);
    b.unl(value, t);
}

// Unrolled doubling search; handles words of up to 2^24 bits.
const SCALE_LEVELS: usize = 24;

// y ↦ 2^(L-1) where L is the bit length of y ≥ 1.
static TOP_BIT: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let y = Reg::IO;
    let q: Vec<Reg> = (0..SCALE_LEVELS).map(|_| b.reg()).collect();
    let cur = b.reg();
    let t = b.reg();
    let entries: Vec<Label> = (0..=SCALE_LEVELS).map(|_| b.label()).collect();
    b.konst(cur, 1u64);
    b.konst(q[0], 2u64);
    for j in 0..SCALE_LEVELS {
        b.jlt(y, q[j], entries[j]);
        if j + 1 < SCALE_LEVELS {
            b.mul(q[j + 1], q[j], q[j]);
        }
    }
    // q[i] = 2^(2^i); peel bits of L-1 from the top
    for i in (0..SCALE_LEVELS).rev() {
        b.bind(entries[i + 1]);
        let skip = b.label();
        b.mul(t, cur, q[i]);
        b.jlt(y, t, skip);
        b.copy(cur, t);
        b.bind(skip);
    }
    b.bind(entries[0]);
    b.halt_with(cur);
    b.code()
});

/// `dst := 2^(L-1)` where `L ≥ 1` is the bit length of `y`.
/// Logarithmic in `L`.
pub fn top_bit(b: &mut Builder, dst: Reg, y: Reg) {
    let prog = b.reg();
    b.konst(prog, TOP_BIT.nat().clone());
    b.ueval(dst, prog, y);
}

/// Appends the Elias-gamma word for `y ≥ 1` to the bit accumulator `acc`.
/// Logarithmic in the bit length of `y`.
pub fn gamma_append(b: &mut Builder, acc: Reg, y: Reg) {
    let scale = b.reg();
    top_bit(b, scale, y);
    // 2^(2L-1)
    b.mul(scale, scale, scale);
    b.add(scale, scale, scale);
    b.mul(acc, acc, scale);
    b.add(acc, acc, y);
}

fn gamma_append_const(b: &mut Builder, acc: Reg, y: &Nat) {
    let len = y.bits();
    let scale = b.reg();
    let yr = b.reg();
    b.konst(scale, Nat::pow2(2 * len - 1));
    b.konst(yr, y.clone());
    b.mul(acc, acc, scale);
    b.add(acc, acc, yr);
}

fn append_fixed(b: &mut Builder, acc: Reg, ins: &Instruction) {
    gamma_append_const(b, acc, &ins.encode().succ());
}

/// Appends `CONST reg v` where `v` is a register value.
fn append_const_of(b: &mut Builder, acc: Reg, target: u32, v: Reg) {
    let y = b.reg();
    let h = b.reg();
    let k = b.reg();
    // payload (prefix - 1)·2^t + v with 2^t the top bit of v + 1
    b.copy(h, v);
    b.inc(h);
    top_bit(b, h, h);
    b.konst(k, const_prefix(&Nat::from(target)).pred());
    b.mul(y, h, k);
    b.add(y, y, v);
    b.konst(k, super::program::OPCODE_COUNT);
    b.mul(y, y, k);
    // opcode CONST = 1, plus one for the gamma word
    b.konst(k, 2u64);
    b.add(y, y, k);
    gamma_append(b, acc, y);
}

fn smn_tail() -> [Instruction; 2] {
    [
        Instruction::Ueval { r: Nat::ZERO, s: Nat::ONE, t: Nat::ZERO },
        Instruction::Halt,
    ]
}

fn smn_program(p: &Nat, a: &Nat) -> Program {
    let [ue, h] = smn_tail();
    Program::new(vec![
        Instruction::Const { r: Nat::ONE, v: a.clone() },
        Instruction::Pair { r: Nat::ZERO, s: Nat::ONE, t: Nat::ZERO },
        Instruction::Const { r: Nat::ONE, v: p.clone() },
        ue,
        h,
    ])
}

/// Host-side s-m-n: a code for `x ↦ φ_p(⟨a, x⟩)`.
pub fn smn_code(p: &ProgramCode, a: &Nat) -> ProgramCode {
    smn_program(p.nat(), a).encode()
}

/// One instruction of a program assembled inside a running program.
#[derive(Debug, Clone)]
pub enum Word {
    Fixed(Instruction),
    /// `CONST target v` with `v` read from a register.
    ConstOf(u32, Reg),
}

/// `dst :=` the code of the program made of `words`.
pub fn emit_program(b: &mut Builder, dst: Reg, words: &[Word]) {
    let acc = b.reg();
    b.konst(acc, 1u64);
    for w in words {
        match w {
            Word::Fixed(ins) => append_fixed(b, acc, ins),
            Word::ConstOf(target, v) => append_const_of(b, acc, *target, *v),
        }
    }
    b.copy(dst, acc);
    b.dec(dst);
}

/// Host-side code of a word list whose words are all fixed.
pub fn fixed_code(words: &[Word]) -> ProgramCode {
    let ins = words
        .iter()
        .map(|w| match w {
            Word::Fixed(i) => i.clone(),
            Word::ConstOf(..) => panic!("register word in a host-side program"),
        })
        .collect();
    Program::new(ins).encode()
}

/// In-machine s-m-n; produces exactly the code of [`smn_code`].
pub fn emit_smn(b: &mut Builder, dst: Reg, p: Reg, a: Reg) {
    let [ue, h] = smn_tail();
    let pair = Instruction::Pair { r: Nat::ZERO, s: Nat::ONE, t: Nat::ZERO };
    emit_program(b, dst, &[Word::ConstOf(1, a), Word::Fixed(pair), Word::ConstOf(1, p), Word::Fixed(ue), Word::Fixed(h)]);
}

/// In-machine s-m-n against a fixed template; cheaper than [`emit_smn`]
/// since the template's words are appended as constants.
pub fn emit_smn_with(b: &mut Builder, dst: Reg, template: &ProgramCode, a: Reg) {
    let [ue, h] = smn_tail();
    let pair = Instruction::Pair { r: Nat::ZERO, s: Nat::ONE, t: Nat::ZERO };
    let load = Instruction::Const { r: Nat::ONE, v: template.nat().clone() };
    emit_program(b, dst, &[Word::ConstOf(1, a), Word::Fixed(pair), Word::Fixed(load), Word::Fixed(ue), Word::Fixed(h)]);
}

/// Host-side code of `[CONST 0 v; HALT]`, the constant function `v`.
pub fn const_code(v: &Nat) -> ProgramCode {
    Program::new(vec![Instruction::Const { r: Nat::ZERO, v: v.clone() }, Instruction::Halt]).encode()
}

/// In-machine counterpart of [`const_code`].
pub fn emit_const_program(b: &mut Builder, dst: Reg, v: Reg) {
    emit_program(b, dst, &[Word::ConstOf(0, v), Word::Fixed(Instruction::Halt)]);
}

/// The program `a ↦ smn(template, a)`.
pub fn smn_wrapper(template: &ProgramCode) -> ProgramCode {
    let mut b = Builder::new();
    let out = b.reg();
    emit_smn_with(&mut b, out, template, Reg::IO);
    b.halt_with(out);
    b.code()
}

/// Host-side composition: a code for `x ↦ φ_i(φ_j(x))`.
pub fn compose_code(i: &ProgramCode, j: &ProgramCode) -> ProgramCode {
    Program::new(vec![
        Instruction::Const { r: Nat::ONE, v: j.nat().clone() },
        Instruction::Ueval { r: Nat::ZERO, s: Nat::ONE, t: Nat::ZERO },
        Instruction::Const { r: Nat::ONE, v: i.nat().clone() },
        Instruction::Ueval { r: Nat::ZERO, s: Nat::ONE, t: Nat::ZERO },
        Instruction::Halt,
    ])
    .encode()
}

/// Program that halts (with output 0) exactly on the listed inputs and
/// loops on every other input.
pub fn finite_acceptor(members: &[Nat]) -> ProgramCode {
    let mut b = Builder::new();
    let yes = b.label();
    let c = b.reg();
    for m in members {
        b.konst(c, m.clone());
        b.jeq(Reg::IO, c, yes);
    }
    b.forever();
    b.bind(yes);
    b.konst(Reg::IO, 0u64);
    b.halt();
    b.code()
}

/// Program `k ↦ values[min(k, len-1)]`; loops everywhere when empty.
pub fn finite_table(values: &[Nat]) -> ProgramCode {
    let mut b = Builder::new();
    if values.is_empty() {
        b.forever();
        return b.code();
    }
    let t = b.reg();
    b.copy(t, Reg::IO);
    let labels: Vec<Label> = values.iter().map(|_| b.label()).collect();
    for l in &labels[..labels.len() - 1] {
        b.jz(t, *l);
        b.dec(t);
    }
    b.jmp(labels[labels.len() - 1]);
    for (l, v) in labels.iter().zip(values) {
        b.bind(*l);
        b.konst(Reg::IO, v.clone());
        b.halt();
    }
    b.code()
}
