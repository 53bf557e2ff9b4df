//! A small macro-assembler used to write the machine programs that the rest
//! of the crate hands around as codes. Labels resolve to relative offsets;
//! registers are allocated densely from 1 (register 0 is input and output).

use super::program::{Instruction, Program, ProgramCode};
use crate::nat::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Reg(pub u32);

impl Reg {
    pub const IO: Reg = Reg(0);

    fn nat(self) -> Nat {
        Nat::from(self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Label(usize);

#[derive(Debug, Clone)]
enum Item {
    Fixed(Instruction),
    Jz(Reg, Label),
    Jmp(Label),
}

#[derive(Debug, Clone)]
pub struct Builder {
    items: Vec<Item>,
    labels: Vec<Option<usize>>,
    next_reg: u32,
}

impl Default for Builder {
    fn default() -> Self {
        Builder::new()
    }
}

impl Builder {
    pub fn new() -> Self {
        Builder {
            items: Vec::new(),
            labels: Vec::new(),
            next_reg: 1,
        }
    }

    pub fn reg(&mut self) -> Reg {
        let r = Reg(self.next_reg);
        self.next_reg += 1;
        r
    }

    pub fn label(&mut self) -> Label {
        self.labels.push(None);
        Label(self.labels.len() - 1)
    }

    pub fn bind(&mut self, l: Label) {
        assert!(self.labels[l.0].is_none(), "label bound twice");
        self.labels[l.0] = Some(self.items.len());
    }

    /// A fresh label bound at the current position.
    pub fn here(&mut self) -> Label {
        let l = self.label();
        self.bind(l);
        l
    }

    fn push(&mut self, ins: Instruction) {
        self.items.push(Item::Fixed(ins));
    }

    pub fn konst(&mut self, r: Reg, v: impl Into<Nat>) {
        self.push(Instruction::Const { r: r.nat(), v: v.into() });
    }

    pub fn copy(&mut self, r: Reg, s: Reg) {
        self.push(Instruction::Copy { r: r.nat(), s: s.nat() });
    }

    pub fn inc(&mut self, r: Reg) {
        self.push(Instruction::Inc { r: r.nat() });
    }

    pub fn add(&mut self, r: Reg, s: Reg, t: Reg) {
        self.push(Instruction::Add { r: r.nat(), s: s.nat(), t: t.nat() });
    }

    pub fn monus(&mut self, r: Reg, s: Reg, t: Reg) {
        self.push(Instruction::Monus { r: r.nat(), s: s.nat(), t: t.nat() });
    }

    pub fn mul(&mut self, r: Reg, s: Reg, t: Reg) {
        self.push(Instruction::Mul { r: r.nat(), s: s.nat(), t: t.nat() });
    }

    pub fn pair(&mut self, r: Reg, s: Reg, t: Reg) {
        self.push(Instruction::Pair { r: r.nat(), s: s.nat(), t: t.nat() });
    }

    pub fn unl(&mut self, r: Reg, s: Reg) {
        self.push(Instruction::Unl { r: r.nat(), s: s.nat() });
    }

    pub fn unr(&mut self, r: Reg, s: Reg) {
        self.push(Instruction::Unr { r: r.nat(), s: s.nat() });
    }

    pub fn jz(&mut self, r: Reg, l: Label) {
        self.items.push(Item::Jz(r, l));
    }

    pub fn jmp(&mut self, l: Label) {
        self.items.push(Item::Jmp(l));
    }

    pub fn ueval(&mut self, r: Reg, s: Reg, t: Reg) {
        self.push(Instruction::Ueval { r: r.nat(), s: s.nat(), t: t.nat() });
    }

    pub fn beval(&mut self, r: Reg, s: Reg, t: Reg) {
        self.push(Instruction::Beval { r: r.nat(), s: s.nat(), t: t.nat() });
    }

    pub fn halt(&mut self) {
        self.push(Instruction::Halt);
    }

    // ---- sugar -------------------------------------------------------

    pub fn dec(&mut self, r: Reg) {
        let one = self.reg();
        self.konst(one, 1u64);
        self.monus(r, r, one);
    }

    pub fn jnz(&mut self, r: Reg, l: Label) {
        let skip = self.label();
        self.jz(r, skip);
        self.jmp(l);
        self.bind(skip);
    }

    /// Jump when `a >= b`.
    pub fn jge(&mut self, a: Reg, b: Reg, l: Label) {
        let t = self.reg();
        self.monus(t, b, a);
        self.jz(t, l);
    }

    /// Jump when `a < b`.
    pub fn jlt(&mut self, a: Reg, b: Reg, l: Label) {
        let t = self.reg();
        self.monus(t, b, a);
        self.jnz(t, l);
    }

    pub fn jeq(&mut self, a: Reg, b: Reg, l: Label) {
        let t = self.reg();
        let u = self.reg();
        self.monus(t, a, b);
        self.monus(u, b, a);
        self.add(t, t, u);
        self.jz(t, l);
    }

    pub fn jne(&mut self, a: Reg, b: Reg, l: Label) {
        let t = self.reg();
        let u = self.reg();
        self.monus(t, a, b);
        self.monus(u, b, a);
        self.add(t, t, u);
        self.jnz(t, l);
    }

    /// `JMP 0`: a syntactic infinite loop.
    pub fn forever(&mut self) {
        self.push(Instruction::Jmp { offset: 0 });
    }

    pub fn halt_with(&mut self, r: Reg) {
        if r != Reg::IO {
            self.copy(Reg::IO, r);
        }
        self.halt();
    }

    pub fn finish(self) -> Program {
        let labels = self.labels;
        let resolve = |l: Label, pc: usize| -> i64 {
            let target = labels[l.0].expect("unbound label");
            target as i64 - pc as i64
        };
        let instructions = self
            .items
            .iter()
            .enumerate()
            .map(|(pc, it)| match it {
                Item::Fixed(ins) => ins.clone(),
                Item::Jz(r, l) => Instruction::Jz { r: r.nat(), offset: resolve(*l, pc) },
                Item::Jmp(l) => Instruction::Jmp { offset: resolve(*l, pc) },
            })
            .collect();
        Program { instructions }
    }

    pub fn code(self) -> ProgramCode {
        self.finish().encode()
    }
}
