//! The fuel-bounded universal interpreter.
//!
//! Every executed instruction costs one step, including the implicit halt
//! taken when control leaves the program. Steps of callees started by
//! `UEVAL`/`BEVAL` are charged to the same global counter, so
//! "halts within k steps" has a single meaning across nested evaluations.

use std::collections::HashMap;
use std::sync::Arc;

use super::pairing::{pair, unpair};
use super::program::{Instruction, Program, ProgramCode};
use crate::nat::Nat;

/// A step budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fuel(pub u64);

impl From<u64> for Fuel {
    fn from(v: u64) -> Self {
        Fuel(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Outcome {
    Halted { value: Nat, steps: u64 },
    OutOfFuel { steps: u64 },
}

impl Outcome {
    pub fn is_halted(&self) -> bool {
        matches!(self, Outcome::Halted { .. })
    }

    pub fn value(&self) -> Option<&Nat> {
        match self {
            Outcome::Halted { value, .. } => Some(value),
            Outcome::OutOfFuel { .. } => None,
        }
    }

    pub fn into_value(self) -> Option<Nat> {
        match self {
            Outcome::Halted { value, .. } => Some(value),
            Outcome::OutOfFuel { .. } => None,
        }
    }

    pub fn steps(&self) -> u64 {
        match self {
            Outcome::Halted { steps, .. } | Outcome::OutOfFuel { steps } => *steps,
        }
    }
}

type Slot = usize;

#[derive(Debug, Clone)]
enum Op {
    Halt,
    Const(Slot, Nat),
    Copy(Slot, Slot),
    Inc(Slot),
    Add(Slot, Slot, Slot),
    Monus(Slot, Slot, Slot),
    Mul(Slot, Slot, Slot),
    Pair(Slot, Slot, Slot),
    Unl(Slot, Slot),
    Unr(Slot, Slot),
    // targets are absolute and may fall outside the program
    Jz(Slot, i64),
    Jmp(i64),
    Ueval(Slot, Slot, Slot),
    Beval(Slot, Slot, Slot),
}

/// A program with its register operands renumbered densely; register 0
/// always maps to slot 0.
#[derive(Debug)]
struct Compiled {
    ops: Vec<Op>,
    slots: usize,
}

impl Compiled {
    fn from_program(p: &Program) -> Compiled {
        let mut map: HashMap<Nat, Slot> = HashMap::new();
        map.insert(Nat::ZERO, 0);
        let mut slot = |r: &Nat| -> Slot {
            let next = map.len();
            *map.entry(r.clone()).or_insert(next)
        };
        let target = |pc: usize, off: i64| (pc as i64).saturating_add(off);
        let ops = p
            .instructions
            .iter()
            .enumerate()
            .map(|(pc, ins)| match ins {
                Instruction::Halt => Op::Halt,
                Instruction::Const { r, v } => Op::Const(slot(r), v.clone()),
                Instruction::Copy { r, s } => Op::Copy(slot(r), slot(s)),
                Instruction::Inc { r } => Op::Inc(slot(r)),
                Instruction::Add { r, s, t } => Op::Add(slot(r), slot(s), slot(t)),
                Instruction::Monus { r, s, t } => Op::Monus(slot(r), slot(s), slot(t)),
                Instruction::Mul { r, s, t } => Op::Mul(slot(r), slot(s), slot(t)),
                Instruction::Pair { r, s, t } => Op::Pair(slot(r), slot(s), slot(t)),
                Instruction::Unl { r, s } => Op::Unl(slot(r), slot(s)),
                Instruction::Unr { r, s } => Op::Unr(slot(r), slot(s)),
                Instruction::Jz { r, offset } => Op::Jz(slot(r), target(pc, *offset)),
                Instruction::Jmp { offset } => Op::Jmp(target(pc, *offset)),
                Instruction::Ueval { r, s, t } => Op::Ueval(slot(r), slot(s), slot(t)),
                Instruction::Beval { r, s, t } => Op::Beval(slot(r), slot(s), slot(t)),
            })
            .collect();
        let slots = map.len();
        Compiled { ops, slots }
    }
}

#[derive(Debug, Clone, Copy)]
enum Return {
    Top,
    Unbounded(Slot),
    Bounded { slot: Slot, start: u64 },
}

struct Frame {
    prog: Arc<Compiled>,
    regs: Vec<Nat>,
    pc: i64,
    ret: Return,
}

/// Interpreter with a decoded-program cache. Results depend only on the
/// arguments of [`Machine::run`]; the cache is an optimisation.
#[derive(Default)]
pub struct Machine {
    cache: HashMap<Nat, Arc<Compiled>>,
}

const CACHE_LIMIT: usize = 4096;

impl Machine {
    pub fn new() -> Self {
        Machine::default()
    }

    fn compiled(&mut self, code: &Nat) -> Arc<Compiled> {
        if let Some(c) = self.cache.get(code) {
            return c.clone();
        }
        if self.cache.len() >= CACHE_LIMIT {
            self.cache.clear();
        }
        let c = Arc::new(Compiled::from_program(&Program::decode(code)));
        self.cache.insert(code.clone(), c.clone());
        c
    }

    fn frame(&mut self, code: &Nat, input: Nat, ret: Return) -> Frame {
        let prog = self.compiled(code);
        let mut regs = vec![Nat::ZERO; prog.slots];
        regs[0] = input;
        Frame {
            prog,
            regs,
            pc: 0,
            ret,
        }
    }

    pub fn run(&mut self, code: &ProgramCode, input: &Nat, fuel: Fuel) -> Outcome {
        let budget = fuel.0;
        let mut steps: u64 = 0;
        let mut stack: Vec<Frame> = vec![self.frame(code.nat(), input.clone(), Return::Top)];
        // (frame index, absolute deadline, running minimum)
        let mut deadlines: Vec<(usize, u64, u64)> = Vec::new();

        loop {
            if let Some(&(_, _, min)) = deadlines.last() {
                if steps >= min {
                    // The outermost bounded call whose own deadline is the
                    // current minimum has used up its budget.
                    let pos = deadlines
                        .iter()
                        .position(|&(_, d, _)| d == min)
                        .expect("minimum is attained");
                    let callee = deadlines[pos].0;
                    deadlines.truncate(pos);
                    let slot = match stack[callee].ret {
                        Return::Bounded { slot, .. } => slot,
                        _ => unreachable!("deadline on an unbounded frame"),
                    };
                    stack.truncate(callee);
                    let parent = stack.last_mut().expect("bounded call has a caller");
                    parent.regs[slot] = Nat::ZERO;
                    parent.pc += 1;
                    continue;
                }
            }
            if steps >= budget {
                return Outcome::OutOfFuel { steps: budget };
            }
            steps += 1;

            let depth = stack.len() - 1;
            let frame = &mut stack[depth];
            let pc = frame.pc;
            let op = if pc >= 0 && (pc as usize) < frame.prog.ops.len() {
                &frame.prog.ops[pc as usize]
            } else {
                &Op::Halt
            };
            match op {
                Op::Halt => {
                    let done = stack.pop().expect("non-empty stack");
                    let value = done.regs.into_iter().next().unwrap_or_default();
                    match done.ret {
                        Return::Top => return Outcome::Halted { value, steps },
                        Return::Unbounded(slot) => {
                            let parent = stack.last_mut().expect("caller");
                            parent.regs[slot] = value;
                            parent.pc += 1;
                        }
                        Return::Bounded { slot, start } => {
                            deadlines.pop();
                            let used = Nat::from(steps - start);
                            let parent = stack.last_mut().expect("caller");
                            parent.regs[slot] = pair(&value, &used).succ();
                            parent.pc += 1;
                        }
                    }
                }
                Op::Const(r, v) => {
                    frame.regs[*r] = v.clone();
                    frame.pc += 1;
                }
                Op::Copy(r, s) => {
                    frame.regs[*r] = frame.regs[*s].clone();
                    frame.pc += 1;
                }
                Op::Inc(r) => {
                    frame.regs[*r] = frame.regs[*r].succ();
                    frame.pc += 1;
                }
                Op::Add(r, s, t) => {
                    frame.regs[*r] = frame.regs[*s].add(&frame.regs[*t]);
                    frame.pc += 1;
                }
                Op::Monus(r, s, t) => {
                    frame.regs[*r] = frame.regs[*s].monus(&frame.regs[*t]);
                    frame.pc += 1;
                }
                Op::Mul(r, s, t) => {
                    frame.regs[*r] = frame.regs[*s].mul(&frame.regs[*t]);
                    frame.pc += 1;
                }
                Op::Pair(r, s, t) => {
                    frame.regs[*r] = pair(&frame.regs[*s], &frame.regs[*t]);
                    frame.pc += 1;
                }
                Op::Unl(r, s) => {
                    frame.regs[*r] = unpair(&frame.regs[*s]).0;
                    frame.pc += 1;
                }
                Op::Unr(r, s) => {
                    frame.regs[*r] = unpair(&frame.regs[*s]).1;
                    frame.pc += 1;
                }
                Op::Jz(r, target) => {
                    if frame.regs[*r].is_zero() {
                        frame.pc = *target;
                    } else {
                        frame.pc += 1;
                    }
                }
                Op::Jmp(target) => {
                    frame.pc = *target;
                }
                Op::Ueval(r, s, t) => {
                    let (r, code, arg) = (*r, frame.regs[*s].clone(), frame.regs[*t].clone());
                    let callee = self.frame(&code, arg, Return::Unbounded(r));
                    stack.push(callee);
                }
                Op::Beval(r, s, t) => {
                    let (r, code) = (*r, frame.regs[*s].clone());
                    let (arg, bound) = unpair(&frame.regs[*t]);
                    let bound = bound.to_u64_saturating();
                    if bound == 0 {
                        frame.regs[r] = Nat::ZERO;
                        frame.pc += 1;
                        continue;
                    }
                    let callee = self.frame(&code, arg, Return::Bounded { slot: r, start: steps });
                    let deadline = steps.saturating_add(bound);
                    let min = deadlines.last().map_or(deadline, |&(_, _, m)| m.min(deadline));
                    deadlines.push((stack.len(), deadline, min));
                    stack.push(callee);
                }
            }
        }
    }
}
