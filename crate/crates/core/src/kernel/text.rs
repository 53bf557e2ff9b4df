//! Textual assembler and disassembler: one instruction per line,
//! `OPCODE arg1 arg2 arg3`, with `;` starting a comment.

use super::program::{Instruction, Opcode, Program};
use super::KernelError;
use crate::nat::Nat;

pub fn disassemble(p: &Program) -> String {
    p.to_string()
}

fn operand_count(op: Opcode) -> usize {
    use Opcode::*;
    match op {
        Halt => 0,
        Inc | Jmp => 1,
        Const | Copy | Unl | Unr | Jz => 2,
        Add | Monus | Mul | Pair | Ueval | Beval => 3,
    }
}

pub fn assemble(src: &str) -> Result<Program, KernelError> {
    let mut out = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split(';').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let mnemonic = words.next().expect("non-empty line");
        let err = |msg: String| KernelError::Assembly { line: line_no, msg };
        let op = Opcode::from_mnemonic(mnemonic).ok_or_else(|| err(format!("unknown opcode {mnemonic}")))?;
        let args: Vec<&str> = words.collect();
        if args.len() != operand_count(op) {
            return Err(err(format!(
                "{} takes {} operand(s), got {}",
                op.mnemonic(),
                operand_count(op),
                args.len()
            )));
        }
        let nat = |s: &str| s.parse::<Nat>().map_err(|e| err(e.to_string()));
        let off = |s: &str| s.parse::<i64>().map_err(|e| err(format!("bad offset {s:?}: {e}")));
        let ins = match op {
            Opcode::Halt => Instruction::Halt,
            Opcode::Const => Instruction::Const { r: nat(args[0])?, v: nat(args[1])? },
            Opcode::Copy => Instruction::Copy { r: nat(args[0])?, s: nat(args[1])? },
            Opcode::Inc => Instruction::Inc { r: nat(args[0])? },
            Opcode::Add => Instruction::Add { r: nat(args[0])?, s: nat(args[1])?, t: nat(args[2])? },
            Opcode::Monus => Instruction::Monus { r: nat(args[0])?, s: nat(args[1])?, t: nat(args[2])? },
            Opcode::Mul => Instruction::Mul { r: nat(args[0])?, s: nat(args[1])?, t: nat(args[2])? },
            Opcode::Pair => Instruction::Pair { r: nat(args[0])?, s: nat(args[1])?, t: nat(args[2])? },
            Opcode::Unl => Instruction::Unl { r: nat(args[0])?, s: nat(args[1])? },
            Opcode::Unr => Instruction::Unr { r: nat(args[0])?, s: nat(args[1])? },
            Opcode::Jz => Instruction::Jz { r: nat(args[0])?, offset: off(args[1])? },
            Opcode::Jmp => Instruction::Jmp { offset: off(args[0])? },
            Opcode::Ueval => Instruction::Ueval { r: nat(args[0])?, s: nat(args[1])?, t: nat(args[2])? },
            Opcode::Beval => Instruction::Beval { r: nat(args[0])?, s: nat(args[1])?, t: nat(args[2])? },
        };
        out.push(ins);
    }
    Ok(Program::new(out))
}
