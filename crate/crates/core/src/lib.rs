//! Computable topology over a Gödel-numbered register machine.

pub mod kernel;
pub mod numberings;
pub mod topology;
pub mod reals;
pub mod nplus;
pub mod cli;
pub mod nat;

pub use nat::Nat;
