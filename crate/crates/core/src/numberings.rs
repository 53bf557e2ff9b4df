//! Numberings, multi-numberings and the program-valued names built over them:
//! semi-deciders, co-semi-deciders, function names and reductions.
//!
//! The decoders attached to a numbering are host-side ground truth for tests
//! and demos. In-machine constructions only ever see codes.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::kernel::{self, pair, Builder, Fuel, Outcome, ProgramCode, Reg};
use crate::nat::Nat;

pub type Decoder<P> = Arc<dyn Fn(&Nat) -> Option<P> + Send + Sync>;
pub type Equality<P> = Arc<dyn Fn(&P, &P) -> bool + Send + Sync>;

/// A (sub)numbering `ν :⊆ ℕ → X`, given by a host decoder.
#[derive(Clone)]
pub struct Numbering<P> {
    id: String,
    decode: Decoder<P>,
    equal: Equality<P>,
}

impl<P> fmt::Debug for Numbering<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Numbering").field("id", &self.id).finish_non_exhaustive()
    }
}

impl<P: 'static> Numbering<P> {
    pub fn new(
        id: impl Into<String>,
        decode: impl Fn(&Nat) -> Option<P> + Send + Sync + 'static,
        equal: impl Fn(&P, &P) -> bool + Send + Sync + 'static,
    ) -> Self {
        Numbering { id: id.into(), decode: Arc::new(decode), equal: Arc::new(equal) }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn in_domain(&self, n: &Nat) -> bool {
        (self.decode)(n).is_some()
    }

    pub fn value(&self, n: &Nat) -> Option<P> {
        (self.decode)(n)
    }

    pub fn equal(&self, a: &P, b: &P) -> bool {
        (self.equal)(a, b)
    }

    /// `ν|A`: same decoder, domain cut down to names of points in `A`.
    pub fn restrict(&self, id: impl Into<String>, keep: impl Fn(&P) -> bool + Send + Sync + 'static) -> Numbering<P> {
        let inner = self.decode.clone();
        Numbering {
            id: id.into(),
            decode: Arc::new(move |n| inner(n).filter(|p| keep(p))),
            equal: self.equal.clone(),
        }
    }
}

impl<P: PartialEq + 'static> Numbering<P> {
    pub fn with_decoder(id: impl Into<String>, decode: impl Fn(&Nat) -> Option<P> + Send + Sync + 'static) -> Self {
        Numbering::new(id, decode, |a: &P, b: &P| a == b)
    }
}

impl<P: Clone + PartialEq + Send + Sync + 'static> Numbering<P> {
    /// A finite numbering given by an explicit name table.
    pub fn from_table(id: impl Into<String>, entries: Vec<(Nat, P)>) -> Self {
        Numbering::with_decoder(id, move |n| entries.iter().find(|(k, _)| k == n).map(|(_, p)| p.clone()))
    }
}

impl Numbering<Nat> {
    /// `id_ℕ`.
    pub fn identity() -> Self {
        Numbering::with_decoder("identity", |n| Some(n.clone()))
    }
}

/// `ν × μ`, named through Cantor pairing.
pub fn product<P: 'static, Q: 'static>(a: &Numbering<P>, b: &Numbering<Q>) -> Numbering<(P, Q)> {
    let (da, db) = (a.decode.clone(), b.decode.clone());
    let (ea, eb) = (a.equal.clone(), b.equal.clone());
    Numbering::new(
        format!("{}x{}", a.id, b.id),
        move |n| {
            let (l, r) = kernel::unpair(n);
            Some((da(&l)?, db(&r)?))
        },
        move |x: &(P, Q), y: &(P, Q)| ea(&x.0, &y.0) && eb(&x.1, &y.1),
    )
}

pub fn product_name(n: &Nat, m: &Nat) -> Nat {
    pair(n, m)
}

/// A multi-numbering `ν : ℕ ⇉ X`; a name is valid when it describes
/// at least one point.
#[derive(Clone)]
pub struct MultiNumbering<P> {
    id: String,
    decode: Arc<dyn Fn(&Nat) -> Vec<P> + Send + Sync>,
}

impl<P> fmt::Debug for MultiNumbering<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiNumbering").field("id", &self.id).finish_non_exhaustive()
    }
}

impl<P: 'static> MultiNumbering<P> {
    pub fn new(id: impl Into<String>, decode: impl Fn(&Nat) -> Vec<P> + Send + Sync + 'static) -> Self {
        MultiNumbering { id: id.into(), decode: Arc::new(decode) }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn values(&self, n: &Nat) -> Vec<P> {
        (self.decode)(n)
    }

    pub fn in_domain(&self, n: &Nat) -> bool {
        !(self.decode)(n).is_empty()
    }
}

/// A `ν_SD`-name: a program halting on exactly the names of points in `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiDeciderName {
    pub code: ProgramCode,
    pub subject: String,
}

impl SemiDeciderName {
    pub fn new(code: ProgramCode, subject: impl Into<String>) -> Self {
        SemiDeciderName { code, subject: subject.into() }
    }

    /// Semi-decider of the whole space.
    pub fn full(subject: impl Into<String>) -> Self {
        SemiDeciderName::new(kernel::programs::identity(), subject)
    }

    pub fn empty(subject: impl Into<String>) -> Self {
        SemiDeciderName::new(kernel::programs::diverge(), subject)
    }

    pub fn semidecide(&self, n: &Nat, fuel: Fuel) -> Outcome {
        kernel::run(&self.code, n, fuel)
    }

    /// Names among `names` on which halting disagrees with `in_set`.
    pub fn disagreements<P: 'static>(
        &self,
        nu: &Numbering<P>,
        in_set: impl Fn(&P) -> bool,
        names: &[Nat],
        fuel: Fuel,
    ) -> Vec<Nat> {
        names
            .iter()
            .filter(|n| match nu.value(n) {
                Some(p) => self.semidecide(n, fuel).is_halted() != in_set(&p),
                None => false,
            })
            .cloned()
            .collect()
    }
}

/// The same code, read as a semi-decider for `ν|A`; it then denotes
/// `ν_SD(sd) ∩ A`.
pub fn restrict_semidecider(sd: &SemiDeciderName, restricted: &str) -> SemiDeciderName {
    SemiDeciderName::new(sd.code.clone(), restricted)
}

/// A `ν_coSD`-name: the code of a semi-decider whose set is complemented.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoSemiDeciderName {
    pub code: ProgramCode,
    pub subject: String,
}

impl CoSemiDeciderName {
    pub fn new(code: ProgramCode, subject: impl Into<String>) -> Self {
        CoSemiDeciderName { code, subject: subject.into() }
    }

    /// Halting means the name lies outside the denoted set.
    pub fn refutes(&self, n: &Nat, fuel: Fuel) -> Outcome {
        kernel::run(&self.code, n, fuel)
    }

    pub fn complement(&self) -> SemiDeciderName {
        complement_roundtrip(self)
    }
}

pub fn complement_roundtrip(c: &CoSemiDeciderName) -> SemiDeciderName {
    SemiDeciderName::new(c.code.clone(), c.subject.clone())
}

pub fn as_cosemidecider(sd: &SemiDeciderName) -> CoSemiDeciderName {
    CoSemiDeciderName::new(sd.code.clone(), sd.subject.clone())
}

/// A `μ^ν`-name of a function: maps `ν`-names to `μ`-names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionName {
    pub code: ProgramCode,
    pub source: String,
    pub target: String,
}

impl FunctionName {
    pub fn new(code: ProgramCode, source: impl Into<String>, target: impl Into<String>) -> Self {
        FunctionName { code, source: source.into(), target: target.into() }
    }
}

pub fn apply_fn_name(f: &FunctionName, n: &Nat, fuel: Fuel) -> Outcome {
    kernel::run(&f.code, n, fuel)
}

/// Witness of `ν ≤ μ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub code: ProgramCode,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionFailure {
    Diverged { name: Nat },
    NotAName { name: Nat, image: Nat },
    WrongPoint { name: Nat, image: Nat },
}

impl Reduction {
    pub fn new(code: ProgramCode, from: impl Into<String>, to: impl Into<String>) -> Self {
        Reduction { code, from: from.into(), to: to.into() }
    }

    pub fn identity(id: impl Into<String>) -> Self {
        let id = id.into();
        Reduction::new(kernel::programs::identity(), id.clone(), id)
    }

    /// Transitivity: `self : ν ≤ μ` and `next : μ ≤ λ` give `ν ≤ λ`.
    pub fn then(&self, next: &Reduction) -> Reduction {
        Reduction::new(kernel::compose(&next.code, &self.code), self.from.clone(), next.to.clone())
    }

    /// Checks the reduction on the given `ν`-names.
    pub fn verify<P: 'static>(
        &self,
        nu: &Numbering<P>,
        mu: &Numbering<P>,
        names: &[Nat],
        fuel: Fuel,
    ) -> Result<(), ReductionFailure> {
        for n in names {
            let Some(p) = nu.value(n) else { continue };
            let image = kernel::run(&self.code, n, fuel)
                .into_value()
                .ok_or_else(|| ReductionFailure::Diverged { name: n.clone() })?;
            let q = mu
                .value(&image)
                .ok_or_else(|| ReductionFailure::NotAName { name: n.clone(), image: image.clone() })?;
            if !nu.equal(&p, &q) {
                return Err(ReductionFailure::WrongPoint { name: n.clone(), image });
            }
        }
        Ok(())
    }
}

/// Semi-decider for `A × B` on product names from semi-deciders of `A`, `B`.
pub fn product_semidecider(a: &ProgramCode, b: &ProgramCode) -> ProgramCode {
    let mut bl = Builder::new();
    let (sa, sb, l, r, t) = (bl.reg(), bl.reg(), bl.reg(), bl.reg(), bl.reg());
    bl.konst(sa, a.nat().clone());
    bl.konst(sb, b.nat().clone());
    bl.unl(l, Reg::IO);
    bl.unr(r, Reg::IO);
    bl.ueval(t, sa, l);
    bl.ueval(t, sb, r);
    bl.konst(Reg::IO, 0u64);
    bl.halt();
    bl.code()
}

/// Fixture file: a numbering, labelled names, and semi-deciders with their
/// intended member labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberingFixture {
    pub numbering: String,
    pub names: Vec<(Nat, String)>,
    pub semideciders: Vec<SemiDeciderFixture>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiDeciderFixture {
    pub label: String,
    pub code: ProgramCode,
    pub members: Vec<String>,
    pub fuel: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureMismatch {
    pub semidecider: String,
    pub name: Nat,
    pub expected: bool,
}

impl NumberingFixture {
    pub fn from_json(src: &str) -> serde_json::Result<Self> {
        serde_json::from_str(src)
    }

    /// Every (semi-decider, name) pair whose halting status at the documented
    /// fuel differs from the intended membership.
    pub fn mismatches(&self) -> Vec<FixtureMismatch> {
        let mut out = Vec::new();
        for sd in &self.semideciders {
            for (name, label) in &self.names {
                let expected = sd.members.contains(label);
                let got = kernel::run(&sd.code, name, Fuel(sd.fuel)).is_halted();
                if got != expected {
                    out.push(FixtureMismatch { semidecider: sd.label.clone(), name: name.clone(), expected });
                }
            }
        }
        out
    }
}
