//! Finite topological spaces with the identity numbering.
//!
//! A τ-name of an open is any semi-decider for it, so τ is `ν_SD` cut down
//! to the topology. Each open also has a canonical name, the table-lookup
//! acceptor of its points.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{domain_intersect_code, domain_union_code, SpaceDescriptor, TopologyError};
use crate::kernel::{self, Fuel, ProgramCode};
use crate::nat::Nat;

pub type PointSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SpaceFile {
    points: Vec<serde_json::Value>,
    opens: Vec<Vec<usize>>,
    #[serde(default = "identity_numbering")]
    numbering: String,
}

fn identity_numbering() -> String {
    "identity".into()
}

#[derive(Debug, Clone)]
pub struct FiniteSpace {
    labels: Vec<String>,
    opens: Vec<PointSet>,
    descriptor: SpaceDescriptor,
}

/// A τ-name found for a finite space, with the index of its open.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteOpen {
    pub index: usize,
    pub name: Nat,
}

fn canonical_name(set: &PointSet) -> Nat {
    if set.is_empty() {
        return kernel::programs::diverge().0;
    }
    let members: Vec<Nat> = set.iter().map(|&p| Nat::from(p)).collect();
    kernel::finite_acceptor(&members).0
}

fn check_topology(n: usize, opens: &[PointSet]) -> Result<(), TopologyError> {
    let full: PointSet = (0..n).collect();
    if let Some(bad) = opens.iter().flatten().find(|&&p| p >= n) {
        return Err(TopologyError::NotATopology(format!("point index {bad} out of range")));
    }
    let distinct: BTreeSet<&PointSet> = opens.iter().collect();
    if distinct.len() != opens.len() {
        return Err(TopologyError::NotATopology("an open is listed twice".into()));
    }
    if !distinct.contains(&PointSet::new()) {
        return Err(TopologyError::NotATopology("the empty set is missing".into()));
    }
    if !distinct.contains(&full) {
        return Err(TopologyError::NotATopology("the whole space is missing".into()));
    }
    for a in opens {
        for b in opens {
            let u: PointSet = a.union(b).copied().collect();
            let i: PointSet = a.intersection(b).copied().collect();
            if !distinct.contains(&u) {
                return Err(TopologyError::NotATopology(format!("{a:?} ∪ {b:?} is not open")));
            }
            if !distinct.contains(&i) {
                return Err(TopologyError::NotATopology(format!("{a:?} ∩ {b:?} is not open")));
            }
        }
    }
    Ok(())
}

impl FiniteSpace {
    pub fn new(labels: Vec<String>, opens: Vec<Vec<usize>>) -> Result<Self, TopologyError> {
        let opens: Vec<PointSet> = opens.into_iter().map(|o| o.into_iter().collect()).collect();
        check_topology(labels.len(), &opens)?;
        let full: PointSet = (0..labels.len()).collect();
        let descriptor = SpaceDescriptor {
            id: format!("finite({})", labels.len()),
            malcev: kernel::programs::identity(),
            union_code: domain_union_code(),
            intersect_code: domain_intersect_code(),
            empty_name: canonical_name(&PointSet::new()),
            full_name: canonical_name(&full),
        };
        Ok(FiniteSpace { labels, opens, descriptor })
    }

    /// Reads `{"points": [...], "opens": [[indices]], "numbering": "identity"}`.
    pub fn from_json(src: &str) -> Result<Self, TopologyError> {
        let f: SpaceFile = serde_json::from_str(src).map_err(|e| TopologyError::Format(e.to_string()))?;
        if f.numbering != "identity" {
            return Err(TopologyError::Format(format!("unsupported numbering {:?}", f.numbering)));
        }
        let labels = f
            .points
            .iter()
            .map(|v| match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        FiniteSpace::new(labels, f.opens)
    }

    pub fn sierpinski() -> Self {
        FiniteSpace::new(vec!["0".into(), "1".into()], vec![vec![], vec![1], vec![0, 1]]).expect("valid")
    }

    pub fn discrete(n: usize) -> Self {
        let opens = (0u32..1 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
        FiniteSpace::new((0..n).map(|i| i.to_string()).collect(), opens).expect("valid")
    }

    pub fn indiscrete(n: usize) -> Self {
        FiniteSpace::new((0..n).map(|i| i.to_string()).collect(), vec![vec![], (0..n).collect()]).expect("valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn descriptor(&self) -> &SpaceDescriptor {
        &self.descriptor
    }

    pub fn index_of(&self, set: &PointSet) -> Option<usize> {
        self.opens.iter().position(|o| o == set)
    }

    /// Canonical τ-name of `opens()[i]`.
    pub fn open_name(&self, i: usize) -> Nat {
        canonical_name(&self.opens[i])
    }

    /// Largest open contained in `set`.
    pub fn interior(&self, set: &PointSet) -> PointSet {
        self.opens.iter().filter(|o| o.is_subset(set)).flatten().copied().collect()
    }

    pub fn closure(&self, set: &PointSet) -> PointSet {
        (0..self.len()).filter(|x| self.opens.iter().all(|o| !o.contains(x) || !o.is_disjoint(set))).collect()
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|x| self.index_of(&PointSet::from([x])).is_some())
    }
}

pub fn finite_space(labels: Vec<String>, opens: Vec<Vec<usize>>) -> Result<FiniteSpace, TopologyError> {
    FiniteSpace::new(labels, opens)
}

// A set seen at fewer fuel doublings than this is not trusted as final.
const MIN_STABLE_ROUNDS: usize = 4;

fn round_fuel(t: u32) -> Fuel {
    Fuel(1u64 << t.min(40))
}

/// Recovers the open denoted by a semi-decider. Round `t` runs `sd` on
/// every point with fuel `2^t`; the result is the largest open inside the
/// accepted set. The answer is returned once the accepted set has stayed
/// the same through the second half of the rounds (at least four of them)
/// and is itself open.
pub fn finite_tau_from_sd(space: &FiniteSpace, sd: &ProgramCode, rounds: u32) -> Result<FiniteOpen, TopologyError> {
    let mut m = kernel::Machine::new();
    let mut history: Vec<PointSet> = Vec::new();
    for t in 0..rounds {
        let accepted: PointSet =
            (0..space.len()).filter(|&x| m.run(sd, &Nat::from(x), round_fuel(t)).is_halted()).collect();
        history.push(accepted);
    }
    let last = history.last().ok_or(TopologyError::InsufficientRounds { rounds })?;
    let tail = &history[history.len() / 2..];
    let stable = tail.len() >= MIN_STABLE_ROUNDS && tail.iter().all(|a| a == last);
    let inner = space.interior(last);
    if !stable || &inner != last {
        return Err(TopologyError::InsufficientRounds { rounds });
    }
    let index = space.index_of(&inner).expect("interiors are open");
    Ok(FiniteOpen { index, name: space.open_name(index) })
}

/// Every pair `(x, A)` with `x ∉ A` but `x` in the closure of `A`. Under a
/// decidable numbering `{x}` is then semi-decidable inside `A ∪ {x}`, so
/// each pair is a failure of the Markov condition.
pub fn markov_obstructions(space: &FiniteSpace) -> Vec<(usize, Vec<usize>)> {
    let n = space.len();
    let mut out = Vec::new();
    for x in 0..n {
        for mask in 1u64..1 << n {
            if mask >> x & 1 == 1 {
                continue;
            }
            let a: PointSet = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if space.closure(&a).contains(&x) {
                out.push((x, a.into_iter().collect()));
            }
        }
    }
    out
}

/// All topologies on `{0, …, n-1}`, as lists of opens sorted by bitmask.
pub fn all_topologies(n: usize) -> Vec<Vec<Vec<usize>>> {
    assert!(n <= 4, "brute force over 2^(2^n) families");
    let subsets = 1usize << n;
    let full = subsets - 1;
    let mut out = Vec::new();
    for family in 0u64..1 << subsets {
        let has = |s: usize| family >> s & 1 == 1;
        if !has(0) || !has(full) {
            continue;
        }
        let members: Vec<usize> = (0..subsets).filter(|&s| has(s)).collect();
        if members.iter().all(|&a| members.iter().all(|&b| has(a | b) && has(a & b))) {
            out.push(members.iter().map(|&s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructs_and_rejects() {
        assert!(!FiniteSpace::sierpinski().is_discrete());
        assert!(FiniteSpace::discrete(3).is_discrete());
        let missing_full = FiniteSpace::new(vec!["a".into(), "b".into()], vec![vec![], vec![0]]);
        assert!(matches!(missing_full, Err(TopologyError::NotATopology(_))));
        let not_closed = FiniteSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![], vec![0], vec![1], vec![0, 1, 2]],
        );
        assert!(not_closed.is_err());
    }

    #[test]
    fn json_round() {
        let s = FiniteSpace::from_json(r#"{"points":[0,1],"opens":[[],[1],[0,1]],"numbering":"identity"}"#).unwrap();
        assert_eq!(s.opens().len(), 3);
        assert!(FiniteSpace::from_json(r#"{"points":[0],"opens":[[],[0]],"numbering":"other"}"#).is_err());
    }

    #[test]
    fn topology_count_on_three_points() {
        assert_eq!(all_topologies(1).len(), 1);
        assert_eq!(all_topologies(2).len(), 4);
        assert_eq!(all_topologies(3).len(), 29);
    }

    #[test]
    fn sierpinski_obstruction() {
        assert_eq!(markov_obstructions(&FiniteSpace::sierpinski()), vec![(0, vec![1])]);
        assert!(markov_obstructions(&FiniteSpace::discrete(3)).is_empty());
        assert_eq!(markov_obstructions(&FiniteSpace::indiscrete(2)), vec![(0, vec![1]), (1, vec![0])]);
    }

    #[test]
    fn tau_from_sd_examples() {
        let s = FiniteSpace::sierpinski();
        let empty = finite_tau_from_sd(&s, &kernel::programs::diverge(), 12).unwrap();
        assert_eq!(empty.name, s.descriptor().empty_name);
        let one = kernel::finite_acceptor(&[Nat::ONE]);
        let got = finite_tau_from_sd(&s, &one, 12).unwrap();
        assert_eq!(s.opens()[got.index], PointSet::from([1]));
        let d = FiniteSpace::discrete(3);
        let sd = kernel::finite_acceptor(&[Nat::ZERO, Nat::from(2u64)]);
        let got = finite_tau_from_sd(&d, &sd, 12).unwrap();
        assert_eq!(d.opens()[got.index], PointSet::from([0, 2]));
        assert!(matches!(finite_tau_from_sd(&d, &sd, 1), Err(TopologyError::InsufficientRounds { .. })));
    }
}
