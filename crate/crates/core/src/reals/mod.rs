//! The computable reals as a Type-1 space.
//!
//! A point name is a program `n ↦ c_Q`-code within `2^-n` of the real. An
//! open name is a program whose range lists interval codes `⟨lo, hi⟩`; the
//! open is the union of those rational intervals.

pub(crate) mod machine;
pub mod rational;

use std::path::PathBuf;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::routines::{self, Word};
use crate::kernel::{self, const_code, finite_table, pair, smn_wrapper, unpair, Fuel, Instruction, Outcome, ProgramCode};
use crate::nat::Nat;
use crate::numberings::CoSemiDeciderName;
use crate::topology::{BasisDescriptor, NormedWitness, SpaceDescriptor};

pub use rational::{cq_decode, cq_encode, format_rational, parse_rational, pow2_neg, rational, within, ParseRationalError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealsError {
    #[error("out of fuel after {steps} steps")]
    OutOfFuel { steps: u64 },
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("bad interval list {0:?}")]
    Intervals(String),
    #[error("bad real {0:?}: expected rat:<p>/<q>, sqrt2 or limit-fast:<file>")]
    Spec(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

fn halted(out: Outcome) -> Result<Nat, RealsError> {
    match out {
        Outcome::Halted { value, .. } => Ok(value),
        Outcome::OutOfFuel { steps } => Err(RealsError::OutOfFuel { steps }),
    }
}

/// Constant name: every precision answers `q`.
pub fn real_from_rational(q: &BigRational) -> ProgramCode {
    const_code(&cq_encode(q))
}

pub fn approx(x: &ProgramCode, n: u64, fuel: Fuel) -> Outcome {
    kernel::run(x, &Nat::from(n), fuel)
}

pub fn approx_rational(x: &ProgramCode, n: u64, fuel: Fuel) -> Result<BigRational, RealsError> {
    halted(approx(x, n, fuel)).map(|c| cq_decode(&c))
}

/// Pairs `(n, m)` with `n, m ≤ max` violating `|q_n - q_m| ≤ 2^-n + 2^-m`.
pub fn cauchy_violations(x: &ProgramCode, max: u64, fuel: Fuel) -> Result<Vec<(u64, u64)>, RealsError> {
    let qs = (0..=max).map(|n| approx_rational(x, n, fuel)).collect::<Result<Vec<_>, _>>()?;
    let mut bad = Vec::new();
    for n in 0..=max {
        for m in n + 1..=max {
            let gap = (&qs[n as usize] - &qs[m as usize]).abs();
            if gap > pow2_neg(n) + pow2_neg(m) {
                bad.push((n, m));
            }
        }
    }
    Ok(bad)
}

/// `x ↦ √2`, exact to the last binary digit.
pub fn sqrt2() -> ProgramCode {
    machine::SQRT2.clone()
}

/// Open name listing the given intervals; the empty list names ∅.
pub fn interval_open(intervals: &[(BigRational, BigRational)]) -> ProgramCode {
    if intervals.is_empty() {
        return kernel::programs::diverge();
    }
    let codes: Vec<Nat> = intervals.iter().map(|(lo, hi)| pair(&cq_encode(lo), &cq_encode(hi))).collect();
    finite_table(&codes)
}

/// Parses `(p/q,r/s);(…)` into intervals. An empty string is ∅.
pub fn parse_intervals(s: &str) -> Result<Vec<(BigRational, BigRational)>, RealsError> {
    let err = || RealsError::Intervals(s.to_string());
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let inner = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(err)?;
            let (a, b) = inner.split_once(',').ok_or_else(err)?;
            Ok((parse_rational(a)?, parse_rational(b)?))
        })
        .collect()
}

/// `∅`, `full` or an interval list.
pub fn parse_open(s: &str) -> Result<ProgramCode, RealsError> {
    match s.trim() {
        "full" => Ok(machine::FULL.clone()),
        "empty" => Ok(kernel::programs::diverge()),
        other => Ok(interval_open(&parse_intervals(other)?)),
    }
}

/// Textual real builders accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealSpec {
    Rational(BigRational),
    Sqrt2,
    /// File of decimal real-name codes, one per line, forming a sequence
    /// converging faster than `2^-n`; the last code repeats.
    LimitFast(PathBuf),
}

impl RealSpec {
    pub fn parse(s: &str) -> Result<Self, RealsError> {
        let s = s.trim();
        if s == "sqrt2" {
            Ok(RealSpec::Sqrt2)
        } else if let Some(q) = s.strip_prefix("rat:") {
            Ok(RealSpec::Rational(parse_rational(q)?))
        } else if let Some(f) = s.strip_prefix("limit-fast:") {
            Ok(RealSpec::LimitFast(PathBuf::from(f)))
        } else {
            Err(RealsError::Spec(s.to_string()))
        }
    }

    pub fn build(&self) -> Result<ProgramCode, RealsError> {
        match self {
            RealSpec::Rational(q) => Ok(real_from_rational(q)),
            RealSpec::Sqrt2 => Ok(sqrt2()),
            RealSpec::LimitFast(path) => {
                let io = |e: std::io::Error| RealsError::Io { path: path.display().to_string(), msg: e.to_string() };
                let text = std::fs::read_to_string(path).map_err(io)?;
                let codes = text
                    .lines()
                    .map(|l| l.split("//").next().unwrap_or("").trim())
                    .filter(|l| !l.is_empty())
                    .map(|l| l.parse::<Nat>().map_err(|_| RealsError::Spec(l.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                if codes.is_empty() {
                    return Err(RealsError::Spec(format!("{}: no codes", path.display())));
                }
                Ok(limit_fast(&finite_table(&codes)))
            }
        }
    }
}

/// Halts iff the real named `x` lies in the open named `o`.
pub fn member_real(x: &ProgramCode, o: &ProgramCode, fuel: Fuel) -> Outcome {
    kernel::run(&machine::MEMBER, &pair(o.nat(), x.nat()), fuel)
}

/// ℝ_c with interval-union opens.
pub fn real_space() -> SpaceDescriptor {
    SpaceDescriptor {
        id: "reals".into(),
        malcev: smn_wrapper(&machine::MEMBER),
        union_code: smn_wrapper(&machine::UNION_SEQ),
        intersect_code: smn_wrapper(&machine::INTERSECT),
        empty_name: kernel::programs::diverge().0,
        full_name: machine::FULL.nat().clone(),
    }
}

/// The name `m ↦ v_{m+2}` at precision `m+2`, for a sequence of real names
/// `v_n` with `|v_n - L| ≤ 2^-n`.
pub fn limit_fast(seq: &ProgramCode) -> ProgramCode {
    let load = Instruction::Const { r: Nat::ONE, v: seq.nat().clone() };
    routines::fixed_code(&machine::limit_words(Word::Fixed(load)))
}

/// `limit_fast` of the subsequence `k ↦ v_{modulus(k)}`.
pub fn limit_with_modulus(seq: &ProgramCode, modulus: &ProgramCode) -> ProgramCode {
    limit_fast(&subsequence(seq, modulus))
}

pub fn subsequence(seq: &ProgramCode, index: &ProgramCode) -> ProgramCode {
    kernel::smn(&machine::SUBSEQ, &pair(seq.nat(), index.nat()))
}

/// Sequences of real names used as fixtures and by the diagonal family.
pub mod sequences {
    use super::*;
    use crate::kernel::{Builder, Reg};

    fn cq_program(emit: impl FnOnce(&mut Builder, Reg, Reg)) -> ProgramCode {
        machine::cq_sequence(emit)
    }

    fn rat_code(b: &mut Builder, dst: Reg, sign: u64, num: Reg, c: Reg) {
        let (s, t) = (b.reg(), b.reg());
        b.konst(s, sign);
        b.pair(t, num, c);
        b.pair(dst, s, t);
    }

    /// `n ↦` name of `2^-n`.
    pub fn pow2_neg() -> ProgramCode {
        machine::POW2_NEG_SEQ.clone()
    }

    /// `n ↦` name of `-2^-n`.
    pub fn neg_pow2_neg() -> ProgramCode {
        cq_program(|b, n, dst| {
            let (e, one) = (b.reg(), b.reg());
            crate::kernel::routines::pow2(b, e, n);
            b.dec(e);
            b.konst(one, 1u64);
            rat_code(b, dst, 1, one, e);
        })
    }

    /// `n ↦` name of `1 - 2^-n`.
    pub fn one_minus_pow2_neg() -> ProgramCode {
        cq_program(|b, n, dst| {
            let e = b.reg();
            crate::kernel::routines::pow2(b, e, n);
            b.dec(e);
            rat_code(b, dst, 0, e, e);
        })
    }

    /// `n ↦` name of `1/(n+1)`; converges, but only like `1/n`.
    pub fn reciprocal() -> ProgramCode {
        cq_program(|b, n, dst| {
            let one = b.reg();
            b.konst(one, 1u64);
            rat_code(b, dst, 0, one, n);
        })
    }

    /// `n ↦` name of `q`.
    pub fn constant(q: &BigRational) -> ProgramCode {
        kernel::programs::constant(real_from_rational(q).nat())
    }

    /// `n ↦` name of the truncation of `√2` to `n + 1` binary digits.
    pub fn sqrt2_truncations() -> ProgramCode {
        machine::const_names_of(&machine::SQRT2)
    }

    /// `k ↦ 2^k`, a convergence modulus for [`reciprocal`].
    pub fn pow2_modulus() -> ProgramCode {
        let mut b = Builder::new();
        let out = b.reg();
        crate::kernel::routines::pow2(&mut b, out, Reg::IO);
        b.halt_with(out);
        b.code()
    }
}

/// `⟨t, n⟩ ↦` a rational code within `2^-n` of the real whose τ*-name is `t`.
pub fn sober_recover_real(t: &ProgramCode, n: u64, fuel: Fuel) -> Outcome {
    kernel::run(&machine::SOBER_RECOVER, &pair(t.nat(), &Nat::from(n)), fuel)
}

/// `t ↦` a real name of the point whose τ*-name is `t`.
pub fn recovery_code() -> ProgramCode {
    smn_wrapper(&machine::SOBER_RECOVER)
}

/// Preimage map of `x ↦ x + 1`: shifts every interval one unit left.
pub fn shift_preimage_code() -> ProgramCode {
    smn_wrapper(&machine::SHIFT_LEFT)
}

/// Preimage map of the constant map at the real named `c`: an open maps to
/// ℝ when it contains `c` and diverges otherwise.
pub fn constant_preimage_code(c: &ProgramCode) -> ProgramCode {
    machine::constant_preimage(&smn_wrapper(&machine::MEMBER), c)
}

/// `q ↦ q + 1` on rational codes.
pub fn rational_successor_code() -> ProgramCode {
    machine::RATIONAL_SUCCESSOR.clone()
}

/// `O ↦ N` with every real within `2^-N` of `x` inside `O`. With a sequence
/// satisfying `|u_n - x| ≤ 2^-n`, this is a norm.
pub fn norm_code(x: &ProgramCode) -> ProgramCode {
    kernel::smn(&machine::NORM_FAST, x.nat())
}

/// Normed witness for a sequence of real names `u_n` with `|u_n - x| ≤ 2^-n`.
pub fn normed_witness(seq: &ProgramCode, x: &ProgramCode) -> NormedWitness {
    NormedWitness { seq_code: seq.clone(), norm_code: norm_code(x), point: x.nat().clone() }
}

/// A closed ball `[center - radius, center + radius]` with a co-semi-decider.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallBasisElement {
    pub center: Nat,
    pub radius: Nat,
    pub cosd: CoSemiDeciderName,
}

impl BallBasisElement {
    pub fn center_value(&self) -> BigRational {
        cq_decode(&self.center)
    }

    pub fn radius_value(&self) -> BigRational {
        cq_decode(&self.radius)
    }

    /// The ball's own β-name, `⟨center, radius⟩`.
    pub fn name(&self) -> Nat {
        pair(&self.center, &self.radius)
    }
}

/// `β ↦` co-semi-decider of the closed ball named `β = ⟨center, radius⟩`.
pub fn ball_complement_code() -> ProgramCode {
    smn_wrapper(&machine::BALL_COMPLEMENT)
}

/// Basis of closed balls at `x`: refinement takes `⟨x, nb⟩`.
pub fn basis_at(x: &ProgramCode) -> BasisDescriptor {
    BasisDescriptor {
        refine_code: machine::CLOSED_BALL.clone(),
        cosd_code: Some(ball_complement_code()),
        point: Some(x.nat().clone()),
    }
}

/// Finds a closed ball around `x` inside one enumerated interval of `nb`.
/// The center is an approximation `q_m` of `x` and the radius `2^-(m-1)`,
/// so the ball holds every real within `2^-m` of `x`.
pub fn closed_ball_basis(x: &ProgramCode, nb: &ProgramCode, fuel: Fuel) -> Result<BallBasisElement, RealsError> {
    let v = halted(kernel::run(&machine::CLOSED_BALL, &pair(x.nat(), nb.nat()), fuel))?;
    let (center, radius) = unpair(&v);
    let cosd = kernel::smn(&machine::BALL_COMPLEMENT, &v);
    Ok(BallBasisElement { center, radius, cosd: CoSemiDeciderName::new(cosd, "reals") })
}

/// Searches rational points inside the intervals of `o` for one accepted by `a`.
pub fn dense_search(a: &ProgramCode, o: &ProgramCode, fuel: Fuel) -> Outcome {
    kernel::run(&machine::DENSE_SEARCH, &pair(a.nat(), o.nat()), fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{member, nu_to_taustar, open_intersect, open_sequence, open_union, sober_apply};

    const FUEL: Fuel = Fuel(10_000_000);

    fn r(p: i64, q: i64) -> BigRational {
        rational(p, q)
    }

    fn open(list: &[(i64, i64, i64, i64)]) -> ProgramCode {
        interval_open(&list.iter().map(|&(a, b, c, d)| (r(a, b), r(c, d))).collect::<Vec<_>>())
    }

    #[test]
    fn constant_names() {
        let z = real_from_rational(&r(0, 1));
        for n in 0..=30 {
            assert_eq!(approx_rational(&z, n, Fuel(10)).unwrap(), r(0, 1));
        }
        let third = real_from_rational(&r(1, 3));
        assert!(cauchy_violations(&third, 20, Fuel(10)).unwrap().is_empty());
        assert_eq!(approx(&third, 3, Fuel(0)), Outcome::OutOfFuel { steps: 0 });
    }

    #[test]
    fn sqrt2_digits() {
        let s = sqrt2();
        for n in 0..=20u64 {
            let q = approx_rational(&s, n, FUEL).unwrap();
            // q ≤ √2 < q + 2^-(n+1)
            assert!(&q * &q <= r(2, 1));
            let up = &q + pow2_neg(n + 1);
            assert!(&up * &up > r(2, 1), "n={n}");
        }
        let q = approx_rational(&s, 10, FUEL).unwrap();
        assert!((&q * &q - r(2, 1)).abs() < pow2_neg(8) * r(6, 1));
        assert!(cauchy_violations(&s, 20, FUEL).unwrap().is_empty());
    }

    #[test]
    fn interval_parsing() {
        let v = parse_intervals("(0/1,1/1);(-1/2, 3)").unwrap();
        assert_eq!(v, vec![(r(0, 1), r(1, 1)), (r(-1, 2), r(3, 1))]);
        assert!(parse_intervals("(0,1").is_err());
        assert!(parse_intervals("").unwrap().is_empty());
        assert_eq!(RealSpec::parse("rat:1/3").unwrap(), RealSpec::Rational(r(1, 3)));
        assert!(RealSpec::parse("pi").is_err());
    }

    #[test]
    fn membership() {
        let half = real_from_rational(&r(1, 2));
        let unit = open(&[(0, 1, 1, 1)]);
        assert!(member_real(&half, &unit, FUEL).is_halted());
        let two = real_from_rational(&r(2, 1));
        assert!(!member_real(&two, &unit, Fuel(1_000_000)).is_halted());
        let z = real_from_rational(&r(0, 1));
        assert!(!member_real(&z, &kernel::programs::diverge(), Fuel(1_000_000)).is_halted());
        assert!(member_real(&sqrt2(), &open(&[(7, 5, 3, 2)]), FUEL).is_halted());
        assert!(member_real(&two, &machine::FULL, FUEL).is_halted());
    }

    #[test]
    fn space_union_and_intersection() {
        let sp = real_space();
        let u = open_union(&sp, &open_sequence(&[open(&[(0, 1, 1, 1)]).0, open(&[(1, 1, 2, 1)]).0])).unwrap();
        assert!(member(&sp, real_from_rational(&r(3, 2)).nat(), &u, FUEL).is_halted());
        assert!(!member(&sp, real_from_rational(&r(1, 1)).nat(), &u, Fuel(1_000_000)).is_halted());
        let i = open_intersect(&sp, &open(&[(0, 1, 2, 1)]).0, &open(&[(1, 1, 3, 1)]).0).unwrap();
        assert!(member(&sp, real_from_rational(&r(3, 2)).nat(), &i, FUEL).is_halted());
        assert!(!member(&sp, real_from_rational(&r(1, 2)).nat(), &i, Fuel(1_000_000)).is_halted());
        let f = open_intersect(&sp, &sp.full_name, &open(&[(0, 1, 1, 1)]).0).unwrap();
        assert!(member(&sp, real_from_rational(&r(1, 2)).nat(), &f, FUEL).is_halted());
    }

    #[test]
    fn limits() {
        let cases = [
            (sequences::pow2_neg(), r(0, 1)),
            (sequences::one_minus_pow2_neg(), r(1, 1)),
            (sequences::neg_pow2_neg(), r(0, 1)),
            (sequences::constant(&r(1, 3)), r(1, 3)),
        ];
        for (seq, l) in cases {
            let x = limit_fast(&seq);
            for n in [0u64, 5, 20] {
                let q = approx_rational(&x, n, FUEL).unwrap();
                assert!((q - &l).abs() < pow2_neg(n));
            }
        }
        let x = limit_with_modulus(&sequences::reciprocal(), &sequences::pow2_modulus());
        assert!(approx_rational(&x, 10, FUEL).unwrap().abs() < pow2_neg(10));
        // the identity modulus is wrong for 1/(n+1): the limit name's
        // approximations stop being Cauchy-consistent
        let bad = limit_with_modulus(&sequences::reciprocal(), &kernel::programs::identity());
        assert!(!cauchy_violations(&bad, 20, FUEL).unwrap().is_empty());
    }

    #[test]
    fn sober_recovery() {
        let sp = real_space();
        for (x, n) in [(real_from_rational(&r(0, 1)), 5), (real_from_rational(&r(1, 3)), 6), (sqrt2(), 4)] {
            let t = nu_to_taustar(&sp, x.nat());
            let q = cq_decode(&sober_recover_real(&t.code, n, FUEL).into_value().unwrap());
            let exact = approx_rational(&x, n + 30, FUEL).unwrap();
            assert!((q - exact).abs() < pow2_neg(n));
        }
    }

    #[test]
    fn sober_maps() {
        let sp = real_space();
        let z = real_from_rational(&r(0, 1));
        let fx = sober_apply(&shift_preimage_code(), &recovery_code(), &sp, z.nat(), FUEL).into_value().unwrap();
        let q = approx_rational(&ProgramCode(fx), 4, FUEL).unwrap();
        assert!((q - r(1, 1)).abs() < pow2_neg(4));
        let c = constant_preimage_code(&real_from_rational(&r(0, 1)));
        let third = real_from_rational(&r(1, 3));
        let fx = sober_apply(&c, &recovery_code(), &sp, third.nat(), FUEL).into_value().unwrap();
        assert!(approx_rational(&ProgramCode(fx), 3, FUEL).unwrap().abs() < pow2_neg(3));
    }

    #[test]
    fn rational_successor() {
        let v = kernel::run(&rational_successor_code(), &cq_encode(&r(-3, 4)), FUEL).into_value().unwrap();
        assert_eq!(cq_decode(&v), r(1, 4));
    }

    #[test]
    fn closed_balls() {
        let half = real_from_rational(&r(1, 2));
        let unit = open(&[(0, 1, 1, 1)]);
        let ball = closed_ball_basis(&half, &unit, FUEL).unwrap();
        let (c, rad) = (ball.center_value(), ball.radius_value());
        assert!(rad.is_positive());
        assert!(&c - &rad > r(0, 1) && &c + &rad < r(1, 1));
        assert!((&c - r(1, 2)).abs() <= rad);
        assert!(ball.cosd.refutes(real_from_rational(&r(2, 1)).nat(), FUEL).is_halted());
        assert!(!ball.cosd.refutes(&const_code(&ball.center).0, Fuel(1_000_000)).is_halted());
        let via_basis = kernel::run(&ball_complement_code(), &ball.name(), FUEL).into_value().unwrap();
        assert_eq!(via_basis, ball.cosd.code.0);
    }

    #[test]
    fn dense() {
        let all = kernel::programs::identity();
        let v = dense_search(&all, &open(&[(0, 1, 1, 1)]), FUEL).into_value().unwrap();
        let q = approx_rational(&ProgramCode(v), 0, Fuel(10)).unwrap();
        assert!(q > r(0, 1) && q < r(1, 1));
        let in02 = kernel::run(&real_space().malcev, &open(&[(0, 1, 2, 1)]).0, FUEL).into_value().unwrap();
        let v = dense_search(&ProgramCode(in02), &open(&[(1, 1, 3, 1)]), FUEL).into_value().unwrap();
        let q = approx_rational(&ProgramCode(v), 0, Fuel(10)).unwrap();
        assert!(q > r(1, 1) && q < r(2, 1));
    }
}
