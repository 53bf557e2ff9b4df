//! Acceptance gate: twelve criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use efftop::kernel::{self, pair, pair_u64, programs, unpair, Fuel, Instruction, Outcome, ProgramCode};
use efftop::nplus;
use efftop::reals::{self, approx_rational, interval_open, pow2_neg, rational, sequences};
use efftop::topology::{self, DiscontinuityRecord, FiniteSpace, Witness};
use efftop::Nat;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Verdict = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn r(p: i64, q: i64) -> BigRational {
    rational(p, q)
}

fn halted(o: Outcome, what: &str) -> Result<Nat, String> {
    match o {
        Outcome::Halted { value, .. } => Ok(value),
        Outcome::OutOfFuel { steps } => Err(format!("{what}: out of fuel after {steps} steps")),
    }
}

fn approx(x: &ProgramCode, n: u64, fuel: Fuel) -> Result<BigRational, String> {
    approx_rational(x, n, fuel).map_err(|e| e.to_string())
}

// q lies strictly within 2^-n of √2
fn near_sqrt2(q: &BigRational, n: u64) -> bool {
    let (lo, hi) = (q - pow2_neg(n), q + pow2_neg(n));
    let two = r(2, 1);
    (lo.is_negative() || &lo * &lo < two) && &hi * &hi > two
}

/// A real for the fixture tables: its name and an oracle for
/// `|q - x| < 2^-n`.
struct FixtureReal {
    label: &'static str,
    name: ProgramCode,
    exact: Option<BigRational>,
}

impl FixtureReal {
    fn rational(label: &'static str, q: BigRational) -> Self {
        FixtureReal { label, name: reals::real_from_rational(&q), exact: Some(q) }
    }

    fn within(&self, q: &BigRational, n: u64) -> bool {
        match &self.exact {
            Some(x) => (q - x).abs() < pow2_neg(n),
            None => near_sqrt2(q, n),
        }
    }
}

// -- 1 ------------------------------------------------------------------

fn kernel_laws() -> Verdict {
    let mut seen = BTreeSet::new();
    for n in 0..=200u64 {
        for m in 0..=200u64 {
            let k = pair_u64(n, m);
            let s = n + m;
            ensure!(k == Nat::from(s * (s + 1) / 2 + m), "pair({n},{m}) off the Cantor formula");
            ensure!(unpair(&k) == (Nat::from(n), Nat::from(m)), "unpair(pair({n},{m}))");
            seen.insert(k);
        }
    }
    ensure!(seen.len() == 201 * 201, "pair is not injective on [0,200]²");
    for k in 0..=40_000u64 {
        let (a, b) = unpair(&Nat::from(k));
        ensure!(pair(&a, &b) == Nat::from(k), "pair(unpair({k})) != {k}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let named = [
        programs::identity(),
        programs::successor(),
        programs::pair_left(),
        programs::pair_right(),
        programs::evens_acceptor(),
        programs::odds_acceptor(),
        programs::padded_halter(9),
        programs::syntactic_loop(3),
        programs::constant(&Nat::from(42u64)),
        reals::sqrt2(),
    ];
    let sample = |rng: &mut ChaCha8Rng| -> ProgramCode {
        if rng.gen_bool(0.5) {
            named[rng.gen_range(0..named.len())].clone()
        } else {
            ProgramCode(Nat::from(rng.gen_range(0..1_000_000u64)))
        }
    };
    for _ in 0..200 {
        let p = sample(&mut rng);
        let n = Nat::from(rng.gen_range(0..50u64));
        let f = rng.gen_range(0..400u64);
        let small = kernel::run(&p, &n, Fuel(f));
        let big = kernel::run(&p, &n, Fuel(f + rng.gen_range(1..10_000u64)));
        match (&small, &big) {
            (Outcome::Halted { .. }, _) => ensure!(small == big, "fuel monotonicity broke for {p:?} on {n}"),
            (Outcome::OutOfFuel { steps }, _) => ensure!(*steps == f, "out of fuel before spending it"),
        }
    }
    let fuel = Fuel(200_000);
    for _ in 0..100 {
        let p = sample(&mut rng);
        let q = sample(&mut rng);
        let a = Nat::from(rng.gen_range(0..1000u64));
        let x = Nat::from(rng.gen_range(0..1000u64));
        let direct = kernel::run(&p, &pair(&a, &x), fuel).into_value();
        let via_smn = kernel::run(&kernel::smn(&p, &a), &x, Fuel(fuel.0 + kernel::SMN_OVERHEAD)).into_value();
        ensure!(direct == via_smn, "smn disagrees for p={} a={a} x={x}", p.nat());
        let inner = kernel::run(&q, &x, fuel).into_value();
        let expect = inner.and_then(|v| kernel::run(&p, &v, fuel).into_value());
        let composed = kernel::run(&kernel::compose(&p, &q), &x, Fuel(2 * fuel.0 + 100)).into_value();
        ensure!(expect.is_none() || expect == composed, "compose disagrees for p={} q={} x={x}", p.nat(), q.nat());
    }
    Ok("pairing on [0,200]² and [0,40000], 200 fuel samples, 100 smn/compose samples".into())
}

// -- 2 ------------------------------------------------------------------

fn fixture_reals() -> Vec<FixtureReal> {
    let fam = nplus::diagonal_family(&sequences::pow2_neg());
    let w = |p: &ProgramCode| ProgramCode(fam.w_name(p, Fuel(1_000_000)).into_value().expect("w_code is total"));
    vec![
        FixtureReal::rational("0", r(0, 1)),
        FixtureReal::rational("1/3", r(1, 3)),
        FixtureReal::rational("-5/7", r(-5, 7)),
        FixtureReal { label: "sqrt2", name: reals::sqrt2(), exact: None },
        FixtureReal { label: "lim 1-2^-n", name: reals::limit_fast(&sequences::one_minus_pow2_neg()), exact: Some(r(1, 1)) },
        FixtureReal { label: "lim 2^-n", name: reals::limit_fast(&sequences::pow2_neg()), exact: Some(r(0, 1)) },
        FixtureReal {
            label: "lim 1/(n+1)",
            name: reals::limit_with_modulus(&sequences::reciprocal(), &sequences::pow2_modulus()),
            exact: Some(r(0, 1)),
        },
        FixtureReal { label: "w(halt@7)", name: w(&programs::padded_halter(7)), exact: Some(pow2_neg(7)) },
        FixtureReal { label: "w(loop)", name: w(&programs::syntactic_loop(0)), exact: Some(r(0, 1)) },
    ]
}

fn cauchy_contract() -> Verdict {
    let reals_ = fixture_reals();
    let bad: Vec<String> = reals_
        .par_iter()
        .filter_map(|x| match reals::cauchy_violations(&x.name, 20, Fuel(10_000_000)) {
            Ok(v) if v.is_empty() => None,
            Ok(v) => Some(format!("{}: {} violating pairs", x.label, v.len())),
            Err(e) => Some(format!("{}: {e}", x.label)),
        })
        .collect();
    ensure!(bad.is_empty(), "{}", bad.join("; "));
    Ok(format!("{} fixture reals consistent for n, m ≤ 20", reals_.len()))
}

// -- 3 ------------------------------------------------------------------

fn limit_passage() -> Verdict {
    let cases: Vec<(&str, ProgramCode, Option<BigRational>)> = vec![
        ("2^-n", sequences::pow2_neg(), Some(r(0, 1))),
        ("1-2^-n", sequences::one_minus_pow2_neg(), Some(r(1, 1))),
        ("-2^-n", sequences::neg_pow2_neg(), Some(r(0, 1))),
        ("const 1/3", sequences::constant(&r(1, 3)), Some(r(1, 3))),
        ("sqrt2 digits", sequences::sqrt2_truncations(), None),
    ];
    for (label, seq, limit) in cases {
        let fx = FixtureReal { label: "", name: reals::limit_fast(&seq), exact: limit };
        for n in 0..=20 {
            let q = approx(&fx.name, n, Fuel(10_000_000))?;
            ensure!(fx.within(&q, n), "{label}: approx at {n} is {q}");
        }
    }
    Ok("5 sequences, |approx(limit, n) - L| < 2^-n for n ≤ 20".into())
}

// -- 4 and 5 ------------------------------------------------------------

fn diagonal_rows() -> Result<Vec<nplus::DiagRow>, String> {
    let fam = nplus::diagonal_family(&sequences::pow2_neg());
    nplus::diagonal_table(&fam, &BigRational::zero(), &nplus::probe_machines(), 20, Fuel(10_000_000))
        .map_err(|e| e.to_string())
}

fn diagonalization() -> Verdict {
    let machines = nplus::probe_machines();
    let mut halters = 0;
    for m in &machines {
        // ground truth comes from running or reading the program
        let k = kernel::halts_within(&m.code, m.code.nat(), Fuel(1_000));
        match nplus::syntactic_status(&m.code) {
            Some(kernel::HaltingAnnotation::Halts(s)) => {
                ensure!(k == Some(s), "analysis and halts_within disagree on {}", m.code.nat());
                ensure!(s <= 50, "probe halts after {s} > 50 steps");
                halters += 1;
            }
            Some(kernel::HaltingAnnotation::Loops) => ensure!(k.is_none(), "a syntactic loop halted"),
            None => return Err(format!("probe {} has no syntactic status", m.code.nat())),
        }
    }
    ensure!(halters == 10 && machines.len() == 20, "expected 10 halters among 20 probes");
    let rows = diagonal_rows()?;
    let fam = nplus::diagonal_family(&sequences::pow2_neg());
    let mut correct = 0;
    for (row, m) in rows.iter().zip(&machines) {
        let got = approx(&ProgramCode(halted(fam.w_name(&m.code, Fuel(1_000_000)), "w_code")?), 20, Fuel(10_000_000))?;
        let target = match row.halts_known {
            Some(k) => pow2_neg(k),
            None => BigRational::zero(),
        };
        if (got - target).abs() < pow2_neg(20) && row.ok {
            correct += 1;
        }
    }
    ensure!(correct == 20, "{correct}/20 correct");
    Ok("20/20 probes: halters at 2^-k, loops at 0, within 2^-20".into())
}

fn uniform_markov() -> Verdict {
    let fam = nplus::diagonal_family(&sequences::pow2_neg());
    let again = nplus::diagonal_family(&sequences::pow2_neg());
    ensure!(fam.w_code == again.w_code, "w_code is not a fixed program");
    let prog = fam.w_code.decode();
    let listing = kernel::text::disassemble(&prog);
    ensure!(kernel::text::assemble(&listing).map(|p| p.encode()) == Ok(fam.w_code.clone()), "disassembly does not round-trip");
    let machines = nplus::probe_machines();
    // no probe code is baked into the program; codes under 2^32 coincide with ordinary constants
    let large: Vec<&Nat> = machines.iter().map(|m| m.code.nat()).filter(|c| c.bits() > 32).collect();
    ensure!(large.len() >= 8, "only {} probes have codes above 2^32", large.len());
    for inst in &prog.instructions {
        if let Instruction::Const { v, .. } = inst {
            ensure!(large.iter().all(|c| *c != v), "w_code embeds probe {v}");
        }
    }
    // every row's w-name is exactly w_code run on p
    for m in &machines {
        let direct = kernel::run(&fam.w_code, m.code.nat(), Fuel(1_000_000)).into_value();
        ensure!(direct == fam.w_name(&m.code, Fuel(1_000_000)).into_value(), "w_name bypasses w_code");
        ensure!(direct.is_some(), "w_code diverged on {}", m.code.nat());
    }
    Ok(format!("one code of {} instructions ({} bits) serves all 20 probes", prog.len(), fam.w_code.nat().bits()))
}

// -- 6 ------------------------------------------------------------------

fn nplus_round_trip() -> Verdict {
    let sp = reals::real_space();
    let mut checked = 0;
    for (label, w, x) in nplus::real_normed_witnesses() {
        let map = nplus::map_from_normed(&w, &sp);
        for (lo, hi) in [(-1i64, 1i64), (-1, 2), (-3, 4), (-1, 5)] {
            let (a, b) = (&x + r(lo, 8), &x + r(hi, 8));
            let o = interval_open(&[(a.clone(), b.clone())]);
            let n = halted(nplus::norm_from_map(&map, o.nat(), Fuel(10_000_000)), "norm_from_map")?
                .to_u64()
                .ok_or("huge norm")?;
            for k in n..=n + 10 {
                let u = ProgramCode(halted(kernel::run(&w.seq_code, &Nat::from(k), Fuel(1_000_000)), "u_n")?);
                // u_n names are constant, so one query gives the exact value
                let v = approx(&u, 0, Fuel(1_000_000))?;
                ensure!(v > a && v < b, "{label}: u_{k} = {v} outside ({a}, {b})");
            }
            let pre = ProgramCode(halted(kernel::run(&map, o.nat(), Fuel(1_000_000)), "preimage")?);
            let inf = nplus::member_nplus(&nplus::infinity_name(), &pre, Fuel(1_000_000));
            ensure!(inf.is_halted(), "{label}: ∞ not confirmed in preimage of ({a}, {b}) within 10^6");
            checked += 1;
        }
    }
    ensure!(checked == 12, "only {checked} cases");
    Ok("3 witnesses x 4 opens: u_n ∈ O on [N', N'+10], ∞ in preimage within 10^6".into())
}

// -- 7 ------------------------------------------------------------------

fn wso() -> Verdict {
    let fuel = Fuel(100_000);
    let inf = nplus::infinity_name();
    let fixtures = nplus::wso_fixtures();
    ensure!(fixtures.len() == 10, "{} fixtures", fixtures.len());
    let mut found = Vec::new();
    for (label, a) in &fixtures {
        ensure!(kernel::run(a, inf.nat(), fuel).is_halted(), "{label} does not contain ∞");
        let hit = nplus::wso_search(a, &inf, fuel).ok_or(format!("{label}: nothing within 10^5"))?;
        ensure!(kernel::run(a, hit.name.nat(), fuel).is_halted(), "{label} rejects its own witness");
        ensure!(
            nplus::nplus_value(&hit.name, hit.n + 5, Fuel(10_000)) == Ok(nplus::NPlusValue::Equals(hit.n)),
            "{label}: witness name does not denote {}",
            hit.n
        );
        found.push(hit.n);
    }
    Ok(format!("10 semi-deciders, points {found:?}"))
}

// -- 8 ------------------------------------------------------------------

fn sobriety() -> Verdict {
    let sp = reals::real_space();
    let fixtures = [
        FixtureReal::rational("0", r(0, 1)),
        FixtureReal::rational("1/3", r(1, 3)),
        FixtureReal::rational("-5/7", r(-5, 7)),
        FixtureReal { label: "sqrt2", name: reals::sqrt2(), exact: None },
        FixtureReal { label: "lim 1-2^-n", name: reals::limit_fast(&sequences::one_minus_pow2_neg()), exact: Some(r(1, 1)) },
    ];
    let worst = fixtures
        .par_iter()
        .map(|x| {
            let t = topology::nu_to_taustar(&sp, x.name.nat());
            let mut worst = 0;
            for n in 0..=10 {
                let out = reals::sober_recover_real(&t.code, n, Fuel(10_000_000));
                worst = worst.max(out.steps());
                let q = reals::cq_decode(&halted(out, &format!("{} at {n}", x.label))?);
                ensure!(x.within(&q, n), "{}: recovered {q} at n = {n}", x.label);
            }
            Ok(worst)
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(format!("5 reals, n ≤ 10, worst query {} steps", worst.iter().max().unwrap_or(&0)))
}

// -- 9 ------------------------------------------------------------------

fn closure_oracle(opens: &[Vec<usize>], a: &BTreeSet<usize>, x: usize) -> bool {
    opens.iter().filter(|o| o.contains(&x)).all(|o| o.iter().any(|p| a.contains(p)))
}

fn finite_spaces() -> Verdict {
    let tops = topology::all_topologies(3);
    ensure!(tops.len() == 29, "{} topologies on 3 points", tops.len());
    let mut recovered = 0;
    for opens in &tops {
        let space = FiniteSpace::new((0..3).map(|i| i.to_string()).collect(), opens.clone()).map_err(|e| e.to_string())?;
        for (i, o) in opens.iter().enumerate() {
            let sd = if o.is_empty() {
                programs::diverge()
            } else {
                kernel::finite_acceptor(&o.iter().map(|&p| Nat::from(p)).collect::<Vec<_>>())
            };
            let got = topology::finite_tau_from_sd(&space, &sd, 12).map_err(|e| e.to_string())?;
            ensure!(space.opens()[got.index] == o.iter().copied().collect(), "open {i} of {opens:?} recovered as {}", got.index);
            recovered += 1;
        }
        let mut oracle = Vec::new();
        for x in 0..3 {
            for mask in 1u32..8 {
                let a: BTreeSet<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
                if !a.contains(&x) && closure_oracle(opens, &a, x) {
                    oracle.push((x, a.into_iter().collect::<Vec<_>>()));
                }
            }
        }
        let got = topology::markov_obstructions(&space);
        ensure!(got == oracle, "obstructions of {opens:?} differ from the closure oracle");
        let discrete = opens.len() == 8;
        ensure!(got.is_empty() == discrete, "{opens:?}: empty obstructions iff discrete fails");
    }
    Ok(format!("29 topologies, {recovered} opens recovered, obstructions empty only for the discrete one"))
}

// -- 10 -----------------------------------------------------------------

fn dense_search() -> Verdict {
    let sp = reals::real_space();
    let iv = |a: (i64, i64), b: (i64, i64)| interval_open(&[(r(a.0, a.1), r(b.0, b.1))]);
    let sd_of = |o: &ProgramCode| -> ProgramCode {
        ProgramCode(kernel::run(&sp.malcev, o.nat(), Fuel(1_000_000)).into_value().expect("malcev is total"))
    };
    let everything = programs::identity();
    let meeting: Vec<(ProgramCode, ProgramCode, ProgramCode)> = vec![
        (everything.clone(), ProgramCode(sp.full_name.clone()), iv((0, 1), (1, 1))),
        (everything.clone(), ProgramCode(sp.full_name.clone()), iv((-3, 1), (-2, 1))),
        (sd_of(&iv((0, 1), (2, 1))), iv((0, 1), (2, 1)), iv((1, 1), (3, 1))),
        (sd_of(&iv((-1, 1), (1, 1))), iv((-1, 1), (1, 1)), iv((0, 1), (5, 1))),
        (sd_of(&iv((1, 3), (1, 2))), iv((1, 3), (1, 2)), iv((0, 1), (1, 1))),
        (sd_of(&iv((-10, 1), (10, 1))), iv((-10, 1), (10, 1)), iv((1, 7), (2, 7))),
        (sd_of(&iv((2, 1), (4, 1))), iv((2, 1), (4, 1)), iv((3, 1), (9, 1))),
        (sd_of(&iv((-1, 2), (1, 2))), iv((-1, 2), (1, 2)), iv((-1, 1), (0, 1))),
        (sd_of(&iv((100, 1), (101, 1))), iv((100, 1), (101, 1)), iv((201, 2), (200, 1))),
        (
            sd_of(&interval_open(&[(r(0, 1), r(1, 1)), (r(5, 1), r(6, 1))])),
            interval_open(&[(r(0, 1), r(1, 1)), (r(5, 1), r(6, 1))]),
            iv((11, 2), (7, 1)),
        ),
    ];
    for (i, (a, a_open, o)) in meeting.iter().enumerate() {
        let v = ProgramCode(halted(reals::dense_search(a, o, Fuel(10_000_000)), &format!("pair {i}"))?);
        ensure!(kernel::run(a, v.nat(), Fuel(1_000_000)).is_halted(), "pair {i}: A rejects the result");
        ensure!(reals::member_real(&v, o, Fuel(10_000_000)).is_halted(), "pair {i}: result outside O");
        ensure!(reals::member_real(&v, a_open, Fuel(10_000_000)).is_halted(), "pair {i}: result outside A's open");
    }
    let disjoint = [
        (iv((0, 1), (1, 1)), iv((2, 1), (3, 1))),
        (iv((-5, 1), (-4, 1)), iv((4, 1), (5, 1))),
        (iv((0, 1), (1, 2)), iv((1, 2), (1, 1))),
    ];
    for (i, (a, o)) in disjoint.iter().enumerate() {
        let out = reals::dense_search(&sd_of(a), o, Fuel(1_000_000));
        ensure!(!out.is_halted(), "disjoint pair {i} produced a point");
    }
    Ok("10 meeting pairs re-verified in A and O, 3 disjoint pairs exhaust 10^6".into())
}

// -- 11 -----------------------------------------------------------------

fn closed_balls() -> Verdict {
    let iv = |v: &[(BigRational, BigRational)]| (interval_open(v), v.to_vec());
    let cases: Vec<(FixtureReal, (ProgramCode, Vec<(BigRational, BigRational)>), [BigRational; 3])> = vec![
        (FixtureReal::rational("1/2", r(1, 2)), iv(&[(r(0, 1), r(1, 1))]), [r(2, 1), r(-1, 1), r(1, 1)]),
        (FixtureReal::rational("0", r(0, 1)), iv(&[(r(-1, 1), r(1, 1))]), [r(1, 1), r(-1, 1), r(7, 1)]),
        (
            FixtureReal { label: "sqrt2", name: reals::sqrt2(), exact: None },
            iv(&[(r(7, 5), r(3, 2))]),
            [r(3, 2), r(0, 1), r(-3, 1)],
        ),
        (FixtureReal::rational("1/3", r(1, 3)), iv(&[(r(2, 1), r(3, 1)), (r(0, 1), r(1, 2))]), [r(1, 2), r(0, 1), r(5, 2)]),
        (FixtureReal::rational("-5/7", r(-5, 7)), iv(&[(r(-1, 1), r(0, 1))]), [r(0, 1), r(-1, 1), r(9, 1)]),
    ];
    for (x, (o, intervals), outside) in &cases {
        let ball = reals::closed_ball_basis(&x.name, o, Fuel(10_000_000)).map_err(|e| e.to_string())?;
        let (c, rad) = (ball.center_value(), ball.radius_value());
        ensure!(rad.is_positive(), "{}: radius {rad}", x.label);
        let inside = intervals.iter().any(|(a, b)| a < &(&c - &rad) && &(&c + &rad) < b);
        ensure!(inside, "{}: [{c} ± {rad}] not inside an interval of O", x.label);
        // x is in the ball when some approximation sits deep enough inside
        let contains = (0..40).any(|m| {
            approx(&x.name, m, Fuel(10_000_000)).map(|q| (&q - &c).abs() + pow2_neg(m) <= rad).unwrap_or(false)
        });
        ensure!(contains, "{}: ball misses x", x.label);
        for y in outside {
            ensure!((y - &c).abs() > rad, "{}: fixture {y} is not outside", x.label);
            let name = reals::real_from_rational(y);
            ensure!(ball.cosd.refutes(name.nat(), Fuel(10_000_000)).is_halted(), "{}: {y} not refuted", x.label);
        }
        let center = reals::real_from_rational(&c);
        ensure!(!ball.cosd.refutes(center.nat(), Fuel(1_000_000)).is_halted(), "{}: center refuted", x.label);
    }
    Ok("5 balls contain x inside an interval of O; 15 outside points refuted, centers exhaust 10^6".into())
}

// -- 12 -----------------------------------------------------------------

fn refuter_demo() -> Verdict {
    let sp = reals::real_space();
    let (_, w, _) = nplus::real_normed_witnesses().remove(0);
    // δ₀(0) = 1 lies in (1/2, 3/2); δ₀(2^-n) = 0 does not
    let rec = DiscontinuityRecord {
        x_name: w.point.clone(),
        o2_name: interval_open(&[(r(1, 2), r(3, 2))]).0,
        witness: Witness::Normed(w),
    };
    let sd = nplus::refuter(&nplus::delta0_candidate(), &rec, &sp).map_err(|e| e.to_string())?;
    let fam = nplus::diagonal_family(&sequences::pow2_neg());
    let rows = nplus::refuter_probe(&sd, &fam, &nplus::probe_machines(), Fuel(10_000_000));
    let caught: Vec<u64> = rows.iter().filter(|r| r.contradiction).filter_map(|r| r.halts_known).collect();
    ensure!(rows.iter().any(|r| r.contradiction), "no contradiction among 20 probes");
    Ok(format!("candidate caught on {} probes (halting times {caught:?})", rows.iter().filter(|r| r.contradiction).count()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("kernel laws", kernel_laws),
        ("cauchy contract", cauchy_contract),
        ("limit passage", limit_passage),
        ("diagonalization", diagonalization),
        ("uniform markov reduction", uniform_markov),
        ("nplus round trip", nplus_round_trip),
        ("wso", wso),
        ("sobriety of the reals", sobriety),
        ("finite spaces", finite_spaces),
        ("dense search", dense_search),
        ("closed-ball bases", closed_balls),
        ("refuter demo", refuter_demo),
    ];
    let results: Vec<(Verdict, f64)> = criteria
        .par_iter()
        .map(|(_, f)| {
            let t = Instant::now();
            let v = f();
            (v, t.elapsed().as_secs_f64())
        })
        .collect();
    let mut failed = 0;
    for (i, ((name, _), (v, secs))) in criteria.iter().zip(&results).enumerate() {
        match v {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
