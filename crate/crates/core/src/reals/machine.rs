// Machine programs over rational codes. Inside a program a rational is held
// as three registers (p, n, d) standing for (p - n)/d with d ≥ 1.

use std::sync::LazyLock;

use crate::kernel::routines::{self, bounded, bounded_value, emit_const_program, Word};
use crate::kernel::{Builder, Instruction, Label, ProgramCode, Reg};
use crate::nat::Nat;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Rat {
    pub p: Reg,
    pub n: Reg,
    pub d: Reg,
}

impl Rat {
    pub fn alloc(b: &mut Builder) -> Rat {
        Rat { p: b.reg(), n: b.reg(), d: b.reg() }
    }
}

/// `out := c_Q(src)`.
pub(crate) fn decode_cq(b: &mut Builder, out: Rat, src: Reg) {
    let (a, bc, par) = (b.reg(), b.reg(), b.reg());
    let even = b.label();
    b.unl(a, src);
    b.unr(bc, src);
    b.unl(out.p, bc);
    b.unr(out.d, bc);
    b.inc(out.d);
    routines::parity(b, par, a);
    b.konst(out.n, 0u64);
    b.jz(par, even);
    b.copy(out.n, out.p);
    b.konst(out.p, 0u64);
    b.bind(even);
}

/// `p, n := p ∸ n, n ∸ p`.
pub(crate) fn normalize(b: &mut Builder, p: Reg, n: Reg) {
    let (t, u) = (b.reg(), b.reg());
    b.monus(t, p, n);
    b.monus(u, n, p);
    b.copy(p, t);
    b.copy(n, u);
}

/// `dst := ⟨sign, ⟨|p - n|, c⟩⟩`, the code of `(p - n)/(c + 1)`.
/// Clobbers `p` and `n`.
pub(crate) fn encode_signed(b: &mut Builder, dst: Reg, p: Reg, n: Reg, c: Reg) {
    let (a, mag) = (b.reg(), b.reg());
    let pos = b.label();
    normalize(b, p, n);
    b.konst(a, 0u64);
    b.jz(n, pos);
    b.konst(a, 1u64);
    b.bind(pos);
    b.add(mag, p, n);
    b.pair(mag, mag, c);
    b.pair(dst, a, mag);
}

/// `dst := code of q`, with denominator `q.d`. Clobbers `q.p`, `q.n`.
pub(crate) fn encode_rat(b: &mut Builder, dst: Reg, q: Rat) {
    let c = b.reg();
    b.copy(c, q.d);
    b.dec(c);
    encode_signed(b, dst, q.p, q.n, c);
}

/// `out := q - w/e` when `plus` is false, `q + w/e` otherwise.
fn widen(b: &mut Builder, out: Rat, q: Rat, e: Reg, w: Reg, plus: bool) {
    let t = b.reg();
    b.mul(out.p, q.p, e);
    b.mul(out.n, q.n, e);
    b.mul(out.d, q.d, e);
    b.mul(t, q.d, w);
    if plus {
        b.add(out.p, out.p, t);
    } else {
        b.add(out.n, out.n, t);
    }
}

/// Jumps to `l` when `x < y`.
pub(crate) fn jlt_rat(b: &mut Builder, x: Rat, y: Rat, l: Label) {
    let (lhs, rhs, t) = (b.reg(), b.reg(), b.reg());
    b.mul(lhs, x.p, y.d);
    b.mul(t, y.n, x.d);
    b.add(lhs, lhs, t);
    b.mul(rhs, y.p, x.d);
    b.mul(t, x.n, y.d);
    b.add(rhs, rhs, t);
    b.jlt(lhs, rhs, l);
}

/// `out := x + y`.
fn add_rat(b: &mut Builder, out: Rat, x: Rat, y: Rat) {
    let t = b.reg();
    b.mul(out.p, x.p, y.d);
    b.mul(t, y.p, x.d);
    b.add(out.p, out.p, t);
    b.mul(out.n, x.n, y.d);
    b.mul(t, y.n, x.d);
    b.add(out.n, out.n, t);
    b.mul(out.d, x.d, y.d);
}

fn neg_rat(q: Rat) -> Rat {
    Rat { p: q.n, n: q.p, d: q.d }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SearchMode {
    // halt with 0 once [q_n ± 2^-n] sits in an interval
    Member,
    // halt with ⟨q_n, 2^-(n-1)⟩ once [q_n ± 2^-(n-1)] sits in an interval
    Ball,
    // halt with n once [q_n ± 2^-(n-1)] sits in an interval
    Norm,
}

// Dovetails precisions n of the real name `x` against the intervals
// enumerated by `o`: round r runs n ≤ r and k ≤ r with budget 2^r each.
fn interval_search(b: &mut Builder, o: Reg, x: Reg, mode: SearchMode) {
    let (r, n, k, budget, e, w, res, qc, iv, lc, hc) =
        (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (q, lower, upper, lo, hi) = (Rat::alloc(b), Rat::alloc(b), Rat::alloc(b), Rat::alloc(b), Rat::alloc(b));
    let (round, n_loop, n_next, k_loop, k_next, r_next, found) =
        (b.label(), b.label(), b.label(), b.label(), b.label(), b.label(), b.label());
    b.konst(w, if mode == SearchMode::Member { 1u64 } else { 2u64 });
    b.konst(r, 0u64);
    b.konst(budget, 1u64);
    b.bind(round);
    b.konst(n, 0u64);
    b.konst(e, 1u64);
    b.bind(n_loop);
    b.jlt(r, n, r_next);
    bounded(b, res, x, n, budget);
    bounded_value(b, qc, res, n_next);
    decode_cq(b, q, qc);
    widen(b, lower, q, e, w, false);
    widen(b, upper, q, e, w, true);
    b.konst(k, 0u64);
    b.bind(k_loop);
    b.jlt(r, k, n_next);
    bounded(b, res, o, k, budget);
    bounded_value(b, iv, res, k_next);
    b.unl(lc, iv);
    b.unr(hc, iv);
    decode_cq(b, lo, lc);
    let miss = k_next;
    let ok_lo = b.label();
    jlt_rat(b, lo, lower, ok_lo);
    b.jmp(miss);
    b.bind(ok_lo);
    decode_cq(b, hi, hc);
    jlt_rat(b, upper, hi, found);
    b.bind(k_next);
    b.inc(k);
    b.jmp(k_loop);
    b.bind(n_next);
    b.inc(n);
    b.add(e, e, e);
    b.jmp(n_loop);
    b.bind(r_next);
    b.inc(r);
    b.add(budget, budget, budget);
    b.add(budget, budget, budget);
    b.jmp(round);
    b.bind(found);
    match mode {
        SearchMode::Member => {
            b.konst(Reg::IO, 0u64);
            b.halt();
        }
        SearchMode::Ball => {
            // radius 2/e, as the code ⟨0, ⟨2, e - 1⟩⟩
            let (rad, t, z) = (b.reg(), b.reg(), b.reg());
            b.copy(t, e);
            b.dec(t);
            b.pair(t, w, t);
            b.konst(z, 0u64);
            b.pair(rad, z, t);
            b.pair(Reg::IO, qc, rad);
            b.halt();
        }
        SearchMode::Norm => b.halt_with(n),
    }
}

fn search_program(order_xo: bool, mode: SearchMode) -> ProgramCode {
    let mut b = Builder::new();
    let (o, x) = (b.reg(), b.reg());
    if order_xo {
        b.unl(x, Reg::IO);
        b.unr(o, Reg::IO);
    } else {
        b.unl(o, Reg::IO);
        b.unr(x, Reg::IO);
    }
    interval_search(&mut b, o, x, mode);
    b.code()
}

/// `⟨o, x⟩`: halts iff the real named by `x` lies in the open named by `o`.
pub(crate) static MEMBER: LazyLock<ProgramCode> = LazyLock::new(|| search_program(false, SearchMode::Member));

/// `⟨x, o⟩ ↦ ⟨center, radius⟩`: a closed ball around `x` inside some
/// interval of `o`.
pub(crate) static CLOSED_BALL: LazyLock<ProgramCode> = LazyLock::new(|| search_program(true, SearchMode::Ball));

/// `⟨x, o⟩ ↦ N` such that every real within `2^-N` of `x` lies in `o`.
pub(crate) static NORM_FAST: LazyLock<ProgramCode> = LazyLock::new(|| search_program(true, SearchMode::Norm));

/// `⟨⟨c, ρ⟩, y⟩`: halts iff `|y - c| > ρ`.
pub(crate) static BALL_COMPLEMENT: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (cr, y, cc, rc, r, n, budget, e, one, res, qc) =
        (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (c, rho, lo, hi, q, lower, upper) =
        (Rat::alloc(&mut b), Rat::alloc(&mut b), Rat::alloc(&mut b), Rat::alloc(&mut b), Rat::alloc(&mut b), Rat::alloc(&mut b), Rat::alloc(&mut b));
    let (round, n_loop, n_next, r_next, found) = (b.label(), b.label(), b.label(), b.label(), b.label());
    b.unl(cr, Reg::IO);
    b.unr(y, Reg::IO);
    b.unl(cc, cr);
    b.unr(rc, cr);
    decode_cq(&mut b, c, cc);
    decode_cq(&mut b, rho, rc);
    add_rat(&mut b, lo, c, neg_rat(rho));
    add_rat(&mut b, hi, c, rho);
    b.konst(one, 1u64);
    b.konst(r, 0u64);
    b.konst(budget, 1u64);
    b.bind(round);
    b.konst(n, 0u64);
    b.konst(e, 1u64);
    b.bind(n_loop);
    b.jlt(r, n, r_next);
    bounded(&mut b, res, y, n, budget);
    bounded_value(&mut b, qc, res, n_next);
    decode_cq(&mut b, q, qc);
    widen(&mut b, lower, q, e, one, false);
    widen(&mut b, upper, q, e, one, true);
    jlt_rat(&mut b, upper, lo, found);
    jlt_rat(&mut b, hi, lower, found);
    b.bind(n_next);
    b.inc(n);
    b.add(e, e, e);
    b.jmp(n_loop);
    b.bind(r_next);
    b.inc(r);
    b.add(budget, budget, budget);
    b.add(budget, budget, budget);
    b.jmp(round);
    b.bind(found);
    b.konst(Reg::IO, 0u64);
    b.halt();
    b.code()
});

/// `⟨s, ⟨k, i⟩⟩ ↦ φ_{φ_s(k)}(i)`: enumerates the intervals of every open
/// in the sequence `s`.
pub(crate) static UNION_SEQ: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (s, j, k, i, o) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    b.unl(s, Reg::IO);
    b.unr(j, Reg::IO);
    b.unl(k, j);
    b.unr(i, j);
    b.ueval(o, s, k);
    b.ueval(Reg::IO, o, i);
    b.halt();
    b.code()
});

/// `⟨⟨o1, o2⟩, ⟨k1, k2⟩⟩ ↦` the intersection of interval `k1` of `o1` with
/// interval `k2` of `o2`.
pub(crate) static INTERSECT: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (oo, j, o1, o2, k1, k2, i1, i2) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (l1, h1, l2, h2, lo, hi) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (rl1, rh1, rl2, rh2) = (Rat::alloc(&mut b), Rat::alloc(&mut b), Rat::alloc(&mut b), Rat::alloc(&mut b));
    b.unl(oo, Reg::IO);
    b.unr(j, Reg::IO);
    b.unl(o1, oo);
    b.unr(o2, oo);
    b.unl(k1, j);
    b.unr(k2, j);
    b.ueval(i1, o1, k1);
    b.ueval(i2, o2, k2);
    b.unl(l1, i1);
    b.unr(h1, i1);
    b.unl(l2, i2);
    b.unr(h2, i2);
    decode_cq(&mut b, rl1, l1);
    decode_cq(&mut b, rh1, h1);
    decode_cq(&mut b, rl2, l2);
    decode_cq(&mut b, rh2, h2);
    let (lo_done, take_l2, hi_done, take_h2) = (b.label(), b.label(), b.label(), b.label());
    jlt_rat(&mut b, rl1, rl2, take_l2);
    b.copy(lo, l1);
    b.jmp(lo_done);
    b.bind(take_l2);
    b.copy(lo, l2);
    b.bind(lo_done);
    jlt_rat(&mut b, rh2, rh1, take_h2);
    b.copy(hi, h1);
    b.jmp(hi_done);
    b.bind(take_h2);
    b.copy(hi, h2);
    b.bind(hi_done);
    b.pair(Reg::IO, lo, hi);
    b.halt();
    b.code()
});

// k ↦ ⟨code of -(k+1), code of k+1⟩
fn emit_full_interval(b: &mut Builder, dst: Reg, k: Reg) {
    let (m, z, one, t, lo, hi) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    b.copy(m, k);
    b.inc(m);
    b.konst(z, 0u64);
    b.konst(one, 1u64);
    b.pair(t, m, z);
    b.pair(lo, one, t);
    b.pair(hi, z, t);
    b.pair(dst, lo, hi);
}

/// τ-name of ℝ: the intervals `(-(k+1), k+1)`.
pub(crate) static FULL: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    emit_full_interval(&mut b, Reg::IO, Reg::IO);
    b.halt();
    b.code()
});

/// `m ↦ φ_{φ_seq(m+2)}(m+2)`, with `seq` loaded by the word `seq`.
pub(crate) fn limit_words(seq: Word) -> Vec<Word> {
    let r = |v: u64| Nat::from(v);
    vec![
        Word::Fixed(Instruction::Inc { r: r(0) }),
        Word::Fixed(Instruction::Inc { r: r(0) }),
        seq,
        Word::Fixed(Instruction::Ueval { r: r(1), s: r(1), t: r(0) }),
        Word::Fixed(Instruction::Ueval { r: r(0), s: r(1), t: r(0) }),
        Word::Fixed(Instruction::Halt),
    ]
}

/// `⟨⟨seq, modulus⟩, k⟩ ↦ φ_seq(φ_modulus(k))`.
pub(crate) static SUBSEQ: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (sm, k, seq, md, i) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    b.unl(sm, Reg::IO);
    b.unr(k, Reg::IO);
    b.unl(seq, sm);
    b.unr(md, sm);
    b.ueval(i, md, k);
    b.ueval(Reg::IO, seq, i);
    b.halt();
    b.code()
});

/// `n ↦ ⟨0, ⟨m, 2^(n+1) - 1⟩⟩` with `m = ⌊√2 · 2^(n+1)⌋`, built one binary
/// digit at a time.
pub(crate) static SQRT2: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (end, j, m, t, m2, sq, pw, four, z) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (lp, done, low) = (b.label(), b.label(), b.label());
    b.copy(end, Reg::IO);
    b.inc(end);
    b.konst(j, 0u64);
    b.konst(m, 1u64);
    b.konst(t, 2u64);
    b.konst(pw, 1u64);
    b.konst(four, 4u64);
    b.bind(lp);
    b.jge(j, end, done);
    // invariant: m² ≤ t < (m+1)² with t = 2·4^j, pw = 2^j
    b.mul(t, t, four);
    b.add(pw, pw, pw);
    b.add(m, m, m);
    b.copy(m2, m);
    b.inc(m2);
    b.mul(sq, m2, m2);
    b.jlt(t, sq, low);
    b.copy(m, m2);
    b.bind(low);
    b.inc(j);
    b.jmp(lp);
    b.bind(done);
    b.dec(pw);
    b.pair(pw, m, pw);
    b.konst(z, 0u64);
    b.pair(Reg::IO, z, pw);
    b.halt();
    b.code()
});

/// `n ↦` the constant real name of `2^-n`, i.e. the code of
/// `[CONST 0 ⟨0, ⟨1, 2^n - 1⟩⟩; HALT]`.
pub(crate) static POW2_NEG_SEQ: LazyLock<ProgramCode> = LazyLock::new(|| {
    cq_sequence(|b, n, dst| {
        let (e, one, z, t) = (b.reg(), b.reg(), b.reg(), b.reg());
        routines::pow2(b, e, n);
        b.dec(e);
        b.konst(one, 1u64);
        b.konst(z, 0u64);
        b.pair(t, one, e);
        b.pair(dst, z, t);
    })
});

/// Program `n ↦ const_code(q_n)` where `emit` computes the rational code
/// `q_n` from register `n` into `dst`.
pub(crate) fn cq_sequence(emit: impl FnOnce(&mut Builder, Reg, Reg)) -> ProgramCode {
    let mut b = Builder::new();
    let (q, out) = (b.reg(), b.reg());
    emit(&mut b, Reg::IO, q);
    emit_const_program(&mut b, out, q);
    b.halt_with(out);
    b.code()
}

/// `n ↦ const_code(φ_inner(n))`: turns a program producing rational codes
/// into a sequence of constant real names.
pub(crate) fn const_names_of(inner: &ProgramCode) -> ProgramCode {
    let inner = inner.clone();
    cq_sequence(move |b, n, dst| {
        let p = b.reg();
        b.konst(p, inner.nat().clone());
        b.ueval(dst, p, n);
    })
}

/// `⟨t, n⟩ ↦` a rational code within `2^-n` of the real whose τ*-name is
/// `t`. Finds an integer `z` with `x ∈ (z-1, z+1)`, then refines one bit at
/// a time: at level `m` the candidate windows are `(z'-1, z'+1)/2^m` for
/// `z' ∈ 2z-2 … 2z+2`, each tested by running `t` on the window's τ-name
/// with doubling budgets.
pub(crate) static SOBER_RECOVER: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (t, n, zp, zn, m, d, budget, r, i, h, par) =
        (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (cp, cn, d2) = (b.reg(), b.reg(), b.reg());
    const START_BUDGET: u64 = 64;
    b.unl(t, Reg::IO);
    b.unr(n, Reg::IO);
    b.konst(d, 1u64);

    // integer stage: z runs through 0, -1, 1, -2, 2, …
    let (s0_round, s0_inner, s0_next, s0_found, odd, have_z) =
        (b.label(), b.label(), b.label(), b.label(), b.label(), b.label());
    b.konst(budget, START_BUDGET);
    b.konst(r, 0u64);
    b.bind(s0_round);
    b.konst(i, 0u64);
    b.bind(s0_inner);
    b.jlt(r, i, s0_next);
    routines::halve(&mut b, h, par, i);
    b.jnz(par, odd);
    b.copy(cp, h);
    b.konst(cn, 0u64);
    b.jmp(have_z);
    b.bind(odd);
    b.konst(cp, 0u64);
    b.copy(cn, h);
    b.inc(cn);
    b.bind(have_z);
    window_test(&mut b, t, cp, cn, d, budget, s0_found);
    b.inc(i);
    b.jmp(s0_inner);
    b.bind(s0_next);
    b.inc(r);
    b.add(budget, budget, budget);
    b.jmp(s0_round);
    b.bind(s0_found);
    b.copy(zp, cp);
    b.copy(zn, cn);
    b.konst(m, 0u64);

    // refinement stage
    let (lv_loop, lv_round, lv_found, output) = (b.label(), b.label(), b.label(), b.label());
    b.bind(lv_loop);
    b.jge(m, n, output);
    b.add(d2, d, d);
    b.konst(budget, START_BUDGET);
    b.bind(lv_round);
    for (op, on) in [(0u64, 0u64), (1, 0), (0, 1), (2, 0), (0, 2)] {
        let (kp, kn) = (b.reg(), b.reg());
        b.add(cp, zp, zp);
        b.add(cn, zn, zn);
        b.konst(kp, op);
        b.konst(kn, on);
        b.add(cp, cp, kp);
        b.add(cn, cn, kn);
        normalize(&mut b, cp, cn);
        window_test(&mut b, t, cp, cn, d2, budget, lv_found);
    }
    b.add(budget, budget, budget);
    b.jmp(lv_round);
    b.bind(lv_found);
    b.copy(zp, cp);
    b.copy(zn, cn);
    b.copy(d, d2);
    b.inc(m);
    b.jmp(lv_loop);

    b.bind(output);
    let c = b.reg();
    b.copy(c, d);
    b.dec(c);
    encode_signed(&mut b, Reg::IO, zp, zn, c);
    b.halt();
    b.code()
});

// Runs `t` on the τ-name of the window ((zp-zn-1)/d, (zp-zn+1)/d) with the
// given budget and jumps to `hit` if it halts.
fn window_test(b: &mut Builder, t: Reg, zp: Reg, zn: Reg, d: Reg, budget: Reg, hit: Label) {
    let (lp, ln, hp, hn, c, lo, hi, iv, name, res) =
        (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    b.copy(lp, zp);
    b.copy(ln, zn);
    b.inc(ln);
    b.copy(hp, zp);
    b.inc(hp);
    b.copy(hn, zn);
    b.copy(c, d);
    b.dec(c);
    encode_signed(b, lo, lp, ln, c);
    encode_signed(b, hi, hp, hn, c);
    b.pair(iv, lo, hi);
    emit_const_program(b, name, iv);
    bounded(b, res, t, name, budget);
    b.jnz(res, hit);
}

/// `⟨o, k⟩ ↦` interval `k` of `o` moved one unit to the left.
pub(crate) static SHIFT_LEFT: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (o, k, iv, lc, hc) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    let (lo, hi) = (Rat::alloc(&mut b), Rat::alloc(&mut b));
    b.unl(o, Reg::IO);
    b.unr(k, Reg::IO);
    b.ueval(iv, o, k);
    b.unl(lc, iv);
    b.unr(hc, iv);
    decode_cq(&mut b, lo, lc);
    decode_cq(&mut b, hi, hc);
    b.add(lo.n, lo.n, lo.d);
    b.add(hi.n, hi.n, hi.d);
    encode_rat(&mut b, lc, lo);
    encode_rat(&mut b, hc, hi);
    b.pair(Reg::IO, lc, hc);
    b.halt();
    b.code()
});

/// `q ↦ q + 1` on rational codes.
pub(crate) static RATIONAL_SUCCESSOR: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let q = Rat::alloc(&mut b);
    decode_cq(&mut b, q, Reg::IO);
    b.add(q.p, q.p, q.d);
    encode_rat(&mut b, Reg::IO, q);
    b.halt();
    b.code()
});

/// `o ↦` the open that is ℝ when the real named `c` lies in `o` and ∅
/// otherwise: the preimage map of the constant map at `c`.
pub(crate) fn constant_preimage(malcev: &ProgramCode, c: &ProgramCode) -> ProgramCode {
    // ⟨o, k⟩: run malcev(o) on c, then list interval k of ℝ
    let mut b = Builder::new();
    let (mal, cr, o, k, sd, t) = (b.reg(), b.reg(), b.reg(), b.reg(), b.reg(), b.reg());
    b.konst(mal, malcev.nat().clone());
    b.konst(cr, c.nat().clone());
    b.unl(o, Reg::IO);
    b.unr(k, Reg::IO);
    b.ueval(sd, mal, o);
    b.ueval(t, sd, cr);
    emit_full_interval(&mut b, Reg::IO, k);
    b.halt();
    routines::smn_wrapper(&b.code())
}

/// `⟨A, O⟩`: round `r` takes the intervals `k ≤ r` of `O` and, for each,
/// the first `2^(r-k)` points `lo + (hi - lo)·j/2^d` (`j` odd, `d` rising),
/// running `A` on their constant names with budget `4^r`; halts with the
/// first accepted name.
pub(crate) static DENSE_SEARCH: LazyLock<ProgramCode> = LazyLock::new(|| {
    let mut b = Builder::new();
    let (a, o, r, k, d, j, scale, budget, res, iv, lc, hc, rest, t, code, name) = (
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
        b.reg(),
    );
    let left = b.reg();
    let (lo, hi, cand) = (Rat::alloc(&mut b), Rat::alloc(&mut b), Rat::alloc(&mut b));
    let (round, k_loop, k_next, d_loop, d_next, j_loop, j_next, r_next, nonempty, found) =
        (b.label(), b.label(), b.label(), b.label(), b.label(), b.label(), b.label(), b.label(), b.label(), b.label());
    b.unl(a, Reg::IO);
    b.unr(o, Reg::IO);
    b.konst(r, 0u64);
    b.konst(budget, 1u64);
    b.bind(round);
    b.konst(k, 0u64);
    b.bind(k_loop);
    b.jlt(r, k, r_next);
    bounded(&mut b, res, o, k, budget);
    bounded_value(&mut b, iv, res, k_next);
    b.unl(lc, iv);
    b.unr(hc, iv);
    decode_cq(&mut b, lo, lc);
    decode_cq(&mut b, hi, hc);
    jlt_rat(&mut b, lo, hi, nonempty);
    b.jmp(k_next);
    b.bind(nonempty);
    // left = 2^(r-k)
    b.konst(left, 1u64);
    b.monus(t, r, k);
    let (shift, shifted) = (b.label(), b.label());
    b.bind(shift);
    b.jz(t, shifted);
    b.add(left, left, left);
    b.dec(t);
    b.jmp(shift);
    b.bind(shifted);
    b.konst(d, 1u64);
    b.konst(scale, 2u64);
    b.bind(d_loop);
    b.konst(j, 1u64);
    b.bind(j_loop);
    b.jge(j, scale, d_next);
    b.jz(left, k_next);
    b.dec(left);
    // cand = (lo·(2^d - j) + hi·j) / 2^d
    b.monus(rest, scale, j);
    b.mul(cand.p, lo.p, hi.d);
    b.mul(cand.p, cand.p, rest);
    b.mul(t, hi.p, lo.d);
    b.mul(t, t, j);
    b.add(cand.p, cand.p, t);
    b.mul(cand.n, lo.n, hi.d);
    b.mul(cand.n, cand.n, rest);
    b.mul(t, hi.n, lo.d);
    b.mul(t, t, j);
    b.add(cand.n, cand.n, t);
    b.mul(cand.d, lo.d, hi.d);
    b.mul(cand.d, cand.d, scale);
    encode_rat(&mut b, code, cand);
    emit_const_program(&mut b, name, code);
    bounded(&mut b, res, a, name, budget);
    b.jnz(res, found);
    b.bind(j_next);
    b.inc(j);
    b.inc(j);
    b.jmp(j_loop);
    b.bind(d_next);
    b.inc(d);
    b.add(scale, scale, scale);
    b.jmp(d_loop);
    b.bind(k_next);
    b.inc(k);
    b.jmp(k_loop);
    b.bind(r_next);
    b.inc(r);
    b.add(budget, budget, budget);
    b.add(budget, budget, budget);
    b.jmp(round);
    b.bind(found);
    b.halt_with(name);
    b.code()
});
