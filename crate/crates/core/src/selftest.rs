//! Property suites run by `hfzf selftest`.
//!
//! Each check sweeps seeded random instances (or an exhaustive family) and compares the
//! library against its defining equations and the brute-force [`crate::oracle`]s. The
//! transcript contains no timings, so equal seeds give byte-identical output.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::datatypes::{self as dt, ListView};
use crate::error::Error;
use crate::fixedpoint::{self as fp, MonoOp};
use crate::gen;
use crate::hf::{Set, Universe};
use crate::oracle;
use crate::ordinals;
use crate::proplogic::{self as pl, Context, Derivation, Prop, Valuation};
use crate::recursion::{self, RecFn};
use crate::relations::{self, Rel};
use crate::sweep::{sweep, Exec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Core,
    Fixedpoint,
    Recursion,
    Datatypes,
    Logic,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Core,
        Suite::Fixedpoint,
        Suite::Recursion,
        Suite::Datatypes,
        Suite::Logic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Fixedpoint => "fixedpoint",
            Suite::Recursion => "recursion",
            Suite::Datatypes => "datatypes",
            Suite::Logic => "logic",
        }
    }
}

/// A suite name from the command line, or `all`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    All,
    One(Suite),
}

impl Selection {
    pub fn includes(self, s: Suite) -> bool {
        match self {
            Selection::All => true,
            Selection::One(t) => s == t,
        }
    }
}

impl FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(Selection::All);
        }
        Suite::ALL
            .iter()
            .find(|t| t.name() == s)
            .map(|&t| Selection::One(t))
            .ok_or_else(|| {
                format!("unknown suite '{s}' (expected core, fixedpoint, recursion, datatypes, logic or all)")
            })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub seed: u64,
    pub exec: Exec,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx {
            seed: 1,
            exec: Exec::default(),
        }
    }
}

/// Result of one check: how many cases ran, and the first counterexample if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub cases: usize,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn merge(self, other: Outcome) -> Outcome {
        Outcome {
            cases: self.cases + other.cases,
            failure: self.failure.or(other.failure),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "ok ({} cases)", self.cases),
            Some(msg) => write!(f, "FAIL ({} cases): {msg}", self.cases),
        }
    }
}

pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    /// The acceptance criterion this check belongs to, if any.
    pub criterion: Option<u8>,
    run: fn(&Ctx) -> Outcome,
}

impl Check {
    pub fn run(&self, ctx: &Ctx) -> Outcome {
        (self.run)(ctx)
    }
}

struct Fail(String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(format!("unexpected error: {e}"))
    }
}

type Case = Result<(), Fail>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(Fail(format!($($fmt)+)));
        }
    };
}

fn name_seed(seed: u64, key: &str) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in key.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    seed ^ h
}

fn tally(results: Vec<Case>) -> Outcome {
    let cases = results.len();
    let failure = results
        .into_iter()
        .enumerate()
        .find_map(|(i, r)| r.err().map(|Fail(m)| format!("case {i}: {m}")));
    Outcome { cases, failure }
}

/// `n` random cases, each in a fresh universe. `key` selects the random stream.
fn random_cases<F>(ctx: &Ctx, key: &str, n: usize, f: F) -> Outcome
where
    F: Fn(&mut Universe, &mut ChaCha8Rng) -> Case + Sync,
{
    let seed = name_seed(ctx.seed, key);
    tally(sweep(ctx.exec, seed, n, |_, rng| {
        f(&mut Universe::new(), rng)
    }))
}

/// One case per item, each in a fresh universe.
fn each_case<T, F>(ctx: &Ctx, items: &[T], f: F) -> Outcome
where
    T: Sync,
    F: Fn(&mut Universe, &T) -> Case + Sync,
{
    tally(sweep(ctx.exec, ctx.seed, items.len(), |i, _| {
        f(&mut Universe::new(), &items[i])
    }))
}

fn single_case(f: impl FnOnce(&mut Universe) -> Case) -> Outcome {
    tally(vec![f(&mut Universe::new())])
}

fn nats(u: &mut Universe, n: u32) -> Vec<Set> {
    (0..n).map(|i| u.nat(i)).collect()
}

/// `V_n` as a list, built without the library's hierarchy code.
fn stage(u: &mut Universe, n: u32) -> Vec<Set> {
    let mut v: Vec<Set> = Vec::new();
    for _ in 0..n {
        let mut next = Vec::with_capacity(1 << v.len());
        for mask in 0u64..1 << v.len() {
            let picked: Vec<Set> = (0..v.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| v[i])
                .collect();
            next.push(u.set_of(picked));
        }
        v = next;
    }
    v
}

fn native_rank(u: &Universe, a: Set, memo: &mut HashMap<Set, u32>) -> u32 {
    if let Some(&r) = memo.get(&a) {
        return r;
    }
    let r = u
        .elems(a)
        .iter()
        .map(|&y| native_rank(u, y, memo) + 1)
        .max()
        .unwrap_or(0);
    memo.insert(a, r);
    r
}

fn show_rel(u: &Universe, r: Rel) -> String {
    u.show(r.set())
}

// ==================== core ==================== //

fn extensionality(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "extensionality", 200, |u, rng| {
        let a = gen::random_set(u, rng, 5, 3);
        let b = if rng.random_bool(0.3) {
            let mut es = u.elems(a).to_vec();
            es.reverse();
            u.set_of(es)
        } else {
            gen::random_set(u, rng, 5, 3)
        };
        let all: Vec<Set> = u.elems(a).iter().chain(u.elems(b)).copied().collect();
        let same = all.iter().all(|&x| u.member(x, a) == u.member(x, b));
        ensure!((a == b) == same, "{} vs {}", u.show(a), u.show(b));
        Ok(())
    })
}

fn pair_injectivity(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "pair_injectivity", 100, |u, rng| {
        let sample: Vec<Set> = (0..5).map(|_| gen::random_set(u, rng, 4, 2)).collect();
        for &a in &sample {
            for &b in &sample {
                let p = u.pair(a, b);
                ensure!(
                    u.as_pair(p) == Some((a, b)),
                    "pair {} does not split",
                    u.show(p)
                );
                for &c in &sample {
                    for &d in &sample {
                        let q = u.pair(c, d);
                        ensure!(
                            p != q || (a == c && b == d),
                            "<{},{}> = <{},{}>",
                            u.show(a),
                            u.show(b),
                            u.show(c),
                            u.show(d)
                        );
                    }
                }
            }
        }
        Ok(())
    })
}

fn succ_laws(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "succ_laws", 200, |u, rng| {
        let sample: Vec<Set> = (0..8).map(|_| gen::random_set(u, rng, 4, 3)).collect();
        let e = u.empty();
        for &x in &sample {
            let sx = u.succ(x);
            ensure!(sx != e, "succ({}) = 0", u.show(x));
            for &y in &sample {
                let sy = u.succ(y);
                ensure!(
                    sx != sy || x == y,
                    "succ({}) = succ({})",
                    u.show(x),
                    u.show(y)
                );
            }
        }
        Ok(())
    })
}

fn print_parse_roundtrip(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "print_parse_roundtrip", 200, |u, rng| {
        let s = gen::random_set(u, rng, 5, 3);
        let text = u.show(s);
        let back = u.parse(&text)?;
        ensure!(back == s, "{text} re-parses to {}", u.show(back));
        ensure!(u.show(back) == text, "{text} is not canonical");
        Ok(())
    })
}

fn closure_vs_warshall(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "closure_vs_warshall", 500, |u, rng| {
        let n = rng.random_range(1..=8);
        let field = nats(u, n);
        let p = rng.random_range(0.05..0.4);
        let r = gen::random_rel(u, rng, &field, p);
        let star = relations::rtrancl(u, r)?;
        let plus = relations::trancl(u, r)?;
        let w_star = oracle::warshall(u, r, true);
        let w_plus = oracle::warshall(u, r, false);
        ensure!(
            star.set() == w_star,
            "rtrancl of {} disagrees with Warshall",
            show_rel(u, r)
        );
        ensure!(
            plus.set() == w_plus,
            "trancl of {} disagrees with Warshall",
            show_rel(u, r)
        );
        // r* = id(field r) ∪ (r ∘ r*)
        let fld = relations::field(u, r);
        let id = relations::id_on(u, fld);
        let step = relations::compose(u, r, star);
        let rhs = u.union2(id.set(), step.set());
        ensure!(
            star.set() == rhs,
            "recursion equation fails for {}",
            show_rel(u, r)
        );
        let sp = star.pairs(u);
        for &a in u.elems(fld).to_vec().iter() {
            ensure!(star.contains(u, a, a), "<a,a> missing from r*");
        }
        let rp = r.pairs(u);
        for &(a, b) in &sp {
            for &(b2, c) in &rp {
                if b == b2 {
                    ensure!(star.contains(u, a, c), "r* not closed under r-steps");
                }
            }
            for &(b2, c) in &sp {
                if b == b2 {
                    ensure!(star.contains(u, a, c), "r* is not transitive");
                }
            }
        }
        ensure!(
            relations::is_transitive_rel(u, plus),
            "r+ is not transitive"
        );
        Ok(())
    })
}

fn wf_laws(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "wf_laws", 200, |u, rng| {
        let n = rng.random_range(1..=7);
        let field = nats(u, n);
        let r = if rng.random_bool(0.5) {
            gen::random_wf_rel(u, rng, &field, 0.4)
        } else {
            gen::random_rel(u, rng, &field, 0.15)
        };
        let wf = relations::is_wf(u, r);
        ensure!(
            wf == oracle::is_wf_by_subsets(u, r),
            "is_wf wrong on {}",
            show_rel(u, r)
        );
        if wf {
            let plus = relations::trancl(u, r)?;
            ensure!(
                relations::is_wf(u, plus),
                "trancl of wf {} is not wf",
                show_rel(u, r)
            );
        }
        Ok(())
    })
}

fn ordinal_laws(ctx: &Ctx) -> Outcome {
    let out = single_case(|u| {
        let ords = nats(u, 9);
        for &a in &ords {
            ensure!(ordinals::is_ord(u, a), "{} is not an ordinal", u.show(a));
            for &x in u.elems(a).to_vec().iter() {
                ensure!(ordinals::is_ord(u, x), "element of an ordinal is not one");
            }
            let sa = u.succ(a);
            ensure!(ordinals::is_ord(u, sa), "succ of an ordinal is not one");
            for &b in &ords {
                let n = [ordinals::lt(u, a, b), a == b, ordinals::lt(u, b, a)]
                    .iter()
                    .filter(|&&t| t)
                    .count();
                ensure!(
                    n == 1,
                    "trichotomy fails for {} and {}",
                    u.show(a),
                    u.show(b)
                );
            }
        }
        let e = u.empty();
        ensure!(ordinals::is_ord(u, e), "0 is not an ordinal");
        // the only HF ordinals are the numerals
        for s in stage(u, 4) {
            ensure!(
                ordinals::is_ord(u, s) == u.as_nat(s).is_some(),
                "is_ord({}) disagrees with the numerals",
                u.show(s)
            );
        }
        Ok(())
    });
    let fam = random_cases(ctx, "ordinal_union", 100, |u, rng| {
        let k = rng.random_range(0..5);
        let members: Vec<Set> = (0..k).map(|_| u.nat(rng.random_range(0..9))).collect();
        let fam = u.set_of(members);
        let un = u.big_union(fam);
        ensure!(
            ordinals::is_ord(u, un),
            "union of {} is not an ordinal",
            u.show(fam)
        );
        Ok(())
    });
    out.merge(fam)
}

fn nat_segments(ctx: &Ctx) -> Outcome {
    let seg = single_case(|u| {
        for k in 0..=12 {
            let a = ordinals::nat_upto(u, k)?;
            let b = fp::iterate_op(u, &ordinals::nat_op(), k as usize)?;
            ensure!(a == b, "nat_upto({k}) differs from the {k}-th iterate");
        }
        Ok(())
    });
    let rec = random_cases(ctx, "nat_rec", 100, |u, rng| {
        let a = u.nat(rng.random_range(0..5));
        let n = rng.random_range(0..9);
        let k = u.nat(n);
        let lib_double = |u: &mut Universe, _: Set, r: Set| {
            let s = u.succ(r);
            Ok(u.succ(s))
        };
        let lib_pair = |u: &mut Universe, m: Set, r: Set| Ok(u.pair(m, r));
        let got = ordinals::nat_rec(u, a, &lib_double, k)?;
        let want = oracle::nat_rec_loop(
            u,
            a,
            &|u, _, r| {
                let s = u.succ(r);
                u.succ(s)
            },
            n,
        );
        ensure!(got == want, "nat_rec double at {n}");
        let got = ordinals::nat_rec(u, a, &lib_pair, k)?;
        let want = oracle::nat_rec_loop(u, a, &|u, m, r| u.pair(m, r), n);
        ensure!(got == want, "nat_rec pairing at {n}");
        Ok(())
    });
    seg.merge(rec)
}

// ==================== fixedpoint ==================== //

/// `D` with `|D| ≤ 5` and a random operator bounded by it.
fn mono_instance(u: &mut Universe, rng: &mut ChaCha8Rng) -> (Set, MonoOp) {
    let n = rng.random_range(1..=5);
    let dom = gen::random_op_domain(u, rng, n);
    let h = gen::random_mono_op(u, rng, &dom, 3);
    (u.set_of(dom), h)
}

fn lfp_definitional_oracle(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "mono_instances", 100, |u, rng| {
        let (d, h) = mono_instance(u, rng);
        let lfp = fp::lfp_iterate(u, d, &h)?;
        let meet = oracle::lfp_by_intersection(u, d, &h)?;
        ensure!(
            lfp == meet,
            "lfp {} but meet {} for {h:?}",
            u.show(lfp),
            u.show(meet)
        );
        Ok(())
    })
}

fn knaster_tarski(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "mono_instances", 100, |u, rng| {
        let (d, h) = mono_instance(u, rng);
        let lfp = fp::lfp_iterate(u, d, &h)?;
        let hl = fp::eval_op(u, &h, lfp)?;
        ensure!(
            hl == lfp,
            "h(lfp) = {} != lfp = {}",
            u.show(hl),
            u.show(lfp)
        );
        let pre = oracle::prefixedpoints(u, d, &h)?;
        for &a in &pre {
            ensure!(
                u.subset(lfp, a),
                "lfp not below prefixedpoint {}",
                u.show(a)
            );
        }
        // induction with ψ = membership in a random subset of D
        let items = u.elems(d).to_vec();
        let s = gen::random_subset(u, rng, &items, 0.6);
        let premise = fp::induction_check(u, d, &h, |u, x| u.member(x, s))?;
        if premise {
            ensure!(
                u.subset(lfp, s),
                "induction rule fails for ψ = ∈{}",
                u.show(s)
            );
        }
        Ok(())
    })
}

fn operator_monotonicity(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "operator_monotonicity", 200, |u, rng| {
        let (d, h) = mono_instance(u, rng);
        let items = u.elems(d).to_vec();
        let c = gen::random_subset(u, rng, &items, 0.6);
        let citems = u.elems(c).to_vec();
        let a = gen::random_subset(u, rng, &citems, 0.6);
        let (ha, hc) = (fp::eval_op(u, &h, a)?, fp::eval_op(u, &h, c)?);
        ensure!(
            u.subset(ha, hc),
            "not monotone on {} ⊆ {}: {h:?}",
            u.show(a),
            u.show(c)
        );
        // lfp is monotone in the operator
        let extra = MonoOp::Const(gen::random_subset(u, rng, &items, 0.3));
        let i = MonoOp::inter(MonoOp::union(h.clone(), extra), MonoOp::Const(d));
        let rep = fp::lfp_mono_report(u, d, &h, d, &i)?;
        ensure!(
            rep.premise && rep.conclusion,
            "lfp monotonicity fails: {rep:?}"
        );
        Ok(())
    })
}

fn banach_decomposition(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "banach_decomposition", 200, |u, rng| {
        let pool = gen::random_atoms(u, rng, 16);
        let injective = rng.random_bool(0.5);
        let nx = rng.random_range(1..=8);
        let ny = if injective {
            nx
        } else {
            rng.random_range(1..=8)
        };
        let (xs, ys) = (pool[..nx].to_vec(), pool[8..8 + ny].to_vec());
        let (x, y) = (u.set_of(xs.iter().copied()), u.set_of(ys.iter().copied()));
        let (f, g) = if injective {
            (
                gen::random_injection(u, rng, &xs, &ys),
                gen::random_injection(u, rng, &ys, &xs),
            )
        } else {
            (
                gen::random_function(u, rng, &xs, &ys),
                gen::random_function(u, rng, &ys, &xs),
            )
        };
        let parts = fp::banach_decompose(u, x, y, f, g)?;
        let (fr, gr) = (Rel::new(u, f)?, Rel::new(u, g)?);
        let eqs = fp::banach_equations(u, &parts, x, y, fr, gr);
        ensure!(
            eqs.iter().all(|&b| b),
            "equations {eqs:?} for f={} g={}",
            u.show(f),
            u.show(g)
        );
        let both_inj = relations::is_injective(u, fr) && relations::is_injective(u, gr);
        match fp::schroeder_bernstein(u, x, y, f, g) {
            Ok(h) => {
                ensure!(both_inj, "accepted a non-injective pair");
                ensure!(
                    oracle::is_bijection(u, h, x, y),
                    "{} is not a bijection",
                    u.show(h)
                );
                let left = u.restrict(f, parts.xa)?;
                let right = u.restrict(g, parts.yb)?;
                let flipped: Vec<Set> = u
                    .elems(right)
                    .to_vec()
                    .into_iter()
                    .map(|p| {
                        let (a, b) = u.as_pair(p).unwrap();
                        u.pair(b, a)
                    })
                    .collect();
                let flipped = u.set_of(flipped);
                let want = u.union2(left, flipped);
                ensure!(h == want, "bijection differs from the glued restrictions");
            }
            Err(Error::NotInjective) => ensure!(!both_inj, "rejected injective pair"),
            Err(e) => return Err(e.into()),
        }
        Ok(())
    })
}

// ==================== recursion ==================== //

/// A body that looks its behaviour up in a per-element table.
#[derive(Clone)]
struct TableBody {
    table: HashMap<Set, (u8, Set)>,
}

impl TableBody {
    fn random(u: &mut Universe, rng: &mut ChaCha8Rng, field: &[Set]) -> TableBody {
        let consts = nats(u, 4);
        let table = field
            .iter()
            .map(|&x| (x, (rng.random_range(0..4u8), *consts.choose(rng).unwrap())))
            .collect();
        TableBody { table }
    }

    fn apply(&self, u: &mut Universe, x: Set, vals: &[(Set, Set)]) -> Set {
        let (code, c) = self.table.get(&x).copied().unwrap_or((0, u.empty()));
        let vs: Vec<Set> = vals.iter().map(|&(_, v)| v).collect();
        match code {
            0 => c,
            1 => {
                let s = u.set_of(vs);
                u.cons(c, s)
            }
            2 => {
                let s = u.set_of(vs);
                u.pair(c, s)
            }
            _ => {
                let ps: Vec<Set> = vals.iter().map(|&(y, v)| u.pair(y, v)).collect();
                let s = u.set_of(ps);
                u.union2(c, s)
            }
        }
    }

    fn call(&self, u: &mut Universe, x: Set, f: &mut dyn RecFn) -> crate::Result<Set> {
        let dom = f.domain().expect("finite domain");
        let mut vals = Vec::new();
        for y in u.elems(dom).to_vec() {
            vals.push((y, f.at(u, y)?));
        }
        Ok(self.apply(u, x, &vals))
    }
}

fn wfrec_equation(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "wfrec_equation", 200, |u, rng| {
        let n = rng.random_range(1..=7);
        let field = nats(u, n);
        let p = rng.random_range(0.1..0.6);
        let r = gen::random_wf_rel(u, rng, &field, p);
        let tb = TableBody::random(u, rng, &field);
        let body = |u: &mut Universe, x: Set, f: &mut dyn RecFn| tb.call(u, x, f);
        let want = oracle::wf_table(u, r, &field, &|u, x, vals| tb.apply(u, x, vals));
        let plus = relations::trancl(u, r)?;
        for &a in &field {
            let got = recursion::wfrec(u, r, a, &body)?;
            ensure!(
                got == want[&a],
                "wfrec at {} on {}",
                u.show(a),
                show_rel(u, r)
            );
            ensure!(
                recursion::wfrec_equation_holds(u, r, a, &body)?,
                "recursion equation fails at {}",
                u.show(a)
            );
            let f = recursion::the_recfun(u, plus, a, &body)?;
            ensure!(
                recursion::is_recfun(u, plus, a, &body, f)?,
                "the_recfun is not a recfun"
            );
            let wt = recursion::wftrec(u, plus, a, &body)?;
            let dom = relations::inv_image_singleton(u, plus, a);
            let vals: Vec<(Set, Set)> = u
                .elems(dom)
                .to_vec()
                .into_iter()
                .map(|y| u.apply(f, y).map(|v| (y, v)))
                .collect::<crate::Result<_>>()?;
            let h_at = tb.apply(u, a, &vals);
            ensure!(wt == h_at, "wftrec differs from H(a, the_recfun)");
            // uniqueness: change one value and the equation must fail
            if let Some(&p0) = u.elems(f).first() {
                let (y, v) = u.as_pair(p0).unwrap();
                let junk = u.nat(9);
                let v2 = u.cons(junk, v);
                let p1 = u.pair(y, v2);
                let rest: Vec<Set> = u.elems(f).iter().copied().filter(|&q| q != p0).collect();
                let f2 = u.set_of(rest.into_iter().chain([p1]));
                ensure!(
                    !recursion::is_recfun(u, plus, a, &body, f2)?,
                    "perturbed function still satisfies is_recfun"
                );
            }
        }
        if !relations::is_transitive_rel(u, r) {
            ensure!(
                matches!(
                    recursion::the_recfun(u, r, field[0], &body),
                    Err(Error::NotTransitive)
                ),
                "the_recfun accepted a non-transitive relation"
            );
        }
        Ok(())
    })
}

fn rank_laws(ctx: &Ctx) -> Outcome {
    let numerals = single_case(|u| {
        for n in 0..=8 {
            let k = u.nat(n);
            ensure!(recursion::rank(u, k) == k, "rank({n}) != {n}");
        }
        Ok(())
    });
    let random = random_cases(ctx, "rank_laws", 1000, |u, rng| {
        let b = gen::random_set(u, rng, 4, 3);
        let c = gen::random_set(u, rng, 4, 3);
        let rb = recursion::rank(u, b);
        let mut memo = HashMap::new();
        let nr = native_rank(u, b, &mut memo);
        ensure!(
            u.as_nat(rb) == Some(nr),
            "rank({}) = {}",
            u.show(b),
            u.show(rb)
        );
        for a in u.elems(b).to_vec() {
            let ra = recursion::rank(u, a);
            ensure!(
                ordinals::lt(u, ra, rb),
                "rank not increasing along ∈ at {}",
                u.show(a)
            );
        }
        let p = u.pair(b, c);
        let (rc, rp) = (recursion::rank(u, c), recursion::rank(u, p));
        ensure!(ordinals::lt(u, rb, rp), "rank(a) < rank(<a,b>) fails");
        ensure!(ordinals::lt(u, rc, rp), "rank(b) < rank(<a,b>) fails");
        Ok(())
    });
    numerals.merge(random)
}

fn eclose_minimality(ctx: &Ctx) -> Outcome {
    let exhaustive = single_case(|u| {
        let v3 = stage(u, 3);
        let v4 = stage(u, 4);
        let mut transitive = Vec::new();
        for m in 0u32..1 << v3.len() {
            let picked: Vec<Set> = (0..v3.len())
                .filter(|&i| m >> i & 1 == 1)
                .map(|i| v3[i])
                .collect();
            let t = u.set_of(picked);
            if ordinals::is_transset(u, t) {
                transitive.push(t);
            }
        }
        for &a in &v4 {
            let e = recursion::eclose(u, a);
            ensure!(
                ordinals::is_transset(u, e),
                "eclose({}) not transitive",
                u.show(a)
            );
            ensure!(u.subset(a, e), "{} ⊄ eclose", u.show(a));
            for &t in &transitive {
                if u.subset(a, t) {
                    ensure!(u.subset(e, t), "eclose({}) ⊄ {}", u.show(a), u.show(t));
                }
            }
        }
        Ok(())
    });
    let random = random_cases(ctx, "eclose_random", 200, |u, rng| {
        let a = gen::random_set(u, rng, 5, 3);
        let e = recursion::eclose(u, a);
        // breadth-first closure
        let mut seen: BTreeSet<Set> = BTreeSet::new();
        let mut todo: Vec<Set> = u.elems(a).to_vec();
        while let Some(x) = todo.pop() {
            if seen.insert(x) {
                todo.extend(u.elems(x));
            }
        }
        let want = u.set_of(seen);
        ensure!(e == want, "eclose({}) = {}", u.show(a), u.show(e));
        let junk = gen::random_set(u, rng, 3, 2);
        let je = recursion::eclose(u, junk);
        let t = u.union2(e, je);
        ensure!(
            ordinals::is_transset(u, t) && u.subset(e, t),
            "closure not below padded set"
        );
        Ok(())
    });
    exhaustive.merge(random)
}

fn vfrom_rank_criterion(ctx: &Ctx) -> Outcome {
    let exhaustive = single_case(|u| {
        let e = u.empty();
        let v5 = stage(u, 5);
        for n in 0..=4 {
            let vn = recursion::vfrom(u, e, n)?;
            let k = u.nat(n);
            for &y in &v5 {
                let ry = recursion::rank(u, y);
                ensure!(
                    u.member(y, vn) == ordinals::lt(u, ry, k),
                    "{} ∈ V_{n} disagrees with its rank",
                    u.show(y)
                );
            }
        }
        Ok(())
    });
    let random = random_cases(ctx, "vfrom_rank_random", 200, |u, rng| {
        let y = gen::random_set(u, rng, 7, 3);
        let e = u.empty();
        let n = rng.random_range(0..=4);
        let vn = recursion::vfrom(u, e, n)?;
        let k = u.nat(n);
        let ry = recursion::rank(u, y);
        ensure!(
            u.member(y, vn) == ordinals::lt(u, ry, k),
            "{} ∈ V_{n} disagrees with its rank",
            u.show(y)
        );
        Ok(())
    });
    exhaustive.merge(random)
}

fn hierarchy_laws(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "hierarchy_laws", 100, |u, rng| {
        let atoms = gen::random_atoms(u, rng, 2);
        let b = gen::random_subset(u, rng, &atoms, 0.7);
        let bitems = u.elems(b).to_vec();
        let a = gen::random_subset(u, rng, &bitems, 0.5);
        let top = if u.card(b) <= 1 { 3 } else { 2 };
        let n = rng.random_range(0..=top);
        let m = rng.random_range(0..=n);
        let (va, vb) = (recursion::vfrom(u, a, m)?, recursion::vfrom(u, b, n)?);
        ensure!(u.subset(va, vb), "V[A]_{m} ⊄ V[B]_{n}");
        if n < top {
            let vnext = recursion::vfrom(u, b, n + 1)?;
            let items = u.elems(vb).to_vec();
            for _ in 0..5 {
                let s = gen::random_subset(u, rng, &items, 0.5);
                ensure!(
                    u.member(s, vnext),
                    "subset of V[B]_{n} missing from the next stage"
                );
            }
        }
        // pairs of elements of univ(B) stay in univ(B)
        let pool: Vec<Set> = u.elems(vb).to_vec();
        if let (Some(&x), Some(&y)) = (pool.choose(rng), pool.choose(rng)) {
            ensure!(
                recursion::in_univ(u, b, x) && recursion::in_univ(u, b, y),
                "stage ⊄ univ"
            );
            let p = u.pair(x, y);
            ensure!(recursion::in_univ(u, b, p), "univ not closed under pairs");
        }
        Ok(())
    })
}

fn epsilon_induction(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "epsilon_induction", 200, |u, rng| {
        let a = gen::random_set(u, rng, 4, 3);
        // ψ(x) ≡ x ∉ S
        let sa = u.singleton(a);
        let below = recursion::eclose(u, sa);
        let items = u.elems(below).to_vec();
        let s = gen::random_subset(u, rng, &items, 0.1);
        let psi = |u: &Universe, x: Set| !u.member(x, s);
        let closed = items
            .iter()
            .all(|&x| !u.elems(x).iter().all(|&y| psi(u, y)) || psi(u, x));
        if closed {
            ensure!(psi(u, a), "∈-induction fails at {}", u.show(a));
        }
        // transrec with the rank body reproduces rank
        let body = |u: &mut Universe, x: Set, f: &mut dyn RecFn| {
            let mut out = u.empty();
            for y in u.elems(x).to_vec() {
                let r = f.at(u, y)?;
                let s = u.succ(r);
                out = u.union2(out, s);
            }
            Ok(out)
        };
        let tr = recursion::transrec(u, a, &body)?;
        ensure!(
            tr == recursion::rank(u, a),
            "transrec rank of {}",
            u.show(a)
        );
        Ok(())
    })
}

// ==================== datatypes ==================== //

fn lib_succ(u: &mut Universe, x: Set) -> crate::Result<Set> {
    Ok(u.succ(x))
}

fn lib_twin(u: &mut Universe, x: Set) -> crate::Result<Set> {
    Ok(u.pair(x, x))
}

fn list_laws(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "list_laws", 200, |u, rng| {
        let labels = nats(u, 3);
        let xs = gen::random_list(u, rng, &labels, 5);
        let ys = gen::random_list(u, rng, &labels, 5);
        let vx = dt::list_to_vec(u, xs).unwrap();
        let vy = dt::list_to_vec(u, ys).unwrap();
        let nil = dt::nil(u);
        let c = u.nat(7);
        let h = |u: &mut Universe, x: Set, _: Set, r: Set| Ok(u.pair(x, r));
        ensure!(dt::list_rec(u, c, &h, nil)? == c, "list_rec at Nil");
        let x0 = *labels.choose(rng).unwrap();
        let l = dt::cons_list(u, x0, xs);
        let lhs = dt::list_rec(u, c, &h, l)?;
        let inner = dt::list_rec(u, c, &h, xs)?;
        ensure!(lhs == u.pair(x0, inner), "list_rec at Cons");
        // map and append equations
        ensure!(dt::list_map(u, &lib_succ, nil)? == nil, "map at Nil");
        let ml = dt::list_map(u, &lib_succ, l)?;
        let mxs = dt::list_map(u, &lib_succ, xs)?;
        let sx0 = u.succ(x0);
        ensure!(ml == dt::cons_list(u, sx0, mxs), "map at Cons");
        ensure!(dt::append(u, nil, ys)? == ys, "Nil @ ys");
        let lys = dt::append(u, l, ys)?;
        let xsys = dt::append(u, xs, ys)?;
        ensure!(lys == dt::cons_list(u, x0, xsys), "Cons @ ys");
        let cat: Vec<Set> = vx.iter().chain(&vy).copied().collect();
        ensure!(
            dt::list_to_vec(u, xsys) == Some(cat),
            "append differs from concatenation"
        );
        // (10) to (13)
        let rm = {
            let m = dt::list_map(u, &lib_succ, xs)?;
            dt::rev(u, m)?
        };
        let mr = {
            let r = dt::rev(u, xs)?;
            dt::list_map(u, &lib_succ, r)?
        };
        ensure!(rm == mr, "rev(map(h, l)) != map(h, rev(l))");
        let mm = {
            let m = dt::list_map(u, &lib_twin, xs)?;
            dt::list_map(u, &lib_succ, m)?
        };
        let comp = dt::list_map(
            u,
            &|u, x| {
                let t = lib_twin(u, x)?;
                lib_succ(u, t)
            },
            xs,
        )?;
        ensure!(mm == comp, "map(h1, map(h2, l)) != map(h1∘h2, l)");
        ensure!(dt::list_map(u, &|_, x| Ok(x), xs)? == xs, "map(id, l) != l");
        let rr = {
            let r = dt::rev(u, xs)?;
            dt::rev(u, r)?
        };
        ensure!(rr == xs, "rev(rev(l)) != l");
        let mut rv = vx.clone();
        rv.reverse();
        let r = dt::rev(u, xs)?;
        ensure!(
            dt::list_to_vec(u, r) == Some(rv),
            "rev differs from reversal"
        );
        let len = dt::length(u, xs)?;
        ensure!(u.as_nat(len) == Some(vx.len() as u32), "length");
        // map over append
        let lhs = dt::list_map(u, &lib_succ, xsys)?;
        let my = dt::list_map(u, &lib_succ, ys)?;
        let rhs = dt::append(u, mxs, my)?;
        ensure!(lhs == rhs, "map(h, xs@ys) != map(h,xs)@map(h,ys)");
        // typing: map(h, l) ∈ list({h(x). x ∈ A})
        let img: Vec<Set> = labels.iter().map(|&x| u.succ(x)).collect();
        let img = u.set_of(img);
        ensure!(
            dt::is_list(u, &|z| u.member(z, img), mxs),
            "map leaves list({{h(x). x ∈ A}})"
        );
        Ok(())
    })
}

fn reflect_laws(u: &mut Universe, t: Set) -> Case {
    let labels = |_: Set| true;
    ensure!(dt::is_term(u, &labels, t), "{} is not a term", u.show(t));
    let (label, args) = u.as_pair(t).unwrap();
    let lhs = dt::reflect(u, t)?;
    let mapped = dt::list_map(u, &dt::reflect, args)?;
    let rhs = {
        let r = dt::rev(u, mapped)?;
        dt::apply_term(u, label, r)
    };
    ensure!(lhs == rhs, "reflect equation fails at {}", u.show(t));
    ensure!(
        dt::reflect(u, lhs)? == t,
        "reflect(reflect(t)) != t at {}",
        u.show(t)
    );
    Ok(())
}

fn term_laws(ctx: &Ctx) -> Outcome {
    let mut u0 = Universe::new();
    let labels = nats(&mut u0, 2);
    let terms: Vec<String> = gen::all_terms(&mut u0, &labels, 3, 2)
        .into_iter()
        .map(|t| u0.show(t))
        .collect();
    let exhaustive = each_case(ctx, &terms, |u, text| {
        let t = u.parse(text)?;
        reflect_laws(u, t)
    });
    let random = random_cases(ctx, "term_laws", 200, |u, rng| {
        let labels = nats(u, 2);
        let depth = rng.random_range(4..=5);
        let t = gen::random_term(u, rng, &labels, depth, 3);
        reflect_laws(u, t)
    });
    exhaustive.merge(random)
}

fn tf_laws(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "tf_laws", 200, |u, rng| {
        let labels = nats(u, 3);
        let z = gen::random_tf(u, rng, &labels, 3, 2);
        let b = |u: &mut Universe, a: Set, _: Set, r: Set| Ok(u.pair(a, r));
        let c = u.nat(5);
        let d = |u: &mut Universe, _: Set, _: Set, rt: Set, rf: Set| Ok(u.doubleton(rt, rf));
        let got = dt::tf_rec(u, &b, c, &d, z)?;
        let want = match dt::tf_view(u, z).unwrap() {
            dt::TfView::Tcons(a, f) => {
                let r = dt::tf_rec(u, &b, c, &d, f)?;
                u.pair(a, r)
            }
            dt::TfView::Fnil => c,
            dt::TfView::Fcons(t, f) => {
                let rt = dt::tf_rec(u, &b, c, &d, t)?;
                let rf = dt::tf_rec(u, &b, c, &d, f)?;
                u.doubleton(rt, rf)
            }
        };
        ensure!(got == want, "TF_rec equation fails at {}", u.show(z));
        ensure!(dt::tf_map(u, &|_, x| Ok(x), z)? == z, "TF_map(id) != id");
        // sort preservation into B = {h(x). x ∈ A}
        let mapped = dt::tf_map(u, &lib_succ, z)?;
        let img: Vec<Set> = labels.iter().map(|&x| u.succ(x)).collect();
        let img = u.set_of(img);
        let in_a = |x: Set| labels.contains(&x);
        let in_b = |x: Set| u.member(x, img);
        ensure!(
            dt::is_tree(u, &in_a, z) == dt::is_tree(u, &in_b, mapped)
                && dt::is_forest(u, &in_a, z) == dt::is_forest(u, &in_b, mapped),
            "TF_map changes the sort of {}",
            u.show(z)
        );
        let pre = dt::tf_preorder(u, z)?;
        let len = dt::length(u, pre)?;
        let size = dt::tf_size(u, z)?;
        ensure!(len == size, "length(preorder) != size at {}", u.show(z));
        Ok(())
    })
}

fn kleene_agreement(ctx: &Ctx) -> Outcome {
    let cases: Vec<(u32, usize)> = (0..=2).flat_map(|a| (0..=4).map(move |n| (a, n))).collect();
    each_case(ctx, &cases, |u, &(na, n)| {
        let a = u.nat(na);
        let op = MonoOp::list_over(u, a);
        let it = fp::iterate_op(u, &op, n)?;
        // lists of length < n over A, listed directly
        let atoms = nats(u, na);
        let mut all = Vec::new();
        let mut level: Vec<Vec<Set>> = vec![Vec::new()];
        for _ in 0..n {
            all.extend(level.iter().map(|l| dt::list_from(u, l)));
            level = level
                .iter()
                .flat_map(|l| {
                    atoms.iter().map(move |&x| {
                        let mut l2 = l.clone();
                        l2.push(x);
                        l2
                    })
                })
                .collect();
        }
        let want = u.set_of(all);
        ensure!(it == want, "iterate {n} over {na} atoms: {}", u.show(it));
        for &l in u.elems(it) {
            ensure!(
                dt::is_list(u, &|x| u.member(x, a), l),
                "non-list in iterate"
            );
        }
        Ok(())
    })
}

fn recognizer_laws(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "recognizer_laws", 300, |u, rng| {
        let labels = nats(u, 2);
        let a = u.nat(2);
        let three = nats(u, 3);
        let x = match rng.random_range(0..4) {
            0 => gen::random_list(u, rng, &three, 4),
            1 => gen::random_term(u, rng, &labels, 3, 2),
            2 => gen::random_tf(u, rng, &three, 3, 2),
            _ => gen::random_set(u, rng, 5, 2),
        };
        let in_a = |x: Set| u.member(x, a);
        let any = |_: Set| true;
        // list(A) = {∅} + A × list(A)
        let shape = match dt::list_view(u, x) {
            Some(ListView::Nil) => true,
            Some(ListView::Cons(h, t)) => in_a(h) && dt::is_list(u, &in_a, t),
            None => false,
        };
        ensure!(
            dt::is_list(u, &in_a, x) == shape,
            "list shape law at {}",
            u.show(x)
        );
        // term(A) = A × list(term(A))
        let shape = match u.as_pair(x) {
            Some((h, ts)) => {
                in_a(h)
                    && dt::list_to_vec(u, ts)
                        .is_some_and(|v| v.iter().all(|&t| dt::is_term(u, &in_a, t)))
            }
            None => false,
        };
        ensure!(
            dt::is_term(u, &in_a, x) == shape,
            "term shape law at {}",
            u.show(x)
        );
        // TF(A) = A × forest(A) + ({∅} + tree(A) × forest(A))
        let shape = match dt::as_sum(u, x) {
            Some(dt::SumView::Inl(p)) => u
                .as_pair(p)
                .is_some_and(|(h, f)| any(h) && dt::is_forest(u, &any, f)),
            Some(dt::SumView::Inr(l)) => match dt::as_sum(u, l) {
                Some(dt::SumView::Inl(e)) => e == u.empty(),
                Some(dt::SumView::Inr(p)) => u
                    .as_pair(p)
                    .is_some_and(|(t, f)| dt::is_tree(u, &any, t) && dt::is_forest(u, &any, f)),
                None => false,
            },
            None => false,
        };
        ensure!(
            dt::is_tf(u, &any, x) == shape,
            "TF shape law at {}",
            u.show(x)
        );
        Ok(())
    })
}

fn constructor_freeness(_ctx: &Ctx) -> Outcome {
    single_case(|u| {
        let mut sample = stage(u, 3);
        sample.extend(nats(u, 5));
        sample.sort_by(|&a, &b| u.order(a, b));
        sample.dedup();
        let n = sample.len();
        // freeness holds within each datatype: a forest is also a list, for instance
        let mut lists: HashMap<Set, String> = HashMap::new();
        let mut tfs: HashMap<Set, String> = HashMap::new();
        let record =
            |u: &Universe, seen: &mut HashMap<Set, String>, s: Set, what: String| -> Case {
                if let Some(prev) = seen.insert(s, what.clone()) {
                    return Err(Fail(format!("{prev} = {what} = {}", u.show(s))));
                }
                Ok(())
            };
        let nil = dt::nil(u);
        let fnil = dt::fnil(u);
        record(u, &mut lists, nil, "Nil".into())?;
        record(u, &mut tfs, fnil, "Fnil".into())?;
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (sample[i], sample[j]);
                let c = dt::cons_list(u, a, b);
                record(u, &mut lists, c, format!("Cons({i},{j})"))?;
                let t = dt::tcons(u, a, b);
                record(u, &mut tfs, t, format!("Tcons({i},{j})"))?;
                let f = dt::fcons(u, a, b);
                record(u, &mut tfs, f, format!("Fcons({i},{j})"))?;
                let ap = dt::apply_term(u, a, b);
                ensure!(u.as_pair(ap) == Some((a, b)), "Apply is not injective");
            }
        }
        let mut sums = HashMap::new();
        for (i, &a) in sample.iter().enumerate() {
            let (l, r) = (dt::inl(u, a), dt::inr(u, a));
            ensure!(
                sums.insert(l, i).is_none() && sums.insert(r, i).is_none(),
                "sum tags collide"
            );
        }
        Ok(())
    })
}

fn fin_laws(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "fin_laws", 60, |u, rng| {
        let k = rng.random_range(0..=6);
        let atoms = gen::random_atoms(u, rng, k);
        let a = u.set_of(atoms.iter().copied());
        let fin = dt::fin_enum(u, a)?;
        let pw = u.powerset(a)?;
        ensure!(fin == pw, "Fin({}) != powerset", u.show(a));
        let ys = u.elems(fin).to_vec();
        let e = u.empty();
        ensure!(u.member(e, fin), "∅ ∉ Fin(A)");
        for &y in &ys {
            for &x in &atoms {
                let xy = u.cons(x, y);
                ensure!(u.member(xy, fin), "cons not closed");
            }
            let yi = u.elems(y).to_vec();
            let sub = gen::random_subset(u, rng, &yi, 0.5);
            ensure!(u.member(sub, fin), "subset not closed");
            let other = *ys.choose(rng).unwrap();
            let un = u.union2(y, other);
            ensure!(u.member(un, fin), "union not closed");
        }
        let fam = gen::random_subset(u, rng, &ys, 0.3);
        let bu = u.big_union(fam);
        ensure!(u.member(bu, fin), "big union not closed");
        let n = u.card(a);
        let fits = dt::fin_induction_check(u, a, |u, y| u.card(y) <= n)?;
        ensure!(
            fits.base && fits.step && fits.covers,
            "induction over Fin fails for |y| ≤ |A|: {fits:?}"
        );
        let ss = gen::random_subset(u, rng, &ys, 0.7);
        let rnd = dt::fin_induction_check(u, a, |u, y| u.member(y, ss))?;
        ensure!(rnd.rule_holds(), "Fin induction rule fails: {rnd:?}");
        Ok(())
    })
}

// ==================== logic ==================== //

fn random_context(rng: &mut ChaCha8Rng, max: usize, nvars: u32, conn: usize) -> Context {
    let k = rng.random_range(0..=max);
    (0..k).map(|_| gen::random_prop(rng, nvars, conn)).collect()
}

fn checks_to(d: &std::sync::Arc<Derivation>, h: &Context, want: &Prop) -> Case {
    match pl::check_derivation(d, h) {
        Ok(c) => {
            ensure!(&c == want, "concluded {c}, expected {want}");
            ensure!(pl::models(h, &c), "unsound: {c}");
            ensure!(
                oracle::models_truth_table(h, &c),
                "unsound by truth table: {c}"
            );
            Ok(())
        }
        Err(e) => Err(Fail(format!("expected {want}: {e}"))),
    }
}

fn transformer_soundness(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "transformer_soundness", 200, |_, rng| {
        let h = random_context(rng, 2, 3, 2);
        let p = gen::random_prop(rng, 3, 3);
        checks_to(&pl::derive_i(&p), &h, &Prop::imp(p.clone(), p.clone()))?;
        let pool = gen::grow_derivations(rng, &h, 3, 20);
        let (d, q) = pool.choose(rng).unwrap().clone();
        let w = pl::weaken_right(&d, &p).map_err(|e| Fail(e.to_string()))?;
        checks_to(&w, &h, &Prop::imp(p.clone(), q.clone()))?;
        // deduction round trip
        let mut hp = h.clone();
        hp.insert(p.clone());
        let pool = gen::grow_derivations(rng, &hp, 3, 20);
        let (d, q) = pool.choose(rng).unwrap().clone();
        let ded = pl::deduction(&d, &p, &h).map_err(|e| Fail(e.to_string()))?;
        checks_to(&ded, &h, &Prop::imp(p.clone(), q))?;
        // excluded middle on a case split over a random q
        let q = gen::random_prop(rng, 3, 1);
        let goal = gen::random_prop(rng, 3, 3);
        let mut hq = h.clone();
        hq.insert(q.clone());
        let mut hnq = h.clone();
        hnq.insert(Prop::neg(q.clone()));
        if let (Ok(d1), Ok(d2)) = (
            pl::prove_complete(&hq, &goal),
            pl::prove_complete(&hnq, &goal),
        ) {
            let em = pl::excluded_middle(&d1, &d2, &q, &h).map_err(|e| Fail(e.to_string()))?;
            checks_to(&em, &h, &goal)?;
        }
        // truth lemma at a random valuation
        let t: Valuation = (0..3).filter(|_| rng.random_bool(0.5)).collect();
        let tl = pl::truth_lemma(&p, &t);
        let want = if pl::is_true(&p, &t) {
            p.clone()
        } else {
            Prop::neg(p.clone())
        };
        checks_to(&tl, &pl::hyps(&p, &t), &want)?;
        match pl::prove_complete(&h, &p) {
            Ok(d) => checks_to(&d, &h, &p)?,
            Err(t) => ensure!(oracle::falsifies(&h, &p, &t), "bad countermodel {t:?}"),
        }
        Ok(())
    })
}

fn grown_derivations_sound(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "grown_derivations", 1000, |_, rng| {
        let h = random_context(rng, 2, 3, 2);
        let steps = rng.random_range(5..=40);
        let pool = gen::grow_derivations(rng, &h, 3, steps);
        let (d, q) = pool.last().unwrap();
        checks_to(d, &h, q)?;
        let text = pl::write_derivation(d);
        let back = pl::parse_derivation(&text).map_err(|e| Fail(e.to_string()))?;
        checks_to(&back, &h, q)
    })
}

fn completeness_case(h: &Context, p: &Prop, cross_check: bool) -> Case {
    let valid = oracle::models_truth_table(h, p);
    match pl::prove_complete(h, p) {
        Ok(d) => {
            ensure!(valid, "proved the invalid {p}");
            checks_to(&d, h, p)?;
            if cross_check {
                let forms = pl::derivation_formulas(&d).map_err(|e| Fail(e.to_string()))?;
                let cands = pl::subformula_closure(forms.iter().chain(h));
                if cands.len() <= 300 {
                    let thms = pl::thms_bounded(h, &cands, cands.len() + 1);
                    ensure!(thms.contains(p), "{p} not reached by bounded theorems");
                    for q in &thms {
                        ensure!(pl::models(h, q), "bounded theorem {q} is not a consequence");
                    }
                }
            }
        }
        Err(t) => {
            ensure!(!valid, "no proof for the valid {p}");
            ensure!(oracle::falsifies(h, p, &t), "{t:?} does not falsify {p}");
            if cross_check {
                let cands = pl::subformula_closure(h.iter().chain([p]));
                let thms = pl::thms_bounded(h, &cands, cands.len() + 1);
                ensure!(
                    !thms.contains(p),
                    "bounded theorems contain the invalid {p}"
                );
            }
        }
    }
    Ok(())
}

fn completeness_exhaustive(ctx: &Ctx) -> Outcome {
    let props = oracle::all_props(2, 3);
    let empty = Context::new();
    each_case(ctx, &props, |_, p| completeness_case(&empty, p, false))
}

fn completeness_random_contexts(ctx: &Ctx) -> Outcome {
    random_cases(ctx, "completeness_contexts", 100, |_, rng| {
        let h = random_context(rng, 2, 2, 3);
        let p = gen::random_prop(rng, 2, 3);
        completeness_case(&h, &p, true)
    })
}

fn hyps_laws(ctx: &Ctx) -> Outcome {
    let props = oracle::all_props(2, 3);
    each_case(ctx, &props, |u, p| {
        let literals: Vec<Prop> = p
            .vars()
            .into_iter()
            .flat_map(|v| [Prop::var(v), Prop::neg(Prop::var(v))])
            .collect();
        let lits: Vec<Set> = literals.iter().map(|q| pl::encode_prop(u, q)).collect();
        let lits = u.set_of(lits);
        let fin = dt::fin_enum(u, lits)?;
        let code = pl::encode_prop(u, p);
        ensure!(
            pl::decode_prop(u, code)? == *p,
            "code round trip fails for {p}"
        );
        for mask in 0u32..8 {
            let t: Valuation = (0..3).filter(|v| mask >> v & 1 == 1).collect();
            let hs = pl::hyps(p, &t);
            let hcodes: Vec<Set> = hs.iter().map(|q| pl::encode_prop(u, q)).collect();
            let hset = u.set_of(hcodes);
            ensure!(u.member(hset, fin), "hyps({p}) ∉ Fin(literals)");
            for v in t.iter().copied() {
                let lit = Prop::var(v);
                if hs.contains(&lit) {
                    let mut t2 = t.clone();
                    t2.remove(&v);
                    let mut want = hs.clone();
                    want.remove(&lit);
                    want.insert(Prop::neg(lit));
                    ensure!(
                        pl::hyps(p, &t2) == want,
                        "variable elimination for {p} at #{v}"
                    );
                }
            }
            let vars = p.vars();
            let restricted: Valuation = t.intersection(&vars).copied().collect();
            ensure!(
                pl::is_true(p, &t) == pl::is_true(p, &restricted),
                "finite support fails for {p}"
            );
            let ts = pl::valuation_set(u, &t);
            let tv = pl::truth_value(u, code, ts)?;
            let bit = u.nat(pl::is_true(p, &t) as u32);
            ensure!(tv == bit, "truth_value disagrees with is_true on {p}");
        }
        Ok(())
    })
}

// ==================== registry ==================== //

pub fn checks() -> Vec<Check> {
    use Suite::*;
    let c = |suite, name, criterion, run| Check {
        suite,
        name,
        criterion,
        run,
    };
    vec![
        c(
            Core,
            "extensionality",
            None,
            extensionality as fn(&Ctx) -> Outcome,
        ),
        c(Core, "pair_injectivity", None, pair_injectivity),
        c(Core, "succ_laws", None, succ_laws),
        c(Core, "print_parse_roundtrip", None, print_parse_roundtrip),
        c(Core, "closure_vs_warshall", Some(3), closure_vs_warshall),
        c(Core, "wf_laws", None, wf_laws),
        c(Core, "ordinal_laws", None, ordinal_laws),
        c(Core, "nat_segments", None, nat_segments),
        c(
            Fixedpoint,
            "lfp_definitional_oracle",
            Some(1),
            lfp_definitional_oracle,
        ),
        c(Fixedpoint, "knaster_tarski", Some(2), knaster_tarski),
        c(
            Fixedpoint,
            "operator_monotonicity",
            None,
            operator_monotonicity,
        ),
        c(
            Fixedpoint,
            "banach_decomposition",
            Some(4),
            banach_decomposition,
        ),
        c(Recursion, "wfrec_equation", Some(5), wfrec_equation),
        c(Recursion, "rank_laws", Some(6), rank_laws),
        c(Recursion, "eclose_minimality", Some(7), eclose_minimality),
        c(
            Recursion,
            "vfrom_rank_criterion",
            Some(7),
            vfrom_rank_criterion,
        ),
        c(Recursion, "hierarchy_laws", None, hierarchy_laws),
        c(Recursion, "epsilon_induction", None, epsilon_induction),
        c(Datatypes, "list_laws", Some(8), list_laws),
        c(Datatypes, "term_laws", Some(8), term_laws),
        c(Datatypes, "tf_laws", Some(8), tf_laws),
        c(Datatypes, "kleene_agreement", Some(8), kleene_agreement),
        c(Datatypes, "recognizer_laws", None, recognizer_laws),
        c(
            Datatypes,
            "constructor_freeness",
            None,
            constructor_freeness,
        ),
        c(Datatypes, "fin_laws", Some(9), fin_laws),
        c(
            Logic,
            "transformer_soundness",
            Some(10),
            transformer_soundness,
        ),
        c(
            Logic,
            "grown_derivations_sound",
            Some(10),
            grown_derivations_sound,
        ),
        c(
            Logic,
            "completeness_exhaustive",
            Some(11),
            completeness_exhaustive,
        ),
        c(
            Logic,
            "completeness_contexts",
            Some(11),
            completeness_random_contexts,
        ),
        c(Logic, "hyps_laws", None, hyps_laws),
    ]
}

/// Runs every check of acceptance criterion `n` (1 to 11) and merges the outcomes.
pub fn criterion(n: u8, ctx: &Ctx) -> Outcome {
    checks()
        .iter()
        .filter(|c| c.criterion == Some(n))
        .map(|c| c.run(ctx))
        .fold(
            Outcome {
                cases: 0,
                failure: None,
            },
            Outcome::merge,
        )
}

/// Runs the selected suites, writing one line per check, and reports whether all passed.
pub fn run(sel: Selection, ctx: &Ctx, out: &mut dyn Write) -> io::Result<bool> {
    writeln!(out, "selftest seed={}", ctx.seed)?;
    let mut failed = 0;
    let mut total = 0;
    for check in checks().iter().filter(|c| sel.includes(c.suite)) {
        let o = check.run(ctx);
        total += 1;
        if !o.passed() {
            failed += 1;
        }
        writeln!(out, "[{}] {} ... {o}", check.suite.name(), check.name)?;
    }
    writeln!(out, "{total} checks, {failed} failed")?;
    Ok(failed == 0)
}
