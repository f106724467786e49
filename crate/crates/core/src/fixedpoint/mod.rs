//! Least fixedpoints of monotone set operators.
//!
//! Operators are built from [`MonoOp`], a closed set of constructors each of which is monotone,
//! so every operator assembled from them is monotone by construction. The least fixedpoint
//! inside a bounding set `D` is reached by iterating from `∅`; for finite `D` the chain
//! `∅ ⊆ h(∅) ⊆ h²(∅) ⊆ …` becomes stationary after at most `|D|` steps.

mod opspec;

use std::fmt;
use std::sync::Arc;

pub use opspec::parse_op;

use crate::datatypes::{self, Injection};
use crate::error::{Error, Result};
use crate::hf::{Set, Universe};
use crate::relations::{self, Rel};

/// Arbitrary operator code. Not covered by the monotonicity guarantee.
#[derive(Clone)]
pub struct RawOp {
    pub name: String,
    pub f: Arc<dyn Fn(&mut Universe, Set) -> Result<Set> + Send + Sync>,
}

impl fmt::Debug for RawOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RawOp({})", self.name)
    }
}

/// Monotone operators on sets.
#[derive(Clone, Debug)]
pub enum MonoOp {
    /// `X ↦ C`
    Const(Set),
    /// `X ↦ X`
    Id,
    Union(Box<MonoOp>, Box<MonoOp>),
    Inter(Box<MonoOp>, Box<MonoOp>),
    /// `X ↦ h(X) × k(X)`
    Prod(Box<MonoOp>, Box<MonoOp>),
    /// `X ↦ h(X) + k(X)`
    Sum(Box<MonoOp>, Box<MonoOp>),
    /// `X ↦ r ∘ h(X)`; elements of `h(X)` that are not pairs are ignored.
    Compose(Rel, Box<MonoOp>),
    /// `X ↦ r``h(X)`
    Image(Rel, Box<MonoOp>),
    /// `X ↦ id(A) ∪ h(X)`
    IdUnion(Set, Box<MonoOp>),
    /// `W ↦ outer − g``(inner − f``W)`. The inner difference is antitone in `W` and the outer
    /// one antitone in its second argument, so the whole is monotone.
    DoubleDiff {
        outer: Set,
        g: Rel,
        inner: Set,
        f: Rel,
    },
    /// `X ↦ Part(h(X), inj)`
    Part(Injection, Box<MonoOp>),
    /// `X ↦` lists of length at most `n` with elements in `h(X)`.
    ListOf(Box<MonoOp>, usize),
    /// `X ↦ {0} ∪ {succ(i). i ∈ X}`
    ReplSucc,
    /// `Z ↦ {∅} ∪ ⋃_{y∈Z} ⋃_{x∈A} {cons(x, y)}`
    FinOp(Set),
    Raw(RawOp),
}

impl MonoOp {
    pub fn union(a: MonoOp, b: MonoOp) -> MonoOp {
        MonoOp::Union(Box::new(a), Box::new(b))
    }

    pub fn inter(a: MonoOp, b: MonoOp) -> MonoOp {
        MonoOp::Inter(Box::new(a), Box::new(b))
    }

    pub fn prod(a: MonoOp, b: MonoOp) -> MonoOp {
        MonoOp::Prod(Box::new(a), Box::new(b))
    }

    pub fn sum(a: MonoOp, b: MonoOp) -> MonoOp {
        MonoOp::Sum(Box::new(a), Box::new(b))
    }

    /// `X ↦ {∅} + A × X`, the list operator over `A`.
    pub fn list_over(u: &mut Universe, a: Set) -> MonoOp {
        let unit = u.nat(1);
        MonoOp::sum(
            MonoOp::Const(unit),
            MonoOp::prod(MonoOp::Const(a), MonoOp::Id),
        )
    }

    /// `X ↦ A × list(X)` with lists cut off at `max_len`, the term operator over `A`.
    pub fn term_over(a: Set, max_len: usize) -> MonoOp {
        MonoOp::prod(
            MonoOp::Const(a),
            MonoOp::ListOf(Box::new(MonoOp::Id), max_len),
        )
    }

    /// False when a [`MonoOp::Raw`] node occurs anywhere in the tree.
    pub fn is_verified(&self) -> bool {
        match self {
            MonoOp::Raw(_) => false,
            MonoOp::Union(a, b) | MonoOp::Inter(a, b) | MonoOp::Prod(a, b) | MonoOp::Sum(a, b) => {
                a.is_verified() && b.is_verified()
            }
            MonoOp::Compose(_, h)
            | MonoOp::Image(_, h)
            | MonoOp::IdUnion(_, h)
            | MonoOp::Part(_, h)
            | MonoOp::ListOf(h, _) => h.is_verified(),
            _ => true,
        }
    }
}

/// Denotation of an operator applied to `x`.
pub fn eval_op(u: &mut Universe, h: &MonoOp, x: Set) -> Result<Set> {
    let out = match h {
        MonoOp::Const(c) => *c,
        MonoOp::Id => x,
        MonoOp::Union(a, b) => {
            let (a, b) = (eval_op(u, a, x)?, eval_op(u, b, x)?);
            u.union2(a, b)
        }
        MonoOp::Inter(a, b) => {
            let (a, b) = (eval_op(u, a, x)?, eval_op(u, b, x)?);
            u.inter(a, b)
        }
        MonoOp::Prod(a, b) => {
            let (a, b) = (eval_op(u, a, x)?, eval_op(u, b, x)?);
            u.product(a, b)?
        }
        MonoOp::Sum(a, b) => {
            let (a, b) = (eval_op(u, a, x)?, eval_op(u, b, x)?);
            datatypes::sum_set(u, a, b)
        }
        MonoOp::Compose(r, h) => {
            let s = eval_op(u, h, x)?;
            let s = relations_only(u, s);
            relations::compose(u, *r, s).set()
        }
        MonoOp::Image(r, h) => {
            let s = eval_op(u, h, x)?;
            relations::image(u, *r, s)
        }
        MonoOp::IdUnion(a, h) => {
            let id = relations::id_on(u, *a).set();
            let s = eval_op(u, h, x)?;
            u.union2(id, s)
        }
        MonoOp::DoubleDiff { outer, g, inner, f } => {
            let fw = relations::image(u, *f, x);
            let rest = u.diff(*inner, fw);
            let grest = relations::image(u, *g, rest);
            u.diff(*outer, grest)
        }
        MonoOp::Part(inj, h) => {
            let s = eval_op(u, h, x)?;
            datatypes::part(u, s, inj)
        }
        MonoOp::ListOf(h, n) => {
            let s = eval_op(u, h, x)?;
            datatypes::lists_upto(u, s, *n)?
        }
        MonoOp::ReplSucc => {
            let succs = u.repl(x, |u, i| Ok(u.succ(i)))?;
            let z = u.empty();
            u.cons(z, succs)
        }
        MonoOp::FinOp(a) => {
            let ys = u.elems(x).to_vec();
            let xs = u.elems(*a).to_vec();
            let mut out = vec![u.empty()];
            for &y in &ys {
                for &e in &xs {
                    out.push(u.cons(e, y));
                }
            }
            u.set_of(out)
        }
        MonoOp::Raw(raw) => (raw.f)(u, x)?,
    };
    u.check_budget()?;
    Ok(out)
}

fn relations_only(u: &mut Universe, s: Set) -> Rel {
    let pairs = u.sep(s, |u, p| u.is_pair(p));
    Rel::new(u, pairs).expect("filtered to pairs")
}

/// `h(D) ⊆ D`. Monotonicity itself holds by construction of `h` (unless it contains raw code).
pub fn bnd_mono_check(u: &mut Universe, d: Set, h: &MonoOp) -> Result<bool> {
    let hd = eval_op(u, h, d)?;
    Ok(u.subset(hd, d))
}

/// The Kleene chain `∅, h(∅), h²(∅), …` up to and including the first repeated value.
pub fn lfp_chain(u: &mut Universe, d: Set, h: &MonoOp) -> Result<Vec<Set>> {
    if !bnd_mono_check(u, d, h)? {
        return Err(Error::NotBounded);
    }
    let max_evals = u.card(d) + 1;
    let mut chain = vec![u.empty()];
    for _ in 0..max_evals {
        let cur = *chain.last().unwrap();
        let next = eval_op(u, h, cur)?;
        if next == cur {
            return Ok(chain);
        }
        chain.push(next);
    }
    Err(Error::NonConvergence(max_evals))
}

/// `lfp(D, h)` by iteration from the empty set.
pub fn lfp_iterate(u: &mut Universe, d: Set, h: &MonoOp) -> Result<Set> {
    Ok(*lfp_chain(u, d, h)?.last().unwrap())
}

/// `hⁿ(∅)`, with no bounding set.
pub fn iterate_op(u: &mut Universe, h: &MonoOp, n: usize) -> Result<Set> {
    let mut x = u.empty();
    for _ in 0..n {
        x = eval_op(u, h, x)?;
    }
    Ok(x)
}

/// Checks the premise of the induction rule for `A = lfp(D, h)`: every element of
/// `h({x ∈ A. ψ(x)})` satisfies `ψ`.
pub fn induction_check(
    u: &mut Universe,
    d: Set,
    h: &MonoOp,
    mut psi: impl FnMut(&mut Universe, Set) -> bool,
) -> Result<bool> {
    let a = lfp_iterate(u, d, h)?;
    let a_psi = u.sep(a, &mut psi);
    let image = eval_op(u, h, a_psi)?;
    let elems = u.elems(image).to_vec();
    Ok(elems.into_iter().all(|x| psi(u, x)))
}

/// Outcome of comparing two least fixedpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LfpMono {
    /// `h(X) ⊆ i(X)` held at every iterate `X` of the `h`-chain.
    pub premise: bool,
    /// `lfp(D, h) ⊆ lfp(E, i)`
    pub conclusion: bool,
}

pub fn lfp_mono_report(
    u: &mut Universe,
    d: Set,
    h: &MonoOp,
    e: Set,
    i: &MonoOp,
) -> Result<LfpMono> {
    let chain = lfp_chain(u, d, h)?;
    let mut premise = true;
    for &x in &chain {
        let hx = eval_op(u, h, x)?;
        let ix = eval_op(u, i, x)?;
        premise &= u.subset(hx, ix);
    }
    let lh = *chain.last().unwrap();
    let li = lfp_iterate(u, e, i)?;
    Ok(LfpMono {
        premise,
        conclusion: u.subset(lh, li),
    })
}

/// Monotonicity of `lfp`: returns whether `lfp(D, h) ⊆ lfp(E, i)`.
pub fn lfp_mono_check(u: &mut Universe, d: Set, h: &MonoOp, e: Set, i: &MonoOp) -> Result<bool> {
    Ok(lfp_mono_report(u, d, h, e, i)?.conclusion)
}

// -------------------- Banach and Schröder-Bernstein -------------------- //

/// The four regions of a Banach decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BanachParts {
    pub xa: Set,
    pub xb: Set,
    pub ya: Set,
    pub yb: Set,
}

/// Partitions `X` and `Y` for functions `f: X → Y` and `g: Y → X` with
/// `XA = lfp(X, λW. X − g``(Y − f``W))`.
pub fn banach_decompose(u: &mut Universe, x: Set, y: Set, f: Set, g: Set) -> Result<BanachParts> {
    let f = relations::check_function(u, f, x, y)?;
    let g = relations::check_function(u, g, y, x)?;
    banach_parts(u, x, y, f, g)
}

fn banach_parts(u: &mut Universe, x: Set, y: Set, f: Rel, g: Rel) -> Result<BanachParts> {
    let h = MonoOp::DoubleDiff {
        outer: x,
        g,
        inner: y,
        f,
    };
    let xa = lfp_iterate(u, x, &h)?;
    let xb = u.diff(x, xa);
    let ya = relations::image(u, f, xa);
    let yb = u.diff(y, ya);
    Ok(BanachParts { xa, xb, ya, yb })
}

/// The six defining equations, in the order
/// `XA∩XB=∅, XA∪XB=X, f``XA=YA, YA∩YB=∅, YA∪YB=Y, g``YB=XB`.
pub fn banach_equations(
    u: &mut Universe,
    parts: &BanachParts,
    x: Set,
    y: Set,
    f: Rel,
    g: Rel,
) -> [bool; 6] {
    let e = u.empty();
    let BanachParts { xa, xb, ya, yb } = *parts;
    let i1 = u.inter(xa, xb);
    let u1 = u.union2(xa, xb);
    let fa = relations::image(u, f, xa);
    let i2 = u.inter(ya, yb);
    let u2 = u.union2(ya, yb);
    let gb = relations::image(u, g, yb);
    [i1 == e, u1 == x, fa == ya, i2 == e, u2 == y, gb == xb]
}

/// The bijection `(f↾XA) ∪ (g↾YB)⁻¹ : X → Y` for injections `f: X → Y` and `g: Y → X`.
pub fn schroeder_bernstein(u: &mut Universe, x: Set, y: Set, f: Set, g: Set) -> Result<Set> {
    let f = relations::check_function(u, f, x, y)?;
    let g = relations::check_function(u, g, y, x)?;
    if !relations::is_injective(u, f) || !relations::is_injective(u, g) {
        return Err(Error::NotInjective);
    }
    let parts = banach_parts(u, x, y, f, g)?;
    let left = u.restrict(f.set(), parts.xa)?;
    let right = u.restrict(g.set(), parts.yb)?;
    let right = Rel::new(u, right)?;
    let right = relations::converse(u, right).set();
    let h = u.union2(left, right);
    assert!(
        is_bijection(u, h, x, y),
        "Schröder-Bernstein construction produced a non-bijection"
    );
    Ok(h)
}

fn is_bijection(u: &mut Universe, h: Set, x: Set, y: Set) -> bool {
    match relations::check_function(u, h, x, y) {
        Ok(r) => relations::is_injective(u, r) && relations::range(u, r) == y,
        Err(_) => false,
    }
}
