//! Random instances for the property sweeps. Everything is driven by the caller's generator.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::datatypes::{self, Injection, Side};
use crate::fixedpoint::MonoOp;
use crate::hf::{Set, Universe};
use crate::proplogic::{self, Context, Derivation, Prop};
use crate::relations::Rel;

/// A set of rank at most `rank` with at most `width` elements at each level.
pub fn random_set(u: &mut Universe, rng: &mut (impl Rng + ?Sized), rank: u32, width: usize) -> Set {
    if rank == 0 {
        return u.empty();
    }
    let n = rng.random_range(0..=width);
    let elems: Vec<Set> = (0..n)
        .map(|_| {
            let r = rng.random_range(0..rank);
            random_set(u, rng, r, width)
        })
        .collect();
    u.set_of(elems)
}

/// A random subset of `items`, each kept with probability `p`.
pub fn random_subset(
    u: &mut Universe,
    rng: &mut (impl Rng + ?Sized),
    items: &[Set],
    p: f64,
) -> Set {
    let picked: Vec<Set> = items
        .iter()
        .copied()
        .filter(|_| rng.random_bool(p))
        .collect();
    u.set_of(picked)
}

/// A relation on `field` with each pair present with probability `p`.
pub fn random_rel(u: &mut Universe, rng: &mut (impl Rng + ?Sized), field: &[Set], p: f64) -> Rel {
    let mut pairs = Vec::new();
    for &a in field {
        for &b in field {
            if rng.random_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    Rel::from_pairs(u, pairs)
}

/// A well-founded relation on `field`: pairs only go upwards in a random linear order.
pub fn random_wf_rel(
    u: &mut Universe,
    rng: &mut (impl Rng + ?Sized),
    field: &[Set],
    p: f64,
) -> Rel {
    let mut order = field.to_vec();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if rng.random_bool(p) {
                pairs.push((order[i], order[j]));
            }
        }
    }
    Rel::from_pairs(u, pairs)
}

/// A total function from `x` to nonempty `y`, as a set of pairs.
pub fn random_function(
    u: &mut Universe,
    rng: &mut (impl Rng + ?Sized),
    x: &[Set],
    y: &[Set],
) -> Set {
    let pairs: Vec<(Set, Set)> = x.iter().map(|&a| (a, *y.choose(rng).unwrap())).collect();
    Rel::from_pairs(u, pairs).set()
}

/// An injection from `x` into `y`; needs `|x| ≤ |y|`.
pub fn random_injection(
    u: &mut Universe,
    rng: &mut (impl Rng + ?Sized),
    x: &[Set],
    y: &[Set],
) -> Set {
    assert!(x.len() <= y.len());
    let mut targets = y.to_vec();
    targets.shuffle(rng);
    let pairs: Vec<(Set, Set)> = x.iter().copied().zip(targets).collect();
    Rel::from_pairs(u, pairs).set()
}

/// `n` distinct small sets: numerals and pairs of numerals.
pub fn random_atoms(u: &mut Universe, rng: &mut (impl Rng + ?Sized), n: usize) -> Vec<Set> {
    let mut pool: Vec<Set> = (0..8).map(|i| u.nat(i)).collect();
    for i in 0..4 {
        for j in 0..3 {
            let (a, b) = (u.nat(i), u.nat(j));
            pool.push(u.pair(a, b));
        }
    }
    pool.shuffle(rng);
    pool.truncate(n);
    pool
}

pub fn random_list(
    u: &mut Universe,
    rng: &mut (impl Rng + ?Sized),
    labels: &[Set],
    max_len: usize,
) -> Set {
    let n = rng.random_range(0..=max_len);
    let items: Vec<Set> = (0..n).map(|_| *labels.choose(rng).unwrap()).collect();
    datatypes::list_from(u, &items)
}

/// A term whose root is at depth 1 and whose leaves are at depth at most `depth`.
pub fn random_term(
    u: &mut Universe,
    rng: &mut (impl Rng + ?Sized),
    labels: &[Set],
    depth: usize,
    branch: usize,
) -> Set {
    let a = *labels.choose(rng).unwrap();
    let n = if depth <= 1 {
        0
    } else {
        rng.random_range(0..=branch)
    };
    let kids: Vec<Set> = (0..n)
        .map(|_| random_term(u, rng, labels, depth - 1, branch))
        .collect();
    let ts = datatypes::list_from(u, &kids);
    datatypes::apply_term(u, a, ts)
}

/// Every term over `labels` of depth at most `depth` with at most `branch` children per node.
pub fn all_terms(u: &mut Universe, labels: &[Set], depth: usize, branch: usize) -> Vec<Set> {
    if depth == 0 {
        return Vec::new();
    }
    let below = all_terms(u, labels, depth - 1, branch);
    let mut lists: Vec<Vec<Set>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<Set>> = vec![Vec::new()];
    for _ in 0..branch {
        let mut next = Vec::new();
        for l in &frontier {
            for &t in &below {
                let mut l2 = l.clone();
                l2.push(t);
                next.push(l2);
            }
        }
        lists.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for &a in labels {
        for l in &lists {
            let ts = datatypes::list_from(u, l);
            out.push(datatypes::apply_term(u, a, ts));
        }
    }
    out
}

pub fn random_tree(
    u: &mut Universe,
    rng: &mut (impl Rng + ?Sized),
    labels: &[Set],
    depth: usize,
    branch: usize,
) -> Set {
    let a = *labels.choose(rng).unwrap();
    let f = random_forest(u, rng, labels, depth.saturating_sub(1), branch);
    datatypes::tcons(u, a, f)
}

pub fn random_forest(
    u: &mut Universe,
    rng: &mut (impl Rng + ?Sized),
    labels: &[Set],
    depth: usize,
    branch: usize,
) -> Set {
    let n = if depth == 0 {
        0
    } else {
        rng.random_range(0..=branch)
    };
    let trees: Vec<Set> = (0..n)
        .map(|_| random_tree(u, rng, labels, depth, branch))
        .collect();
    let mut f = datatypes::fnil(u);
    for &t in trees.iter().rev() {
        f = datatypes::fcons(u, t, f);
    }
    f
}

/// A tree or a forest, with equal probability.
pub fn random_tf(
    u: &mut Universe,
    rng: &mut (impl Rng + ?Sized),
    labels: &[Set],
    depth: usize,
    branch: usize,
) -> Set {
    if rng.random_bool(0.5) {
        random_tree(u, rng, labels, depth, branch)
    } else {
        random_forest(u, rng, labels, depth, branch)
    }
}

/// A proposition over atoms `0..nvars` with at most `max_conn` implications.
pub fn random_prop(rng: &mut (impl Rng + ?Sized), nvars: u32, max_conn: usize) -> Prop {
    let n = rng.random_range(0..=max_conn);
    prop_with(rng, nvars, n)
}

fn prop_with(rng: &mut (impl Rng + ?Sized), nvars: u32, n: usize) -> Prop {
    if n == 0 {
        return match rng.random_range(0..=nvars) {
            0 => Prop::Fls,
            v => Prop::Var(v - 1),
        };
    }
    let left = rng.random_range(0..n);
    Prop::imp(
        prop_with(rng, nvars, left),
        prop_with(rng, nvars, n - 1 - left),
    )
}

/// Grows a pool of derivations under `h` for `steps` rounds by adding axiom instances,
/// hypotheses and modus ponens between pool members, and returns the pool with conclusions.
pub fn grow_derivations(
    rng: &mut (impl Rng + ?Sized),
    h: &Context,
    nvars: u32,
    steps: usize,
) -> Vec<(Arc<Derivation>, Prop)> {
    let hs: Vec<Prop> = h.iter().cloned().collect();
    let mut pool: Vec<(Arc<Derivation>, Prop)> = Vec::new();
    let mut by_concl: HashMap<Prop, usize> = HashMap::new();
    for _ in 0..steps {
        let roll = rng.random_range(0..10);
        let d = if roll < 4 && pool.len() >= 2 {
            // modus ponens between an implication in the pool and a matching premise
            let majors: Vec<usize> = (0..pool.len())
                .filter(|&i| {
                    pool[i]
                        .1
                        .as_imp()
                        .is_some_and(|(a, _)| by_concl.contains_key(a))
                })
                .collect();
            match majors.choose(rng) {
                Some(&i) => {
                    let (a, _) = pool[i].1.as_imp().unwrap();
                    let j = by_concl[a];
                    Derivation::mp(pool[i].0.clone(), pool[j].0.clone())
                }
                None => Derivation::k(pick(rng, &pool, nvars), pick(rng, &pool, nvars)),
            }
        } else if roll < 5 && !hs.is_empty() {
            Derivation::hyp(hs.choose(rng).unwrap().clone())
        } else if roll < 7 {
            Derivation::k(pick(rng, &pool, nvars), pick(rng, &pool, nvars))
        } else if roll < 9 {
            Derivation::s(
                pick(rng, &pool, nvars),
                pick(rng, &pool, nvars),
                pick(rng, &pool, nvars),
            )
        } else {
            Derivation::dn(pick(rng, &pool, nvars))
        };
        let c = proplogic::conclusion(&d).expect("grown derivations are well-formed");
        by_concl.entry(c.clone()).or_insert(pool.len());
        pool.push((d, c));
    }
    pool
}

fn pick(rng: &mut (impl Rng + ?Sized), pool: &[(Arc<Derivation>, Prop)], nvars: u32) -> Prop {
    if !pool.is_empty() && rng.random_bool(0.4) {
        pool[rng.random_range(0..pool.len())].1.clone()
    } else {
        random_prop(rng, nvars, 2)
    }
}

/// A random operator over the subsets of `dom`, clamped into `dom` by a final intersection
/// so that `dom` bounds it.
pub fn random_mono_op(
    u: &mut Universe,
    rng: &mut (impl Rng + ?Sized),
    dom: &[Set],
    depth: usize,
) -> MonoOp {
    let d = u.set_of(dom.iter().copied());
    MonoOp::inter(op_node(u, rng, dom, depth), MonoOp::Const(d))
}

fn op_node(u: &mut Universe, rng: &mut (impl Rng + ?Sized), dom: &[Set], depth: usize) -> MonoOp {
    let leaf = depth == 0 || rng.random_bool(0.25);
    if leaf {
        return if rng.random_bool(0.5) {
            MonoOp::Id
        } else {
            MonoOp::Const(random_subset(u, rng, dom, 0.3))
        };
    }
    match rng.random_range(0..11) {
        0 | 1 => MonoOp::Union(
            Box::new(op_node(u, rng, dom, depth - 1)),
            Box::new(op_node(u, rng, dom, depth - 1)),
        ),
        2 => MonoOp::Inter(
            Box::new(op_node(u, rng, dom, depth - 1)),
            Box::new(op_node(u, rng, dom, depth - 1)),
        ),
        3 | 4 => MonoOp::Image(
            random_rel(u, rng, dom, 0.25),
            Box::new(op_node(u, rng, dom, depth - 1)),
        ),
        5 => MonoOp::Compose(
            random_rel(u, rng, dom, 0.25),
            Box::new(op_node(u, rng, dom, depth - 1)),
        ),
        6 => MonoOp::IdUnion(
            random_subset(u, rng, dom, 0.5),
            Box::new(op_node(u, rng, dom, depth - 1)),
        ),
        7 => MonoOp::Prod(
            Box::new(op_node(u, rng, dom, depth - 1)),
            Box::new(op_node(u, rng, dom, depth - 1)),
        ),
        8 => MonoOp::Sum(
            Box::new(op_node(u, rng, dom, depth - 1)),
            Box::new(op_node(u, rng, dom, depth - 1)),
        ),
        9 => {
            let sides: Vec<Side> = (0..rng.random_range(1..=2))
                .map(|_| {
                    if rng.random_bool(0.5) {
                        Side::Inl
                    } else {
                        Side::Inr
                    }
                })
                .collect();
            MonoOp::Part(
                Injection::new(sides),
                Box::new(op_node(u, rng, dom, depth - 1)),
            )
        }
        _ => MonoOp::DoubleDiff {
            outer: random_subset(u, rng, dom, 0.7),
            g: random_rel(u, rng, dom, 0.2),
            inner: random_subset(u, rng, dom, 0.7),
            f: random_rel(u, rng, dom, 0.2),
        },
    }
}

/// A domain of `n` elements rich enough for every operator constructor to reach back into it:
/// numerals, pairs of numerals, and sum tags.
pub fn random_op_domain(u: &mut Universe, rng: &mut (impl Rng + ?Sized), n: usize) -> Vec<Set> {
    let mut pool: Vec<Set> = (0..4).map(|i| u.nat(i)).collect();
    for i in 0..2 {
        for j in 0..2 {
            let (a, b) = (u.nat(i), u.nat(j));
            pool.push(u.pair(a, b));
        }
    }
    for i in 0..2 {
        let a = u.nat(i);
        pool.push(datatypes::inl(u, a));
        pool.push(datatypes::inr(u, a));
    }
    pool.shuffle(rng);
    pool.truncate(n);
    pool
}
