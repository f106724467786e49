//! Well-founded recursion, ∈-recursion and rank recursion over hereditarily finite sets, plus
//! the cumulative hierarchy they rest on.
//!
//! A recursion body receives the current argument and a [`RecFn`], the interface to the
//! already-defined part of the function. What the interface may be asked depends on the
//! operator: predecessors under `r` for [`wfrec`], elements of the argument for [`transrec`],
//! and any set of smaller rank for [`vrec`].

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hf::{Set, Universe};
use crate::relations::{self, Rel};

/// The recursive-results interface handed to a recursion body.
pub trait RecFn {
    /// Value of the function at `y`.
    fn at(&mut self, u: &mut Universe, y: Set) -> Result<Set>;

    /// The domain of the interface, when it is a finite set that can be listed.
    fn domain(&self) -> Option<Set>;

    /// The function as a set of pairs.
    fn as_set(&mut self, u: &mut Universe) -> Result<Set>;
}

/// A recursion body `H(x, f)`.
pub type Body<'a> = dyn Fn(&mut Universe, Set, &mut dyn RecFn) -> Result<Set> + 'a;

/// A function given by an explicit set of pairs, seen through domain `dom`.
struct SetFn {
    f: Set,
    dom: Set,
}

impl RecFn for SetFn {
    fn at(&mut self, u: &mut Universe, y: Set) -> Result<Set> {
        if !u.member(y, self.dom) {
            return Err(Error::NotInDomain);
        }
        u.apply(self.f, y)
    }

    fn domain(&self) -> Option<Set> {
        Some(self.dom)
    }

    fn as_set(&mut self, u: &mut Universe) -> Result<Set> {
        u.restrict(self.f, self.dom)
    }
}

/// Already computed values, seen through domain `dom`.
struct TableFn<'t> {
    table: &'t HashMap<Set, Set>,
    dom: Set,
}

impl RecFn for TableFn<'_> {
    fn at(&mut self, u: &mut Universe, y: Set) -> Result<Set> {
        if !u.member(y, self.dom) {
            return Err(Error::NotInDomain);
        }
        self.table.get(&y).copied().ok_or(Error::NotInDomain)
    }

    fn domain(&self) -> Option<Set> {
        Some(self.dom)
    }

    fn as_set(&mut self, u: &mut Universe) -> Result<Set> {
        let table = self.table;
        u.lambda_set(self.dom, |_, x| {
            table.get(&x).copied().ok_or(Error::NotInDomain)
        })
    }
}

/// Another interface cut down to a smaller domain.
struct Restricted<'f> {
    inner: &'f mut dyn RecFn,
    dom: Set,
}

impl RecFn for Restricted<'_> {
    fn at(&mut self, u: &mut Universe, y: Set) -> Result<Set> {
        if !u.member(y, self.dom) {
            return Err(Error::NotInDomain);
        }
        self.inner.at(u, y)
    }

    fn domain(&self) -> Option<Set> {
        Some(self.dom)
    }

    fn as_set(&mut self, u: &mut Universe) -> Result<Set> {
        let all = self.inner.as_set(u)?;
        u.restrict(all, self.dom)
    }
}

// -------------------- well-founded recursion -------------------- //

/// Evaluates the defining equation `f = λx ∈ r⁻¹{a}. H(x, f ↾ r⁻¹{x})` literally.
pub fn is_recfun(u: &mut Universe, r: Rel, a: Set, body: &Body, f: Set) -> Result<bool> {
    let dom = relations::inv_image_singleton(u, r, a);
    let lam = u.lambda_set(dom, |u, x| {
        let pre = relations::inv_image_singleton(u, r, x);
        body(u, x, &mut SetFn { f, dom: pre })
    })?;
    Ok(lam == f)
}

fn predecessors(u: &Universe, r: Rel) -> HashMap<Set, Vec<Set>> {
    let mut preds: HashMap<Set, Vec<Set>> = HashMap::new();
    for (y, x) in r.pairs(u) {
        preds.entry(x).or_default().push(y);
    }
    preds
}

/// Computes `H(x, ·)` at `x` and, first, at everything below it. `r` must be well-founded.
fn fill(
    u: &mut Universe,
    preds: &HashMap<Set, Vec<Set>>,
    body: &Body,
    x: Set,
    table: &mut HashMap<Set, Set>,
) -> Result<()> {
    if table.contains_key(&x) {
        return Ok(());
    }
    let below = preds.get(&x).cloned().unwrap_or_default();
    for &y in &below {
        fill(u, preds, body, y, table)?;
    }
    let dom = u.set_of(below);
    let v = body(u, x, &mut TableFn { table, dom })?;
    table.insert(x, v);
    Ok(())
}

fn require_wf_trans(u: &Universe, r: Rel) -> Result<()> {
    if !relations::is_wf(u, r) {
        return Err(Error::NotWellFounded);
    }
    if !relations::is_transitive_rel(u, r) {
        return Err(Error::NotTransitive);
    }
    Ok(())
}

/// The unique `f` with `is_recfun(r, a, H, f)`, for well-founded transitive `r`.
pub fn the_recfun(u: &mut Universe, r: Rel, a: Set, body: &Body) -> Result<Set> {
    require_wf_trans(u, r)?;
    let preds = predecessors(u, r);
    let dom = relations::inv_image_singleton(u, r, a);
    let mut table = HashMap::new();
    for x in u.elems(dom).to_vec() {
        fill(u, &preds, body, x, &mut table)?;
    }
    let f = u.lambda_set(dom, |_, x| Ok(table[&x]))?;
    assert!(
        is_recfun(u, r, a, body, f)?,
        "the_recfun result fails its defining equation"
    );
    Ok(f)
}

/// `wftrec(r, a, H) = H(a, the_recfun(r, a, H))`
pub fn wftrec(u: &mut Universe, r: Rel, a: Set, body: &Body) -> Result<Set> {
    let f = the_recfun(u, r, a, body)?;
    let dom = relations::inv_image_singleton(u, r, a);
    body(u, a, &mut SetFn { f, dom })
}

/// Well-founded recursion: `wfrec(r, a, H) = H(a, λx ∈ r⁻¹{a}. wfrec(r, x, H))`.
pub fn wfrec(u: &mut Universe, r: Rel, a: Set, body: &Body) -> Result<Set> {
    if !relations::is_wf(u, r) {
        return Err(Error::NotWellFounded);
    }
    let plus = relations::trancl(u, r)?;
    let restricted = |u: &mut Universe, x: Set, f: &mut dyn RecFn| {
        let dom = relations::inv_image_singleton(u, r, x);
        body(u, x, &mut Restricted { inner: f, dom })
    };
    wftrec(u, plus, a, &restricted)
}

/// Evaluates both sides of the `wfrec` recursion equation at `a` and compares them.
pub fn wfrec_equation_holds(u: &mut Universe, r: Rel, a: Set, body: &Body) -> Result<bool> {
    let lhs = wfrec(u, r, a, body)?;
    let dom = relations::inv_image_singleton(u, r, a);
    let mut table = HashMap::new();
    for x in u.elems(dom).to_vec() {
        let v = wfrec(u, r, x, body)?;
        table.insert(x, v);
    }
    let rhs = body(u, a, &mut TableFn { table: &table, dom })?;
    Ok(lhs == rhs)
}

// -------------------- ∈-recursion and rank -------------------- //

/// `⋃ⁿ(a)`
pub fn nfold_union(u: &mut Universe, a: Set, n: usize) -> Set {
    (0..n).fold(a, |x, _| u.big_union(x))
}

/// The least transitive set including `a`: `⋃_n ⋃ⁿ(a)`.
pub fn eclose(u: &mut Universe, a: Set) -> Set {
    if let Some(&t) = u.eclose_memo.get(&a) {
        return t;
    }
    let mut acc = a;
    let mut cur = a;
    // ⋃ⁿ(a) reaches ∅ once n exceeds the rank of a
    while cur != u.empty() {
        cur = u.big_union(cur);
        acc = u.union2(acc, cur);
    }
    u.eclose_memo.insert(a, acc);
    acc
}

/// `transrec(a, H) = wfrec(Memrel(eclose({a})), a, H)`
pub fn transrec(u: &mut Universe, a: Set, body: &Body) -> Result<Set> {
    let sa = u.singleton(a);
    let t = eclose(u, sa);
    let m = relations::memrel(u, t);
    wfrec(u, m, a, body)
}

/// `rank(a) = ⋃_{y∈a} succ(rank(y))`, as an ordinal.
pub fn rank(u: &mut Universe, a: Set) -> Set {
    if let Some(&r) = u.rank_memo.get(&a) {
        return r;
    }
    let mut succs = Vec::new();
    for y in u.elems(a).to_vec() {
        let ry = rank(u, y);
        succs.push(u.succ(ry));
    }
    let fam = u.set_of(succs);
    let r = u.big_union(fam);
    u.rank_memo.insert(a, r);
    r
}

// -------------------- the cumulative hierarchy -------------------- //

/// Largest stage of the hierarchy that may be materialized.
pub const MAX_VFROM: u32 = 4;

/// `V[A]_n = A ∪ ⋃_{j<n} ℘(V[A]_j)`
pub fn vfrom(u: &mut Universe, a: Set, n: u32) -> Result<Set> {
    if n > MAX_VFROM {
        return Err(Error::BoundExceeded(format!(
            "V[A]_{n} is beyond the materialization limit {MAX_VFROM}"
        )));
    }
    let mut stages: Vec<Set> = Vec::with_capacity(n as usize + 1);
    let mut powers: Vec<Set> = Vec::new();
    for k in 0..=n as usize {
        let mut v = a;
        for &p in &powers[..k] {
            v = u.union2(v, p);
        }
        stages.push(v);
        if k < n as usize {
            powers.push(u.powerset(v)?);
        }
    }
    Ok(stages[n as usize])
}

/// `x ∈ univ(A) = V[A]_ω`
pub fn in_univ(u: &Universe, a: Set, x: Set) -> bool {
    u.member(x, a) || u.elems(x).iter().all(|&e| in_univ(u, a, e))
}

// -------------------- rank recursion -------------------- //

struct VrecEval<'b> {
    body: &'b Body<'b>,
    memo: HashMap<Set, Set>,
}

impl<'b> VrecEval<'b> {
    fn eval(&mut self, u: &mut Universe, x: Set) -> Result<Set> {
        if let Some(&v) = self.memo.get(&x) {
            return Ok(v);
        }
        let body = self.body;
        let bound = u.rank_num(x);
        let v = body(u, x, &mut VrecCalls { ev: self, bound })?;
        self.memo.insert(x, v);
        Ok(v)
    }
}

/// `λy ∈ V_rank(x). Vrec(y, H)`, queried pointwise.
struct VrecCalls<'s, 'b> {
    ev: &'s mut VrecEval<'b>,
    bound: u32,
}

impl RecFn for VrecCalls<'_, '_> {
    fn at(&mut self, u: &mut Universe, y: Set) -> Result<Set> {
        let rank = u.rank_num(y);
        if rank >= self.bound {
            return Err(Error::VrecGuard {
                query: y,
                rank,
                bound: self.bound,
            });
        }
        self.ev.eval(u, y)
    }

    fn domain(&self) -> Option<Set> {
        None
    }

    fn as_set(&mut self, u: &mut Universe) -> Result<Set> {
        let e = u.empty();
        let v = vfrom(u, e, self.bound)?;
        let ev = &mut *self.ev;
        u.lambda_set(v, |u, y| ev.eval(u, y))
    }
}

/// Rank recursion: `Vrec(a, H) = H(a, λy ∈ V_rank(a). Vrec(y, H))`.
pub fn vrec(u: &mut Universe, a: Set, body: &Body) -> Result<Set> {
    VrecEval {
        body,
        memo: HashMap::new(),
    }
    .eval(u, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(u: &mut Universe, t: &str) -> Set {
        u.parse(t).unwrap()
    }

    #[test]
    fn nfold_union_examples() {
        let mut u = Universe::new();
        let a = s(&mut u, "{<1,2>,7}");
        assert_eq!(nfold_union(&mut u, a, 0), a);
        let a = s(&mut u, "{2}");
        assert_eq!(nfold_union(&mut u, a, 1), u.nat(2));
        let a = s(&mut u, "{{{}}}");
        assert_eq!(nfold_union(&mut u, a, 2), u.empty());
    }

    #[test]
    fn eclose_examples() {
        let mut u = Universe::new();
        let e = u.empty();
        assert_eq!(eclose(&mut u, e), e);
        let a = s(&mut u, "{2}");
        assert_eq!(eclose(&mut u, a), u.nat(3));
        let a = s(&mut u, "{{1}}");
        assert_eq!(eclose(&mut u, a), s(&mut u, "{{1},1,0}"));
    }

    fn const_zero(u: &mut Universe, _: Set, _: &mut dyn RecFn) -> Result<Set> {
        Ok(u.empty())
    }

    fn identity(_: &mut Universe, x: Set, _: &mut dyn RecFn) -> Result<Set> {
        Ok(x)
    }

    #[test]
    fn is_recfun_examples() {
        let mut u = Universe::new();
        let two = u.nat(2);
        let r = relations::memrel(&mut u, two);
        let one = u.nat(1);
        let f = s(&mut u, "{<0,0>}");
        assert!(is_recfun(&mut u, r, one, &const_zero, f).unwrap());
        let e = u.empty();
        assert!(!is_recfun(&mut u, r, one, &const_zero, e).unwrap());
        assert!(is_recfun(&mut u, r, e, &const_zero, e).unwrap());
    }

    #[test]
    fn the_recfun_examples() {
        let mut u = Universe::new();
        let three = u.nat(3);
        let r = relations::memrel(&mut u, three);
        let two = u.nat(2);
        let f = the_recfun(&mut u, r, two, &identity).unwrap();
        assert_eq!(f, s(&mut u, "{<0,0>,<1,1>}"));
        let e = u.empty();
        assert_eq!(the_recfun(&mut u, r, e, &identity).unwrap(), e);
        let chain = s(&mut u, "{<0,1>,<1,2>}");
        let chain = Rel::new(&u, chain).unwrap();
        assert_eq!(
            the_recfun(&mut u, chain, two, &identity),
            Err(Error::NotTransitive)
        );
        let cyc = s(&mut u, "{<0,0>}");
        let cyc = Rel::new(&u, cyc).unwrap();
        assert_eq!(
            wfrec(&mut u, cyc, two, &identity),
            Err(Error::NotWellFounded)
        );
    }

    /// `H(x, f) = {f'y. y ∈ dom f}`
    fn collect_values(u: &mut Universe, _: Set, f: &mut dyn RecFn) -> Result<Set> {
        let dom = f.domain().expect("finite interface");
        let mut vals = Vec::new();
        for y in u.elems(dom).to_vec() {
            vals.push(f.at(u, y)?);
        }
        Ok(u.set_of(vals))
    }

    #[test]
    fn wfrec_examples() {
        let mut u = Universe::new();
        let four = u.nat(4);
        let r = relations::memrel(&mut u, four);
        let three = u.nat(3);
        assert_eq!(wfrec(&mut u, r, three, &identity).unwrap(), three);
        // by hand: v(0) = ∅, v(1) = {∅}, v(2) = {∅,{∅}}, v(3) = {v0,v1,v2} = 3
        let v = wfrec(&mut u, r, three, &collect_values).unwrap();
        assert_eq!(v, three);
        assert!(wfrec_equation_holds(&mut u, r, three, &collect_values).unwrap());
        // on a non-transitive chain only the immediate predecessor is visible
        let chain = s(&mut u, "{<0,1>,<1,2>}");
        let chain = Rel::new(&u, chain).unwrap();
        let two = u.nat(2);
        let v = wfrec(&mut u, chain, two, &collect_values).unwrap();
        // v(0) = ∅, v(1) = {∅}, v(2) = {v(1)} = {{∅}}
        assert_eq!(v, s(&mut u, "{1}"));
    }

    fn rank_body(u: &mut Universe, x: Set, f: &mut dyn RecFn) -> Result<Set> {
        let mut succs = Vec::new();
        for y in u.elems(x).to_vec() {
            let ry = f.at(u, y)?;
            succs.push(u.succ(ry));
        }
        let fam = u.set_of(succs);
        Ok(u.big_union(fam))
    }

    #[test]
    fn transrec_and_rank() {
        let mut u = Universe::new();
        let e = u.empty();
        assert_eq!(transrec(&mut u, e, &rank_body).unwrap(), e);
        for t in ["<0,1>", "{{1},<2,0>}", "5", "{3,{{{0}}}}"] {
            let a = s(&mut u, t);
            let via_transrec = transrec(&mut u, a, &rank_body).unwrap();
            let direct = rank(&mut u, a);
            assert_eq!(via_transrec, direct, "{t}");
            assert_eq!(u.as_nat(direct), Some(u.rank_num(a)));
        }
        let p = s(&mut u, "<0,0>");
        assert_eq!(rank(&mut u, p), u.nat(2));
        let p = s(&mut u, "<0,1>");
        assert_eq!(rank(&mut u, p), u.nat(3));
        for n in 0..=8 {
            let o = u.nat(n);
            assert_eq!(rank(&mut u, o), o);
        }
    }

    #[test]
    fn transrec_interface_is_the_elements() {
        let mut u = Universe::new();
        let a = s(&mut u, "{<0,1>,3}");
        let dom_is_a = |u: &mut Universe, x: Set, f: &mut dyn RecFn| {
            assert_eq!(f.domain(), Some(x));
            Ok(u.empty())
        };
        transrec(&mut u, a, &dom_is_a).unwrap();
    }

    #[test]
    fn vfrom_examples() {
        let mut u = Universe::new();
        let e = u.empty();
        assert_eq!(vfrom(&mut u, e, 0).unwrap(), e);
        assert_eq!(vfrom(&mut u, e, 2).unwrap(), u.nat(2));
        let a = s(&mut u, "{7}");
        let v1 = vfrom(&mut u, a, 1).unwrap();
        assert_eq!(v1, s(&mut u, "{7,0,{7}}"));
        let v4 = vfrom(&mut u, e, 4).unwrap();
        assert_eq!(u.card(v4), 16);
        assert!(matches!(vfrom(&mut u, e, 5), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn univ_examples() {
        let mut u = Universe::new();
        let a = s(&mut u, "{<5,5>}");
        let seven = u.nat(7);
        assert!(in_univ(&u, a, seven));
        let x = s(&mut u, "<5,5>");
        assert!(in_univ(&u, a, x));
        let e = u.empty();
        let y = s(&mut u, "{<1,{2}>,9}");
        assert!(in_univ(&u, e, y));
    }

    #[test]
    fn vrec_examples() {
        let mut u = Universe::new();
        let a = s(&mut u, "{<1,2>,3}");
        assert_eq!(vrec(&mut u, a, &identity).unwrap(), a);
        let selfish = |u: &mut Universe, x: Set, f: &mut dyn RecFn| f.at(u, x);
        let r = vrec(&mut u, a, &selfish);
        assert_eq!(
            r,
            Err(Error::VrecGuard {
                query: a,
                rank: 5,
                bound: 5
            })
        );
        // recursion on the second component of nested pairs
        let second = |u: &mut Universe, x: Set, f: &mut dyn RecFn| match u.as_pair(x) {
            Some((_, b)) => {
                let rb = f.at(u, b)?;
                Ok(u.succ(rb))
            }
            None => Ok(u.empty()),
        };
        let nest = s(&mut u, "<0,<0,<0,5>>>");
        // 5 is not a pair, so depth 3
        assert_eq!(vrec(&mut u, nest, &second).unwrap(), u.nat(3));
    }

    #[test]
    fn vrec_interface_materializes_small_stages() {
        let mut u = Universe::new();
        let a = u.nat(2);
        let count = |u: &mut Universe, _: Set, f: &mut dyn RecFn| {
            let g = f.as_set(u)?;
            Ok(u.nat(u.card(g) as u32))
        };
        // V_2 has two elements
        assert_eq!(vrec(&mut u, a, &count).unwrap(), u.nat(2));
    }
}
