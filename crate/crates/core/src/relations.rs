//! Binary relations as sets of ordered pairs.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::fixedpoint::{lfp_iterate, MonoOp};
use crate::hf::{Set, Universe};

/// A set all of whose elements are Kuratowski pairs.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rel(Set);

impl Rel {
    pub fn new(u: &Universe, s: Set) -> Result<Rel> {
        if u.elems(s).iter().all(|&p| u.is_pair(p)) {
            Ok(Rel(s))
        } else {
            Err(Error::NotARelation)
        }
    }

    pub fn empty(u: &Universe) -> Rel {
        Rel(u.empty())
    }

    pub fn from_pairs(u: &mut Universe, pairs: impl IntoIterator<Item = (Set, Set)>) -> Rel {
        let v: Vec<Set> = pairs.into_iter().map(|(a, b)| u.pair(a, b)).collect();
        Rel(u.set_of(v))
    }

    pub fn set(self) -> Set {
        self.0
    }

    pub fn pairs(self, u: &Universe) -> Vec<(Set, Set)> {
        u.elems(self.0)
            .iter()
            .map(|&p| u.as_pair(p).expect("Rel holds only pairs"))
            .collect()
    }

    pub fn contains(self, u: &mut Universe, a: Set, b: Set) -> bool {
        let p = u.pair(a, b);
        u.member(p, self.0)
    }
}

pub fn converse(u: &mut Universe, r: Rel) -> Rel {
    let ps = r.pairs(u);
    Rel::from_pairs(u, ps.into_iter().map(|(a, b)| (b, a)))
}

pub fn domain(u: &mut Universe, r: Rel) -> Set {
    let ps = r.pairs(u);
    u.set_of(ps.into_iter().map(|(a, _)| a))
}

pub fn range(u: &mut Universe, r: Rel) -> Set {
    let ps = r.pairs(u);
    u.set_of(ps.into_iter().map(|(_, b)| b))
}

pub fn field(u: &mut Universe, r: Rel) -> Set {
    let ps = r.pairs(u);
    u.set_of(ps.into_iter().flat_map(|(a, b)| [a, b]))
}

/// `r``A = {y. ∃x∈A. <x,y> ∈ r}`
pub fn image(u: &mut Universe, r: Rel, a: Set) -> Set {
    let ps = r.pairs(u);
    let ys: Vec<Set> = ps
        .into_iter()
        .filter(|&(x, _)| u.member(x, a))
        .map(|(_, y)| y)
        .collect();
    u.set_of(ys)
}

/// `r⁻¹{x} = {y. <y,x> ∈ r}`, the predecessors of `x`.
pub fn inv_image_singleton(u: &mut Universe, r: Rel, x: Set) -> Set {
    let ps = r.pairs(u);
    u.set_of(ps.into_iter().filter(|&(_, b)| b == x).map(|(a, _)| a))
}

/// `r ∘ s = {<x,z>. ∃y. <x,y> ∈ s ∧ <y,z> ∈ r}`
pub fn compose(u: &mut Universe, r: Rel, s: Rel) -> Rel {
    let mut from: HashMap<Set, Vec<Set>> = HashMap::new();
    for (x, y) in s.pairs(u) {
        from.entry(y).or_default().push(x);
    }
    let mut out = Vec::new();
    for (y, z) in r.pairs(u) {
        if let Some(xs) = from.get(&y) {
            out.extend(xs.iter().map(|&x| (x, z)));
        }
    }
    Rel::from_pairs(u, out)
}

pub fn id_on(u: &mut Universe, a: Set) -> Rel {
    let xs = u.elems(a).to_vec();
    Rel::from_pairs(u, xs.into_iter().map(|x| (x, x)))
}

/// `Memrel(A) = {<x,y> ∈ A×A. x ∈ y}`
pub fn memrel(u: &mut Universe, a: Set) -> Rel {
    let xs = u.elems(a).to_vec();
    let mut out = Vec::new();
    for &y in &xs {
        for &x in &xs {
            if u.member(x, y) {
                out.push((x, y));
            }
        }
    }
    Rel::from_pairs(u, out)
}

/// Well-foundedness of a finite relation, decided as acyclicity (Kahn's algorithm).
pub fn is_wf(u: &Universe, r: Rel) -> bool {
    let ps = r.pairs(u);
    let mut indeg: HashMap<Set, usize> = HashMap::new();
    let mut succs: HashMap<Set, Vec<Set>> = HashMap::new();
    for &(a, b) in &ps {
        indeg.entry(a).or_insert(0);
        *indeg.entry(b).or_insert(0) += 1;
        succs.entry(a).or_default().push(b);
    }
    let mut ready: Vec<Set> = indeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&x, _)| x)
        .collect();
    let mut removed = 0;
    while let Some(x) = ready.pop() {
        removed += 1;
        for &y in succs.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            let d = indeg.get_mut(&y).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.push(y);
            }
        }
    }
    removed == indeg.len()
}

pub fn is_transitive_rel(u: &Universe, r: Rel) -> bool {
    let ps = r.pairs(u);
    let set: HashSet<(Set, Set)> = ps.iter().copied().collect();
    let mut succs: HashMap<Set, Vec<Set>> = HashMap::new();
    for &(a, b) in &ps {
        succs.entry(a).or_default().push(b);
    }
    ps.iter().all(|&(x, y)| {
        succs
            .get(&y)
            .is_none_or(|zs| zs.iter().all(|&z| set.contains(&(x, z))))
    })
}

/// The operator `s ↦ id(field(r)) ∪ (r ∘ s)`, bounded by `field(r) × field(r)`.
pub fn closure_op(u: &mut Universe, r: Rel) -> MonoOp {
    let f = field(u, r);
    MonoOp::IdUnion(f, Box::new(MonoOp::Compose(r, Box::new(MonoOp::Id))))
}

/// Reflexive-transitive closure `r* = lfp(field(r)×field(r), λs. id(field(r)) ∪ (r ∘ s))`.
pub fn rtrancl(u: &mut Universe, r: Rel) -> Result<Rel> {
    let f = field(u, r);
    let d = u.product(f, f)?;
    let h = closure_op(u, r);
    let s = lfp_iterate(u, d, &h)?;
    Ok(Rel(s))
}

/// Transitive closure `r⁺ = r ∘ r*`.
pub fn trancl(u: &mut Universe, r: Rel) -> Result<Rel> {
    let star = rtrancl(u, r)?;
    Ok(compose(u, r, star))
}

// -------------------- functions -------------------- //

/// `f` is a function from exactly `x` into `y`.
pub fn check_function(u: &mut Universe, f: Set, x: Set, y: Set) -> Result<Rel> {
    let r = Rel::new(u, f).map_err(|_| Error::NotAFunction)?;
    let mut seen = HashSet::new();
    for (a, _) in r.pairs(u) {
        if !seen.insert(a) {
            return Err(Error::NotAFunction);
        }
    }
    let dom = domain(u, r);
    let ran = range(u, r);
    if dom != x || !u.subset(ran, y) {
        return Err(Error::DomainMismatch);
    }
    Ok(r)
}

pub fn is_injective(u: &Universe, f: Rel) -> bool {
    let mut seen = HashSet::new();
    f.pairs(u).into_iter().all(|(_, b)| seen.insert(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(u: &mut Universe, s: &str) -> Rel {
        let s = u.parse(s).unwrap();
        Rel::new(u, s).unwrap()
    }

    #[test]
    fn rejects_non_relations() {
        let mut u = Universe::new();
        let s = u.parse("{<0,1>,2}").unwrap();
        assert_eq!(Rel::new(&u, s), Err(Error::NotARelation));
    }

    #[test]
    fn operator_examples() {
        let mut u = Universe::new();
        let r = rel(&mut u, "{<0,1>}");
        let c = converse(&mut u, r);
        assert_eq!(c, rel(&mut u, "{<1,0>}"));

        let r = rel(&mut u, "{<0,1>,<0,2>}");
        let a = u.parse("{0}").unwrap();
        let im = image(&mut u, r, a);
        assert_eq!(im, u.parse("{1,2}").unwrap());

        let three = u.nat(3);
        let m3 = memrel(&mut u, three);
        let two = u.nat(2);
        let pre = inv_image_singleton(&mut u, m3, two);
        assert_eq!(pre, two);
        let f = field(&mut u, r);
        assert_eq!(f, three);
    }

    #[test]
    fn memrel_examples() {
        let mut u = Universe::new();
        let three = u.nat(3);
        let m = memrel(&mut u, three);
        assert_eq!(m, rel(&mut u, "{<0,1>,<0,2>,<1,2>}"));
        let e = u.empty();
        assert_eq!(memrel(&mut u, e).set(), e);
        let s = u.parse("{{0}}").unwrap();
        assert_eq!(memrel(&mut u, s).set(), e);
    }

    #[test]
    fn wf_examples() {
        let mut u = Universe::new();
        let loop1 = rel(&mut u, "{<0,0>}");
        assert!(!is_wf(&u, loop1));
        let chain = rel(&mut u, "{<0,1>,<1,2>}");
        assert!(is_wf(&u, chain));
        assert!(!is_transitive_rel(&u, chain));
        let cyc = rel(&mut u, "{<0,1>,<1,2>,<2,0>}");
        assert!(!is_wf(&u, cyc));
        let five = u.nat(5);
        let m = memrel(&mut u, five);
        assert!(is_wf(&u, m));
        assert!(is_transitive_rel(&u, m));
    }

    #[test]
    fn closure_examples() {
        let mut u = Universe::new();
        let r = rel(&mut u, "{<0,1>}");
        let rs = rtrancl(&mut u, r).unwrap();
        assert_eq!(rs, rel(&mut u, "{<0,0>,<1,1>,<0,1>}"));
        let e = Rel::empty(&u);
        assert_eq!(rtrancl(&mut u, e).unwrap(), e);
        let r = rel(&mut u, "{<0,1>,<1,2>}");
        let rp = trancl(&mut u, r).unwrap();
        assert_eq!(rp, rel(&mut u, "{<0,1>,<1,2>,<0,2>}"));
    }

    #[test]
    fn compose_order() {
        let mut u = Universe::new();
        // s first, then r
        let r = rel(&mut u, "{<1,2>}");
        let s = rel(&mut u, "{<0,1>}");
        assert_eq!(compose(&mut u, r, s), rel(&mut u, "{<0,2>}"));
        assert_eq!(compose(&mut u, s, r), Rel::empty(&u));
        let a = u.parse("{0,1}").unwrap();
        assert_eq!(id_on(&mut u, a), rel(&mut u, "{<0,0>,<1,1>}"));
    }

    #[test]
    fn function_checks() {
        let mut u = Universe::new();
        let x = u.parse("{0,1}").unwrap();
        let y = u.parse("{2,3}").unwrap();
        let f = u.parse("{<0,2>,<1,2>}").unwrap();
        let r = check_function(&mut u, f, x, y).unwrap();
        assert!(!is_injective(&u, r));
        let bad = u.parse("{<0,2>,<0,3>,<1,2>}").unwrap();
        assert_eq!(check_function(&mut u, bad, x, y), Err(Error::NotAFunction));
        let partial = u.parse("{<0,2>}").unwrap();
        assert_eq!(
            check_function(&mut u, partial, x, y),
            Err(Error::DomainMismatch)
        );
    }
}
