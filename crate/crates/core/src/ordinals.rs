//! Transitive sets, ordinals, and recursion on the natural numbers.
//!
//! Only finite ordinals are hereditarily finite, so `nat` is available as bounded segments
//! [`nat_upto`] and [`is_limit`] never holds.

use crate::error::{Error, Result};
use crate::fixedpoint::MonoOp;
use crate::hf::{Set, Universe};
use crate::recursion::{self, RecFn};
use crate::relations;

/// Every element is a subset.
pub fn is_transset(u: &Universe, a: Set) -> bool {
    u.elems(a).iter().all(|&x| u.subset(x, a))
}

/// A transitive set of transitive sets.
pub fn is_ord(u: &Universe, a: Set) -> bool {
    is_transset(u, a) && u.elems(a).iter().all(|&x| is_transset(u, x))
}

/// `a < b ≡ a ∈ b ∧ Ord(b)`
pub fn lt(u: &Universe, a: Set, b: Set) -> bool {
    u.member(a, b) && is_ord(u, b)
}

/// `Ord(α) ∧ 0 < α ∧ ∀y. y < α → succ(y) < α`
pub fn is_limit(u: &mut Universe, a: Set) -> bool {
    let z = u.empty();
    if !lt(u, z, a) {
        return false;
    }
    u.elems(a).to_vec().into_iter().all(|y| {
        let sy = u.succ(y);
        u.member(sy, a)
    })
}

/// A set known to be an ordinal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ordinal {
    set: Set,
    value: u32,
}

impl Ordinal {
    pub fn new(u: &Universe, s: Set) -> Option<Ordinal> {
        if !is_ord(u, s) {
            return None;
        }
        let value = u.as_nat(s).expect("HF ordinals are numerals");
        Some(Ordinal { set: s, value })
    }

    pub fn set(self) -> Set {
        self.set
    }

    pub fn value(self) -> u32 {
        self.value
    }
}

/// `λX. {0} ∪ {succ(i). i ∈ X}`
pub fn nat_op() -> MonoOp {
    MonoOp::ReplSucc
}

/// The ordinal `k = {0, …, k−1}`.
pub fn nat_upto(u: &mut Universe, k: u32) -> Result<Set> {
    let bound = u.config().nat_bound;
    if k > bound {
        return Err(Error::BoundExceeded(format!(
            "nat_upto({k}) exceeds {bound}"
        )));
    }
    Ok(u.nat(k))
}

/// `nat_case(a, b, 0) = a`, `nat_case(a, b, succ(m)) = b(m)`
pub fn nat_case(
    u: &mut Universe,
    a: Set,
    b: impl FnOnce(&mut Universe, Set) -> Result<Set>,
    k: Set,
) -> Result<Set> {
    if k == u.empty() {
        return Ok(a);
    }
    let pred = u.elems(k).to_vec().into_iter().find(|&i| u.succ(i) == k);
    match pred {
        Some(i) => b(u, i),
        None => Err(Error::NotZeroOrSucc),
    }
}

/// `nat_rec(a, b, 0) = a`, `nat_rec(a, b, succ(m)) = b(m, nat_rec(a, b, m))`, by well-founded
/// recursion over `Memrel(k+1)`.
pub fn nat_rec(
    u: &mut Universe,
    a: Set,
    b: &dyn Fn(&mut Universe, Set, Set) -> Result<Set>,
    k: Set,
) -> Result<Set> {
    let n = u.as_nat(k).ok_or(Error::NotANat)?;
    let seg = nat_upto(u, n + 1)?;
    let r = relations::memrel(u, seg);
    let body = |u: &mut Universe, x: Set, f: &mut dyn RecFn| {
        nat_case(
            u,
            a,
            |u, m| {
                let prev = f.at(u, m)?;
                b(u, m, prev)
            },
            x,
        )
    };
    recursion::wfrec(u, r, k, &body)
}

/// `m ⊕ n = nat_rec(m, λi r. succ(r), n)`
pub fn nat_add(u: &mut Universe, m: Set, n: Set) -> Result<Set> {
    u.as_nat(m).ok_or(Error::NotANat)?;
    nat_rec(u, m, &|u, _, r| Ok(u.succ(r)), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixedpoint::iterate_op;

    #[test]
    fn predicate_examples() {
        let mut u = Universe::new();
        let three = u.nat(3);
        assert!(is_ord(&u, three));
        let s = u.parse("{1}").unwrap();
        assert!(!is_ord(&u, s));
        assert!(!is_transset(&u, s));
        for n in 0..10 {
            let o = u.nat(n);
            assert!(!is_limit(&mut u, o));
        }
        let (two, five) = (u.nat(2), u.nat(5));
        assert!(lt(&u, two, five));
        assert!(!lt(&u, five, two));
        assert_eq!(Ordinal::new(&u, five).map(Ordinal::value), Some(5));
        assert_eq!(Ordinal::new(&u, s), None);
    }

    #[test]
    fn nat_upto_examples() {
        let mut u = Universe::new();
        assert_eq!(nat_upto(&mut u, 0).unwrap(), u.empty());
        let three = nat_upto(&mut u, 3).unwrap();
        assert_eq!(three, u.parse("{0,1,2}").unwrap());
        assert_eq!(iterate_op(&mut u, &nat_op(), 3).unwrap(), three);
        assert!(matches!(
            nat_upto(&mut u, 5000),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn nat_case_examples() {
        let mut u = Universe::new();
        let (seven, zero) = (u.nat(7), u.nat(0));
        assert_eq!(nat_case(&mut u, seven, |_, m| Ok(m), zero).unwrap(), seven);
        let three = u.nat(3);
        assert_eq!(
            nat_case(&mut u, seven, |_, m| Ok(m), three).unwrap(),
            u.nat(2)
        );
        let s = u.parse("{1}").unwrap();
        assert_eq!(
            nat_case(&mut u, seven, |_, m| Ok(m), s),
            Err(Error::NotZeroOrSucc)
        );
        // succ of a non-ordinal is still a successor
        let x = u.parse("{5}").unwrap();
        let sx = u.succ(x);
        assert_eq!(nat_case(&mut u, seven, |_, m| Ok(m), sx).unwrap(), x);
    }

    #[test]
    fn nat_rec_examples() {
        let mut u = Universe::new();
        let (a, zero) = (u.nat(4), u.nat(0));
        assert_eq!(nat_rec(&mut u, a, &|_, m, _| Ok(m), zero).unwrap(), a);
        let double = |u: &mut Universe, _: Set, r: Set| {
            let s = u.succ(r);
            Ok(u.succ(s))
        };
        let three = u.nat(3);
        assert_eq!(nat_rec(&mut u, zero, &double, three).unwrap(), u.nat(6));
        let (two, one) = (u.nat(2), u.nat(1));
        assert_eq!(nat_add(&mut u, three, two).unwrap(), u.nat(5));
        assert_eq!(nat_add(&mut u, two, two).unwrap(), u.nat(4));
        assert_eq!(nat_add(&mut u, one, three).unwrap(), u.nat(4));
        let s = u.parse("{1}").unwrap();
        assert_eq!(nat_add(&mut u, s, one), Err(Error::NotANat));
        assert_eq!(nat_add(&mut u, one, s), Err(Error::NotANat));
    }
}
