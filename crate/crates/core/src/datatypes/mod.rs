//! Disjoint sums and the datatypes encoded with them: lists, terms, trees and forests, and
//! finite powersets.
//!
//! None of these types is materialized (their least fixedpoints live in the infinite
//! `univ(A)`). Each comes as constructors, a recognizer, and case and recursion operators.
//! The recursion operators go through [`crate::recursion::vrec`].

mod fin;
mod list;
mod term;
mod tf;

use std::fmt;
use std::str::FromStr;

pub use fin::{fin_enum, fin_induction_check, FinInduction, MAX_FIN};
pub use list::{
    append, cons_list, is_list, length, list_case, list_from, list_map, list_rec, list_to_vec,
    list_view, lists_upto, nil, rev, ListView,
};
pub use term::{apply_term, is_term, reflect, term_rec, term_size, term_view, TermView};
pub use tf::{
    fcons, fnil, is_forest, is_tf, is_tree, tcons, tf_case, tf_map, tf_preorder, tf_rec, tf_size,
    tf_view, TfView,
};

use crate::error::{Error, Result};
use crate::hf::{Set, Universe};

/// `Inl(a) = ⟨0, a⟩`
pub fn inl(u: &mut Universe, a: Set) -> Set {
    let z = u.nat(0);
    u.pair(z, a)
}

/// `Inr(b) = ⟨1, b⟩`
pub fn inr(u: &mut Universe, b: Set) -> Set {
    let one = u.nat(1);
    u.pair(one, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumView {
    Inl(Set),
    Inr(Set),
}

pub fn as_sum(u: &Universe, z: Set) -> Option<SumView> {
    let (tag, payload) = u.as_pair(z)?;
    match u.as_nat(tag) {
        Some(0) => Some(SumView::Inl(payload)),
        Some(1) => Some(SumView::Inr(payload)),
        _ => None,
    }
}

/// `case(c, d, Inl(a)) = c(a)`, `case(c, d, Inr(b)) = d(b)`
pub fn case_sum<T>(
    u: &mut Universe,
    c: impl FnOnce(&mut Universe, Set) -> Result<T>,
    d: impl FnOnce(&mut Universe, Set) -> Result<T>,
    z: Set,
) -> Result<T> {
    match as_sum(u, z) {
        Some(SumView::Inl(a)) => c(u, a),
        Some(SumView::Inr(b)) => d(u, b),
        None => Err(Error::NotASum),
    }
}

/// `A + B = ({0} × A) ∪ ({1} × B)`
pub fn sum_set(u: &mut Universe, a: Set, b: Set) -> Set {
    let mut out = Vec::with_capacity(u.card(a) + u.card(b));
    for x in u.elems(a).to_vec() {
        out.push(inl(u, x));
    }
    for y in u.elems(b).to_vec() {
        out.push(inr(u, y));
    }
    u.set_of(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Inl,
    Inr,
}

/// A composite of the sum injections, outermost first: `inr.inl` is `λx. Inr(Inl(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Injection(Vec<Side>);

impl Injection {
    pub fn new(sides: Vec<Side>) -> Self {
        assert!(!sides.is_empty(), "an injection needs at least one side");
        Injection(sides)
    }

    pub fn sides(&self) -> &[Side] {
        &self.0
    }

    pub fn apply(&self, u: &mut Universe, x: Set) -> Set {
        self.0.iter().rev().fold(x, |acc, side| match side {
            Side::Inl => inl(u, acc),
            Side::Inr => inr(u, acc),
        })
    }

    /// The `z` with `x = h(z)`, if there is one.
    pub fn unapply(&self, u: &Universe, x: Set) -> Option<Set> {
        self.0
            .iter()
            .try_fold(x, |acc, side| match (side, as_sum(u, acc)?) {
                (Side::Inl, SumView::Inl(p)) | (Side::Inr, SumView::Inr(p)) => Some(p),
                _ => None,
            })
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                Side::Inl => "inl",
                Side::Inr => "inr",
            })
            .collect();
        f.write_str(&names.join("."))
    }
}

impl FromStr for Injection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let sides = s
            .split('.')
            .map(|part| match part.trim() {
                "inl" => Ok(Side::Inl),
                "inr" => Ok(Side::Inr),
                other => Err(format!("unknown injection '{other}'")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Injection(sides))
    }
}

/// `Part(A, h) = {x ∈ A. ∃z. x = h(z)}`
pub fn part(u: &mut Universe, a: Set, h: &Injection) -> Set {
    u.sep(a, |u, x| h.unapply(u, x).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_examples() {
        let mut u = Universe::new();
        let e = u.empty();
        let l = inl(&mut u, e);
        assert_eq!(l, u.parse("<0,0>").unwrap());
        let five = u.nat(5);
        let z = inl(&mut u, five);
        let r = case_sum(&mut u, |u, a| Ok(u.succ(a)), |_, b| Ok(b), z).unwrap();
        assert_eq!(r, u.nat(6));
        let z = inr(&mut u, five);
        assert_eq!(
            case_sum(&mut u, |u, a| Ok(u.succ(a)), |_, b| Ok(b), z).unwrap(),
            five
        );
        let bad = u.parse("<2,0>").unwrap();
        assert_eq!(
            case_sum(&mut u, |_, a| Ok(a), |_, b| Ok(b), bad),
            Err(Error::NotASum)
        );
        for a in 0..4 {
            for b in 0..4 {
                let (x, y) = (u.nat(a), u.nat(b));
                assert_ne!(inl(&mut u, x), inr(&mut u, y));
            }
        }
    }

    #[test]
    fn part_examples() {
        let mut u = Universe::new();
        let (z, one, two) = (u.nat(0), u.nat(1), u.nat(2));
        let a = inl(&mut u, z);
        let b = inr(&mut u, one);
        let s = u.doubleton(a, b);
        let inl_tag: Injection = "inl".parse().unwrap();
        assert_eq!(part(&mut u, s, &inl_tag), u.singleton(a));
        let e = u.empty();
        assert_eq!(part(&mut u, e, &inl_tag), e);
        let deep: Injection = "inr.inl".parse().unwrap();
        let x = deep.apply(&mut u, two);
        assert_eq!(x, u.parse("<1,<0,2>>").unwrap());
        let s = u.singleton(x);
        assert_eq!(part(&mut u, s, &deep), s);
        assert_eq!(deep.to_string(), "inr.inl");
        assert!("inl.foo".parse::<Injection>().is_err());
    }

    #[test]
    fn part_of_sum_is_tagged_left() {
        let mut u = Universe::new();
        let a = u.parse("{0,5}").unwrap();
        let b = u.parse("{1}").unwrap();
        let ab = sum_set(&mut u, a, b);
        let lefts = part(&mut u, ab, &Injection::new(vec![Side::Inl]));
        let expect = u.repl(a, |u, x| Ok(inl(u, x))).unwrap();
        assert_eq!(lefts, expect);
    }
}
