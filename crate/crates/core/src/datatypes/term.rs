use std::cell::RefCell;

use super::list::{is_list, list_map, list_to_vec, rev};
use crate::error::{Error, Result};
use crate::hf::{Set, Universe};
use crate::recursion::{self, RecFn};

/// `Apply(a, ts) = ⟨a, ts⟩`
pub fn apply_term(u: &mut Universe, a: Set, ts: Set) -> Set {
    u.pair(a, ts)
}

/// A decoded term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermView {
    pub label: Set,
    pub args: Vec<TermView>,
}

pub fn term_view(u: &Universe, t: Set) -> Option<TermView> {
    let (label, ts) = u.as_pair(t)?;
    let args = list_to_vec(u, ts)?
        .into_iter()
        .map(|s| term_view(u, s))
        .collect::<Option<Vec<_>>>()?;
    Some(TermView { label, args })
}

/// `x ∈ term(A)` where `term(A) = A × list(term(A))`.
pub fn is_term(u: &Universe, a: &dyn Fn(Set) -> bool, x: Set) -> bool {
    match u.as_pair(x) {
        Some((label, ts)) => {
            a(label) && is_list(u, &|_| true, ts) && {
                let args = list_to_vec(u, ts).expect("checked list");
                args.into_iter().all(|t| is_term(u, a, t))
            }
        }
        None => false,
    }
}

/// `term_rec(d, t) = Vrec(t, λt g. split(λx zs. d(x, zs, map(λz. g'z, zs)), t))`
pub fn term_rec(
    u: &mut Universe,
    d: &dyn Fn(&mut Universe, Set, Set, Set) -> Result<Set>,
    t: Set,
) -> Result<Set> {
    if !is_term(u, &|_| true, t) {
        return Err(Error::NotATerm);
    }
    let body = |u: &mut Universe, t: Set, g: &mut dyn RecFn| {
        let g = RefCell::new(g);
        u.split(
            |u, x, zs| {
                let rs = list_map(u, &|u, z| g.borrow_mut().at(u, z), zs)?;
                d(u, x, zs, rs)
            },
            t,
        )
    };
    recursion::vrec(u, t, &body)
}

/// `reflect(Apply(a, ts)) = Apply(a, rev(map(reflect, ts)))`
pub fn reflect(u: &mut Universe, t: Set) -> Result<Set> {
    term_rec(
        u,
        &|u, a, _, rs| {
            let r = rev(u, rs)?;
            Ok(apply_term(u, a, r))
        },
        t,
    )
}

/// Number of `Apply` nodes.
pub fn term_size(u: &mut Universe, t: Set) -> Result<Set> {
    term_rec(
        u,
        &|u, _, _, rs| {
            let sizes = list_to_vec(u, rs).ok_or(Error::NotAList)?;
            let mut n = u.nat(1);
            for s in sizes {
                n = crate::ordinals::nat_add(u, n, s)?;
            }
            Ok(n)
        },
        t,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datatypes::{list_from, nil};

    fn leaf(u: &mut Universe, a: u32) -> Set {
        let a = u.nat(a);
        let n = nil(u);
        apply_term(u, a, n)
    }

    #[test]
    fn recognizer_examples() {
        let mut u = Universe::new();
        let b = leaf(&mut u, 1);
        let args = list_from(&mut u, &[b]);
        let z = u.nat(0);
        let t = apply_term(&mut u, z, args);
        let a = u.nat(2);
        assert!(is_term(&u, &|x| u.member(x, a), t));
        let one = u.nat(1);
        assert!(!is_term(&u, &|x| u.member(x, one), t));
        let not_list = u.parse("<0,5>").unwrap();
        assert!(!is_term(&u, &|_| true, not_list));
    }

    #[test]
    fn rec_examples() {
        let mut u = Universe::new();
        let t = leaf(&mut u, 3);
        // d(a, nil, nil) = ⟨a, nil⟩ is the term itself
        let out = term_rec(
            &mut u,
            &|u, a, zs, rs| {
                assert_eq!(zs, rs);
                Ok(u.pair(a, rs))
            },
            t,
        )
        .unwrap();
        assert_eq!(out, t);
        let (b, c) = (leaf(&mut u, 1), leaf(&mut u, 2));
        let args = list_from(&mut u, &[b, c]);
        let z = u.nat(0);
        let t = apply_term(&mut u, z, args);
        assert_eq!(term_size(&mut u, t).unwrap(), u.nat(3));
        let r = reflect(&mut u, t).unwrap();
        let flipped = list_from(&mut u, &[c, b]);
        assert_eq!(r, apply_term(&mut u, z, flipped));
        assert_eq!(reflect(&mut u, r).unwrap(), t);
        let leafy = leaf(&mut u, 4);
        assert_eq!(reflect(&mut u, leafy).unwrap(), leafy);
        let five = u.nat(5);
        assert_eq!(reflect(&mut u, five), Err(Error::NotATerm));
    }

    #[test]
    fn view_round_trip() {
        let mut u = Universe::new();
        let b = leaf(&mut u, 1);
        let args = list_from(&mut u, &[b, b]);
        let z = u.nat(0);
        let t = apply_term(&mut u, z, args);
        let v = term_view(&u, t).unwrap();
        assert_eq!(v.args.len(), 2);
        assert_eq!(v.args[0].label, u.nat(1));
    }
}
