use super::{as_sum, inl, inr, SumView};
use crate::error::{Error, Result};
use crate::hf::{Set, Universe};
use crate::recursion::{self, RecFn};

/// `Nil = Inl(∅)`
pub fn nil(u: &mut Universe) -> Set {
    let e = u.empty();
    inl(u, e)
}

/// `Cons(a, l) = Inr(⟨a, l⟩)`
pub fn cons_list(u: &mut Universe, a: Set, l: Set) -> Set {
    let p = u.pair(a, l);
    inr(u, p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListView {
    Nil,
    Cons(Set, Set),
}

/// One layer of a list encoding. Does not look at the tail.
pub fn list_view(u: &Universe, l: Set) -> Option<ListView> {
    match as_sum(u, l)? {
        SumView::Inl(x) if x == u.empty() => Some(ListView::Nil),
        SumView::Inr(p) => u.as_pair(p).map(|(a, t)| ListView::Cons(a, t)),
        SumView::Inl(_) => None,
    }
}

/// `x ∈ list(A)`, for `A` given by a membership test.
pub fn is_list(u: &Universe, a: &dyn Fn(Set) -> bool, mut x: Set) -> bool {
    loop {
        match list_view(u, x) {
            Some(ListView::Nil) => return true,
            Some(ListView::Cons(h, t)) if a(h) => x = t,
            _ => return false,
        }
    }
}

pub fn list_from(u: &mut Universe, items: &[Set]) -> Set {
    let n = nil(u);
    items.iter().rev().fold(n, |acc, &x| cons_list(u, x, acc))
}

pub fn list_to_vec(u: &Universe, mut l: Set) -> Option<Vec<Set>> {
    let mut out = Vec::new();
    loop {
        match list_view(u, l)? {
            ListView::Nil => return Some(out),
            ListView::Cons(h, t) => {
                out.push(h);
                l = t;
            }
        }
    }
}

/// `list_case(c, h, Nil) = c`, `list_case(c, h, Cons(x, y)) = h(x, y)`
pub fn list_case(
    u: &mut Universe,
    c: Set,
    h: impl FnOnce(&mut Universe, Set, Set) -> Result<Set>,
    l: Set,
) -> Result<Set> {
    match list_view(u, l) {
        Some(ListView::Nil) => Ok(c),
        Some(ListView::Cons(x, y)) => h(u, x, y),
        None => Err(Error::NotAList),
    }
}

/// `list_rec(c, h, l) = Vrec(l, λl g. list_case(c, λx y. h(x, y, g'y), l))`
pub fn list_rec(
    u: &mut Universe,
    c: Set,
    h: &dyn Fn(&mut Universe, Set, Set, Set) -> Result<Set>,
    l: Set,
) -> Result<Set> {
    if !is_list(u, &|_| true, l) {
        return Err(Error::NotAList);
    }
    let body = |u: &mut Universe, l: Set, g: &mut dyn RecFn| {
        list_case(
            u,
            c,
            |u, x, y| {
                let r = g.at(u, y)?;
                h(u, x, y, r)
            },
            l,
        )
    };
    let out = recursion::vrec(u, l, &body);
    debug_assert!(!matches!(out, Err(Error::VrecGuard { .. })));
    out
}

/// `map(h, l) = list_rec(Nil, λx y r. Cons(h(x), r), l)`
pub fn list_map(
    u: &mut Universe,
    h: &dyn Fn(&mut Universe, Set) -> Result<Set>,
    l: Set,
) -> Result<Set> {
    let n = nil(u);
    list_rec(
        u,
        n,
        &|u, x, _, r| {
            let hx = h(u, x)?;
            Ok(cons_list(u, hx, r))
        },
        l,
    )
}

/// `xs @ ys = list_rec(ys, λx y r. Cons(x, r), xs)`
pub fn append(u: &mut Universe, xs: Set, ys: Set) -> Result<Set> {
    if !is_list(u, &|_| true, ys) {
        return Err(Error::NotAList);
    }
    list_rec(u, ys, &|u, x, _, r| Ok(cons_list(u, x, r)), xs)
}

/// `rev(l) = list_rec(Nil, λx y r. r @ Cons(x, Nil), l)`
pub fn rev(u: &mut Universe, l: Set) -> Result<Set> {
    let n = nil(u);
    list_rec(
        u,
        n,
        &|u, x, _, r| {
            let n = nil(u);
            let single = cons_list(u, x, n);
            append(u, r, single)
        },
        l,
    )
}

/// `length(l) = list_rec(0, λx y r. succ(r), l)`
pub fn length(u: &mut Universe, l: Set) -> Result<Set> {
    let z = u.empty();
    list_rec(u, z, &|u, _, _, r| Ok(u.succ(r)), l)
}

/// All lists over `s` of length at most `n`.
pub fn lists_upto(u: &mut Universe, s: Set, n: usize) -> Result<Set> {
    let mut layer = vec![nil(u)];
    let mut all = layer.clone();
    let xs = u.elems(s).to_vec();
    for _ in 0..n {
        let mut next = Vec::with_capacity(layer.len() * xs.len());
        for &l in &layer {
            for &x in &xs {
                next.push(cons_list(u, x, l));
            }
        }
        u.check_budget()?;
        all.extend_from_slice(&next);
        layer = next;
    }
    Ok(u.set_of(all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixedpoint::{iterate_op, MonoOp};

    fn nats(u: &mut Universe, ns: &[u32]) -> Set {
        let items: Vec<Set> = ns.iter().map(|&n| u.nat(n)).collect();
        list_from(u, &items)
    }

    #[test]
    fn recognizer_examples() {
        let mut u = Universe::new();
        let l = nats(&mut u, &[0]);
        let a = u.nat(1);
        assert!(is_list(&u, &|x| u.member(x, a), l));
        let p = u.parse("<0,1>").unwrap();
        assert!(!is_list(&u, &|_| true, p));
        let l = nats(&mut u, &[0, 3]);
        assert!(!is_list(&u, &|x| u.member(x, a), l));
        let junk = u.parse("<0,1>").unwrap();
        assert_eq!(list_view(&u, junk), None);
    }

    #[test]
    fn case_and_rec_examples() {
        let mut u = Universe::new();
        let c = u.nat(7);
        let n = nil(&mut u);
        assert_eq!(list_case(&mut u, c, |_, x, _| Ok(x), n).unwrap(), c);
        assert_eq!(list_rec(&mut u, c, &|_, x, _, _| Ok(x), n).unwrap(), c);
        let l = nats(&mut u, &[0, 0]);
        assert_eq!(length(&mut u, l).unwrap(), u.nat(2));
        let bad = u.nat(3);
        assert_eq!(length(&mut u, bad), Err(Error::NotAList));
    }

    #[test]
    fn append_map_rev_examples() {
        let mut u = Universe::new();
        let n = nil(&mut u);
        let ys = nats(&mut u, &[4, 5]);
        assert_eq!(append(&mut u, n, ys).unwrap(), ys);
        let (a, b) = (nats(&mut u, &[0]), nats(&mut u, &[1]));
        assert_eq!(append(&mut u, a, b).unwrap(), nats(&mut u, &[0, 1]));
        let l = nats(&mut u, &[0, 1, 2]);
        assert_eq!(rev(&mut u, l).unwrap(), nats(&mut u, &[2, 1, 0]));
        let m = list_map(&mut u, &|u, x| Ok(u.succ(x)), l).unwrap();
        assert_eq!(m, nats(&mut u, &[1, 2, 3]));
        // map(h, Cons(a, l)) = Cons(h(a), map(h, l))
        let tail = nats(&mut u, &[1, 2]);
        let mt = list_map(&mut u, &|u, x| Ok(u.succ(x)), tail).unwrap();
        let one = u.nat(1);
        assert_eq!(m, cons_list(&mut u, one, mt));
    }

    #[test]
    fn kleene_agreement() {
        let mut u = Universe::new();
        let a = u.nat(2);
        let h = MonoOp::list_over(&mut u, a);
        for n in 0..=4 {
            let it = iterate_op(&mut u, &h, n).unwrap();
            let expect = if n == 0 {
                u.empty()
            } else {
                lists_upto(&mut u, a, n - 1).unwrap()
            };
            assert_eq!(it, expect, "n = {n}");
        }
    }
}
