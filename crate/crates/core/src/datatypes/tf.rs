use super::list::{append, cons_list, list_view, nil, ListView};
use super::{as_sum, inl, inr, SumView};
use crate::error::{Error, Result};
use crate::hf::{Set, Universe};
use crate::ordinals::nat_add;
use crate::recursion::{self, RecFn};

/// `Tcons(a, f) = Inl(⟨a, f⟩)`
pub fn tcons(u: &mut Universe, a: Set, f: Set) -> Set {
    let p = u.pair(a, f);
    inl(u, p)
}

/// `Fnil = Inr(Nil)`
pub fn fnil(u: &mut Universe) -> Set {
    let n = nil(u);
    inr(u, n)
}

/// `Fcons(t, f) = Inr(Cons(t, f))`
pub fn fcons(u: &mut Universe, t: Set, f: Set) -> Set {
    let c = cons_list(u, t, f);
    inr(u, c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfView {
    Tcons(Set, Set),
    Fnil,
    Fcons(Set, Set),
}

/// One layer of a tree or forest encoding.
pub fn tf_view(u: &Universe, z: Set) -> Option<TfView> {
    match as_sum(u, z)? {
        SumView::Inl(p) => u.as_pair(p).map(|(a, f)| TfView::Tcons(a, f)),
        SumView::Inr(l) => match list_view(u, l)? {
            ListView::Nil => Some(TfView::Fnil),
            ListView::Cons(t, f) => Some(TfView::Fcons(t, f)),
        },
    }
}

pub fn is_tree(u: &Universe, a: &dyn Fn(Set) -> bool, x: Set) -> bool {
    matches!(tf_view(u, x), Some(TfView::Tcons(l, f)) if a(l) && is_forest(u, a, f))
}

pub fn is_forest(u: &Universe, a: &dyn Fn(Set) -> bool, mut x: Set) -> bool {
    loop {
        match tf_view(u, x) {
            Some(TfView::Fnil) => return true,
            Some(TfView::Fcons(t, f)) if is_tree(u, a, t) => x = f,
            _ => return false,
        }
    }
}

/// `x ∈ TF(A) = tree(A) ∪ forest(A)`
pub fn is_tf(u: &Universe, a: &dyn Fn(Set) -> bool, x: Set) -> bool {
    is_tree(u, a, x) || is_forest(u, a, x)
}

/// `TF_case(b, c, d, z) = case(split(b), list_case(c, d), z)`
pub fn tf_case(
    u: &mut Universe,
    b: impl FnOnce(&mut Universe, Set, Set) -> Result<Set>,
    c: Set,
    d: impl FnOnce(&mut Universe, Set, Set) -> Result<Set>,
    z: Set,
) -> Result<Set> {
    match tf_view(u, z) {
        Some(TfView::Tcons(a, f)) => b(u, a, f),
        Some(TfView::Fnil) => Ok(c),
        Some(TfView::Fcons(t, f)) => d(u, t, f),
        None => Err(Error::NotATF),
    }
}

pub type TconsBody<'a> = dyn Fn(&mut Universe, Set, Set, Set) -> Result<Set> + 'a;
pub type FconsBody<'a> = dyn Fn(&mut Universe, Set, Set, Set, Set) -> Result<Set> + 'a;

/// Recursion over trees and forests:
///
/// ```text
/// TF_rec(b, c, d, Tcons(a, f)) = b(a, f, TF_rec(b, c, d, f))
/// TF_rec(b, c, d, Fnil)        = c
/// TF_rec(b, c, d, Fcons(t, f)) = d(t, f, TF_rec(b, c, d, t), TF_rec(b, c, d, f))
/// ```
pub fn tf_rec(u: &mut Universe, b: &TconsBody, c: Set, d: &FconsBody, z: Set) -> Result<Set> {
    if !is_tf(u, &|_| true, z) {
        return Err(Error::NotATF);
    }
    let body = |u: &mut Universe, z: Set, g: &mut dyn RecFn| match tf_view(u, z) {
        Some(TfView::Tcons(a, f)) => {
            let r = g.at(u, f)?;
            b(u, a, f, r)
        }
        Some(TfView::Fnil) => Ok(c),
        Some(TfView::Fcons(t, f)) => {
            let rt = g.at(u, t)?;
            let rf = g.at(u, f)?;
            d(u, t, f, rt, rf)
        }
        None => Err(Error::NotATF),
    };
    recursion::vrec(u, z, &body)
}

/// `TF_map(h, Tcons(a, f)) = Tcons(h(a), TF_map(h, f))`, and structurally on forests.
pub fn tf_map(
    u: &mut Universe,
    h: &dyn Fn(&mut Universe, Set) -> Result<Set>,
    z: Set,
) -> Result<Set> {
    let c = fnil(u);
    tf_rec(
        u,
        &|u, a, _, r| {
            let ha = h(u, a)?;
            Ok(tcons(u, ha, r))
        },
        c,
        &|u, _, _, rt, rf| Ok(fcons(u, rt, rf)),
        z,
    )
}

/// Number of `Tcons` nodes: `succ` at trees, `⊕` at forests.
pub fn tf_size(u: &mut Universe, z: Set) -> Result<Set> {
    let zero = u.empty();
    tf_rec(
        u,
        &|u, _, _, r| Ok(u.succ(r)),
        zero,
        &|u, _, _, rt, rf| nat_add(u, rt, rf),
        z,
    )
}

/// Labels in preorder, as a list.
pub fn tf_preorder(u: &mut Universe, z: Set) -> Result<Set> {
    let n = nil(u);
    tf_rec(
        u,
        &|u, a, _, r| Ok(cons_list(u, a, r)),
        n,
        &|u, _, _, rt, rf| append(u, rt, rf),
        z,
    )
}
