use crate::error::{Error, Result};
use crate::fixedpoint::{lfp_iterate, MonoOp};
use crate::hf::{Set, Universe};

/// Largest `|A|` for which `Fin(A)` is enumerated.
pub const MAX_FIN: usize = 12;

/// `Fin(A) = lfp(℘(A), λZ. {∅} ∪ ⋃_{y∈Z} ⋃_{x∈A} {cons(x, y)})`
pub fn fin_enum(u: &mut Universe, a: Set) -> Result<Set> {
    if u.card(a) > MAX_FIN {
        return Err(Error::BoundExceeded(format!(
            "Fin(A) needs |A| <= {MAX_FIN}, got {}",
            u.card(a)
        )));
    }
    let d = u.powerset(a)?;
    lfp_iterate(u, d, &MonoOp::FinOp(a))
}

/// The three parts of an induction over `Fin(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FinInduction {
    /// `ψ(∅)`
    pub base: bool,
    /// `ψ(y) ⟹ ψ(cons(x, y))` for `y ∈ Fin(A)`, `x ∈ A`, `x ∉ y`.
    pub step: bool,
    /// `ψ(y)` for every `y ∈ Fin(A)`.
    pub covers: bool,
}

impl FinInduction {
    /// The rule itself: base and step together give coverage.
    pub fn rule_holds(&self) -> bool {
        !(self.base && self.step) || self.covers
    }
}

pub fn fin_induction_check(
    u: &mut Universe,
    a: Set,
    mut psi: impl FnMut(&mut Universe, Set) -> bool,
) -> Result<FinInduction> {
    let fin = fin_enum(u, a)?;
    let e = u.empty();
    let base = psi(u, e);
    let ys = u.elems(fin).to_vec();
    let xs = u.elems(a).to_vec();
    let mut covers = true;
    let mut step = true;
    for &y in &ys {
        let py = psi(u, y);
        covers &= py;
        if !py {
            continue;
        }
        for &x in &xs {
            if u.member(x, y) {
                continue;
            }
            let xy = u.cons(x, y);
            step &= psi(u, xy);
        }
    }
    Ok(FinInduction { base, step, covers })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fin_examples() {
        let mut u = Universe::new();
        let two = u.nat(2);
        let f = fin_enum(&mut u, two).unwrap();
        assert_eq!(f, u.parse("{0,{0},{1},{0,1}}").unwrap());
        let e = u.empty();
        let f = fin_enum(&mut u, e).unwrap();
        assert_eq!(f, u.singleton(e));
        let a = u.parse("{0,<1,2>,5}").unwrap();
        let f = fin_enum(&mut u, a).unwrap();
        assert_eq!(f, u.powerset(a).unwrap());
        let big = u.nat(13);
        assert!(matches!(
            fin_enum(&mut u, big),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn union_closure() {
        let mut u = Universe::new();
        let a = u.nat(3);
        let f = fin_enum(&mut u, a).unwrap();
        let ys = u.elems(f).to_vec();
        for &b in &ys {
            for &c in &ys {
                let bc = u.union2(b, c);
                assert!(u.member(bc, f));
            }
        }
    }

    #[test]
    fn induction_examples() {
        let mut u = Universe::new();
        let a = u.nat(3);
        let small = |u: &mut Universe, y: Set| u.card(y) <= 3;
        let r = fin_induction_check(&mut u, a, small).unwrap();
        assert_eq!(
            r,
            FinInduction {
                base: true,
                step: true,
                covers: true
            }
        );
        let tiny = |u: &mut Universe, y: Set| u.card(y) <= 1;
        let r = fin_induction_check(&mut u, a, tiny).unwrap();
        assert!(r.base && !r.step && !r.covers && r.rule_holds());
    }
}
