use std::collections::BTreeSet;
use std::sync::Arc;

use super::deriv::Derivation;
use super::{Context, Prop};

/// The axiom node proving `p`, if `p` is an instance of `(K)`, `(S)` or `(DN)`.
pub fn is_axiom(p: &Prop) -> Option<Arc<Derivation>> {
    let (lhs, rhs) = p.as_imp()?;
    // p ⊃ q ⊃ p
    if let Some((q, p2)) = rhs.as_imp() {
        if lhs == p2 {
            return Some(Derivation::k(lhs.clone(), q.clone()));
        }
    }
    // (p ⊃ q ⊃ r) ⊃ (p ⊃ q) ⊃ (p ⊃ r)
    if let (Some((a, qr)), Some((pq, pr))) = (lhs.as_imp(), rhs.as_imp()) {
        if let (Some((b, c)), Some((a2, b2)), Some((a3, c2))) =
            (qr.as_imp(), pq.as_imp(), pr.as_imp())
        {
            if a == a2 && a == a3 && b == b2 && c == c2 {
                return Some(Derivation::s(a.clone(), b.clone(), c.clone()));
            }
        }
    }
    // ((p ⊃ Fls) ⊃ Fls) ⊃ p
    if let Some((np, Prop::Fls)) = lhs.as_imp() {
        if let Some((a, Prop::Fls)) = np.as_imp() {
            if a == rhs {
                return Some(Derivation::dn(a.clone()));
            }
        }
    }
    None
}

/// All subformulas of the given propositions.
pub fn subformula_closure<'a>(props: impl IntoIterator<Item = &'a Prop>) -> BTreeSet<Prop> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<&Prop> = props.into_iter().collect();
    while let Some(p) = stack.pop() {
        if out.insert(p.clone()) {
            if let Prop::Imp(a, b) = p {
                stack.push(a);
                stack.push(b);
            }
        }
    }
    out
}

/// Iterates `X ↦ (H ∩ C) ∪ ax(C) ∪ ruleMP(X) ∩ C` from the empty set, where `C` is the
/// candidate set, until it is stationary or `max_steps` rounds have run.
pub fn thms_bounded(h: &Context, candidates: &BTreeSet<Prop>, max_steps: usize) -> BTreeSet<Prop> {
    let base: BTreeSet<Prop> = candidates
        .iter()
        .filter(|c| h.contains(c) || is_axiom(c).is_some())
        .cloned()
        .collect();
    let mut x = BTreeSet::new();
    for _ in 0..max_steps {
        let mut next = base.clone();
        for c in &x {
            if let Prop::Imp(a, b) = c {
                if x.contains(&**a) && candidates.contains(&**b) {
                    next.insert((**b).clone());
                }
            }
        }
        if next == x {
            break;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::super::{check_derivation, parse_prop};
    use super::*;

    fn p(s: &str) -> Prop {
        parse_prop(s).unwrap()
    }

    #[test]
    fn recognizes_axioms() {
        for s in [
            "#0 => #1 => #0",
            "(#0 => #1 => #2) => (#0 => #1) => #0 => #2",
            "((#4 => Fls) => Fls) => #4",
        ] {
            let ax = is_axiom(&p(s)).unwrap();
            assert_eq!(check_derivation(&ax, &Context::new()).unwrap(), p(s));
        }
        assert!(is_axiom(&p("#0 => #1 => #1")).is_none());
        assert!(is_axiom(&p("#0")).is_none());
    }

    #[test]
    fn bounded_theorems() {
        let empty = Context::new();
        assert!(thms_bounded(&empty, &BTreeSet::new(), 10).is_empty());
        // the instances used by the (I) derivation for #0
        let i = p("#0 => #0");
        let helpers = [
            p("(#0 => (#0 => #0) => #0) => (#0 => #0 => #0) => #0 => #0"),
            p("#0 => (#0 => #0) => #0"),
            p("#0 => #0 => #0"),
        ];
        let with = subformula_closure(helpers.iter().chain([&i]));
        assert!(thms_bounded(&empty, &with, 100).contains(&i));
        let without = subformula_closure([&i]);
        assert!(!thms_bounded(&empty, &without, 100).contains(&i));
        let h: Context = [p("#7")].into();
        let c = subformula_closure([&p("#7 => #1")]);
        assert!(thms_bounded(&h, &c, 1).contains(&p("#7")));
    }
}
