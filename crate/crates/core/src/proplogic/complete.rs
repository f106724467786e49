//! Proof transformers and the completeness procedure.

use std::collections::HashMap;
use std::sync::Arc;

use super::deriv::{
    check_all, check_derivation, conclusion, CheckError, CheckErrorKind, Derivation,
};
use super::thms::is_axiom;
use super::{falsifying_valuation, is_true, Context, Prop, Valuation};

type D = Arc<Derivation>;

/// `H ⊢ p ⊃ p`, from `(S)`, `(K)` and `(MP)`.
pub fn derive_i(p: &Prop) -> D {
    let pp = Prop::imp(p.clone(), p.clone());
    let s = Derivation::s(p.clone(), pp.clone(), p.clone());
    let k1 = Derivation::k(p.clone(), pp);
    let k2 = Derivation::k(p.clone(), p.clone());
    Derivation::mp(Derivation::mp(s, k1), k2)
}

fn weaken(d: D, q: Prop, p: &Prop) -> D {
    Derivation::mp(Derivation::k(q, p.clone()), d)
}

/// From a proof of `q`, a proof of `p ⊃ q`.
pub fn weaken_right(d: &D, p: &Prop) -> Result<D, CheckError> {
    let q = conclusion(d)?;
    Ok(weaken(d.clone(), q, p))
}

/// Turns a proof of `q` from `cons(p, H)` into a proof of `p ⊃ q` from `H`.
pub fn deduction(d: &D, p: &Prop, h: &Context) -> Result<D, CheckError> {
    let mut ctx = h.clone();
    ctx.insert(p.clone());
    let concl = check_all(d, &ctx)?;
    let mut uses = HashMap::new();
    Ok(discharge(d, p, &concl, &mut uses, &mut HashMap::new()).0)
}

/// Whether some `Hyp(p)` node occurs in `d`.
fn uses_hyp(d: &D, p: &Prop, memo: &mut HashMap<*const Derivation, bool>) -> bool {
    let key = Arc::as_ptr(d);
    if let Some(&hit) = memo.get(&key) {
        return hit;
    }
    let out = match &**d {
        Derivation::Hyp(q) => q == p,
        Derivation::MP(a, b) => uses_hyp(a, p, memo) || uses_hyp(b, p, memo),
        _ => false,
    };
    memo.insert(key, out);
    out
}

/// Returns the transformed derivation with the conclusion of the original. Subproofs that
/// never use `p` are weakened whole instead of being rebuilt.
fn discharge(
    d: &D,
    p: &Prop,
    concl: &HashMap<*const Derivation, Prop>,
    uses: &mut HashMap<*const Derivation, bool>,
    memo: &mut HashMap<*const Derivation, (D, Prop)>,
) -> (D, Prop) {
    let key = Arc::as_ptr(d);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let out = match &**d {
        Derivation::MP(major, minor) if uses_hyp(d, p, uses) => {
            let (e_major, c_major) = discharge(major, p, concl, uses, memo);
            let (e_minor, c_minor) = discharge(minor, p, concl, uses, memo);
            let (_, y) = c_major.as_imp().expect("checked before discharge");
            let y = y.clone();
            let s = Derivation::s(p.clone(), c_minor, y.clone());
            (Derivation::mp(Derivation::mp(s, e_major), e_minor), y)
        }
        Derivation::Hyp(q) if q == p => (derive_i(p), p.clone()),
        _ => {
            let q = concl[&key].clone();
            (weaken(d.clone(), q.clone(), p), q)
        }
    };
    memo.insert(key, out.clone());
    out
}

/// From proofs of `p` under `cons(q, H)` and under `cons(q ⊃ Fls, H)`, a proof of `p`
/// under `H`.
pub fn excluded_middle(d1: &D, d2: &D, q: &Prop, h: &Context) -> Result<D, CheckError> {
    let nq = Prop::neg(q.clone());
    let e1 = deduction(d1, q, h)?;
    let e2 = deduction(d2, &nq, h)?;
    let p = conclusion(d1)?;
    let p2 = conclusion(d2)?;
    if p != p2 {
        return Err(CheckError {
            path: Vec::new(),
            kind: CheckErrorKind::ConclusionMismatch { left: p, right: p2 },
        });
    }
    let np = Prop::neg(p.clone());
    let mut with_np = h.clone();
    with_np.insert(np.clone());
    // ¬p, q ⊢ Fls
    let from_q = Derivation::mp(e1, Derivation::hyp(q.clone()));
    let f1 = Derivation::mp(Derivation::hyp(np.clone()), from_q);
    let not_q = deduction(&f1, q, &with_np)?;
    // ¬p ⊢ Fls
    let from_nq = Derivation::mp(e2, not_q);
    let f2 = Derivation::mp(Derivation::hyp(np.clone()), from_nq);
    let nnp = deduction(&f2, &np, h)?;
    Ok(Derivation::mp(Derivation::dn(p), nnp))
}

/// The literals of `p`'s atoms under `t`: `#v` when `v ∈ t`, `#v ⊃ Fls` otherwise.
pub fn hyps(p: &Prop, t: &Valuation) -> Context {
    let mut out = Context::new();
    collect_hyps(p, t, &mut out);
    out
}

fn collect_hyps(p: &Prop, t: &Valuation, out: &mut Context) {
    match p {
        Prop::Fls => {}
        Prop::Var(v) => {
            out.insert(literal(*v, t.contains(v)));
        }
        Prop::Imp(a, b) => {
            collect_hyps(a, t, out);
            collect_hyps(b, t, out);
        }
    }
}

fn literal(v: u32, positive: bool) -> Prop {
    if positive {
        Prop::Var(v)
    } else {
        Prop::neg(Prop::Var(v))
    }
}

/// Under `hyps(p, t)`, a proof of `p` if `p` is true at `t` and of `p ⊃ Fls` otherwise.
pub fn truth_lemma(p: &Prop, t: &Valuation) -> D {
    match p {
        Prop::Fls => derive_i(&Prop::Fls),
        Prop::Var(v) => Derivation::hyp(literal(*v, t.contains(v))),
        Prop::Imp(a, b) => {
            let ctx = hyps(p, t);
            let (ta, tb) = (is_true(a, t), is_true(b, t));
            if tb {
                weaken(truth_lemma(b, t), (**b).clone(), a)
            } else if !ta {
                // a, ¬a ⊢ Fls, and Fls ⊢ b by (K) and (DN)
                let fls = Derivation::mp(truth_lemma(a, t), Derivation::hyp((**a).clone()));
                let nb = Prop::neg((**b).clone());
                let nnb = Derivation::mp(Derivation::k(Prop::Fls, nb), fls);
                let got_b = Derivation::mp(Derivation::dn((**b).clone()), nnb);
                deduction(&got_b, a, &ctx).expect("truth lemma construction checks")
            } else {
                // a, ¬b, a ⊃ b ⊢ Fls
                let ab = Prop::imp((**a).clone(), (**b).clone());
                let got_b = Derivation::mp(Derivation::hyp(ab.clone()), truth_lemma(a, t));
                let fls = Derivation::mp(truth_lemma(b, t), got_b);
                deduction(&fls, &ab, &ctx).expect("truth lemma construction checks")
            }
        }
    }
}

/// A proof of `p` from `h` when `h ⊨ p`, otherwise a valuation satisfying `h` but not `p`.
pub fn prove_complete(h: &Context, p: &Prop) -> Result<D, Valuation> {
    if let Some(t) = falsifying_valuation(h, p) {
        return Err(t);
    }
    if h.contains(p) {
        return Ok(Derivation::hyp(p.clone()));
    }
    if let Some(ax) = is_axiom(p) {
        return Ok(ax);
    }
    // h1 ⊃ … ⊃ hn ⊃ p is a tautology
    let closed = h
        .iter()
        .rev()
        .fold(p.clone(), |acc, q| Prop::imp(q.clone(), acc));
    let atoms: Vec<u32> = closed.vars().into_iter().collect();
    let mut d = eliminate(&closed, &atoms, 0, &mut Valuation::new());
    for q in h {
        d = Derivation::mp(d, Derivation::hyp(q.clone()));
    }
    debug_assert_eq!(check_derivation(&d, h).as_ref(), Ok(p));
    Ok(d)
}

/// A proof of the tautology `p` under the literals fixed by `t` for `atoms[..i]`.
fn eliminate(p: &Prop, atoms: &[u32], i: usize, t: &mut Valuation) -> D {
    if i == atoms.len() {
        return truth_lemma(p, t);
    }
    let v = atoms[i];
    let ctx: Context = atoms[..i]
        .iter()
        .map(|&w| literal(w, t.contains(&w)))
        .collect();
    t.insert(v);
    let pos = eliminate(p, atoms, i + 1, t);
    t.remove(&v);
    let neg = eliminate(p, atoms, i + 1, t);
    excluded_middle(&pos, &neg, &Prop::Var(v), &ctx).expect("elimination step checks")
}

#[cfg(test)]
mod tests {
    use super::super::{models, parse_prop};
    use super::*;

    fn p(s: &str) -> Prop {
        parse_prop(s).unwrap()
    }

    fn proves(d: &D, h: &Context) -> Prop {
        check_derivation(d, h).unwrap()
    }

    #[test]
    fn derive_i_and_weakening() {
        let empty = Context::new();
        assert_eq!(proves(&derive_i(&p("#0")), &empty), p("#0 => #0"));
        let d = Derivation::hyp(p("#1"));
        let w = weaken_right(&d, &p("#0")).unwrap();
        assert_eq!(proves(&w, &[p("#1")].into()), p("#0 => #1"));
        // left weakening is free
        assert_eq!(proves(&w, &[p("#1"), p("#2")].into()), p("#0 => #1"));
    }

    #[test]
    fn deduction_examples() {
        let empty = Context::new();
        let d = deduction(&Derivation::hyp(p("#0")), &p("#0"), &empty).unwrap();
        assert_eq!(proves(&d, &empty), p("#0 => #0"));
        let h: Context = [p("#5")].into();
        let d = deduction(&Derivation::k(p("#1"), p("#2")), &p("#0"), &h).unwrap();
        assert_eq!(proves(&d, &h), p("#0 => #1 => #2 => #1"));
        // {#0, #0 ⊃ #1} ⊢ #1 becomes {#0 ⊃ #1} ⊢ #0 ⊃ #1
        let mp = Derivation::mp(Derivation::hyp(p("#0 => #1")), Derivation::hyp(p("#0")));
        let h: Context = [p("#0 => #1")].into();
        let d = deduction(&mp, &p("#0"), &h).unwrap();
        assert_eq!(proves(&d, &h), p("#0 => #1"));
        assert!(deduction(&mp, &p("#0"), &Context::new()).is_err());
    }

    #[test]
    fn excluded_middle_examples() {
        let goal = p("#0 => #0");
        let i = derive_i(&p("#0"));
        let empty = Context::new();
        let d = excluded_middle(&i, &i, &p("#0"), &empty).unwrap();
        assert_eq!(proves(&d, &empty), goal);
        let h: Context = [p("#3")].into();
        let d = excluded_middle(&i, &i, &p("#1"), &h).unwrap();
        assert_eq!(proves(&d, &h), goal);
    }

    #[test]
    fn hyps_examples() {
        let t: Valuation = [0].into();
        assert!(hyps(&Prop::Fls, &t).is_empty());
        assert_eq!(hyps(&p("#0 => #1"), &t), [p("#0"), p("#1 => Fls")].into());
        assert_eq!(hyps(&p("#3"), &Valuation::new()), [p("#3 => Fls")].into());
    }

    #[test]
    fn truth_lemma_examples() {
        let t: Valuation = [0].into();
        let d = truth_lemma(&p("#0"), &t);
        assert_eq!(*d, Derivation::Hyp(p("#0")));
        let d = truth_lemma(&p("#0"), &Valuation::new());
        assert_eq!(*d, Derivation::Hyp(p("#0 => Fls")));
        for s in [
            "#0 => #0",
            "(#0 => #1) => #1",
            "#1 => #0 => Fls",
            "Fls => #1",
        ] {
            let x = p(s);
            for t in [Valuation::new(), [0].into(), [1].into(), [0, 1].into()] {
                let d = truth_lemma(&x, &t);
                let want = if is_true(&x, &t) {
                    x.clone()
                } else {
                    Prop::neg(x.clone())
                };
                assert_eq!(proves(&d, &hyps(&x, &t)), want, "{s} at {t:?}");
            }
        }
    }

    #[test]
    fn prove_complete_examples() {
        let empty = Context::new();
        let dn = p("((#0 => Fls) => Fls) => #0");
        let d = prove_complete(&empty, &dn).unwrap();
        assert_eq!(proves(&d, &empty), dn);
        assert_eq!(
            prove_complete(&empty, &p("#0")).unwrap_err(),
            Valuation::new()
        );
        let h: Context = [p("#0")].into();
        let d = prove_complete(&h, &p("#0")).unwrap();
        assert_eq!(*d, Derivation::Hyp(p("#0")));
        for s in [
            "(#0 => #1) => (#1 => #2) => #0 => #2",
            "((#0 => #1) => #0) => #0",
        ] {
            let x = p(s);
            assert!(models(&empty, &x));
            let d = prove_complete(&empty, &x).unwrap();
            assert_eq!(proves(&d, &empty), x);
        }
        let h: Context = [p("#0 => #1"), p("#1 => #2")].into();
        let d = prove_complete(&h, &p("#0 => #2")).unwrap();
        assert_eq!(proves(&d, &h), p("#0 => #2"));
    }
}
