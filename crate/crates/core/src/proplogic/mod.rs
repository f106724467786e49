//! Classical propositional logic over `Fls` and `⊃`: syntax, truth semantics, a Hilbert
//! system with a proof checker, and a completeness procedure that builds proofs of
//! tautologies.

mod complete;
mod deriv;
mod thms;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use complete::{
    deduction, derive_i, excluded_middle, hyps, prove_complete, truth_lemma, weaken_right,
};
pub use deriv::{
    check_derivation, conclusion, derivation_formulas, parse_derivation, write_derivation,
    CheckError, CheckErrorKind, Derivation, ReadError,
};
pub use thms::{is_axiom, subformula_closure, thms_bounded};

use crate::datatypes::{as_sum, inl, inr, SumView};
use crate::error::{Error, Result};
use crate::hf::{Set, Universe};
use crate::recursion::{self, RecFn};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prop {
    Fls,
    Var(u32),
    Imp(Arc<Prop>, Arc<Prop>),
}

/// A finite set of atoms regarded as true.
pub type Valuation = BTreeSet<u32>;

/// Finite set of hypotheses.
pub type Context = BTreeSet<Prop>;

impl Prop {
    pub fn var(v: u32) -> Prop {
        Prop::Var(v)
    }

    pub fn imp(p: Prop, q: Prop) -> Prop {
        Prop::Imp(Arc::new(p), Arc::new(q))
    }

    /// `p ⊃ Fls`
    pub fn neg(p: Prop) -> Prop {
        Prop::imp(p, Prop::Fls)
    }

    pub fn as_imp(&self) -> Option<(&Prop, &Prop)> {
        match self {
            Prop::Imp(p, q) => Some((p, q)),
            _ => None,
        }
    }

    /// Number of `⊃` connectives.
    pub fn connectives(&self) -> usize {
        match self {
            Prop::Imp(p, q) => 1 + p.connectives() + q.connectives(),
            _ => 0,
        }
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Prop::Fls => {}
            Prop::Var(v) => {
                out.insert(*v);
            }
            Prop::Imp(p, q) => {
                p.collect_vars(out);
                q.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prop::Fls => f.write_str("Fls"),
            Prop::Var(v) => write!(f, "#{v}"),
            Prop::Imp(p, q) => {
                if p.as_imp().is_some() {
                    write!(f, "({p}) => {q}")
                } else {
                    write!(f, "{p} => {q}")
                }
            }
        }
    }
}

impl fmt::Debug for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// -------------------- syntax -------------------- //

/// `prop := "Fls" | "#" NAT | prop "=>" prop | "(" prop ")"`, with `=>` right-associative.
pub fn parse_prop(text: &str) -> Result<Prop> {
    let mut p = PropParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let prop = p.imp()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(prop)
}

struct PropParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl PropParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn imp(&mut self) -> Result<Prop> {
        let lhs = self.atom()?;
        if self.eat("=>") {
            let rhs = self.imp()?;
            Ok(Prop::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn atom(&mut self) -> Result<Prop> {
        if self.eat("Fls") {
            return Ok(Prop::Fls);
        }
        if self.eat("(") {
            let p = self.imp()?;
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(p);
        }
        if self.eat("#") {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return digits.parse().map(Prop::Var).map_err(|_| Error::Syntax {
                pos: start,
                msg: "expected a variable index".into(),
            });
        }
        if self.pos >= self.src.len() {
            Err(self.error("unexpected end of input"))
        } else {
            Err(self.error("expected 'Fls', '#' or '('"))
        }
    }
}

// -------------------- set encoding -------------------- //

/// `Fls = Inl(∅)`, `#v = Inr(Inl(v))`, `p ⊃ q = Inr(Inr(⟨p, q⟩))`
pub fn encode_prop(u: &mut Universe, p: &Prop) -> Set {
    match p {
        Prop::Fls => {
            let e = u.empty();
            inl(u, e)
        }
        Prop::Var(v) => {
            let n = u.nat(*v);
            let l = inl(u, n);
            inr(u, l)
        }
        Prop::Imp(a, b) => {
            let (a, b) = (encode_prop(u, a), encode_prop(u, b));
            let pair = u.pair(a, b);
            let r = inr(u, pair);
            inr(u, r)
        }
    }
}

/// One layer of a proposition code.
fn prop_view(u: &Universe, s: Set) -> Option<PropView> {
    match as_sum(u, s)? {
        SumView::Inl(e) if e == u.empty() => Some(PropView::Fls),
        SumView::Inl(_) => None,
        SumView::Inr(rest) => match as_sum(u, rest)? {
            SumView::Inl(n) => u.as_nat(n).map(PropView::Var),
            SumView::Inr(pq) => u.as_pair(pq).map(|(p, q)| PropView::Imp(p, q)),
        },
    }
}

enum PropView {
    Fls,
    Var(u32),
    Imp(Set, Set),
}

pub fn decode_prop(u: &Universe, s: Set) -> Result<Prop> {
    match prop_view(u, s).ok_or(Error::NotAPropCode)? {
        PropView::Fls => Ok(Prop::Fls),
        PropView::Var(v) => Ok(Prop::Var(v)),
        PropView::Imp(p, q) => Ok(Prop::imp(decode_prop(u, p)?, decode_prop(u, q)?)),
    }
}

// -------------------- semantics -------------------- //

pub fn is_true(p: &Prop, t: &Valuation) -> bool {
    match p {
        Prop::Fls => false,
        Prop::Var(v) => t.contains(v),
        Prop::Imp(a, b) => !is_true(a, t) || is_true(b, t),
    }
}

/// The truth value of a proposition code as the ordinal 0 or 1, by rank recursion on the
/// code. `t` is a set of numerals.
pub fn truth_value(u: &mut Universe, code: Set, t: Set) -> Result<Set> {
    let body = |u: &mut Universe, c: Set, g: &mut dyn RecFn| match prop_view(u, c) {
        Some(PropView::Fls) => Ok(u.nat(0)),
        Some(PropView::Var(v)) => {
            let n = u.nat(v);
            Ok(u.nat(u.member(n, t) as u32))
        }
        Some(PropView::Imp(p, q)) => {
            let one = u.nat(1);
            let tp = g.at(u, p)?;
            let tq = g.at(u, q)?;
            Ok(if tp == one && tq != one {
                u.nat(0)
            } else {
                one
            })
        }
        None => Err(Error::NotAPropCode),
    };
    recursion::vrec(u, code, &body)
}

pub fn valuation_set(u: &mut Universe, t: &Valuation) -> Set {
    let ns: Vec<Set> = t.iter().map(|&v| u.nat(v)).collect();
    u.set_of(ns)
}

/// A valuation making every member of `h` true and `p` false, searched over subsets of the
/// atoms occurring in `h` and `p`.
pub fn falsifying_valuation(h: &Context, p: &Prop) -> Option<Valuation> {
    let mut atoms = p.vars();
    for q in h {
        atoms.extend(q.vars());
    }
    let atoms: Vec<u32> = atoms.into_iter().collect();
    assert!(atoms.len() < 32, "too many atoms to enumerate");
    (0u64..1 << atoms.len()).find_map(|mask| {
        let t: Valuation = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let counter = h.iter().all(|q| is_true(q, &t)) && !is_true(p, &t);
        counter.then_some(t)
    })
}

/// `H ⊨ p`
pub fn models(h: &Context, p: &Prop) -> bool {
    falsifying_valuation(h, p).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Prop {
        parse_prop(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let x = p("#0 => #1 => #0");
        assert_eq!(
            x,
            Prop::imp(Prop::var(0), Prop::imp(Prop::var(1), Prop::var(0)))
        );
        assert_eq!(x.to_string(), "#0 => #1 => #0");
        let y = p("(#0 => #1) => Fls");
        assert_eq!(y.to_string(), "(#0 => #1) => Fls");
        assert_eq!(p(&y.to_string()), y);
        assert!(matches!(
            parse_prop("#0 =>"),
            Err(Error::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_prop("(#0"),
            Err(Error::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_prop("#x"),
            Err(Error::Syntax { pos: 1, .. })
        ));
    }

    #[test]
    fn encoding_examples() {
        let mut u = Universe::new();
        let e = u.empty();
        assert_eq!(encode_prop(&mut u, &Prop::Fls), inl(&mut u, e));
        for s in ["Fls", "#3", "#0 => #1 => #0", "((#2 => Fls) => Fls) => #2"] {
            let x = p(s);
            let c = encode_prop(&mut u, &x);
            assert_eq!(decode_prop(&u, c).unwrap(), x);
        }
        let bad = u.parse("<0,5>").unwrap();
        assert_eq!(decode_prop(&u, bad), Err(Error::NotAPropCode));
        let bad = u.parse("<1,<0,{1}>>").unwrap();
        assert_eq!(decode_prop(&u, bad), Err(Error::NotAPropCode));
    }

    #[test]
    fn semantics_examples() {
        let t0: Valuation = [0].into();
        assert!(!is_true(&Prop::Fls, &t0));
        assert!(is_true(&p("#0"), &t0));
        assert!(!is_true(&p("#0 => Fls"), &t0));
        let empty = Context::new();
        assert!(models(&empty, &p("#0 => #0")));
        assert!(models(&[p("#0")].into(), &p("#0")));
        assert!(!models(&empty, &p("#0")));
        assert_eq!(
            falsifying_valuation(&empty, &p("#0")),
            Some(Valuation::new())
        );
    }

    #[test]
    fn truth_value_matches() {
        let mut u = Universe::new();
        for s in ["Fls", "#0", "#0 => #1", "(#0 => #1) => #0", "#1 => Fls"] {
            let x = p(s);
            let c = encode_prop(&mut u, &x);
            for mask in 0..4u32 {
                let t: Valuation = (0..2).filter(|i| mask >> i & 1 == 1).collect();
                let ts = valuation_set(&mut u, &t);
                let tv = truth_value(&mut u, c, ts).unwrap();
                assert_eq!(tv == u.nat(1), is_true(&x, &t), "{s} at {t:?}");
            }
        }
    }
}
