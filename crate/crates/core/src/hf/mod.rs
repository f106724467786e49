//! Hereditarily finite sets.
//!
//! Every set lives in a [`Universe`], an interning arena that keeps one canonical copy of each
//! set. A [`Set`] is just an index into that arena, so extensional equality is `==` on the
//! index and hashing is free. Elements are stored sorted by [`Universe::order`] and without
//! duplicates.
//!
//! Sets are immutable once interned. A universe has a single owner; independent computations
//! that want to run in parallel each build their own universe.

mod syntax;

use std::cmp::Ordering;
use std::collections::HashMap;

use indexmap::IndexSet;

pub use syntax::{parse_set_expr, parse_set_prefix, parse_set_sexpr, SetExpr};

use crate::error::{Error, Result};

/// Handle to an interned hereditarily finite set. Only meaningful together with the
/// [`Universe`] that created it.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Set(u32);

impl Set {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Size limits for a universe.
#[derive(Clone, Debug)]
pub struct Config {
    /// Maximum number of interned sets.
    pub budget: usize,
    /// Largest set whose powerset may be formed.
    pub powerset_limit: usize,
    /// Largest natural number that may be built from a numeral or by `nat_upto`.
    pub nat_bound: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget: 1_000_000,
            powerset_limit: 20,
            nat_bound: 4096,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Meta {
    rank: u32,
    nat: Option<u32>,
}

/// Interning arena for hereditarily finite sets.
pub struct Universe {
    sets: IndexSet<Box<[Set]>>,
    meta: Vec<Meta>,
    config: Config,
    pub(crate) rank_memo: HashMap<Set, Set>,
    pub(crate) eclose_memo: HashMap<Set, Set>,
}

impl Default for Universe {
    fn default() -> Self {
        Self::new()
    }
}

impl Universe {
    pub fn new() -> Self {
        Self::with_config(Config::default())
    }

    pub fn with_config(config: Config) -> Self {
        let mut u = Universe {
            sets: IndexSet::new(),
            meta: Vec::new(),
            config,
            rank_memo: HashMap::new(),
            eclose_memo: HashMap::new(),
        };
        let e = u.intern_sorted(Vec::new());
        debug_assert_eq!(e, Set(0));
        u
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    /// Number of distinct sets interned so far.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn check_budget(&self) -> Result<()> {
        if self.sets.len() > self.config.budget {
            Err(Error::BudgetExceeded {
                budget: self.config.budget,
            })
        } else {
            Ok(())
        }
    }

    // -------------------- interning -------------------- //

    /// The canonical total order: by cardinality, then lexicographically on the (already
    /// sorted) element lists.
    pub fn order(&self, a: Set, b: Set) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let (ea, eb) = (self.elems(a), self.elems(b));
        ea.len().cmp(&eb.len()).then_with(|| {
            for (&x, &y) in ea.iter().zip(eb) {
                match self.order(x, y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Interns a collection of elements, in any order and possibly with repetitions.
    pub fn set_of<I: IntoIterator<Item = Set>>(&mut self, elems: I) -> Set {
        let mut v: Vec<Set> = elems.into_iter().collect();
        v.sort_by(|&a, &b| self.order(a, b));
        v.dedup();
        self.intern_sorted(v)
    }

    /// `v` must already be sorted by [`Self::order`] and free of duplicates.
    fn intern_sorted(&mut self, v: Vec<Set>) -> Set {
        if let Some(i) = self.sets.get_index_of(v.as_slice()) {
            return Set(i as u32);
        }
        let rank = v
            .iter()
            .map(|&e| self.meta[e.index()].rank + 1)
            .max()
            .unwrap_or(0);
        let nat = v
            .iter()
            .enumerate()
            .all(|(i, &e)| self.meta[e.index()].nat == Some(i as u32))
            .then_some(v.len() as u32);
        let (i, _) = self.sets.insert_full(v.into_boxed_slice());
        self.meta.push(Meta { rank, nat });
        Set(i as u32)
    }

    pub fn elems(&self, s: Set) -> &[Set] {
        &self.sets[s.index()]
    }

    pub fn card(&self, s: Set) -> usize {
        self.elems(s).len()
    }

    /// Rank as a machine integer, cached at interning time.
    pub fn rank_num(&self, s: Set) -> u32 {
        self.meta[s.index()].rank
    }

    /// `Some(n)` iff `s` is the von Neumann ordinal `n`.
    pub fn as_nat(&self, s: Set) -> Option<u32> {
        self.meta[s.index()].nat
    }

    // -------------------- ZF primitives -------------------- //

    pub fn empty(&self) -> Set {
        Set(0)
    }

    pub fn member(&self, x: Set, s: Set) -> bool {
        self.elems(s)
            .binary_search_by(|&e| self.order(e, x))
            .is_ok()
    }

    pub fn subset(&self, a: Set, b: Set) -> bool {
        if a == b {
            return true;
        }
        let (ea, eb) = (self.elems(a), self.elems(b));
        if ea.len() > eb.len() {
            return false;
        }
        let mut j = 0;
        for &x in ea {
            loop {
                if j == eb.len() {
                    return false;
                }
                match self.order(eb[j], x) {
                    Ordering::Less => j += 1,
                    Ordering::Equal => {
                        j += 1;
                        break;
                    }
                    Ordering::Greater => return false,
                }
            }
        }
        true
    }

    /// Merges the sorted element lists of `a` and `b`, keeping the elements selected by
    /// `keep(in_a, in_b)`.
    fn merge(&mut self, a: Set, b: Set, keep: impl Fn(bool, bool) -> bool) -> Set {
        let (ea, eb) = (self.elems(a), self.elems(b));
        let mut out = Vec::with_capacity(ea.len() + eb.len());
        let (mut i, mut j) = (0, 0);
        while i < ea.len() || j < eb.len() {
            let o = if i == ea.len() {
                Ordering::Greater
            } else if j == eb.len() {
                Ordering::Less
            } else {
                self.order(ea[i], eb[j])
            };
            match o {
                Ordering::Less => {
                    if keep(true, false) {
                        out.push(ea[i]);
                    }
                    i += 1;
                }
                Ordering::Greater => {
                    if keep(false, true) {
                        out.push(eb[j]);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    if keep(true, true) {
                        out.push(ea[i]);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        self.intern_sorted(out)
    }

    pub fn union2(&mut self, a: Set, b: Set) -> Set {
        self.merge(a, b, |x, y| x || y)
    }

    pub fn inter(&mut self, a: Set, b: Set) -> Set {
        self.merge(a, b, |x, y| x && y)
    }

    pub fn diff(&mut self, a: Set, b: Set) -> Set {
        self.merge(a, b, |x, y| x && !y)
    }

    pub fn big_union(&mut self, s: Set) -> Set {
        let all: Vec<Set> = self
            .elems(s)
            .iter()
            .flat_map(|&x| self.elems(x).iter().copied())
            .collect();
        self.set_of(all)
    }

    pub fn powerset(&mut self, a: Set) -> Result<Set> {
        let n = self.card(a);
        if n > self.config.powerset_limit {
            return Err(Error::PowersetTooLarge(n));
        }
        if self.len() + (1usize << n) > self.config.budget {
            return Err(Error::BudgetExceeded {
                budget: self.config.budget,
            });
        }
        let elems = self.elems(a).to_vec();
        let mut subsets = Vec::with_capacity(1 << n);
        for mask in 0u32..(1u32 << n) {
            // elements taken in canonical order keep the subset sorted
            let v: Vec<Set> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| elems[i])
                .collect();
            subsets.push(self.intern_sorted(v));
        }
        Ok(self.set_of(subsets))
    }

    pub fn cons(&mut self, x: Set, a: Set) -> Set {
        let mut v = self.elems(a).to_vec();
        v.push(x);
        self.set_of(v)
    }

    pub fn singleton(&mut self, x: Set) -> Set {
        self.intern_sorted(vec![x])
    }

    pub fn doubleton(&mut self, a: Set, b: Set) -> Set {
        self.set_of([a, b])
    }

    pub fn succ(&mut self, x: Set) -> Set {
        self.cons(x, x)
    }

    /// The von Neumann ordinal `n`.
    pub fn nat(&mut self, n: u32) -> Set {
        let mut cur = self.empty();
        for _ in 0..n {
            cur = self.succ(cur);
        }
        cur
    }

    // -------------------- pairs -------------------- //

    pub fn pair(&mut self, a: Set, b: Set) -> Set {
        let sa = self.singleton(a);
        let sab = self.doubleton(a, b);
        self.doubleton(sa, sab)
    }

    /// Decodes `{{a},{a,b}}` into `(a, b)`.
    pub fn as_pair(&self, p: Set) -> Option<(Set, Set)> {
        match *self.elems(p) {
            [x] => match *self.elems(x) {
                [a] => Some((a, a)),
                _ => None,
            },
            [x, y] => {
                // canonical order puts the singleton {a} first
                let a = match *self.elems(x) {
                    [a] => a,
                    _ => return None,
                };
                match *self.elems(y) {
                    [c, d] if c == a => Some((a, d)),
                    [c, d] if d == a => Some((a, c)),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    pub fn is_pair(&self, p: Set) -> bool {
        self.as_pair(p).is_some()
    }

    pub fn fst(&self, p: Set) -> Result<Set> {
        self.as_pair(p).map(|(a, _)| a).ok_or(Error::NotAPair)
    }

    pub fn snd(&self, p: Set) -> Result<Set> {
        self.as_pair(p).map(|(_, b)| b).ok_or(Error::NotAPair)
    }

    /// `split(h, <a,b>) = h(a, b)`.
    pub fn split<T>(
        &mut self,
        h: impl FnOnce(&mut Self, Set, Set) -> Result<T>,
        p: Set,
    ) -> Result<T> {
        let (a, b) = self.as_pair(p).ok_or(Error::NotAPair)?;
        h(self, a, b)
    }

    pub fn product(&mut self, a: Set, b: Set) -> Result<Set> {
        let (ea, eb) = (self.elems(a).to_vec(), self.elems(b).to_vec());
        if self.len() + 3 * ea.len() * eb.len() > self.config.budget {
            return Err(Error::BudgetExceeded {
                budget: self.config.budget,
            });
        }
        let mut out = Vec::with_capacity(ea.len() * eb.len());
        for &x in &ea {
            for &y in &eb {
                out.push(self.pair(x, y));
            }
        }
        Ok(self.set_of(out))
    }

    // -------------------- separation and replacement -------------------- //

    /// `{x ∈ s. pred(x)}`
    pub fn sep(&mut self, s: Set, mut pred: impl FnMut(&mut Self, Set) -> bool) -> Set {
        let elems = self.elems(s).to_vec();
        let kept: Vec<Set> = elems.into_iter().filter(|&x| pred(self, x)).collect();
        // a filtered sorted list stays sorted
        self.intern_sorted(kept)
    }

    /// `{f(x). x ∈ s}`
    pub fn repl(
        &mut self,
        s: Set,
        mut f: impl FnMut(&mut Self, Set) -> Result<Set>,
    ) -> Result<Set> {
        let elems = self.elems(s).to_vec();
        let mut out = Vec::with_capacity(elems.len());
        for x in elems {
            out.push(f(self, x)?);
        }
        self.check_budget()?;
        Ok(self.set_of(out))
    }

    // -------------------- sets as functions -------------------- //

    /// `λx∈A. body(x)`, the set of pairs `<x, body(x)>`.
    pub fn lambda_set(
        &mut self,
        a: Set,
        mut body: impl FnMut(&mut Self, Set) -> Result<Set>,
    ) -> Result<Set> {
        self.repl(a, |u, x| {
            let y = body(u, x)?;
            Ok(u.pair(x, y))
        })
    }

    /// Function application `f'x`: the unique `y` with `<x,y> ∈ f`.
    pub fn apply(&self, f: Set, x: Set) -> Result<Set> {
        let mut found = None;
        for &p in self.elems(f) {
            if let Some((a, b)) = self.as_pair(p) {
                if a == x {
                    if found.is_some() {
                        return Err(Error::NotSingleValued);
                    }
                    found = Some(b);
                }
            }
        }
        found.ok_or(Error::NotInDomain)
    }

    /// `f↾A`, restricted to the part of `A` where `f` is defined.
    pub fn restrict(&mut self, f: Set, a: Set) -> Result<Set> {
        let pairs: Vec<Set> = self
            .elems(f)
            .iter()
            .copied()
            .filter(|&p| matches!(self.as_pair(p), Some((x, _)) if self.member(x, a)))
            .collect();
        // single-valuedness on the restricted domain
        let mut seen = HashMap::new();
        for &p in &pairs {
            let (x, y) = self.as_pair(p).unwrap();
            if let Some(prev) = seen.insert(x, y) {
                if prev != y {
                    return Err(Error::NotSingleValued);
                }
            }
        }
        Ok(self.set_of(pairs))
    }

    // -------------------- text -------------------- //

    pub fn parse(&mut self, text: &str) -> Result<Set> {
        let expr = parse_set_expr(text)?;
        self.eval_expr(&expr)
    }

    /// Reads the output of [`Universe::show_sexpr`].
    pub fn parse_sexpr(&mut self, text: &str) -> Result<Set> {
        let expr = parse_set_sexpr(text)?;
        self.eval_expr(&expr)
    }

    pub fn eval_expr(&mut self, e: &SetExpr) -> Result<Set> {
        match e {
            SetExpr::Nat(n) => {
                if *n > self.config.nat_bound {
                    return Err(Error::BoundExceeded(format!(
                        "numeral {n} exceeds the natural-number bound {}",
                        self.config.nat_bound
                    )));
                }
                Ok(self.nat(*n))
            }
            SetExpr::Pair(a, b) => {
                let a = self.eval_expr(a)?;
                let b = self.eval_expr(b)?;
                Ok(self.pair(a, b))
            }
            SetExpr::Braces(items) => {
                let mut v = Vec::with_capacity(items.len());
                for i in items {
                    v.push(self.eval_expr(i)?);
                }
                self.check_budget()?;
                Ok(self.set_of(v))
            }
        }
    }

    /// Canonical text: numerals for ordinals, `<a,b>` for pairs, braces otherwise.
    pub fn show(&self, s: Set) -> String {
        let mut out = String::new();
        self.write_text(s, &mut out);
        out
    }

    fn write_text(&self, s: Set, out: &mut String) {
        if let Some(n) = self.as_nat(s) {
            out.push_str(&n.to_string());
        } else if let Some((a, b)) = self.as_pair(s) {
            out.push('<');
            self.write_text(a, out);
            out.push(',');
            self.write_text(b, out);
            out.push('>');
        } else {
            out.push('{');
            for (i, &e) in self.elems(s).iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                self.write_text(e, out);
            }
            out.push('}');
        }
    }

    /// S-expression rendering: `n`, `(pair a b)`, `(set a b ...)`.
    pub fn show_sexpr(&self, s: Set) -> String {
        if let Some(n) = self.as_nat(s) {
            n.to_string()
        } else if let Some((a, b)) = self.as_pair(s) {
            format!("(pair {} {})", self.show_sexpr(a), self.show_sexpr(b))
        } else {
            let mut out = String::from("(set");
            for &e in self.elems(s) {
                out.push(' ');
                out.push_str(&self.show_sexpr(e));
            }
            out.push(')');
            out
        }
    }

    /// Structure-preserving copy of a set from another universe.
    pub fn import(&mut self, from: &Universe, s: Set) -> Set {
        let elems: Vec<Set> = from
            .elems(s)
            .iter()
            .map(|&e| self.import(from, e))
            .collect();
        self.set_of(elems)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(u: &mut Universe, s: &str) -> Set {
        u.parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let mut u = Universe::new();
        assert_eq!(p(&mut u, "{}"), u.empty());
        let two = p(&mut u, "2");
        let expect = p(&mut u, "{{},{{}}}");
        assert_eq!(two, expect);
        let pr = p(&mut u, "<0,1>");
        let expect = p(&mut u, "{{{}},{{},{{}}}}");
        assert_eq!(pr, expect);
    }

    #[test]
    fn membership_and_extensionality() {
        let mut u = Universe::new();
        let e = u.empty();
        let one = u.nat(1);
        assert!(u.member(e, one));
        assert!(u.subset(e, one));
        assert_eq!(p(&mut u, "{{},{}}"), p(&mut u, "{{}}"));
    }

    #[test]
    fn algebra_examples() {
        let mut u = Universe::new();
        let s = p(&mut u, "{<0,1>}");
        let bu = u.big_union(s);
        assert_eq!(bu, p(&mut u, "{{0},{0,1}}"));
        let bu2 = p(&mut u, "{{{0},{0,1}}}");
        let r = u.big_union(bu2);
        assert_eq!(r, p(&mut u, "{{0},{0,1}}"));
        let one = u.nat(1);
        let pw = u.powerset(one).unwrap();
        assert_eq!(pw, u.nat(2));
        let two = u.nat(2);
        let c = u.cons(two, two);
        assert_eq!(c, u.nat(3));
    }

    #[test]
    fn powerset_guard() {
        let mut u = Universe::new();
        let big = u.nat(21);
        assert_eq!(u.powerset(big), Err(Error::PowersetTooLarge(21)));
    }

    #[test]
    fn pairs() {
        let mut u = Universe::new();
        let z = u.empty();
        let pzz = u.pair(z, z);
        assert_eq!(pzz, p(&mut u, "{{0}}"));
        assert_eq!(u.as_pair(pzz), Some((z, z)));
        let (one, two) = (u.nat(1), u.nat(2));
        let p12 = u.pair(one, two);
        assert_eq!(u.fst(p12), Ok(one));
        assert_eq!(u.snd(p12), Ok(two));
        let p01 = u.pair(z, one);
        let swapped = u.split(|u, a, b| Ok(u.pair(b, a)), p01).unwrap();
        assert_eq!(swapped, u.pair(one, z));
        assert_eq!(u.fst(two), Err(Error::NotAPair));
        let three = u.nat(3);
        assert_eq!(u.as_pair(three), None);
    }

    #[test]
    fn sep_repl() {
        let mut u = Universe::new();
        let three = u.nat(3);
        let one = u.nat(1);
        let s = u.sep(three, |_, x| x == one);
        assert_eq!(s, u.singleton(one));
        let two = u.nat(2);
        let r = u.repl(two, |u, x| Ok(u.succ(x))).unwrap();
        assert_eq!(r, u.doubleton(one, two));
        let e = u.empty();
        assert_eq!(u.repl(e, |u, x| Ok(u.succ(x))).unwrap(), e);
    }

    #[test]
    fn lambda_apply_restrict() {
        let mut u = Universe::new();
        let two = u.nat(2);
        let f = u.lambda_set(two, |u, x| Ok(u.succ(x))).unwrap();
        let one = u.nat(1);
        assert_eq!(u.apply(f, one), Ok(two));
        let five = u.nat(5);
        assert_eq!(u.apply(f, five), Err(Error::NotInDomain));
        let three = u.nat(3);
        let id3 = u.lambda_set(three, |_, x| Ok(x)).unwrap();
        let r = u.restrict(id3, one).unwrap();
        let z = u.empty();
        let pzz = u.pair(z, z);
        assert_eq!(r, u.singleton(pzz));
    }

    #[test]
    fn not_single_valued() {
        let mut u = Universe::new();
        let f = p(&mut u, "{<0,1>,<0,2>}");
        let z = u.empty();
        assert_eq!(u.apply(f, z), Err(Error::NotSingleValued));
    }

    #[test]
    fn printing() {
        let mut u = Universe::new();
        for text in [
            "0",
            "3",
            "<0,1>",
            "{1}",
            "{<1,2>,{3}}",
            "<0,0>",
            "{2,<3,3>}",
        ] {
            let s = p(&mut u, text);
            let shown = u.show(s);
            assert_eq!(p(&mut u, &shown), s, "{text} printed as {shown}");
        }
        let s = p(&mut u, "{{{}}}");
        assert_eq!(u.show(s), "<0,0>");
        let s = p(&mut u, "{ 1 , 0 }");
        assert_eq!(u.show(s), "2");
        assert_eq!(u.show_sexpr(s), "2");
        let s = p(&mut u, "{<0,1>}");
        assert_eq!(u.show_sexpr(s), "(set (pair 0 1))");
    }

    #[test]
    fn budget_is_enforced() {
        let mut u = Universe::with_config(Config {
            budget: 50,
            ..Config::default()
        });
        let ten = u.nat(10);
        assert!(matches!(u.powerset(ten), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn ranks_cached() {
        let mut u = Universe::new();
        let s = p(&mut u, "<0,1>");
        assert_eq!(u.rank_num(s), 3);
        let e = u.empty();
        assert_eq!(u.rank_num(e), 0);
    }
}
