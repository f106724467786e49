use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{parse_prop, Context, Prop};

/// A proof tree. Subtrees may be shared.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Derivation {
    Hyp(Prop),
    /// `p ⊃ q ⊃ p`
    K(Prop, Prop),
    /// `(p ⊃ q ⊃ r) ⊃ (p ⊃ q) ⊃ (p ⊃ r)`
    S(Prop, Prop, Prop),
    /// `((p ⊃ Fls) ⊃ Fls) ⊃ p`
    DN(Prop),
    /// From `p ⊃ q` and `p`, infer `q`.
    MP(Arc<Derivation>, Arc<Derivation>),
}

impl Derivation {
    pub fn hyp(p: Prop) -> Arc<Derivation> {
        Arc::new(Derivation::Hyp(p))
    }

    pub fn k(p: Prop, q: Prop) -> Arc<Derivation> {
        Arc::new(Derivation::K(p, q))
    }

    pub fn s(p: Prop, q: Prop, r: Prop) -> Arc<Derivation> {
        Arc::new(Derivation::S(p, q, r))
    }

    pub fn dn(p: Prop) -> Arc<Derivation> {
        Arc::new(Derivation::DN(p))
    }

    pub fn mp(major: Arc<Derivation>, minor: Arc<Derivation>) -> Arc<Derivation> {
        Arc::new(Derivation::MP(major, minor))
    }

    /// Node count of the tree with sharing expanded.
    pub fn tree_size(&self) -> u64 {
        match self {
            Derivation::MP(a, b) => 1 + a.tree_size() + b.tree_size(),
            _ => 1,
        }
    }
}

/// Conclusion of an axiom or hypothesis node.
fn leaf_conclusion(d: &Derivation) -> Option<Prop> {
    Some(match d {
        Derivation::Hyp(p) => p.clone(),
        Derivation::K(p, q) => Prop::imp(p.clone(), Prop::imp(q.clone(), p.clone())),
        Derivation::S(p, q, r) => Prop::imp(
            Prop::imp(p.clone(), Prop::imp(q.clone(), r.clone())),
            Prop::imp(
                Prop::imp(p.clone(), q.clone()),
                Prop::imp(p.clone(), r.clone()),
            ),
        ),
        Derivation::DN(p) => Prop::imp(Prop::neg(Prop::neg(p.clone())), p.clone()),
        Derivation::MP(..) => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckErrorKind {
    #[error("hypothesis {0} is not in the context")]
    HypNotInContext(Prop),
    #[error("modus ponens mismatch: major premise {major}, minor premise {minor}")]
    MalformedMP { major: Prop, minor: Prop },
    #[error("malformed formula: {0}")]
    MalformedFormula(String),
    #[error("the two case proofs conclude {left} and {right}")]
    ConclusionMismatch { left: Prop, right: Prop },
}

/// A rejected derivation, with the path from the root to the offending node: `0` steps into
/// the major premise of an MP node, `1` into the minor one.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at node {}: {kind}", fmt_path(.path))]
pub struct CheckError {
    pub path: Vec<u8>,
    pub kind: CheckErrorKind,
}

fn fmt_path(path: &[u8]) -> String {
    let mut s = String::from("root");
    for step in path {
        s.push('.');
        s.push_str(&step.to_string());
    }
    s
}

struct Checker<'h> {
    context: Option<&'h Context>,
    memo: HashMap<*const Derivation, Prop>,
    path: Vec<u8>,
}

impl Checker<'_> {
    fn fail(&self, kind: CheckErrorKind) -> CheckError {
        CheckError {
            path: self.path.clone(),
            kind,
        }
    }

    fn run(&mut self, d: &Arc<Derivation>) -> Result<Prop, CheckError> {
        let key = Arc::as_ptr(d);
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        let out = match &**d {
            Derivation::MP(a, b) => {
                self.path.push(0);
                let major = self.run(a)?;
                self.path.pop();
                self.path.push(1);
                let minor = self.run(b)?;
                self.path.pop();
                match major.as_imp() {
                    Some((x, y)) if *x == minor => y.clone(),
                    _ => return Err(self.fail(CheckErrorKind::MalformedMP { major, minor })),
                }
            }
            Derivation::Hyp(p) => {
                if let Some(h) = self.context {
                    if !h.contains(p) {
                        return Err(self.fail(CheckErrorKind::HypNotInContext(p.clone())));
                    }
                }
                p.clone()
            }
            leaf => leaf_conclusion(leaf).expect("leaf"),
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

/// Checks `d` under hypotheses `h` and returns what it proves.
pub fn check_derivation(d: &Arc<Derivation>, h: &Context) -> Result<Prop, CheckError> {
    Checker {
        context: Some(h),
        memo: HashMap::new(),
        path: Vec::new(),
    }
    .run(d)
}

/// Checks `d` and also returns the conclusion of every node, keyed by node address.
pub(super) fn check_all(
    d: &Arc<Derivation>,
    h: &Context,
) -> Result<HashMap<*const Derivation, Prop>, CheckError> {
    let mut checker = Checker {
        context: Some(h),
        memo: HashMap::new(),
        path: Vec::new(),
    };
    checker.run(d)?;
    Ok(checker.memo)
}

/// What `d` proves, taking every `Hyp` node at face value.
pub fn conclusion(d: &Arc<Derivation>) -> Result<Prop, CheckError> {
    Checker {
        context: None,
        memo: HashMap::new(),
        path: Vec::new(),
    }
    .run(d)
}

/// Conclusions of all nodes of `d`.
pub fn derivation_formulas(d: &Arc<Derivation>) -> Result<BTreeSet<Prop>, CheckError> {
    let mut checker = Checker {
        context: None,
        memo: HashMap::new(),
        path: Vec::new(),
    };
    checker.run(d)?;
    Ok(checker.memo.into_values().collect())
}

// -------------------- s-expression files -------------------- //

/// Writes `d` as a tree: `(hyp "p")`, `(K "p" "q")`, `(S "p" "q" "r")`, `(DN "p")`,
/// `(mp d1 d2)`.
pub fn write_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    write_node(d, &mut out);
    out
}

fn write_node(d: &Derivation, out: &mut String) {
    use fmt::Write;
    match d {
        Derivation::Hyp(p) => write!(out, "(hyp \"{p}\")"),
        Derivation::K(p, q) => write!(out, "(K \"{p}\" \"{q}\")"),
        Derivation::S(p, q, r) => write!(out, "(S \"{p}\" \"{q}\" \"{r}\")"),
        Derivation::DN(p) => write!(out, "(DN \"{p}\")"),
        Derivation::MP(a, b) => {
            out.push_str("(mp ");
            write_node(a, out);
            out.push(' ');
            write_node(b, out);
            out.push(')');
            Ok(())
        }
    }
    .expect("writing to a String");
}

#[derive(Debug, PartialEq)]
enum Token {
    Open(usize),
    Close(usize),
    Atom(usize, String),
    Str(usize, String),
}

fn tokenize(text: &str) -> Result<Vec<Token>, crate::Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_whitespace() => i += 1,
            b'(' => {
                out.push(Token::Open(i));
                i += 1;
            }
            b')' => {
                out.push(Token::Close(i));
                i += 1;
            }
            b'"' => {
                let start = i;
                i += 1;
                let body = i;
                while i < bytes.len() && bytes[i] != b'"' {
                    i += 1;
                }
                if i == bytes.len() {
                    return Err(crate::Error::Syntax {
                        pos: start,
                        msg: "unterminated string".into(),
                    });
                }
                out.push(Token::Str(start, text[body..i].to_string()));
                i += 1;
            }
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && !matches!(bytes[i], b'(' | b')' | b'"')
                {
                    i += 1;
                }
                out.push(Token::Atom(start, text[start..i].to_string()));
            }
        }
    }
    Ok(out)
}

/// Errors reading a derivation file: either the text is not a derivation at all, or some
/// embedded formula is malformed.
#[derive(Debug, PartialEq, Error)]
pub enum ReadError {
    #[error(transparent)]
    Syntax(#[from] crate::Error),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Reads a derivation written by [`write_derivation`].
pub fn parse_derivation(text: &str) -> Result<Arc<Derivation>, ReadError> {
    let toks = tokenize(text)?;
    let mut pos = 0;
    let mut path = Vec::new();
    let d = read_node(&toks, &mut pos, &mut path, text.len())?;
    if let Some(t) = toks.get(pos) {
        return Err(syntax(token_pos(t), "trailing input").into());
    }
    Ok(d)
}

fn token_pos(t: &Token) -> usize {
    match t {
        Token::Open(p) | Token::Close(p) | Token::Atom(p, _) | Token::Str(p, _) => *p,
    }
}

fn syntax(pos: usize, msg: &str) -> crate::Error {
    crate::Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn read_node(
    toks: &[Token],
    pos: &mut usize,
    path: &mut Vec<u8>,
    end: usize,
) -> Result<Arc<Derivation>, ReadError> {
    let here = toks.get(*pos).map_or(end, token_pos);
    match toks.get(*pos) {
        Some(Token::Open(_)) => *pos += 1,
        _ => return Err(syntax(here, "expected '('").into()),
    }
    let head = match toks.get(*pos) {
        Some(Token::Atom(_, a)) => a.clone(),
        _ => {
            return Err(syntax(
                toks.get(*pos).map_or(end, token_pos),
                "expected a rule name",
            )
            .into())
        }
    };
    *pos += 1;
    let node = if head == "mp" {
        path.push(0);
        let a = read_node(toks, pos, path, end)?;
        path.pop();
        path.push(1);
        let b = read_node(toks, pos, path, end)?;
        path.pop();
        Derivation::mp(a, b)
    } else {
        let arity = match head.as_str() {
            "hyp" | "DN" => 1,
            "K" => 2,
            "S" => 3,
            _ => return Err(syntax(here + 1, &format!("unknown rule '{head}'")).into()),
        };
        let mut props = Vec::with_capacity(arity);
        for _ in 0..arity {
            match toks.get(*pos) {
                Some(Token::Str(_, s)) => {
                    let p = parse_prop(s).map_err(|e| CheckError {
                        path: path.clone(),
                        kind: CheckErrorKind::MalformedFormula(format!("\"{s}\": {e}")),
                    })?;
                    props.push(p);
                    *pos += 1;
                }
                t => {
                    return Err(
                        syntax(t.map_or(end, token_pos), "expected a quoted formula").into(),
                    )
                }
            }
        }
        let mut it = props.into_iter();
        let mut next = || it.next().unwrap();
        match head.as_str() {
            "hyp" => Derivation::hyp(next()),
            "DN" => Derivation::dn(next()),
            "K" => {
                let p = next();
                Derivation::k(p, next())
            }
            _ => {
                let (p, q) = (next(), next());
                Derivation::s(p, q, next())
            }
        }
    };
    match toks.get(*pos) {
        Some(Token::Close(_)) => *pos += 1,
        t => return Err(syntax(t.map_or(end, token_pos), "expected ')'").into()),
    }
    Ok(node)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Prop {
        parse_prop(s).unwrap()
    }

    #[test]
    fn check_examples() {
        let h: Context = [p("#0")].into();
        let k = Derivation::k(p("#0"), p("#1"));
        assert_eq!(check_derivation(&k, &h).unwrap(), p("#0 => #1 => #0"));
        let d = Derivation::mp(k.clone(), Derivation::hyp(p("#0")));
        assert_eq!(check_derivation(&d, &h).unwrap(), p("#1 => #0"));
        let e = check_derivation(&d, &Context::new()).unwrap_err();
        assert_eq!(e.path, vec![1]);
        assert_eq!(e.kind, CheckErrorKind::HypNotInContext(p("#0")));
        let bad = Derivation::mp(k, Derivation::hyp(p("#1")));
        let e = check_derivation(&bad, &[p("#1")].into()).unwrap_err();
        assert!(matches!(e.kind, CheckErrorKind::MalformedMP { .. }));
        assert_eq!(e.to_string().split(':').next(), Some("at node root"));
        let s = Derivation::s(p("#0"), p("#1"), p("#2"));
        assert_eq!(
            conclusion(&s).unwrap(),
            p("(#0 => #1 => #2) => (#0 => #1) => #0 => #2")
        );
        let dn = Derivation::dn(p("#0"));
        assert_eq!(conclusion(&dn).unwrap(), p("((#0 => Fls) => Fls) => #0"));
    }

    #[test]
    fn file_round_trip() {
        let d = Derivation::mp(
            Derivation::k(p("#0"), p("#1 => Fls")),
            Derivation::hyp(p("#0")),
        );
        let text = write_derivation(&d);
        assert_eq!(text, "(mp (K \"#0\" \"#1 => Fls\") (hyp \"#0\"))");
        assert_eq!(parse_derivation(&text).unwrap(), d);
        let with_comment = format!("; a proof\n{text}\n");
        assert_eq!(parse_derivation(&with_comment).unwrap(), d);
    }

    #[test]
    fn file_errors() {
        assert!(matches!(
            parse_derivation("(mp (K \"#0\")"),
            Err(ReadError::Syntax(crate::Error::Syntax { .. }))
        ));
        assert!(matches!(
            parse_derivation("(foo \"#0\")"),
            Err(ReadError::Syntax(crate::Error::Syntax { pos: 1, .. }))
        ));
        let e = parse_derivation("(mp (hyp \"#0\") (DN \"#0 =>\"))").unwrap_err();
        match e {
            ReadError::Check(c) => {
                assert_eq!(c.path, vec![1]);
                assert!(matches!(c.kind, CheckErrorKind::MalformedFormula(_)));
            }
            other => panic!("{other:?}"),
        }
    }
}
