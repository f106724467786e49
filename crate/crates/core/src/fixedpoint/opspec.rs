//! Text syntax for operators, used by the command line.
//!
//! ```text
//! op := "id" | "succ"
//!     | "const(" set ")" | "fin(" set ")" | "closure(" rel ")" | "list(" set ")"
//!     | ("union" | "inter" | "prod" | "sum") "(" op "," op ")"
//!     | ("compose" | "image") "(" rel "," op ")"
//!     | "idunion(" set "," op ")"
//!     | "part(" inj "," op ")"          inj := "inl" | "inr" | inj "." inj
//!     | "lists(" op "," NAT ")"
//!     | "banach(" X "," Y "," f "," g ")"
//! ```

use super::MonoOp;
use crate::datatypes::Injection;
use crate::error::{Error, Result};
use crate::hf::{parse_set_prefix, Set, Universe};
use crate::relations::{self, Rel};

pub fn parse_op(u: &mut Universe, text: &str) -> Result<MonoOp> {
    let mut p = OpParser {
        u,
        src: text,
        pos: 0,
    };
    let op = p.op()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(op)
}

struct OpParser<'a> {
    u: &'a mut Universe,
    src: &'a str,
    pos: usize,
}

impl OpParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected an operator name"));
        }
        self.pos += len;
        Ok(&self.src[start..self.pos])
    }

    fn set(&mut self) -> Result<Set> {
        self.skip_ws();
        let (e, used) = parse_set_prefix(self.rest()).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax {
                pos: self.pos + pos,
                msg,
            },
            other => other,
        })?;
        self.pos += used;
        self.u.eval_expr(&e)
    }

    fn rel(&mut self) -> Result<Rel> {
        let s = self.set()?;
        Rel::new(self.u, s)
    }

    fn nat(&mut self) -> Result<usize> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        let n = self.rest()[..len]
            .parse()
            .map_err(|_| self.error("expected a number"))?;
        self.pos += len;
        Ok(n)
    }

    fn injection(&mut self) -> Result<Injection> {
        let start = self.pos;
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '.'))
            .unwrap_or(self.rest().len());
        let text = &self.rest()[..len];
        let inj = text.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("bad injection '{text}'"),
        })?;
        self.pos += len;
        Ok(inj)
    }

    fn op(&mut self) -> Result<MonoOp> {
        let name = self.ident()?.to_string();
        let op = match name.as_str() {
            "id" => return Ok(MonoOp::Id),
            "succ" => return Ok(MonoOp::ReplSucc),
            "const" | "fin" | "closure" | "list" => {
                self.expect('(')?;
                let s = self.set()?;
                match name.as_str() {
                    "const" => MonoOp::Const(s),
                    "fin" => MonoOp::FinOp(s),
                    "list" => MonoOp::list_over(self.u, s),
                    _ => {
                        let r = Rel::new(self.u, s)?;
                        relations::closure_op(self.u, r)
                    }
                }
            }
            "union" | "inter" | "prod" | "sum" => {
                self.expect('(')?;
                let a = self.op()?;
                self.expect(',')?;
                let b = self.op()?;
                match name.as_str() {
                    "union" => MonoOp::union(a, b),
                    "inter" => MonoOp::inter(a, b),
                    "prod" => MonoOp::prod(a, b),
                    _ => MonoOp::sum(a, b),
                }
            }
            "compose" | "image" => {
                self.expect('(')?;
                let r = self.rel()?;
                self.expect(',')?;
                let h = Box::new(self.op()?);
                if name == "compose" {
                    MonoOp::Compose(r, h)
                } else {
                    MonoOp::Image(r, h)
                }
            }
            "idunion" => {
                self.expect('(')?;
                let a = self.set()?;
                self.expect(',')?;
                MonoOp::IdUnion(a, Box::new(self.op()?))
            }
            "part" => {
                self.expect('(')?;
                let inj = self.injection()?;
                self.expect(',')?;
                MonoOp::Part(inj, Box::new(self.op()?))
            }
            "lists" => {
                self.expect('(')?;
                let h = self.op()?;
                self.expect(',')?;
                MonoOp::ListOf(Box::new(h), self.nat()?)
            }
            "banach" => {
                self.expect('(')?;
                let x = self.set()?;
                self.expect(',')?;
                let y = self.set()?;
                self.expect(',')?;
                let f = self.rel()?;
                self.expect(',')?;
                let g = self.rel()?;
                MonoOp::DoubleDiff {
                    outer: x,
                    g,
                    inner: y,
                    f,
                }
            }
            _ => {
                return Err(Error::Syntax {
                    pos: self.pos - name.len(),
                    msg: format!("unknown operator '{name}'"),
                })
            }
        };
        self.expect(')')?;
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixedpoint::{eval_op, lfp_iterate};

    #[test]
    fn parses_and_evaluates() {
        let mut u = Universe::new();
        let h = parse_op(&mut u, "closure({<0,1>,<1,2>})").unwrap();
        let d = u
            .parse("{<0,0>,<0,1>,<0,2>,<1,0>,<1,1>,<1,2>,<2,0>,<2,1>,<2,2>}")
            .unwrap();
        let l = lfp_iterate(&mut u, d, &h).unwrap();
        let expect = u.parse("{<0,0>,<1,1>,<2,2>,<0,1>,<1,2>,<0,2>}").unwrap();
        assert_eq!(l, expect);

        let h = parse_op(&mut u, " union( const({5}) , succ ) ").unwrap();
        let x = u.nat(1);
        let out = eval_op(&mut u, &h, x).unwrap();
        assert_eq!(out, u.parse("{0,1,5}").unwrap());

        let h = parse_op(&mut u, "part(inr.inl, const({<1,<0,2>>,<0,3>}))").unwrap();
        let e = u.empty();
        let out = eval_op(&mut u, &h, e).unwrap();
        assert_eq!(out, u.parse("{<1,<0,2>>}").unwrap());
    }

    #[test]
    fn errors_have_positions() {
        let mut u = Universe::new();
        assert!(matches!(
            parse_op(&mut u, "frob"),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_op(&mut u, "const({1,)"),
            Err(Error::Syntax { pos: 9, .. })
        ));
        assert!(matches!(
            parse_op(&mut u, "closure({1})"),
            Err(Error::NotARelation)
        ));
        assert!(matches!(
            parse_op(&mut u, "id id"),
            Err(Error::Syntax { pos: 3, .. })
        ));
    }
}
