use crate::error::{Error, Result};

/// Surface syntax of the set grammar:
///
/// ```text
/// set := "{" [set ("," set)*] "}" | "<" set "," set ">" | NAT
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Braces(Vec<SetExpr>),
    Pair(Box<SetExpr>, Box<SetExpr>),
    /// von Neumann numeral
    Nat(u32),
}

pub fn parse_set_expr(text: &str) -> Result<SetExpr> {
    let (e, used) = parse_set_prefix(text)?;
    if used != text.len() {
        return Err(Error::Syntax {
            pos: used,
            msg: "trailing input".into(),
        });
    }
    Ok(e)
}

/// Reads the s-expression rendering: `NAT`, `(pair a b)` or `(set a ...)`.
pub fn parse_set_sexpr(text: &str) -> Result<SetExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.sexpr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

/// Parses one set from the start of `text`, returning it with the number of bytes consumed
/// (trailing whitespace included).
pub fn parse_set_prefix(text: &str) -> Result<(SetExpr, usize)> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.set()?;
    p.skip_ws();
    Ok((e, p.pos))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn set(&mut self) -> Result<SetExpr> {
        match self.peek() {
            Some(b'{') => {
                self.pos += 1;
                let mut items = Vec::new();
                if self.peek() == Some(b'}') {
                    self.pos += 1;
                    return Ok(SetExpr::Braces(items));
                }
                loop {
                    items.push(self.set()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b'}') => {
                            self.pos += 1;
                            return Ok(SetExpr::Braces(items));
                        }
                        _ => return Err(self.error("expected ',' or '}'")),
                    }
                }
            }
            Some(b'<') => {
                self.pos += 1;
                let a = self.set()?;
                self.expect(b',')?;
                let b = self.set()?;
                self.expect(b'>')?;
                Ok(SetExpr::Pair(Box::new(a), Box::new(b)))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                digits.parse().map(SetExpr::Nat).map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "numeral too large".into(),
                })
            }
            Some(_) => Err(self.error("expected '{', '<' or a numeral")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn sexpr(&mut self) -> Result<SetExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let head_pos = self.pos;
                match self.word() {
                    "pair" => {
                        let a = self.sexpr()?;
                        let b = self.sexpr()?;
                        self.expect(b')')?;
                        Ok(SetExpr::Pair(Box::new(a), Box::new(b)))
                    }
                    "set" => {
                        let mut items = Vec::new();
                        while self.peek() != Some(b')') {
                            if self.peek().is_none() {
                                return Err(self.error("unexpected end of input"));
                            }
                            items.push(self.sexpr()?);
                        }
                        self.pos += 1;
                        Ok(SetExpr::Braces(items))
                    }
                    _ => Err(Error::Syntax {
                        pos: head_pos,
                        msg: "expected 'pair' or 'set'".into(),
                    }),
                }
            }
            Some(c) if c.is_ascii_digit() => self.set(),
            Some(_) => Err(self.error("expected '(' or a numeral")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_positions() {
        assert_eq!(
            parse_set_expr("{"),
            Err(Error::Syntax {
                pos: 1,
                msg: "unexpected end of input".into()
            })
        );
        assert!(matches!(
            parse_set_expr("{1,}"),
            Err(Error::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_set_expr("<1>"),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_set_expr("1 2"),
            Err(Error::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn sexpr_forms() {
        assert_eq!(
            parse_set_sexpr("(set 1 (pair 0 (set)))"),
            parse_set_expr("{1,<0,{}>}")
        );
        assert!(parse_set_sexpr("(bag 1)").is_err());
        assert!(parse_set_sexpr("(set 1").is_err());
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(parse_set_expr(" < 1 ,{ } > "), parse_set_expr("<1,{}>"));
    }
}
