//! Formula text parser.
//!
//! Grammar (lowest to highest precedence):
//!
//! ```text
//! formula := or ( "->" formula )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "!" unary | "(" formula ")" | "true" | "false" | IDENT
//! ```
//!
//! Identifiers are letters/digits/underscore, starting with a letter.

use crate::logic::{Formula, VarSet};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Ident(String),
    Bang,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '!' => {
                toks.push((i, Tok::Bang));
                i += 1;
            }
            '&' => {
                toks.push((i, Tok::Amp));
                i += 1;
            }
            '|' => {
                toks.push((i, Tok::Pipe));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&'>') {
                    toks.push((i, Tok::Arrow));
                    i += 2;
                } else {
                    return Err(Error::Parse { pos: i, msg: "expected `->`".into() });
                }
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(bytes[start..i].iter().collect())));
            }
            _ => {
                return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: Vars<'a>,
}

enum Vars<'a> {
    Open(&'a mut VarSet),
    Closed(&'a VarSet),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or_expr()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or_expr(&mut self) -> Result<Formula> {
        let mut f = self.and_expr()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.bump();
            f = Formula::or(f, self.and_expr()?);
        }
        Ok(f)
    }

    fn and_expr(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Bang) => Ok(Formula::not(self.unary()?)),
            Some(Tok::LParen) => {
                let f = self.formula()?;
                let p = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(f),
                    _ => Err(Error::Parse { pos: p, msg: "expected `)`".into() }),
                }
            }
            Some(Tok::Ident(name)) if name == "true" => Ok(Formula::True),
            Some(Tok::Ident(name)) if name == "false" => Ok(Formula::False),
            Some(Tok::Ident(name)) => {
                let id = match &mut self.vars {
                    Vars::Open(vs) => vs.declare(&name)?,
                    Vars::Closed(vs) => {
                        vs.lookup(&name).ok_or(Error::UnknownVariable(name.clone()))?
                    }
                };
                Ok(Formula::Atom(id))
            }
            Some(_) => Err(Error::Parse { pos, msg: "expected a formula".into() }),
            None => Err(Error::Parse { pos, msg: "unexpected end of input".into() }),
        }
    }

    fn finish(mut self) -> Result<Formula> {
        if self.toks.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty input".into() });
        }
        let f = self.formula()?;
        if self.pos < self.toks.len() {
            return Err(Error::Parse { pos: self.here(), msg: "trailing input".into() });
        }
        Ok(f)
    }
}

/// Parses a formula, registering previously unseen variables in
/// first-appearance order.
pub fn parse_formula(text: &str, vars: &mut VarSet) -> Result<Formula> {
    let toks = tokenize(text)?;
    Parser { toks, pos: 0, end: text.chars().count(), vars: Vars::Open(vars) }.finish()
}

/// Parses a formula over an already-declared vocabulary; unknown variables
/// are an error.
pub fn parse_formula_closed(text: &str, vars: &VarSet) -> Result<Formula> {
    let toks = tokenize(text)?;
    Parser { toks, pos: 0, end: text.chars().count(), vars: Vars::Closed(vars) }.finish()
}
