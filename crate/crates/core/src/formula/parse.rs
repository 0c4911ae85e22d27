//! Concrete syntax.
//!
//! ```text
//! formula := imp
//! imp     := disj ("->" imp)?          (right-associative)
//! disj    := conj ("|" conj)*
//! conj    := sum ("&" sum)*
//! sum     := prod ("+" prod)*
//! prod    := unary ("*" unary)*
//! unary   := "~" unary | atom
//! atom    := "0" | "1" | "x" digits | "(" formula ")"
//! ```
//!
//! so precedence is `~ > * > + > & > | > ->`. Whitespace is insignificant
//! and `#` starts a comment that runs to the end of the line. Variable
//! indices start at 1; `x0` is rejected.

use super::Formula;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Zero,
    One,
    Var(u32),
    Tilde,
    Star,
    Plus,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let start = self.pos;
            let c = self.src[self.pos];
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b'0' => {
                    self.pos += 1;
                    out.push((start, Tok::Zero));
                }
                b'1' => {
                    self.pos += 1;
                    out.push((start, Tok::One));
                }
                b'~' => {
                    self.pos += 1;
                    out.push((start, Tok::Tilde));
                }
                b'*' => {
                    self.pos += 1;
                    out.push((start, Tok::Star));
                }
                b'+' => {
                    self.pos += 1;
                    out.push((start, Tok::Plus));
                }
                b'&' => {
                    self.pos += 1;
                    out.push((start, Tok::Amp));
                }
                b'|' => {
                    self.pos += 1;
                    out.push((start, Tok::Pipe));
                }
                b'(' => {
                    self.pos += 1;
                    out.push((start, Tok::LParen));
                }
                b')' => {
                    self.pos += 1;
                    out.push((start, Tok::RParen));
                }
                b'-' => {
                    if self.pos + 1 < self.src.len() && self.src[self.pos + 1] == b'>' {
                        self.pos += 2;
                        out.push((start, Tok::Arrow));
                    } else {
                        return Err(self.err(start, "expected `->`"));
                    }
                }
                b'x' => {
                    self.pos += 1;
                    let digits_start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if digits_start == self.pos {
                        return Err(self.err(start, "variable needs an index, e.g. `x1`"));
                    }
                    let text = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
                    let idx: u32 = text
                        .parse()
                        .map_err(|_| self.err(start, format!("variable index `{text}` too large")))?;
                    if idx == 0 {
                        return Err(self.err(start, "variable indices start at 1; `x0` is not a variable"));
                    }
                    out.push((start, Tok::Var(idx)));
                }
                other => {
                    return Err(self.err(
                        start,
                        format!("unexpected character `{}`", char::from(other)),
                    ))
                }
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        self.at += 1;
        t
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.disj()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            Ok(super::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut f = self.conj()?;
        while self.eat(&Tok::Pipe) {
            f = super::join(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut f = self.sum()?;
        while self.eat(&Tok::Amp) {
            f = super::meet(f, self.sum()?);
        }
        Ok(f)
    }

    fn sum(&mut self) -> Result<Formula> {
        let mut f = self.prod()?;
        while self.eat(&Tok::Plus) {
            f = super::oplus(f, self.prod()?);
        }
        Ok(f)
    }

    fn prod(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::Star) {
            f = super::odot(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Tilde) {
            Ok(super::neg(self.unary()?))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Zero) => {
                self.bump();
                Ok(Formula::Zero)
            }
            Some(Tok::One) => {
                self.bump();
                Ok(Formula::One)
            }
            Some(Tok::Var(_)) => {
                if let Tok::Var(i) = self.bump() {
                    Ok(Formula::Var(i))
                } else {
                    unreachable!()
                }
            }
            Some(Tok::LParen) => {
                self.bump();
                let f = self.imp()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                Ok(f)
            }
            Some(_) => Err(self.err("expected a formula")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses the concrete syntax into a [`Formula`].
pub fn parse(src: &str) -> Result<Formula> {
    let toks = Lexer::new(src).tokens()?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    if p.peek().is_none() {
        return Err(p.err("empty input"));
    }
    let f = p.imp()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after formula"));
    }
    Ok(f)
}
