//! Recursive-descent parser.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := '-' factor | atom ('^' exponent)?
//! atom     := number | 'i' | 'x' | 'ln' '(' 'x' ')' | '(' expr ')'
//! exponent := integer | '(' '-'? integer ('/' integer)? ')'
//! number   := integer ('/' integer)?
//! ```
//!
//! `number` is a single token-level literal: `2/3` is the constant two
//! thirds, so `x/2/3` reads as `x/(2/3)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Expression;
use crate::error::ParseError;
use crate::number::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    X,
    I,
    Ln,
    End,
}

const MAX_DEPTH: usize = 512;
// Bounds the depth of left-leaning operator chains.
const MAX_TOKENS: usize = 4096;

const ATOM_START: &[&str] = &["integer", "'i'", "'x'", "'ln'", "'('"];
const FACTOR_START: &[&str] = &["'-'", "integer", "'i'", "'x'", "'ln'", "'('"];

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        let start = pos;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos < bytes.len() && bytes[pos] == b'.' {
                    return Err(ParseError {
                        offset: pos,
                        message: "decimal literals are not supported; write p/q".into(),
                        expected: vec![],
                    });
                }
                let n: BigInt = src[start..pos].parse().expect("digit run");
                out.push((Tok::Int(n), start));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                let tok = match &src[start..pos] {
                    "x" => Tok::X,
                    "i" => Tok::I,
                    "ln" => Tok::Ln,
                    word => {
                        return Err(ParseError {
                            offset: start,
                            message: format!("unknown identifier `{word}`"),
                            expected: ATOM_START.to_vec(),
                        })
                    }
                };
                out.push((tok, start));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'.' => {
                return Err(ParseError {
                    offset: pos,
                    message: "decimal literals are not supported; write p/q".into(),
                    expected: vec![],
                })
            }
            _ => {
                let ch = src[pos..].chars().next().expect("in bounds");
                return Err(ParseError {
                    offset: pos,
                    message: format!("unexpected character `{}`", ch.escape_default()),
                    expected: vec![],
                });
            }
        };
        pos += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>, expected: &[&'static str]) -> ParseError {
        ParseError { offset: self.offset(), message: message.into(), expected: expected.to_vec() }
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            t => format!("unexpected token {}", describe(t)),
        };
        self.error(found, expected)
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expression::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expression::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expression::mul(lhs, self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expression::div(lhs, self.factor()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expression, ParseError> {
        let mut negations = 0usize;
        while *self.peek() == Tok::Minus {
            self.bump();
            negations += 1;
            if negations > MAX_DEPTH {
                return Err(self.error("nesting too deep", &[]));
            }
        }
        let atom = self.atom()?;
        let mut e = if *self.peek() == Tok::Caret {
            self.bump();
            Expression::pow(atom, self.exponent()?)
        } else {
            atom
        };
        for _ in 0..negations {
            e = Expression::neg(e);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expression, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let value = if *self.peek() == Tok::Slash && matches!(self.peek_at(1), Tok::Int(_)) {
                    self.bump();
                    let at = self.offset();
                    let Tok::Int(d) = self.bump() else { unreachable!() };
                    if d.is_zero() {
                        return Err(ParseError { offset: at, message: "zero denominator".into(), expected: vec![] });
                    }
                    Rational::new(n, d)
                } else {
                    Rational::from_integer(n)
                };
                Ok(Expression::Const(GaussianRational::real(value)))
            }
            Tok::I => {
                self.bump();
                Ok(Expression::Const(GaussianRational::i()))
            }
            Tok::X => {
                self.bump();
                Ok(Expression::VarX)
            }
            Tok::Ln => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Err(self.unexpected(&["'('"]));
                }
                self.bump();
                if *self.peek() != Tok::X || *self.peek_at(1) != Tok::RParen {
                    return Err(self.error("logarithm argument must be x", &["'x'"]));
                }
                self.bump();
                self.bump();
                Ok(Expression::LnX)
            }
            Tok::LParen => {
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(self.error("nesting too deep", &[]));
                }
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["'+'", "'-'", "'*'", "'/'", "')'"]));
                }
                self.bump();
                self.depth -= 1;
                Ok(inner)
            }
            _ => Err(self.unexpected(ATOM_START)),
        }
    }

    fn exponent(&mut self) -> Result<Rational, ParseError> {
        const NOT_LITERAL: &str = "exponent must be a literal rational";
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Rational::from_integer(n))
            }
            Tok::LParen => {
                self.bump();
                let negative = if *self.peek() == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let Tok::Int(n) = self.peek().clone() else {
                    return Err(self.error(NOT_LITERAL, &["integer"]));
                };
                self.bump();
                let d = if *self.peek() == Tok::Slash {
                    self.bump();
                    let at = self.offset();
                    let Tok::Int(d) = self.peek().clone() else {
                        return Err(self.error(NOT_LITERAL, &["integer"]));
                    };
                    if d.is_zero() {
                        return Err(ParseError { offset: at, message: "zero denominator".into(), expected: vec![] });
                    }
                    self.bump();
                    d
                } else {
                    BigInt::from(1)
                };
                if *self.peek() != Tok::RParen {
                    return Err(self.error(NOT_LITERAL, &["'/'", "')'"]));
                }
                self.bump();
                let q = Rational::new(n, d);
                Ok(if negative { -q } else { q })
            }
            _ => Err(self.error(NOT_LITERAL, &["integer", "'('"])),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::X => "`x`".into(),
        Tok::I => "`i`".into(),
        Tok::Ln => "`ln`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses one expression; the whole input must be consumed.
pub fn parse(text: &str) -> Result<Expression, ParseError> {
    let toks = lex(text)?;
    if toks.len() > MAX_TOKENS {
        return Err(ParseError { offset: toks[MAX_TOKENS].1, message: "expression too long".into(), expected: vec![] });
    }
    let mut p = Parser { toks, pos: 0, depth: 0 };
    if *p.peek() == Tok::End {
        return Err(p.unexpected(FACTOR_START));
    }
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::RParen => Err(p.error("unmatched `)`", &["'+'", "'-'", "'*'", "'/'", "end of input"])),
        _ => {
            let prev_atom_end = matches!(p.toks[p.pos - 1].0, Tok::X | Tok::I | Tok::Int(_) | Tok::RParen);
            let mut expected = vec!["'+'", "'-'", "'*'", "'/'"];
            if prev_atom_end {
                expected.push("'^'");
            }
            expected.push("end of input");
            Err(p.unexpected(&expected))
        }
    }
}
