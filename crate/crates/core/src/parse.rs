//! Surface syntax for formulas and sequents.
//!
//! ```text
//! formula := addend (('*' | '|') addend)*     -- one operator per level without parentheses
//! addend  := unary (('&' | '+') unary)*
//! unary   := ('!' SIG | '?' SIG)* primary
//! primary := IDENT '^'? | '1' | '0' | 'T' | 'F' | '(' formula ')'
//! ```
//!
//! `T` and `F` are the units top and bottom, so they cannot name atoms.
//! Signatures may start with a digit (`!0 X`) and both identifiers and
//! signatures may carry trailing primes (`!e' X`).

use std::fmt;

use thiserror::Error;

use crate::syntax::{Formula, Sequent, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at column {pos}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Star,
    Bar,
    Amp,
    Plus,
    Bang,
    Quest,
    Hat,
    LParen,
    RParen,
    Comma,
    Turnstile,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let single = match c {
            '*' => Some(Tok::Star),
            '&' => Some(Tok::Amp),
            '+' => Some(Tok::Plus),
            '!' => Some(Tok::Bang),
            '?' => Some(Tok::Quest),
            '^' => Some(Tok::Hat),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '|' {
            if chars.get(i + 1).map(|p| p.1) == Some('-') {
                out.push((pos, Tok::Turnstile));
                i += 2;
            } else {
                out.push((pos, Tok::Bar));
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i].1) {
                i += 1;
            }
            let end = chars.get(i).map(|p| p.0).unwrap_or(text.len());
            let word = text[pos..end].to_string();
            let tok = if chars[start].1.is_ascii_digit() {
                Tok::Num(word)
            } else {
                Tok::Ident(word)
            };
            out.push((pos, tok));
            continue;
        }
        return Err(ParseError {
            pos,
            message: format!("unexpected character {c:?}"),
        });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    i: usize,
    end: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BinOp {
    Tensor,
    Par,
    With,
    Plus,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|(_, t)| t.clone());
        self.i += 1;
        t
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.addend()?;
        let mut op: Option<BinOp> = None;
        loop {
            let next = match self.peek() {
                Some(Tok::Star) => BinOp::Tensor,
                Some(Tok::Bar) => BinOp::Par,
                _ => break,
            };
            if op.is_some_and(|o| o != next) {
                return self.err("mixing '*' and '|' requires parentheses");
            }
            op = Some(next);
            self.bump();
            let rhs = self.addend()?;
            acc = match next {
                BinOp::Tensor => Formula::tensor(acc, rhs),
                _ => Formula::par(acc, rhs),
            };
        }
        Ok(acc)
    }

    fn addend(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        let mut op: Option<BinOp> = None;
        loop {
            let next = match self.peek() {
                Some(Tok::Amp) => BinOp::With,
                Some(Tok::Plus) => BinOp::Plus,
                _ => break,
            };
            if op.is_some_and(|o| o != next) {
                return self.err("mixing '&' and '+' requires parentheses");
            }
            op = Some(next);
            self.bump();
            let rhs = self.unary()?;
            acc = match next {
                BinOp::With => Formula::with(acc, rhs),
                _ => Formula::plus(acc, rhs),
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Bang) | Some(Tok::Quest) => {
                let is_bang = self.bump() == Some(Tok::Bang);
                let sig = match self.bump() {
                    Some(Tok::Ident(s)) | Some(Tok::Num(s)) => Signature::new(s),
                    _ => {
                        self.i -= 1;
                        return self.err("expected a signature after modality");
                    }
                };
                let body = self.unary()?;
                Ok(if is_bang {
                    Formula::Bang(sig, Box::new(body))
                } else {
                    Formula::Quest(sig, Box::new(body))
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.bump();
                match n.as_str() {
                    "1" => Ok(Formula::One),
                    "0" => Ok(Formula::Zero),
                    _ => {
                        self.i -= 1;
                        self.err(format!("unexpected number {n}"))
                    }
                }
            }
            Some(Tok::Ident(name)) => {
                self.bump();
                match name.as_str() {
                    "T" => return Ok(Formula::Top),
                    "F" => return Ok(Formula::Bot),
                    _ => {}
                }
                if self.peek() == Some(&Tok::Hat) {
                    self.bump();
                    Ok(Formula::neg_atom(name))
                } else {
                    Ok(Formula::atom(name))
                }
            }
            Some(Tok::LParen) => {
                self.bump();
                let f = self.formula()?;
                if self.bump() != Some(Tok::RParen) {
                    self.i -= 1;
                    return self.err("expected ')'");
                }
                Ok(f)
            }
            Some(t) => self.err(format!("unexpected token {}", tok_str(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

fn tok_str(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Num(s) => s.clone(),
        Tok::Star => "'*'".into(),
        Tok::Bar => "'|'".into(),
        Tok::Amp => "'&'".into(),
        Tok::Plus => "'+'".into(),
        Tok::Bang => "'!'".into(),
        Tok::Quest => "'?'".into(),
        Tok::Hat => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Turnstile => "'|-'".into(),
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        i: 0,
        end: text.len(),
    };
    let f = p.formula()?;
    if p.i < toks.len() {
        let t = toks[p.i].1.clone();
        return p.err(format!("unexpected token {}", tok_str(&t)));
    }
    Ok(f)
}

/// Parses `|- A, B, ...`. The turnstile is optional.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        i: 0,
        end: text.len(),
    };
    if p.peek() == Some(&Tok::Turnstile) {
        p.bump();
    }
    let mut out = Vec::new();
    if p.peek().is_none() {
        return Ok(Sequent(out));
    }
    loop {
        out.push(p.formula()?);
        match p.bump() {
            None => break,
            Some(Tok::Comma) => continue,
            Some(t) => {
                p.i -= 1;
                return p.err(format!("expected ',' but found {}", tok_str(&t)));
            }
        }
    }
    Ok(Sequent(out))
}

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Tensor(..) | Formula::Par(..) => 0,
        Formula::With(..) | Formula::Plus(..) => 1,
        _ => 2,
    }
}

fn same_op(a: &Formula, b: &Formula) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self {
            Atom(x) => f.write_str(x),
            NegAtom(x) => write!(f, "{x}^"),
            One => f.write_str("1"),
            Bot => f.write_str("F"),
            Top => f.write_str("T"),
            Zero => f.write_str("0"),
            Bang(e, a) | Quest(e, a) => {
                let m = if matches!(self, Bang(..)) { '!' } else { '?' };
                write!(f, "{m}{e} ")?;
                write_child(f, a, level(a) < 2)
            }
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => {
                let op = match self {
                    Tensor(..) => "*",
                    Par(..) => "|",
                    With(..) => "&",
                    _ => "+",
                };
                let lv = level(self);
                let left_parens = level(a) < lv || (level(a) == lv && !same_op(a, self));
                write_child(f, a, left_parens)?;
                write!(f, " {op} ")?;
                write_child(f, b, level(b) <= lv)
            }
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|-")?;
        for (i, a) in self.0.iter().enumerate() {
            if i == 0 {
                write!(f, " {a}")?;
            } else {
                write!(f, ", {a}")?;
            }
        }
        Ok(())
    }
}
