//! S-expression proof files.
//!
//! ```text
//! (tensor 0 0 (ax "X") (ax "Y") :concl "|- X * Y, X^, Y^")
//! ```

use thiserror::Error;

use super::{Proof, Rule};
use crate::parse::{parse_formula, parse_sequent};
use crate::syntax::{Formula, Sequent, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ProofParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum SexpKind {
    Atom(String),
    Str(String),
    List(Vec<Sexp>),
    Vec(Vec<Sexp>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Sexp {
    pub kind: SexpKind,
    pub line: usize,
    pub col: usize,
}

impl Sexp {
    pub fn error(&self, message: impl Into<String>) -> ProofParseError {
        ProofParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err(&self, message: impl Into<String>) -> ProofParseError {
        ProofParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, ProofParseError> {
        self.skip_blank();
        let (line, col) = (self.line, self.col);
        let mk = |kind| Sexp { kind, line, col };
        match self.chars.peek().copied() {
            None => Err(self.err("unexpected end of input")),
            Some(open @ ('(' | '[')) => {
                self.bump();
                let close = if open == '(' { ')' } else { ']' };
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek().copied() {
                        None => return Err(self.err(format!("missing `{close}`"))),
                        Some(c) if c == close => {
                            self.bump();
                            break;
                        }
                        Some(c @ (')' | ']')) => return Err(self.err(format!("unexpected `{c}`"))),
                        Some(_) => items.push(self.read()?),
                    }
                }
                Ok(mk(if open == '(' {
                    SexpKind::List(items)
                } else {
                    SexpKind::Vec(items)
                }))
            }
            Some(c @ (')' | ']')) => Err(self.err(format!("unexpected `{c}`"))),
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(self.err("unterminated string")),
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some(c) => s.push(c),
                            None => return Err(self.err("unterminated string")),
                        },
                        Some(c) => s.push(c),
                    }
                }
                Ok(mk(SexpKind::Str(s)))
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || "()[]\";".contains(c) {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(mk(SexpKind::Atom(s)))
            }
        }
    }
}

/// Reads exactly one s-expression; `;` starts a line comment.
pub(crate) fn read_sexp(text: &str) -> Result<Sexp, ProofParseError> {
    let mut r = Reader {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    let s = r.read()?;
    r.skip_blank();
    if r.chars.peek().is_some() {
        return Err(r.err("trailing input after proof"));
    }
    Ok(s)
}

/// Sequential access to the arguments of one list node.
pub(crate) struct Args<'a> {
    pub node: &'a Sexp,
    pub head: &'a str,
    items: &'a [Sexp],
    pos: usize,
    pub concl: Option<&'a Sexp>,
}

impl<'a> Args<'a> {
    pub fn new(node: &'a Sexp) -> Result<Self, ProofParseError> {
        let SexpKind::List(items) = &node.kind else {
            return Err(node.error("expected a parenthesized rule"));
        };
        let Some(Sexp {
            kind: SexpKind::Atom(head),
            ..
        }) = items.first()
        else {
            return Err(node.error("expected a rule name"));
        };
        let mut items = &items[1..];
        let mut concl = None;
        if items.len() >= 2 {
            if let SexpKind::Atom(k) = &items[items.len() - 2].kind {
                if k == ":concl" {
                    concl = Some(&items[items.len() - 1]);
                    items = &items[..items.len() - 2];
                }
            }
        }
        Ok(Args {
            node,
            head,
            items,
            pos: 0,
            concl,
        })
    }

    fn next(&mut self, what: &str) -> Result<&'a Sexp, ProofParseError> {
        let s = self
            .items
            .get(self.pos)
            .ok_or_else(|| self.node.error(format!("{}: missing {what}", self.head)))?;
        self.pos += 1;
        Ok(s)
    }

    fn atom(&mut self, what: &str) -> Result<(&'a Sexp, &'a str), ProofParseError> {
        let s = self.next(what)?;
        match &s.kind {
            SexpKind::Atom(a) => Ok((s, a)),
            _ => Err(s.error(format!("expected {what}"))),
        }
    }

    pub fn index(&mut self) -> Result<usize, ProofParseError> {
        let (s, a) = self.atom("an index")?;
        a.parse().map_err(|_| s.error(format!("bad index `{a}`")))
    }

    pub fn sig(&mut self) -> Result<Signature, ProofParseError> {
        let (_, a) = self.atom("a signature")?;
        Ok(Signature::new(a))
    }

    pub fn formula(&mut self) -> Result<Formula, ProofParseError> {
        let s = self.next("a formula")?;
        match &s.kind {
            SexpKind::Str(t) => parse_formula(t).map_err(|e| s.error(e.to_string())),
            _ => Err(s.error("expected a quoted formula")),
        }
    }

    fn vector(&mut self, what: &str) -> Result<(&'a Sexp, &'a [Sexp]), ProofParseError> {
        let s = self.next(what)?;
        match &s.kind {
            SexpKind::Vec(v) => Ok((s, v)),
            _ => Err(s.error(format!("expected [{what}]"))),
        }
    }

    pub fn indices(&mut self) -> Result<Vec<usize>, ProofParseError> {
        let (_, v) = self.vector("indices")?;
        v.iter()
            .map(|s| match &s.kind {
                SexpKind::Atom(a) => a.parse().map_err(|_| s.error(format!("bad index `{a}`"))),
                _ => Err(s.error("expected an index")),
            })
            .collect()
    }

    pub fn sigs(&mut self) -> Result<Vec<Signature>, ProofParseError> {
        let (_, v) = self.vector("signatures")?;
        v.iter()
            .map(|s| match &s.kind {
                SexpKind::Atom(a) => Ok(Signature::new(a)),
                _ => Err(s.error("expected a signature")),
            })
            .collect()
    }

    pub fn bools(&mut self) -> Result<Vec<bool>, ProofParseError> {
        let (_, v) = self.vector("flags")?;
        v.iter()
            .map(|s| match &s.kind {
                SexpKind::Atom(a) if a == "1" => Ok(true),
                SexpKind::Atom(a) if a == "0" => Ok(false),
                _ => Err(s.error("expected 0 or 1")),
            })
            .collect()
    }

    /// The remaining strings, as formulas.
    pub fn rest_formulas(&mut self) -> Result<Vec<Formula>, ProofParseError> {
        let mut v = Vec::new();
        while self.pos < self.items.len() {
            v.push(self.formula()?);
        }
        Ok(v)
    }

    /// The remaining items, which must all be subproofs.
    pub fn rest(&mut self) -> &'a [Sexp] {
        let r = &self.items[self.pos..];
        self.pos = self.items.len();
        r
    }

    pub fn concl(&self) -> Result<Option<Sequent>, ProofParseError> {
        match self.concl {
            None => Ok(None),
            Some(s) => match &s.kind {
                SexpKind::Str(t) => parse_sequent(t)
                    .map(Some)
                    .map_err(|e| s.error(e.to_string())),
                _ => Err(s.error("expected a quoted sequent after :concl")),
            },
        }
    }
}

pub(crate) fn rule_of(a: &mut Args<'_>) -> Result<Rule, ProofParseError> {
    Ok(match a.head {
        "ax" => Rule::Ax(a.formula()?),
        "cut" => Rule::Cut {
            formula: a.formula()?,
            left: a.index()?,
            right: a.index()?,
        },
        "ex" => Rule::Exchange(a.indices()?),
        "tensor" => Rule::Tensor {
            left: a.index()?,
            right: a.index()?,
        },
        "parr" => Rule::Parr {
            i: a.index()?,
            j: a.index()?,
        },
        "one" => Rule::One,
        "bot" => Rule::Bot,
        "with" => Rule::With {
            left: a.index()?,
            right: a.index()?,
        },
        "plus1" => Rule::Plus1 {
            i: a.index()?,
            other: a.formula()?,
        },
        "plus2" => Rule::Plus2 {
            i: a.index()?,
            other: a.formula()?,
        },
        "top" => Rule::Top {
            context: a.rest_formulas()?,
        },
        "de" => Rule::De {
            e: a.sig()?,
            i: a.index()?,
        },
        "co" => Rule::Co {
            from: a.sigs()?,
            to: a.sig()?,
            indices: a.indices()?,
            body: a.formula()?,
        },
        "dg" => Rule::Dg {
            e1: a.sig()?,
            e2: a.sig()?,
            e: a.sig()?,
            i: a.index()?,
        },
        "prom" => Rule::Prom {
            e: a.sig()?,
            i: a.index()?,
        },
        "prom-girard" => Rule::PromGirard {
            e: a.sig()?,
            i: a.index()?,
            targets: a.sigs()?,
        },
        "prom-ordered" => Rule::PromOrdered {
            e: a.sig()?,
            i: a.index()?,
            targets: a.sigs()?,
        },
        other => return Err(a.node.error(format!("unknown rule `{other}`"))),
    })
}

fn proof_of(node: &Sexp) -> Result<Proof, ProofParseError> {
    let mut a = Args::new(node)?;
    let rule = rule_of(&mut a)?;
    let premises = a
        .rest()
        .iter()
        .map(proof_of)
        .collect::<Result<Vec<_>, _>>()?;
    let mut p = Proof::build(rule, premises).map_err(|e| node.error(e.to_string()))?;
    if let Some(c) = a.concl()? {
        if !c.perm_eq(&p.conclusion) {
            return Err(node.error(format!(
                "annotated conclusion {c} does not match {}",
                p.conclusion
            )));
        }
        p.conclusion = c;
    }
    Ok(p)
}

/// Parses a proof file. Conclusions are computed from the rules; a `:concl`
/// annotation must be a permutation of the computed one and then replaces it.
pub fn parse_proof(text: &str) -> Result<Proof, ProofParseError> {
    proof_of(&read_sexp(text)?)
}

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub(crate) fn join<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(T::to_string).collect();
    format!("[{}]", parts.join(" "))
}

pub(crate) fn rule_args(rule: &Rule) -> String {
    let f = |a: &Formula| quote(&a.to_string());
    match rule {
        Rule::Ax(a) => f(a),
        Rule::Cut {
            formula,
            left,
            right,
        } => format!("{} {left} {right}", f(formula)),
        Rule::Exchange(perm) => join(perm),
        Rule::Tensor { left, right } | Rule::With { left, right } => format!("{left} {right}"),
        Rule::Parr { i, j } => format!("{i} {j}"),
        Rule::One | Rule::Bot => String::new(),
        Rule::Plus1 { i, other } | Rule::Plus2 { i, other } => format!("{i} {}", f(other)),
        Rule::Top { context } => context.iter().map(f).collect::<Vec<_>>().join(" "),
        Rule::De { e, i } | Rule::Prom { e, i } => format!("{e} {i}"),
        Rule::Co {
            from,
            to,
            indices,
            body,
        } => format!("{} {to} {} {}", join(from), join(indices), f(body)),
        Rule::Dg { e1, e2, e, i } => format!("{e1} {e2} {e} {i}"),
        Rule::PromGirard { e, i, targets } | Rule::PromOrdered { e, i, targets } => {
            format!("{e} {i} {}", join(targets))
        }
    }
}

fn print_rec(p: &Proof, indent: usize, root: bool, out: &mut String) {
    out.push_str(&" ".repeat(indent));
    out.push('(');
    out.push_str(p.rule.name());
    let args = rule_args(&p.rule);
    if !args.is_empty() {
        out.push(' ');
        out.push_str(&args);
    }
    for q in &p.premises {
        out.push('\n');
        print_rec(q, indent + 2, false, out);
    }
    if root {
        out.push_str(" :concl ");
        out.push_str(&quote(&p.conclusion.to_string()));
    }
    out.push(')');
}

/// Canonical text form, with the root conclusion annotated.
pub fn print_proof(p: &Proof) -> String {
    let mut out = String::new();
    print_rec(p, 0, true, &mut out);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_forms() {
        let s = read_sexp("(a [1 2] \"x y\" ; note\n (b))").unwrap();
        let SexpKind::List(items) = s.kind else {
            panic!()
        };
        assert_eq!(items.len(), 4);
        assert_eq!(items[2].kind, SexpKind::Str("x y".into()));
        assert_eq!(items[3].line, 2);
    }

    #[test]
    fn unbalanced_input_is_rejected() {
        assert!(read_sexp("(ax \"X\"").is_err());
        assert!(read_sexp("(ax \"X\"))").is_err());
    }

    #[test]
    fn parse_print_round_trip() {
        let text = "(tensor 0 0 (ax \"X\") (de e 1 (ax \"Y\")))";
        let p = parse_proof(text).unwrap();
        assert_eq!(p.conclusion.to_string(), "|- X * ?e Y^, X^, Y");
        let again = parse_proof(&print_proof(&p)).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn annotation_reorders_conclusion() {
        let p = parse_proof("(ax \"X\" :concl \"|- X^, X\")").unwrap();
        assert_eq!(p.conclusion.to_string(), "|- X^, X");
        let e = parse_proof("(ax \"X\" :concl \"|- X, X\")").unwrap_err();
        assert!(e.message.contains("does not match"));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_proof("(bot\n  (frob))").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert_eq!(e.message, "unknown rule `frob`");
    }
}
