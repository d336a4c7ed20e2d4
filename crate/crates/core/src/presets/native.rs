//! Native rule systems: derivations written with each system's own
//! exponential rules, over the same formulas and structural rules as superLL.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::{numeral, SellParams, Semiring, DOT, STAR};
use crate::proof::{
    conclude, fmt_path, join, quote, read_sexp, rule_args, rule_of, Args, InferError,
    ProofParseError, Rule, Sexp,
};
use crate::syntax::{Formula, Sequent, Signature};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NativeSystem {
    LlFunctorial,
    Ell,
    Sll,
    Ll,
    Lll,
    Shift,
    Sell(SellParams),
    Bsll(Semiring),
}

impl NativeSystem {
    pub fn name(&self) -> &'static str {
        match self {
            NativeSystem::LlFunctorial => "ll-functorial",
            NativeSystem::Ell => "ell",
            NativeSystem::Sll => "sll",
            NativeSystem::Ll => "ll",
            NativeSystem::Lll => "lll",
            NativeSystem::Shift => "shift",
            NativeSystem::Sell(_) => "sell",
            NativeSystem::Bsll(_) => "bsll",
        }
    }

    fn has_signature(&self, e: &Signature) -> bool {
        match self {
            NativeSystem::LlFunctorial
            | NativeSystem::Ell
            | NativeSystem::Sll
            | NativeSystem::Ll => e.name() == DOT,
            NativeSystem::Lll | NativeSystem::Shift => e.name() == DOT || e.name() == STAR,
            NativeSystem::Sell(p) => p.signatures.contains(e),
            NativeSystem::Bsll(_) => numeral(e).is_some(),
        }
    }
}

/// A native rule. Structural and non-exponential rules are shared with
/// superLL through `Std`; the other variants put their principal formula
/// first, like superLL rules.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NativeRule {
    Std(Rule),
    /// Dereliction `A` at `i` to `?e A`.
    Der {
        e: Signature,
        i: usize,
    },
    /// Weakening by `?e formula`.
    Weak {
        e: Signature,
        formula: Formula,
    },
    /// Two equal `?e A` at `i`, `j` merged.
    Contr {
        i: usize,
        j: usize,
    },
    /// `?e1 A`, `?e2 A` at `i`, `j` give `?e A`, with `e = e1 + e2`.
    ContrPlus {
        e: Signature,
        i: usize,
        j: usize,
    },
    /// Multiplexing: copies of `formula` at `indices` give `?formula`.
    Mpx {
        indices: Vec<usize>,
        formula: Formula,
    },
    /// Digging `??A` at `i` to `?A`.
    Dig {
        i: usize,
    },
    /// Functorial promotion.
    PromF {
        i: usize,
    },
    /// Girard's promotion, the context being all `?e`.
    PromG {
        e: Signature,
        i: usize,
    },
    /// Unary functorial promotion.
    PromU {
        i: usize,
    },
    /// Paragraph promotion: context formula `j` gets `?` when `bullets[j]`
    /// and the paragraph why-not otherwise.
    PromSec {
        i: usize,
        bullets: Vec<bool>,
    },
    /// Subexponential promotion, every context `?e_j` with `e <= e_j`.
    PromSub {
        e: Signature,
        i: usize,
    },
    /// Bounded promotion: context `?e_j B_j` becomes `?targets_j B_j` with
    /// `targets_j = e * e_j`.
    PromMul {
        e: Signature,
        i: usize,
        targets: Vec<Signature>,
    },
    /// `?from A` at `i` becomes `?to A`, with `from <= to`.
    Subsume {
        to: Signature,
        i: usize,
    },
}

impl NativeRule {
    pub fn name(&self) -> &'static str {
        match self {
            NativeRule::Std(r) => r.name(),
            NativeRule::Der { .. } => "der",
            NativeRule::Weak { .. } => "weak",
            NativeRule::Contr { .. } => "contr",
            NativeRule::ContrPlus { .. } => "contr-plus",
            NativeRule::Mpx { .. } => "mpx",
            NativeRule::Dig { .. } => "dig",
            NativeRule::PromF { .. } => "prom-f",
            NativeRule::PromG { .. } => "prom-g",
            NativeRule::PromU { .. } => "prom-u",
            NativeRule::PromSec { .. } => "prom-sec",
            NativeRule::PromSub { .. } => "prom-sub",
            NativeRule::PromMul { .. } => "prom-mul",
            NativeRule::Subsume { .. } => "subsume",
        }
    }

    fn arity(&self) -> usize {
        match self {
            NativeRule::Std(r) => r.arity(),
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NativeProof {
    pub rule: NativeRule,
    pub conclusion: Sequent,
    pub premises: Vec<NativeProof>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at node {}: {rule}: {message}", fmt_path(.path))]
pub struct NativeCheckFailure {
    pub path: Vec<usize>,
    pub rule: &'static str,
    pub message: String,
}

fn shape(msg: impl Into<String>) -> InferError {
    InferError::Shape(msg.into())
}

fn at(s: &Sequent, i: usize) -> Result<&Formula, InferError> {
    s.get(i).ok_or(InferError::IndexOutOfRange {
        index: i,
        len: s.len(),
    })
}

fn quest_at(s: &Sequent, i: usize) -> Result<(&Signature, &Formula), InferError> {
    let f = at(s, i)?;
    f.as_quest()
        .ok_or_else(|| shape(format!("expected a why-not at index {i}, found {f}")))
}

fn front(first: Formula, s: &Sequent, skip: &[usize]) -> Vec<Formula> {
    let mut v = vec![first];
    v.extend(s.without(skip));
    v
}

/// Wraps the context of a promotion, checking each formula with `wrap`.
fn promote(
    s: &Sequent,
    i: usize,
    e: &Signature,
    mut wrap: impl FnMut(usize, &Formula) -> Result<Formula, InferError>,
) -> Result<Vec<Formula>, InferError> {
    let a = at(s, i)?.clone();
    let mut v = vec![Formula::bang(e.clone(), a)];
    for (j, g) in s.without(&[i]).iter().enumerate() {
        v.push(wrap(j, g)?);
    }
    Ok(v)
}

/// The conclusion of a native rule, checking shapes only.
pub fn native_conclude(rule: &NativeRule, prems: &[&Sequent]) -> Result<Sequent, InferError> {
    if prems.len() != rule.arity() {
        return Err(InferError::Arity {
            rule: rule.name(),
            expected: rule.arity(),
            got: prems.len(),
        });
    }
    let v = match rule {
        NativeRule::Std(r) => {
            if r.is_exponential() {
                return Err(InferError::Disallowed(r.name()));
            }
            return Ok(conclude(r, prems)?.0);
        }
        NativeRule::Der { e, i } => {
            let a = at(prems[0], *i)?.clone();
            front(Formula::quest(e.clone(), a), prems[0], &[*i])
        }
        NativeRule::Weak { e, formula } => {
            front(Formula::quest(e.clone(), formula.clone()), prems[0], &[])
        }
        NativeRule::Contr { i, j } => {
            if i == j {
                return Err(InferError::DuplicateIndex(*i));
            }
            quest_at(prems[0], *i)?;
            let a = at(prems[0], *i)?;
            if at(prems[0], *j)? != a {
                return Err(shape("contracted formulas differ"));
            }
            front(a.clone(), prems[0], &[*i, *j])
        }
        NativeRule::ContrPlus { e, i, j } => {
            if i == j {
                return Err(InferError::DuplicateIndex(*i));
            }
            let (_, a) = quest_at(prems[0], *i)?;
            let (_, b) = quest_at(prems[0], *j)?;
            if a != b {
                return Err(shape("contracted bodies differ"));
            }
            front(Formula::quest(e.clone(), a.clone()), prems[0], &[*i, *j])
        }
        NativeRule::Mpx { indices, formula } => {
            for (k, &i) in indices.iter().enumerate() {
                if indices[..k].contains(&i) {
                    return Err(InferError::DuplicateIndex(i));
                }
                if at(prems[0], i)? != formula {
                    return Err(shape(format!("index {i} is not a copy of {formula}")));
                }
            }
            front(
                Formula::quest(Signature::new(DOT), formula.clone()),
                prems[0],
                indices,
            )
        }
        NativeRule::Dig { i } => {
            let (e1, inner) = quest_at(prems[0], *i)?;
            let Some((e2, a)) = inner.as_quest() else {
                return Err(shape("digging needs ??A"));
            };
            if e1 != e2 {
                return Err(shape("digging needs equal signatures"));
            }
            front(Formula::quest(e1.clone(), a.clone()), prems[0], &[*i])
        }
        NativeRule::PromF { i } => {
            let d = Signature::new(DOT);
            promote(prems[0], *i, &d, |_, g| {
                Ok(Formula::quest(d.clone(), g.clone()))
            })?
        }
        NativeRule::PromU { i } => {
            if prems[0].len() != 2 {
                return Err(shape("unary promotion needs exactly one context formula"));
            }
            let d = Signature::new(DOT);
            promote(prems[0], *i, &d, |_, g| {
                Ok(Formula::quest(d.clone(), g.clone()))
            })?
        }
        NativeRule::PromSec { i, bullets } => {
            if bullets.len() + 1 != prems[0].len() {
                return Err(shape("one flag per context formula"));
            }
            let (d, s) = (Signature::new(DOT), Signature::new(STAR));
            promote(prems[0], *i, &s, |j, g| {
                let e = if bullets[j] { &d } else { &s };
                Ok(Formula::quest(e.clone(), g.clone()))
            })?
        }
        NativeRule::PromG { e, i } => promote(prems[0], *i, e, |_, g| match g.as_quest() {
            Some((x, _)) if x == e => Ok(g.clone()),
            _ => Err(shape(format!("context formula {g} is not ?{e}"))),
        })?,
        NativeRule::PromSub { e, i } => promote(prems[0], *i, e, |_, g| match g.as_quest() {
            Some(_) => Ok(g.clone()),
            None => Err(shape(format!("context formula {g} is not a why-not"))),
        })?,
        NativeRule::PromMul { e, i, targets } => {
            if targets.len() + 1 != prems[0].len() {
                return Err(shape("one target per context formula"));
            }
            promote(prems[0], *i, e, |j, g| match g.as_quest() {
                Some((_, b)) => Ok(Formula::quest(targets[j].clone(), b.clone())),
                None => Err(shape(format!("context formula {g} is not a why-not"))),
            })?
        }
        NativeRule::Subsume { to, i } => {
            let (_, a) = quest_at(prems[0], *i)?;
            front(Formula::quest(to.clone(), a.clone()), prems[0], &[*i])
        }
    };
    Ok(Sequent(v))
}

impl NativeProof {
    /// Builds a node with its conclusion computed from the premises. Side
    /// conditions are left to [`check_native`].
    pub fn build(rule: NativeRule, premises: Vec<NativeProof>) -> Result<NativeProof, InferError> {
        let prems: Vec<&Sequent> = premises.iter().map(|p| &p.conclusion).collect();
        let conclusion = native_conclude(&rule, &prems)?;
        Ok(NativeProof {
            rule,
            conclusion,
            premises,
        })
    }

    pub fn std(rule: Rule, premises: Vec<NativeProof>) -> Result<NativeProof, InferError> {
        NativeProof::build(NativeRule::Std(rule), premises)
    }

    pub fn is_cut_free(&self) -> bool {
        !matches!(self.rule, NativeRule::Std(Rule::Cut { .. }))
            && self.premises.iter().all(NativeProof::is_cut_free)
    }

    pub fn any(&self, pred: &dyn Fn(&NativeRule) -> bool) -> bool {
        pred(&self.rule) || self.premises.iter().any(|q| q.any(pred))
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(NativeProof::size).sum::<usize>()
    }

    /// Reorders the conclusion into `target`, a permutation of it.
    pub fn exchange_to(self, target: &Sequent) -> Result<NativeProof, InferError> {
        if &self.conclusion == target {
            return Ok(self);
        }
        let perm = self.conclusion.permutation_to(target).ok_or_else(|| {
            shape(format!(
                "{target} is not a permutation of {}",
                self.conclusion
            ))
        })?;
        NativeProof::std(Rule::Exchange(perm), vec![self])
    }
}

struct Checker<'a> {
    sys: &'a NativeSystem,
    leq: BTreeSet<(Signature, Signature)>,
}

impl Checker<'_> {
    fn semiring(&self) -> Option<&Semiring> {
        match self.sys {
            NativeSystem::Bsll(s) => Some(s),
            _ => None,
        }
    }

    fn num(&self, e: &Signature) -> Result<u64, String> {
        numeral(e).ok_or_else(|| format!("`{e}` is not a numeral"))
    }

    fn sell_leq(&self, a: &Signature, b: &Signature) -> bool {
        self.leq.contains(&(a.clone(), b.clone()))
    }

    /// Side conditions of `rule` in this system.
    fn side(&self, rule: &NativeRule, prems: &[&Sequent]) -> Result<(), String> {
        use NativeSystem as S;
        let sys = self.sys;
        let is = |e: &Signature, n: &str| e.name() == n;
        let dot_only = |e: &Signature| {
            if is(e, DOT) {
                Ok(())
            } else {
                Err(format!("signature {e} is not allowed here"))
            }
        };
        let not_here = || {
            Err(format!(
                "rule {} is not part of {}",
                rule.name(),
                sys.name()
            ))
        };
        match rule {
            NativeRule::Std(_) => Ok(()),
            NativeRule::Der { e, .. } => match sys {
                S::LlFunctorial | S::Ll => dot_only(e),
                S::Shift | S::Sell(_) => Ok(()),
                S::Bsll(sr) => {
                    if self.num(e)? == sr.one {
                        Ok(())
                    } else {
                        Err(format!("dereliction needs signature {}", sr.one))
                    }
                }
                _ => not_here(),
            },
            NativeRule::Weak { e, .. } => match sys {
                S::LlFunctorial | S::Ell | S::Ll | S::Lll | S::Shift => dot_only(e),
                S::Sell(p) if p.weak.contains(e) => Ok(()),
                S::Sell(_) => Err(format!("{e} does not allow weakening")),
                S::Bsll(sr) => {
                    if self.num(e)? == sr.zero {
                        Ok(())
                    } else {
                        Err(format!("weakening needs signature {}", sr.zero))
                    }
                }
                S::Sll => not_here(),
            },
            NativeRule::Contr { i, .. } => {
                let e = prems[0].formulas()[*i]
                    .as_quest()
                    .map(|(e, _)| e.clone())
                    .unwrap();
                match sys {
                    S::LlFunctorial | S::Ell | S::Ll | S::Lll | S::Shift => dot_only(&e),
                    S::Sell(p) if p.contr.contains(&e) => Ok(()),
                    S::Sell(_) => Err(format!("{e} does not allow contraction")),
                    _ => not_here(),
                }
            }
            NativeRule::ContrPlus { e, i, j } => {
                let Some(sr) = self.semiring() else {
                    return not_here();
                };
                let q = |k: usize| prems[0].formulas()[k].as_quest().unwrap().0.clone();
                let sum = (sr.add)(self.num(&q(*i))?, self.num(&q(*j))?);
                if self.num(e)? == sum {
                    Ok(())
                } else {
                    Err(format!("{e} is not {} + {}", q(*i), q(*j)))
                }
            }
            NativeRule::Mpx { .. } => match sys {
                S::Sll => Ok(()),
                _ => not_here(),
            },
            NativeRule::Dig { i } => match sys {
                S::LlFunctorial => dot_only(prems[0].formulas()[*i].as_quest().unwrap().0),
                _ => not_here(),
            },
            NativeRule::PromF { .. } => match sys {
                S::LlFunctorial | S::Ell | S::Sll => Ok(()),
                _ => not_here(),
            },
            NativeRule::PromG { e, .. } => match sys {
                S::Ll => dot_only(e),
                S::Shift => Ok(()),
                _ => not_here(),
            },
            NativeRule::PromU { .. } | NativeRule::PromSec { .. } => match sys {
                S::Lll => Ok(()),
                _ => not_here(),
            },
            NativeRule::PromSub { e, i } => {
                if !matches!(sys, S::Sell(_)) {
                    return not_here();
                }
                for (k, g) in prems[0].formulas().iter().enumerate() {
                    if k == *i {
                        continue;
                    }
                    let ek = g.as_quest().unwrap().0;
                    if !self.sell_leq(e, ek) {
                        return Err(format!("{e} <= {ek} does not hold"));
                    }
                }
                Ok(())
            }
            NativeRule::PromMul { e, i, targets } => {
                let Some(sr) = self.semiring() else {
                    return not_here();
                };
                let ctx = prems[0].without(&[*i]);
                for (g, t) in ctx.iter().zip(targets) {
                    let ek = g.as_quest().unwrap().0;
                    if (sr.mul)(self.num(e)?, self.num(ek)?) != self.num(t)? {
                        return Err(format!("{t} is not {e} * {ek}"));
                    }
                }
                Ok(())
            }
            NativeRule::Subsume { to, i } => {
                let Some(sr) = self.semiring() else {
                    return not_here();
                };
                let from = prems[0].formulas()[*i].as_quest().unwrap().0;
                if (sr.leq)(self.num(from)?, self.num(to)?) {
                    Ok(())
                } else {
                    Err(format!("{from} <= {to} does not hold"))
                }
            }
        }
    }

    fn check(&self, p: &NativeProof, path: &mut Vec<usize>) -> Result<(), NativeCheckFailure> {
        for (k, q) in p.premises.iter().enumerate() {
            path.push(k);
            self.check(q, path)?;
            path.pop();
        }
        let fail = |message: String| NativeCheckFailure {
            path: path.clone(),
            rule: p.rule.name(),
            message,
        };
        let prems: Vec<&Sequent> = p.premises.iter().map(|q| &q.conclusion).collect();
        let inferred = native_conclude(&p.rule, &prems).map_err(|e| fail(e.to_string()))?;
        self.side(&p.rule, &prems).map_err(fail)?;
        if let Some(e) = inferred
            .signatures()
            .into_iter()
            .find(|e| !self.sys.has_signature(e))
        {
            return Err(fail(format!(
                "signature `{e}` is not part of {}",
                self.sys.name()
            )));
        }
        if !inferred.perm_eq(&p.conclusion) {
            return Err(fail(format!(
                "stored conclusion {} does not match inferred {inferred}",
                p.conclusion
            )));
        }
        Ok(())
    }
}

/// Validates every node of a native proof against the rules of `sys`.
pub fn check_native(sys: &NativeSystem, p: &NativeProof) -> Result<(), NativeCheckFailure> {
    let leq = match sys {
        NativeSystem::Sell(params) => params.closure(),
        _ => BTreeSet::new(),
    };
    Checker { sys, leq }.check(p, &mut Vec::new())
}

fn native_rule_of(a: &mut Args<'_>) -> Result<NativeRule, ProofParseError> {
    Ok(match a.head {
        "der" => NativeRule::Der {
            e: a.sig()?,
            i: a.index()?,
        },
        "weak" => NativeRule::Weak {
            e: a.sig()?,
            formula: a.formula()?,
        },
        "contr" => NativeRule::Contr {
            i: a.index()?,
            j: a.index()?,
        },
        "contr-plus" => NativeRule::ContrPlus {
            e: a.sig()?,
            i: a.index()?,
            j: a.index()?,
        },
        "mpx" => NativeRule::Mpx {
            indices: a.indices()?,
            formula: a.formula()?,
        },
        "dig" => NativeRule::Dig { i: a.index()? },
        "prom-f" => NativeRule::PromF { i: a.index()? },
        "prom-g" => NativeRule::PromG {
            e: a.sig()?,
            i: a.index()?,
        },
        "prom-u" => NativeRule::PromU { i: a.index()? },
        "prom-sec" => NativeRule::PromSec {
            i: a.index()?,
            bullets: a.bools()?,
        },
        "prom-sub" => NativeRule::PromSub {
            e: a.sig()?,
            i: a.index()?,
        },
        "prom-mul" => NativeRule::PromMul {
            e: a.sig()?,
            i: a.index()?,
            targets: a.sigs()?,
        },
        "subsume" => NativeRule::Subsume {
            to: a.sig()?,
            i: a.index()?,
        },
        _ => NativeRule::Std(rule_of(a)?),
    })
}

fn native_of(node: &Sexp) -> Result<NativeProof, ProofParseError> {
    let mut a = Args::new(node)?;
    let rule = native_rule_of(&mut a)?;
    let premises = a
        .rest()
        .iter()
        .map(native_of)
        .collect::<Result<Vec<_>, _>>()?;
    let mut p = NativeProof::build(rule, premises).map_err(|e| node.error(e.to_string()))?;
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

/// Parses a native proof; the syntax is that of superLL proof files with the
/// native rule names added.
pub fn parse_native(text: &str) -> Result<NativeProof, ProofParseError> {
    native_of(&read_sexp(text)?)
}

fn native_args(rule: &NativeRule) -> String {
    let bits = |b: &[bool]| join(&b.iter().map(|&x| u8::from(x)).collect::<Vec<_>>());
    match rule {
        NativeRule::Std(r) => rule_args(r),
        NativeRule::Der { e, i } | NativeRule::PromG { e, i } | NativeRule::PromSub { e, i } => {
            format!("{e} {i}")
        }
        NativeRule::Subsume { to, i } => format!("{to} {i}"),
        NativeRule::Weak { e, formula } => format!("{e} {}", quote(&formula.to_string())),
        NativeRule::Contr { i, j } => format!("{i} {j}"),
        NativeRule::ContrPlus { e, i, j } => format!("{e} {i} {j}"),
        NativeRule::Mpx { indices, formula } => {
            format!("{} {}", join(indices), quote(&formula.to_string()))
        }
        NativeRule::Dig { i } | NativeRule::PromF { i } | NativeRule::PromU { i } => i.to_string(),
        NativeRule::PromSec { i, bullets } => format!("{i} {}", bits(bullets)),
        NativeRule::PromMul { e, i, targets } => format!("{e} {i} {}", join(targets)),
    }
}

fn print_rec(p: &NativeProof, indent: usize, root: bool, out: &mut String) {
    out.push_str(&" ".repeat(indent));
    out.push('(');
    out.push_str(p.rule.name());
    let args = native_args(&p.rule);
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

pub fn print_native(p: &NativeProof) -> String {
    let mut out = String::new();
    print_rec(p, 0, true, &mut out);
    out.push('\n');
    out
}

impl fmt::Display for NativeProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_native(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(t: &str) -> NativeProof {
        parse_native(t).unwrap()
    }

    #[test]
    fn multiplexing() {
        let p = parse(r#"(mpx [1 2] "X" (tensor 0 0 (ax "X^") (ax "X^")))"#);
        assert_eq!(p.conclusion.to_string(), "|- ?dot X, X^ * X^");
        check_native(&NativeSystem::Sll, &p).unwrap();
        let err = check_native(&NativeSystem::Ell, &p).unwrap_err();
        assert!(err.message.contains("not part of ell"), "{err}");
    }

    #[test]
    fn paragraph_promotion() {
        let p = parse(r#"(prom-sec 0 [1 0] (tensor 0 0 (ax "X") (ax "Y")))"#);
        assert_eq!(
            p.conclusion.to_string(),
            "|- !star (X * Y), ?dot X^, ?star Y^"
        );
        check_native(&NativeSystem::Lll, &p).unwrap();
        assert!(parse_native(r#"(prom-u 0 (tensor 0 0 (ax "X") (ax "Y")))"#).is_err());
    }

    #[test]
    fn subexponential_promotion_checks_the_order() {
        let sys = NativeSystem::Sell(SellParams::default());
        let ok = parse(r#"(prom-sub a 1 (der c 1 (ax "X")))"#);
        check_native(&sys, &ok).unwrap();
        let bad = parse(r#"(prom-sub c 1 (der a 1 (ax "X")))"#);
        assert!(check_native(&sys, &bad)
            .unwrap_err()
            .message
            .contains("c <= a"));
    }

    #[test]
    fn bounded_rules() {
        let sys = NativeSystem::Bsll(Semiring::nat_plus());
        let body = r#"(subsume 2 1 (der 1 2 (der 1 1 (tensor 0 0 (ax "X") (ax "X")))))"#;
        let p = parse(&format!("(contr-plus 3 0 1 {body})"));
        assert_eq!(p.conclusion.to_string(), "|- ?3 X^, X * X");
        check_native(&sys, &p).unwrap();
        let bad = parse(&format!("(contr-plus 4 0 1 {body})"));
        assert!(check_native(&sys, &bad).is_err());
        let r = parse(r#"(prom-mul 2 1 [4] (subsume 2 0 (der 1 1 (ax "X"))))"#);
        check_native(&sys, &r).unwrap();
        assert_eq!(r.conclusion.to_string(), "|- !2 X, ?4 X^");
    }

    #[test]
    fn superll_exponentials_are_not_native() {
        let p = parse_native(r#"(de dot 1 (ax "X"))"#);
        assert!(p.unwrap_err().message.contains("not allowed"));
    }

    #[test]
    fn print_parse_round_trip() {
        let p = parse(r#"(prom-sec 0 [1 0] (tensor 0 0 (ax "X") (ax "Y")))"#);
        assert_eq!(parse_native(&print_native(&p)).unwrap(), p);
    }
}
