//! Derivation trees and their checker.
//!
//! Every rule puts its principal formula at index 0 of the conclusion,
//! followed by the remaining premise formulas in premise order. Indices stored
//! in a rule address the premises.

mod latex;
mod sexpr;

use std::fmt;

use thiserror::Error;

use crate::instance::{eval_param, Instance, InstanceError, ParamQuery};
use crate::syntax::{Formula, Sequent, Signature};

pub use latex::to_latex;
pub(crate) use sexpr::{join, quote, read_sexp, rule_args, rule_of, Args, Sexp};
pub use sexpr::{parse_proof, print_proof, ProofParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `|- A, A^`.
    Ax(Formula),
    /// `formula` at `left` in the first premise, its dual at `right` in the
    /// second.
    Cut {
        formula: Formula,
        left: usize,
        right: usize,
    },
    /// `concl[k] = prem[perm[k]]`.
    Exchange(Vec<usize>),
    Tensor {
        left: usize,
        right: usize,
    },
    Parr {
        i: usize,
        j: usize,
    },
    One,
    Bot,
    /// Contexts of both premises must be list-equal.
    With {
        left: usize,
        right: usize,
    },
    /// `A + other` from `A` at `i`.
    Plus1 {
        i: usize,
        other: Formula,
    },
    /// `other + B` from `B` at `i`.
    Plus2 {
        i: usize,
        other: Formula,
    },
    Top {
        context: Vec<Formula>,
    },
    De {
        e: Signature,
        i: usize,
    },
    /// `?from_j body` at `indices[j]` becomes `?to body`.
    Co {
        from: Vec<Signature>,
        to: Signature,
        indices: Vec<usize>,
        body: Formula,
    },
    /// `?e1 ?e2 A` at `i` becomes `?e A`.
    Dg {
        e1: Signature,
        e2: Signature,
        e: Signature,
        i: usize,
    },
    /// Functorial promotion of the formula at `i`.
    Prom {
        e: Signature,
        i: usize,
    },
    /// Context `?eps_j A_j` becomes `?targets_j A_j`, under `dg(e, eps_j, targets_j)`.
    PromGirard {
        e: Signature,
        i: usize,
        targets: Vec<Signature>,
    },
    /// Context `A_j` becomes `?targets_j A_j`, under `co1(e, targets_j)`.
    PromOrdered {
        e: Signature,
        i: usize,
        targets: Vec<Signature>,
    },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Ax(_) => "ax",
            Rule::Cut { .. } => "cut",
            Rule::Exchange(_) => "ex",
            Rule::Tensor { .. } => "tensor",
            Rule::Parr { .. } => "parr",
            Rule::One => "one",
            Rule::Bot => "bot",
            Rule::With { .. } => "with",
            Rule::Plus1 { .. } => "plus1",
            Rule::Plus2 { .. } => "plus2",
            Rule::Top { .. } => "top",
            Rule::De { .. } => "de",
            Rule::Co { .. } => "co",
            Rule::Dg { .. } => "dg",
            Rule::Prom { .. } => "prom",
            Rule::PromGirard { .. } => "prom-girard",
            Rule::PromOrdered { .. } => "prom-ordered",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Rule::Ax(_) | Rule::One | Rule::Top { .. } => 0,
            Rule::Cut { .. } | Rule::Tensor { .. } | Rule::With { .. } => 2,
            _ => 1,
        }
    }

    pub fn is_exponential(&self) -> bool {
        matches!(
            self,
            Rule::De { .. }
                | Rule::Co { .. }
                | Rule::Dg { .. }
                | Rule::Prom { .. }
                | Rule::PromGirard { .. }
                | Rule::PromOrdered { .. }
        )
    }

    pub fn is_promotion(&self) -> bool {
        matches!(
            self,
            Rule::Prom { .. } | Rule::PromGirard { .. } | Rule::PromOrdered { .. }
        )
    }

    /// Every signature the rule mentions outside of its premises.
    pub fn signatures(&self) -> Vec<Signature> {
        let mut out = Vec::new();
        match self {
            Rule::Ax(a) | Rule::Plus1 { other: a, .. } | Rule::Plus2 { other: a, .. } => {
                out.extend(a.signatures())
            }
            Rule::Cut { formula, .. } => out.extend(formula.signatures()),
            Rule::Top { context } => context.iter().for_each(|f| out.extend(f.signatures())),
            Rule::De { e, .. } | Rule::Prom { e, .. } => out.push(e.clone()),
            Rule::Co { from, to, body, .. } => {
                out.extend(from.iter().cloned());
                out.push(to.clone());
                out.extend(body.signatures());
            }
            Rule::Dg { e1, e2, e, .. } => out.extend([e1.clone(), e2.clone(), e.clone()]),
            Rule::PromGirard { e, targets, .. } | Rule::PromOrdered { e, targets, .. } => {
                out.push(e.clone());
                out.extend(targets.iter().cloned());
            }
            _ => {}
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Proof {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<Proof>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InferError {
    #[error("{rule} expects {expected} premises, got {got}")]
    Arity {
        rule: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("index {index} out of range for a sequent of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("side condition {0} does not hold")]
    SideCondition(ParamQuery),
    #[error("unknown signature `{0}`")]
    UnknownSignature(Signature),
    #[error("premise contexts differ")]
    ContextMismatch,
    #[error("index {0} used twice")]
    DuplicateIndex(usize),
    #[error("rule {0} is not allowed here")]
    Disallowed(&'static str),
    #[error("stored conclusion {stored} does not match inferred {inferred}")]
    ConclusionMismatch { stored: Sequent, inferred: Sequent },
}

impl From<InstanceError> for InferError {
    fn from(e: InstanceError) -> Self {
        match e {
            InstanceError::UnknownSignature(s) => InferError::UnknownSignature(s),
        }
    }
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

fn distinct(indices: &[usize]) -> Result<(), InferError> {
    for (k, i) in indices.iter().enumerate() {
        if indices[..k].contains(i) {
            return Err(InferError::DuplicateIndex(*i));
        }
    }
    Ok(())
}

/// Computes the conclusion of `rule` from premise conclusions, together with
/// the parameter queries the rule needs. No instance is consulted.
pub fn conclude(rule: &Rule, prems: &[&Sequent]) -> Result<(Sequent, Vec<ParamQuery>), InferError> {
    if prems.len() != rule.arity() {
        return Err(InferError::Arity {
            rule: rule.name(),
            expected: rule.arity(),
            got: prems.len(),
        });
    }
    let mut queries = Vec::new();
    let concl: Vec<Formula> = match rule {
        Rule::Ax(a) => vec![a.clone(), a.dual()],
        Rule::Cut {
            formula,
            left,
            right,
        } => {
            if at(prems[0], *left)? != formula {
                return Err(shape(format!(
                    "cut formula {formula} not at left index {left}"
                )));
            }
            if at(prems[1], *right)? != &formula.dual() {
                return Err(shape(format!(
                    "dual of cut formula {formula} not at right index {right}"
                )));
            }
            let mut v = prems[0].without(&[*left]);
            v.extend(prems[1].without(&[*right]));
            v
        }
        Rule::Exchange(perm) => {
            let p = prems[0];
            if perm.len() != p.len() {
                return Err(shape("permutation length differs from premise length"));
            }
            for &k in perm {
                at(p, k)?;
            }
            distinct(perm)?;
            perm.iter().map(|&k| p.formulas()[k].clone()).collect()
        }
        Rule::Tensor { left, right } => {
            let a = at(prems[0], *left)?.clone();
            let b = at(prems[1], *right)?.clone();
            let mut v = vec![Formula::tensor(a, b)];
            v.extend(prems[0].without(&[*left]));
            v.extend(prems[1].without(&[*right]));
            v
        }
        Rule::Parr { i, j } => {
            if i == j {
                return Err(InferError::DuplicateIndex(*i));
            }
            let a = at(prems[0], *i)?.clone();
            let b = at(prems[0], *j)?.clone();
            let mut v = vec![Formula::par(a, b)];
            v.extend(prems[0].without(&[*i, *j]));
            v
        }
        Rule::One => vec![Formula::One],
        Rule::Bot => {
            let mut v = vec![Formula::Bot];
            v.extend(prems[0].iter().cloned());
            v
        }
        Rule::With { left, right } => {
            let a = at(prems[0], *left)?.clone();
            let b = at(prems[1], *right)?.clone();
            let ctx = prems[0].without(&[*left]);
            if ctx != prems[1].without(&[*right]) {
                return Err(InferError::ContextMismatch);
            }
            let mut v = vec![Formula::with(a, b)];
            v.extend(ctx);
            v
        }
        Rule::Plus1 { i, other } => {
            let a = at(prems[0], *i)?.clone();
            let mut v = vec![Formula::plus(a, other.clone())];
            v.extend(prems[0].without(&[*i]));
            v
        }
        Rule::Plus2 { i, other } => {
            let b = at(prems[0], *i)?.clone();
            let mut v = vec![Formula::plus(other.clone(), b)];
            v.extend(prems[0].without(&[*i]));
            v
        }
        Rule::Top { context } => {
            let mut v = vec![Formula::Top];
            v.extend(context.iter().cloned());
            v
        }
        Rule::De { e, i } => {
            queries.push(ParamQuery::De(e.clone()));
            let a = at(prems[0], *i)?.clone();
            let mut v = vec![Formula::quest(e.clone(), a)];
            v.extend(prems[0].without(&[*i]));
            v
        }
        Rule::Co {
            from,
            to,
            indices,
            body,
        } => {
            if from.len() != indices.len() {
                return Err(shape("co: signature and index lists differ in length"));
            }
            distinct(indices)?;
            for (e, &i) in from.iter().zip(indices) {
                let f = at(prems[0], i)?;
                if f.as_quest() != Some((e, body)) {
                    return Err(shape(format!(
                        "co: expected ?{e} {body} at index {i}, found {f}"
                    )));
                }
            }
            queries.push(ParamQuery::Co(from.clone(), to.clone()));
            let mut v = vec![Formula::quest(to.clone(), body.clone())];
            v.extend(prems[0].without(indices));
            v
        }
        Rule::Dg { e1, e2, e, i } => {
            let f = at(prems[0], *i)?;
            let a = f.strip_quests(&[e1.clone(), e2.clone()]).ok_or_else(|| {
                shape(format!(
                    "dg: expected ?{e1} ?{e2} _ at index {i}, found {f}"
                ))
            })?;
            queries.push(ParamQuery::Dg(e1.clone(), e2.clone(), e.clone()));
            let mut v = vec![Formula::quest(e.clone(), a.clone())];
            v.extend(prems[0].without(&[*i]));
            v
        }
        Rule::Prom { e, i } => {
            let a = at(prems[0], *i)?.clone();
            let rest = prems[0].without(&[*i]);
            queries.push(ParamQuery::P(rest.len(), e.clone()));
            let mut v = vec![Formula::bang(e.clone(), a)];
            v.extend(rest.into_iter().map(|f| Formula::quest(e.clone(), f)));
            v
        }
        Rule::PromGirard { e, i, targets } => {
            let a = at(prems[0], *i)?.clone();
            let rest = prems[0].without(&[*i]);
            if rest.len() != targets.len() {
                return Err(shape("prom-girard: one target per context formula"));
            }
            let mut v = vec![Formula::bang(e.clone(), a)];
            for (f, t) in rest.iter().zip(targets) {
                let (eps, body) = f.as_quest().ok_or_else(|| {
                    shape(format!(
                        "prom-girard: context formula {f} is not a ?-formula"
                    ))
                })?;
                queries.push(ParamQuery::Dg(e.clone(), eps.clone(), t.clone()));
                v.push(Formula::quest(t.clone(), body.clone()));
            }
            queries.push(ParamQuery::P(rest.len(), e.clone()));
            v
        }
        Rule::PromOrdered { e, i, targets } => {
            let a = at(prems[0], *i)?.clone();
            let rest = prems[0].without(&[*i]);
            if rest.len() != targets.len() {
                return Err(shape("prom-ordered: one target per context formula"));
            }
            let mut v = vec![Formula::bang(e.clone(), a)];
            for (f, t) in rest.into_iter().zip(targets) {
                queries.push(ParamQuery::Co(vec![e.clone()], t.clone()));
                v.push(Formula::quest(t.clone(), f));
            }
            queries.push(ParamQuery::P(targets.len(), e.clone()));
            v
        }
    };
    Ok((Sequent(concl), queries))
}

/// Where a conclusion formula comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// Unchanged from `premise` at `pos`.
    Premise(usize, usize),
    /// Shared context of a `With`: positions in the first and second premise.
    Both(usize, usize),
    /// The principal formula (both formulas of an axiom).
    Principal,
    /// A promotion context formula, modified by the rule.
    Wrapped(usize),
    /// A `Top` context formula.
    Introduced,
}

/// Origins of the conclusion formulas, given the premise lengths.
pub fn origins(rule: &Rule, prem_lens: &[usize]) -> Vec<Origin> {
    let rest = |p: usize, skip: &[usize]| -> Vec<usize> {
        (0..prem_lens[p]).filter(|k| !skip.contains(k)).collect()
    };
    let principal_then = |skip: &[usize], wrap: bool| {
        let mut v = vec![Origin::Principal];
        v.extend(rest(0, skip).into_iter().map(|k| {
            if wrap {
                Origin::Wrapped(k)
            } else {
                Origin::Premise(0, k)
            }
        }));
        v
    };
    match rule {
        Rule::Ax(_) => vec![Origin::Principal; 2],
        Rule::One => vec![Origin::Principal],
        Rule::Top { context } => {
            let mut v = vec![Origin::Principal];
            v.extend(context.iter().map(|_| Origin::Introduced));
            v
        }
        Rule::Cut { left, right, .. } => {
            let mut v: Vec<Origin> = rest(0, &[*left])
                .into_iter()
                .map(|k| Origin::Premise(0, k))
                .collect();
            v.extend(
                rest(1, &[*right])
                    .into_iter()
                    .map(|k| Origin::Premise(1, k)),
            );
            v
        }
        Rule::Exchange(perm) => perm.iter().map(|&k| Origin::Premise(0, k)).collect(),
        Rule::Tensor { left, right } => {
            let mut v = vec![Origin::Principal];
            v.extend(rest(0, &[*left]).into_iter().map(|k| Origin::Premise(0, k)));
            v.extend(
                rest(1, &[*right])
                    .into_iter()
                    .map(|k| Origin::Premise(1, k)),
            );
            v
        }
        Rule::Parr { i, j } => principal_then(&[*i, *j], false),
        Rule::Bot => principal_then(&[], false),
        Rule::With { left, right } => {
            let mut v = vec![Origin::Principal];
            v.extend(
                rest(0, &[*left])
                    .into_iter()
                    .zip(rest(1, &[*right]))
                    .map(|(a, b)| Origin::Both(a, b)),
            );
            v
        }
        Rule::Plus1 { i, .. } | Rule::Plus2 { i, .. } | Rule::De { i, .. } | Rule::Dg { i, .. } => {
            principal_then(&[*i], false)
        }
        Rule::Co { indices, .. } => principal_then(indices, false),
        Rule::Prom { i, .. } | Rule::PromGirard { i, .. } | Rule::PromOrdered { i, .. } => {
            principal_then(&[*i], true)
        }
    }
}

/// Which rule families a checker admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Stored conclusions must be list-equal to inferred ones, not just
    /// permutations of them.
    pub strict: bool,
    pub allow_prom: bool,
    pub allow_girard: bool,
    pub allow_ordered: bool,
    pub allow_dg: bool,
    /// Unary `Co`.
    pub allow_subsumption: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            strict: false,
            allow_prom: true,
            allow_girard: true,
            allow_ordered: true,
            allow_dg: true,
            allow_subsumption: true,
        }
    }
}

impl CheckOptions {
    pub fn strict() -> Self {
        CheckOptions {
            strict: true,
            ..Self::default()
        }
    }

    fn admits(&self, rule: &Rule) -> Result<(), InferError> {
        let ok = match rule {
            Rule::Prom { .. } => self.allow_prom,
            Rule::PromGirard { .. } => self.allow_girard,
            Rule::PromOrdered { .. } => self.allow_ordered,
            Rule::Dg { .. } => self.allow_dg,
            Rule::Co { from, .. } if from.len() == 1 => self.allow_subsumption,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(InferError::Disallowed(rule.name()))
        }
    }
}

/// A failing node, addressed by premise indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at node {}: {error}", fmt_path(.path))]
pub struct CheckFailure {
    pub path: Vec<usize>,
    pub rule: &'static str,
    pub error: InferError,
}

pub fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        return "/".into();
    }
    path.iter().map(|k| format!("/{k}")).collect()
}

fn introduced_formulas(rule: &Rule) -> Vec<&Formula> {
    match rule {
        Rule::Ax(a) | Rule::Plus1 { other: a, .. } | Rule::Plus2 { other: a, .. } => vec![a],
        Rule::Top { context } => context.iter().collect(),
        Rule::Co { body, .. } => vec![body],
        _ => Vec::new(),
    }
}

/// Checks one rule application against an instance and returns the inferred
/// conclusion.
pub fn infer_conclusion(
    inst: &Instance,
    rule: &Rule,
    prems: &[&Sequent],
    opts: &CheckOptions,
) -> Result<Sequent, InferError> {
    opts.admits(rule)?;
    for f in introduced_formulas(rule) {
        for e in f.signatures() {
            inst.check_signature(&e)?;
        }
    }
    let (concl, queries) = conclude(rule, prems)?;
    for q in queries {
        if !eval_param(inst, &q)? {
            return Err(InferError::SideCondition(q));
        }
    }
    Ok(concl)
}

/// Applies `rule` to already valid premises.
pub fn infer(inst: &Instance, rule: Rule, premises: Vec<Proof>) -> Result<Proof, InferError> {
    let prems: Vec<&Sequent> = premises.iter().map(|p| &p.conclusion).collect();
    let conclusion = infer_conclusion(inst, &rule, &prems, &CheckOptions::default())?;
    Ok(Proof {
        rule,
        conclusion,
        premises,
    })
}

/// Validates every node of `p`. The deepest failing node is reported first
/// in post-order.
pub fn check_proof(inst: &Instance, p: &Proof, opts: &CheckOptions) -> Result<(), CheckFailure> {
    let mut path = Vec::new();
    check_rec(inst, p, opts, &mut path)
}

fn check_rec(
    inst: &Instance,
    p: &Proof,
    opts: &CheckOptions,
    path: &mut Vec<usize>,
) -> Result<(), CheckFailure> {
    for (k, q) in p.premises.iter().enumerate() {
        path.push(k);
        check_rec(inst, q, opts, path)?;
        path.pop();
    }
    let fail = |error| CheckFailure {
        path: path.clone(),
        rule: p.rule.name(),
        error,
    };
    let prems: Vec<&Sequent> = p.premises.iter().map(|q| &q.conclusion).collect();
    let inferred = infer_conclusion(inst, &p.rule, &prems, opts).map_err(fail)?;
    let same = if opts.strict {
        inferred == p.conclusion
    } else {
        inferred.perm_eq(&p.conclusion)
    };
    if !same {
        return Err(fail(InferError::ConclusionMismatch {
            stored: p.conclusion.clone(),
            inferred,
        }));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SizeMode {
    #[default]
    Raw,
    /// Exchange nodes are not counted.
    ExchangeFree,
}

pub fn proof_size(p: &Proof, mode: SizeMode) -> usize {
    let own = match (&p.rule, mode) {
        (Rule::Exchange(_), SizeMode::ExchangeFree) => 0,
        _ => 1,
    };
    own + p
        .premises
        .iter()
        .map(|q| proof_size(q, mode))
        .sum::<usize>()
}

impl Proof {
    /// Builds a node with its conclusion computed structurally. Side
    /// conditions are left to [`check_proof`].
    pub fn build(rule: Rule, premises: Vec<Proof>) -> Result<Proof, InferError> {
        let prems: Vec<&Sequent> = premises.iter().map(|p| &p.conclusion).collect();
        let (conclusion, _) = conclude(&rule, &prems)?;
        Ok(Proof {
            rule,
            conclusion,
            premises,
        })
    }

    pub fn ax(a: Formula) -> Proof {
        Proof {
            conclusion: Sequent(vec![a.clone(), a.dual()]),
            rule: Rule::Ax(a),
            premises: Vec::new(),
        }
    }

    pub fn is_cut_free(&self) -> bool {
        !self.any(&|r| matches!(r, Rule::Cut { .. }))
    }

    pub fn any(&self, pred: &dyn Fn(&Rule) -> bool) -> bool {
        pred(&self.rule) || self.premises.iter().any(|q| q.any(pred))
    }

    pub fn count(&self, pred: &dyn Fn(&Rule) -> bool) -> usize {
        usize::from(pred(&self.rule)) + self.premises.iter().map(|q| q.count(pred)).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(Proof::depth).max().unwrap_or(0)
    }

    /// The subproof at `path`.
    pub fn at_path(&self, path: &[usize]) -> Option<&Proof> {
        path.iter().try_fold(self, |p, &k| p.premises.get(k))
    }
}

/// Finds an occurrence of `f` in `s` not listed in `used`.
pub fn locate(s: &Sequent, f: &Formula, used: &[usize]) -> Option<usize> {
    (0..s.len()).find(|k| !used.contains(k) && &s.formulas()[*k] == f)
}

/// Reorders the conclusion of `p` into `target`, which must be a permutation
/// of it. Consecutive exchanges are fused; identities are dropped.
pub fn exchange_to(p: Proof, target: &Sequent) -> Result<Proof, InferError> {
    if &p.conclusion == target {
        return Ok(p);
    }
    let sigma = p.conclusion.permutation_to(target).ok_or_else(|| {
        shape(format!(
            "{} is not a permutation of {}",
            target, p.conclusion
        ))
    })?;
    let (inner, perm) = match p.rule {
        Rule::Exchange(inner_perm) => {
            let below = p
                .premises
                .into_iter()
                .next()
                .expect("exchange has a premise");
            let perm: Vec<usize> = sigma.iter().map(|&k| inner_perm[k]).collect();
            (below, perm)
        }
        _ => (p, sigma),
    };
    if perm.iter().enumerate().all(|(k, &v)| k == v) {
        return Ok(inner);
    }
    Ok(Proof {
        rule: Rule::Exchange(perm),
        conclusion: target.clone(),
        premises: vec![inner],
    })
}

/// Moves the formula at `i` to the front.
pub fn bring_to_front(p: Proof, i: usize) -> Result<Proof, InferError> {
    let mut v = vec![at(&p.conclusion, i)?.clone()];
    v.extend(p.conclusion.without(&[i]));
    exchange_to(p, &Sequent(v))
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_proof(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{PSet, Tables};
    use crate::parse::{parse_formula, parse_sequent};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn sig(s: &str) -> Signature {
        Signature::new(s)
    }

    fn one_sig(p: PSet) -> Instance {
        let mut t = Tables {
            signatures: vec![sig("e")],
            ..Tables::default()
        };
        t.de.insert(sig("e"));
        t.co.insert((vec![], sig("e")));
        t.co.insert((vec![sig("e"), sig("e")], sig("e")));
        t.p.insert(sig("e"), p);
        t.into_instance("one")
    }

    #[test]
    fn axiom_conclusion() {
        let inst = one_sig(PSet::All);
        let p = infer(&inst, Rule::Ax(f("X")), vec![]).unwrap();
        assert_eq!(p.conclusion, parse_sequent("|- X, X^").unwrap());
    }

    #[test]
    fn weakening_is_nullary_co() {
        let inst = one_sig(PSet::All);
        let ax = Proof::ax(f("Y"));
        let p = infer(
            &inst,
            Rule::Co {
                from: vec![],
                to: sig("e"),
                indices: vec![],
                body: f("X"),
            },
            vec![ax],
        )
        .unwrap();
        assert_eq!(p.conclusion, parse_sequent("|- ?e X, Y, Y^").unwrap());
    }

    #[test]
    fn promotion_width_is_checked() {
        let inst = one_sig(PSet::Finite([0, 1].into()));
        let ax = Proof::ax(f("X"));
        let p = Proof::build(Rule::Bot, vec![Proof::build(Rule::Bot, vec![ax]).unwrap()]).unwrap();
        let err = infer(&inst, Rule::Prom { e: sig("e"), i: 2 }, vec![p]).unwrap_err();
        assert_eq!(err, InferError::SideCondition(ParamQuery::P(3, sig("e"))));
    }

    #[test]
    fn failure_path_points_at_node() {
        let inst = one_sig(PSet::All);
        let bad = Proof {
            rule: Rule::Bot,
            conclusion: parse_sequent("|- F, X").unwrap(),
            premises: vec![Proof::ax(f("X"))],
        };
        let root = Proof::build(Rule::Bot, vec![bad]).unwrap();
        let err = check_proof(&inst, &root, &CheckOptions::default()).unwrap_err();
        assert_eq!(err.path, vec![0]);
        assert!(matches!(err.error, InferError::ConclusionMismatch { .. }));
    }

    #[test]
    fn sizes() {
        let ax = Proof::ax(f("X"));
        assert_eq!(proof_size(&ax, SizeMode::Raw), 1);
        let ex = exchange_to(ax.clone(), &parse_sequent("|- X^, X").unwrap()).unwrap();
        assert_eq!(proof_size(&ex, SizeMode::Raw), 2);
        assert_eq!(proof_size(&ex, SizeMode::ExchangeFree), 1);
        let t = Proof::build(Rule::Tensor { left: 0, right: 0 }, vec![ax.clone(), ax]).unwrap();
        assert_eq!(proof_size(&t, SizeMode::Raw), 3);
    }

    #[test]
    fn exchanges_fuse() {
        let ax = Proof::ax(f("X"));
        let t = Proof::build(Rule::Tensor { left: 0, right: 1 }, vec![ax.clone(), ax]).unwrap();
        let s1 = Sequent(vec![
            t.conclusion.0[2].clone(),
            t.conclusion.0[0].clone(),
            t.conclusion.0[1].clone(),
        ]);
        let e1 = exchange_to(t.clone(), &s1).unwrap();
        let back = exchange_to(e1, &t.conclusion).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn origins_of_tensor() {
        let o = origins(&Rule::Tensor { left: 1, right: 0 }, &[2, 2]);
        assert_eq!(
            o,
            vec![
                Origin::Principal,
                Origin::Premise(0, 0),
                Origin::Premise(1, 1)
            ]
        );
    }

    #[test]
    fn girard_promotion_shape() {
        let mut t = Tables {
            signatures: vec![sig("a"), sig("b")],
            ..Tables::default()
        };
        t.dg.insert((sig("a"), sig("b"), sig("b")));
        t.p.insert(sig("a"), PSet::All);
        let inst = t.into_instance("t");
        let ax = Proof::ax(f("?b X"));
        let p = infer(
            &inst,
            Rule::PromGirard {
                e: sig("a"),
                i: 1,
                targets: vec![sig("b")],
            },
            vec![ax.clone()],
        )
        .unwrap();
        assert_eq!(p.conclusion, parse_sequent("|- !a !b X^, ?b X").unwrap());
        let err = infer(
            &inst,
            Rule::PromGirard {
                e: sig("a"),
                i: 1,
                targets: vec![sig("a")],
            },
            vec![ax],
        )
        .unwrap_err();
        assert_eq!(
            err,
            InferError::SideCondition(ParamQuery::Dg(sig("a"), sig("b"), sig("a")))
        );
    }
}
