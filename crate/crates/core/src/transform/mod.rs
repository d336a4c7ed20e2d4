//! Proof rewrites: cut elimination, axiom expansion, Girardization,
//! subsumption elimination and the collapse to plain LL.
//!
//! Rewrites locate active formulas by value and finish each step with an
//! exchange to the expected conclusion. Equal formulas are interchangeable,
//! so picking any occurrence of a value gives the same multiset outcome.

mod cut;
mod girard;
mod subsume;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::instance::{
    check_expansion_axiom, find_witness, AxiomReport, AxiomTable, Bounds, Instance, Obligation,
    WitnessError,
};
use crate::presets::{derive_contraction, dot};
use crate::proof::{
    bring_to_front, check_proof, exchange_to, locate, proof_size, CheckFailure, CheckOptions,
    InferError, Proof, Rule, SizeMode,
};
use crate::syntax::{Formula, Sequent, Signature};

pub use cut::{eliminate_cut, substitute, Replacer};
pub use girard::girardize;
pub use subsume::eliminate_subsumption;

/// Stack size for the recursive rewrites.
const STACK: usize = 1 << 29;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransformReport {
    pub input_size: usize,
    pub output_size: usize,
    /// Steps taken, by case label.
    pub steps: BTreeMap<String, usize>,
    pub witness_queries: usize,
}

impl TransformReport {
    pub fn total_steps(&self) -> usize {
        self.steps.values().sum()
    }
}

impl fmt::Display for TransformReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input-size: {}", self.input_size)?;
        writeln!(f, "output-size: {}", self.output_size)?;
        for (k, v) in &self.steps {
            writeln!(f, "step.{k}: {v}")?;
        }
        write!(f, "witness-queries: {}", self.witness_queries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("refused: {table} axioms fail ({detail})")]
    Refused { table: AxiomTable, detail: String },
    #[error("input proof is invalid {0}")]
    Invalid(CheckFailure),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error("stuck at node {path}: {message}")]
    Stuck { path: String, message: String },
}

impl From<InferError> for TransformError {
    fn from(e: InferError) -> Self {
        TransformError::Stuck {
            path: "?".into(),
            message: e.to_string(),
        }
    }
}

pub(crate) fn stuck(message: impl Into<String>) -> TransformError {
    TransformError::Stuck {
        path: "?".into(),
        message: message.into(),
    }
}

/// Shared state of one rewrite run.
pub(crate) struct Ctx<'a> {
    pub inst: &'a Instance,
    pub report: TransformReport,
    /// Measures of the enclosing cut reductions, innermost last.
    pub cut_measures: Vec<(usize, usize)>,
}

impl<'a> Ctx<'a> {
    pub fn new(inst: &'a Instance, input: &Proof) -> Self {
        Ctx {
            inst,
            report: TransformReport {
                input_size: proof_size(input, SizeMode::Raw),
                ..TransformReport::default()
            },
            cut_measures: Vec::new(),
        }
    }

    pub fn step(&mut self, label: &str) {
        *self.report.steps.entry(label.to_string()).or_default() += 1;
    }

    pub fn witness(&mut self, ob: Obligation) -> Result<Vec<Signature>, TransformError> {
        self.report.witness_queries += 1;
        Ok(find_witness(self.inst, &ob)?)
    }

    pub fn finish(mut self, out: &Proof) -> TransformReport {
        self.report.output_size = proof_size(out, SizeMode::Raw);
        self.report
    }
}

pub(crate) fn refuse_unless(
    table: AxiomTable,
    proved: bool,
    report: impl FnOnce() -> AxiomReport,
) -> Result<(), TransformError> {
    if proved {
        return Ok(());
    }
    let r = report();
    if r.passed() {
        return Ok(());
    }
    let detail = r
        .counterexamples
        .first()
        .map(|c| c.to_string())
        .unwrap_or_else(|| "no counterexample recorded".into());
    Err(TransformError::Refused { table, detail })
}

pub(crate) fn validate_input(inst: &Instance, p: &Proof) -> Result<(), TransformError> {
    check_proof(inst, p, &CheckOptions::default()).map_err(TransformError::Invalid)
}

/// Runs `f` on a thread with a large stack.
pub(crate) fn with_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(STACK)
            .spawn_scoped(s, f)
            .expect("spawn rewrite thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

fn find(s: &Sequent, f: &Formula, used: &[usize]) -> Result<usize, TransformError> {
    locate(s, f, used).ok_or_else(|| stuck(format!("lost occurrence of {f} in {s}")))
}

/// Re-applies `rule` to `new` premises, finding its active formulas there by
/// value. `old` are the conclusions of the premises the rule was applied to.
pub(crate) fn rebuild(
    rule: &Rule,
    old: &[&Sequent],
    new: Vec<Proof>,
) -> Result<Proof, TransformError> {
    let f = |p: usize, k: usize| old[p].formulas()[k].clone();
    let mut new = new;
    let rule = match rule {
        Rule::Exchange(_) => return Ok(new.pop().expect("one premise")),
        Rule::Ax(_) | Rule::One | Rule::Top { .. } => return Err(stuck("rebuild of a leaf")),
        Rule::Cut {
            formula,
            left,
            right,
        } => Rule::Cut {
            formula: formula.clone(),
            left: find(&new[0].conclusion, &f(0, *left), &[])?,
            right: find(&new[1].conclusion, &f(1, *right), &[])?,
        },
        Rule::Tensor { left, right } => Rule::Tensor {
            left: find(&new[0].conclusion, &f(0, *left), &[])?,
            right: find(&new[1].conclusion, &f(1, *right), &[])?,
        },
        Rule::Parr { i, j } => {
            let a = find(&new[0].conclusion, &f(0, *i), &[])?;
            let b = find(&new[0].conclusion, &f(0, *j), &[a])?;
            Rule::Parr { i: a, j: b }
        }
        Rule::Bot => Rule::Bot,
        Rule::With { left, right } => {
            let l = find(&new[0].conclusion, &f(0, *left), &[])?;
            let r = find(&new[1].conclusion, &f(1, *right), &[])?;
            let second = new.pop().unwrap();
            let first = bring_to_front(new.pop().unwrap(), l)?;
            let mut target = vec![f(1, *right)];
            target.extend(first.conclusion.formulas()[1..].iter().cloned());
            let mut ctx1 = second.conclusion.without(&[r]);
            ctx1.insert(0, f(1, *right));
            if !Sequent(ctx1).perm_eq(&Sequent(target.clone())) {
                return Err(stuck("with: premise contexts diverged"));
            }
            let second = exchange_to(second, &Sequent(target))?;
            return Ok(Proof::build(
                Rule::With { left: 0, right: 0 },
                vec![first, second],
            )?);
        }
        Rule::Plus1 { i, other } => Rule::Plus1 {
            i: find(&new[0].conclusion, &f(0, *i), &[])?,
            other: other.clone(),
        },
        Rule::Plus2 { i, other } => Rule::Plus2 {
            i: find(&new[0].conclusion, &f(0, *i), &[])?,
            other: other.clone(),
        },
        Rule::De { e, i } => Rule::De {
            e: e.clone(),
            i: find(&new[0].conclusion, &f(0, *i), &[])?,
        },
        Rule::Co {
            from,
            to,
            indices,
            body,
        } => {
            let mut used = Vec::new();
            for &k in indices {
                let at = find(&new[0].conclusion, &f(0, k), &used)?;
                used.push(at);
            }
            Rule::Co {
                from: from.clone(),
                to: to.clone(),
                indices: used,
                body: body.clone(),
            }
        }
        Rule::Dg { e1, e2, e, i } => Rule::Dg {
            e1: e1.clone(),
            e2: e2.clone(),
            e: e.clone(),
            i: find(&new[0].conclusion, &f(0, *i), &[])?,
        },
        Rule::Prom { e, i } => Rule::Prom {
            e: e.clone(),
            i: find(&new[0].conclusion, &f(0, *i), &[])?,
        },
        Rule::PromGirard { e, i, targets } | Rule::PromOrdered { e, i, targets } => {
            let at = find(&new[0].conclusion, &f(0, *i), &[])?;
            let old_ctx = old[0].without(&[*i]);
            let mut taken = vec![false; old_ctx.len()];
            let mut new_targets = Vec::new();
            for g in new[0].conclusion.without(&[at]) {
                let k = (0..old_ctx.len())
                    .find(|&k| !taken[k] && old_ctx[k] == g)
                    .ok_or_else(|| stuck("promotion context changed"))?;
                taken[k] = true;
                new_targets.push(targets[k].clone());
            }
            let (e, i, targets) = (e.clone(), at, new_targets);
            if matches!(rule, Rule::PromGirard { .. }) {
                Rule::PromGirard { e, i, targets }
            } else {
                Rule::PromOrdered { e, i, targets }
            }
        }
    };
    Ok(Proof::build(rule, new)?)
}

/// Applies a unary rule to each of the first `n` formulas, leaving the
/// results in order at the front.
pub(crate) fn wrap_front(
    p: Proof,
    n: usize,
    rule: impl Fn(usize) -> Rule,
) -> Result<Proof, TransformError> {
    let mut cur = p;
    for _ in 0..n {
        cur = Proof::build(rule(n - 1), vec![cur])?;
    }
    Ok(cur)
}

/// Replaces derived promotions by functorial promotion followed by digging
/// (Girard) or unary contraction (ordered).
pub(crate) fn unfold_promotions(
    p: Proof,
    girard: bool,
    ordered: bool,
) -> Result<Proof, TransformError> {
    let Proof {
        rule,
        conclusion,
        premises,
    } = p;
    let premises = premises
        .into_iter()
        .map(|q| unfold_promotions(q, girard, ordered))
        .collect::<Result<Vec<_>, _>>()?;
    match rule {
        Rule::PromGirard { e, i, targets } if girard => {
            let prem = &premises[0].conclusion;
            let ctx = prem.without(&[i]);
            let mut cur = Proof::build(Rule::Prom { e: e.clone(), i }, premises)?;
            for (g, t) in ctx.iter().zip(&targets) {
                let (eps, _) = g.as_quest().ok_or_else(|| stuck("girard context"))?;
                let at = find(&cur.conclusion, &Formula::quest(e.clone(), g.clone()), &[0])?;
                cur = Proof::build(
                    Rule::Dg {
                        e1: e.clone(),
                        e2: eps.clone(),
                        e: t.clone(),
                        i: at,
                    },
                    vec![cur],
                )?;
            }
            Ok(exchange_to(cur, &conclusion)?)
        }
        Rule::PromOrdered { e, i, targets } if ordered => {
            let ctx = premises[0].conclusion.without(&[i]);
            let mut cur = Proof::build(Rule::Prom { e: e.clone(), i }, premises)?;
            for (g, t) in ctx.iter().zip(&targets) {
                if *t == e {
                    continue;
                }
                let at = find(&cur.conclusion, &Formula::quest(e.clone(), g.clone()), &[0])?;
                cur = Proof::build(
                    Rule::Co {
                        from: vec![e.clone()],
                        to: t.clone(),
                        indices: vec![at],
                        body: g.clone(),
                    },
                    vec![cur],
                )?;
            }
            Ok(exchange_to(cur, &conclusion)?)
        }
        rule => Ok(Proof {
            rule,
            conclusion,
            premises,
        }),
    }
}

/// Rewrites every axiom into atomic axioms.
pub fn expand_axioms(
    inst: &Instance,
    p: &Proof,
) -> Result<(Proof, TransformReport), TransformError> {
    refuse_unless(AxiomTable::Expansion, inst.proved().expansion, || {
        check_expansion_axiom(inst)
    })?;
    validate_input(inst, p)?;
    with_stack(|| {
        let mut ctx = Ctx::new(inst, p);
        let out = expand_rec(&mut ctx, p.clone())?;
        let report = ctx.finish(&out);
        Ok((out, report))
    })
}

fn expand_rec(ctx: &mut Ctx, p: Proof) -> Result<Proof, TransformError> {
    let Proof {
        rule,
        conclusion,
        premises,
    } = p;
    if let Rule::Ax(a) = &rule {
        return expand_ax(ctx, a);
    }
    let premises = premises
        .into_iter()
        .map(|q| expand_rec(ctx, q))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Proof {
        rule,
        conclusion,
        premises,
    })
}

/// An axiom-free-above-atoms proof of `|- a, a^`.
pub(crate) fn expand_ax(ctx: &mut Ctx, a: &Formula) -> Result<Proof, TransformError> {
    use Formula::*;
    let target = Sequent(vec![a.clone(), a.dual()]);
    let out = match a {
        Atom(_) | NegAtom(_) => return Ok(Proof::ax(a.clone())),
        Par(..) | Bot | Plus(..) | Zero | Quest(..) => {
            let d = expand_ax(ctx, &a.dual())?;
            return Ok(exchange_to(d, &target)?);
        }
        Tensor(b, c) => {
            ctx.step("expand-tensor");
            let t = Proof::build(
                Rule::Tensor { left: 0, right: 0 },
                vec![expand_ax(ctx, b)?, expand_ax(ctx, c)?],
            )?;
            Proof::build(Rule::Parr { i: 1, j: 2 }, vec![t])?
        }
        One => {
            ctx.step("expand-one");
            Proof::build(Rule::Bot, vec![Proof::build(Rule::One, vec![])?])?
        }
        With(b, c) => {
            ctx.step("expand-with");
            let l = Proof::build(
                Rule::Plus1 {
                    i: 1,
                    other: c.dual(),
                },
                vec![expand_ax(ctx, b)?],
            )?;
            let r = Proof::build(
                Rule::Plus2 {
                    i: 1,
                    other: b.dual(),
                },
                vec![expand_ax(ctx, c)?],
            )?;
            Proof::build(Rule::With { left: 1, right: 1 }, vec![l, r])?
        }
        Top => {
            ctx.step("expand-top");
            Proof::build(
                Rule::Top {
                    context: vec![Zero],
                },
                vec![],
            )?
        }
        Bang(e, b) => {
            ctx.step("expand-bang");
            Proof::build(Rule::Prom { e: e.clone(), i: 0 }, vec![expand_ax(ctx, b)?])?
        }
    };
    Ok(exchange_to(out, &target)?)
}

/// Maps every signature to the single signature of ll-full. Unary
/// contractions disappear and contractions of arity above two become chains
/// of binary ones.
pub fn forget_to_ll(p: &Proof) -> Result<Proof, TransformError> {
    with_stack(|| forget_rec(p))
}

fn forget_rec(p: &Proof) -> Result<Proof, TransformError> {
    let d = dot();
    let m = |f: &Formula| f.map_signatures(&|_| dot());
    let premises = p
        .premises
        .iter()
        .map(forget_rec)
        .collect::<Result<Vec<_>, _>>()?;
    let rule = match &p.rule {
        Rule::Ax(a) => Rule::Ax(m(a)),
        Rule::Cut {
            formula,
            left,
            right,
        } => Rule::Cut {
            formula: m(formula),
            left: *left,
            right: *right,
        },
        Rule::Plus1 { i, other } => Rule::Plus1 {
            i: *i,
            other: m(other),
        },
        Rule::Plus2 { i, other } => Rule::Plus2 {
            i: *i,
            other: m(other),
        },
        Rule::Top { context } => Rule::Top {
            context: context.iter().map(m).collect(),
        },
        Rule::De { i, .. } => Rule::De { e: d, i: *i },
        Rule::Co { indices, body, .. } => {
            let prem = premises.into_iter().next().expect("co premise");
            return Ok(derive_contraction(prem, &d, &m(body), indices)?);
        }
        Rule::Dg { i, .. } => Rule::Dg {
            e1: d.clone(),
            e2: d.clone(),
            e: d,
            i: *i,
        },
        Rule::Prom { i, .. } => Rule::Prom { e: d, i: *i },
        Rule::PromGirard { i, targets, .. } => Rule::PromGirard {
            e: d.clone(),
            i: *i,
            targets: vec![d; targets.len()],
        },
        Rule::PromOrdered { i, targets, .. } => Rule::PromOrdered {
            e: d.clone(),
            i: *i,
            targets: vec![d; targets.len()],
        },
        other => other.clone(),
    };
    Ok(Proof::build(rule, premises)?)
}

/// The standard bounds used to decide refusals of unproved instances.
pub(crate) fn default_bounds() -> Bounds {
    Bounds::default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;
    use crate::presets::{make_preset, PresetId};

    fn preset(name: &str) -> Instance {
        make_preset(&PresetId::from_name(name).unwrap()).unwrap()
    }

    #[test]
    fn expansion_of_bang_uses_unary_promotion() {
        let inst = preset("ell");
        let (p, _) = expand_axioms(&inst, &Proof::ax(parse_formula("!dot X").unwrap())).unwrap();
        assert!(matches!(p.rule, Rule::Prom { .. }));
        assert!(matches!(p.premises[0].rule, Rule::Ax(Formula::Atom(_))));
        check_proof(&inst, &p, &CheckOptions::strict()).unwrap();
    }

    #[test]
    fn expansion_keeps_atoms() {
        let inst = preset("ell");
        let ax = Proof::ax(Formula::atom("X"));
        assert_eq!(expand_axioms(&inst, &ax).unwrap().0, ax);
    }

    #[test]
    fn expansion_of_compound() {
        let inst = preset("sll");
        for s in ["X * X", "(X & 1) + ?star T", "!dot (X | Y^) & F"] {
            let a = parse_formula(s).unwrap();
            let (p, _) = expand_axioms(&inst, &Proof::ax(a.clone())).unwrap();
            check_proof(&inst, &p, &CheckOptions::strict()).unwrap();
            assert_eq!(p.conclusion, Sequent(vec![a.clone(), a.dual()]));
            assert!(!p.any(&|r| matches!(r, Rule::Ax(f) if !f.is_atomic())));
        }
    }

    #[test]
    fn forgetting_collapses_signatures() {
        let a = parse_formula("!star X").unwrap();
        let p = forget_to_ll(&Proof::ax(a)).unwrap();
        assert_eq!(p.rule, Rule::Ax(parse_formula("!dot X").unwrap()));
    }
}
