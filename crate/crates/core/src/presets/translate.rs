//! Translations between native proofs and superLL proofs.

use thiserror::Error;

use super::native::{check_native, NativeProof, NativeRule};
use super::{
    derive_contraction, make_preset, NativeCheckFailure, PresetError, PresetId, DOT, STAR,
};
use crate::proof::{check_proof, CheckFailure, CheckOptions, InferError, Proof, Rule};
use crate::syntax::{Formula, Sequent, Signature};
use crate::transform::{
    eliminate_subsumption, girardize, unfold_promotions, wrap_front, TransformError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("invalid native proof: {0}")]
    Native(NativeCheckFailure),
    #[error("invalid proof: {0}")]
    Invalid(CheckFailure),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Preset(#[from] PresetError),
    #[error(transparent)]
    Infer(#[from] InferError),
    #[error("{rule} has no counterpart in {system}: {detail}")]
    Unsupported {
        rule: &'static str,
        system: &'static str,
        detail: String,
    },
}

/// Translates a native proof into a superLL proof of the same sequent under
/// the preset's instance. Cuts stay cuts and nothing else introduces them.
pub fn encode_native(id: &PresetId, np: &NativeProof) -> Result<Proof, TranslateError> {
    let sys = id.native_system();
    check_native(&sys, np).map_err(TranslateError::Native)?;
    let inst = make_preset(id)?;
    let p = encode(np)?;
    let p = unfold_promotions(p, true, true)?;
    check_proof(&inst, &p, &CheckOptions::default()).map_err(TranslateError::Invalid)?;
    Ok(p)
}

fn encode(np: &NativeProof) -> Result<Proof, TranslateError> {
    let mut prems = np
        .premises
        .iter()
        .map(encode)
        .collect::<Result<Vec<_>, _>>()?;
    let (d, s) = (Signature::new(DOT), Signature::new(STAR));
    let quest = |k: usize| -> (Signature, Formula) {
        let (e, a) = np.premises[0].conclusion.formulas()[k]
            .as_quest()
            .expect("checked why-not");
        (e.clone(), a.clone())
    };
    let rule = match &np.rule {
        NativeRule::Std(r) => r.clone(),
        NativeRule::Der { e, i } => Rule::De {
            e: e.clone(),
            i: *i,
        },
        NativeRule::Weak { e, formula } => Rule::Co {
            from: vec![],
            to: e.clone(),
            indices: vec![],
            body: formula.clone(),
        },
        NativeRule::Contr { i, j } => {
            let (e, body) = quest(*i);
            Rule::Co {
                from: vec![e.clone(), e.clone()],
                to: e,
                indices: vec![*i, *j],
                body,
            }
        }
        NativeRule::ContrPlus { e, i, j } => {
            let ((e1, body), (e2, _)) = (quest(*i), quest(*j));
            Rule::Co {
                from: vec![e1, e2],
                to: e.clone(),
                indices: vec![*i, *j],
                body,
            }
        }
        NativeRule::Subsume { to, i } => {
            let (e, body) = quest(*i);
            Rule::Co {
                from: vec![e],
                to: to.clone(),
                indices: vec![*i],
                body,
            }
        }
        NativeRule::Mpx { indices, formula } => {
            let k = indices.len();
            let prem = prems.pop().unwrap();
            let mut order: Vec<Formula> = vec![formula.clone(); k];
            order.extend(prem.conclusion.without(indices));
            let cur = crate::proof::exchange_to(prem, &Sequent(order))?;
            let cur = wrap_front(cur, k, |i| Rule::De { e: s.clone(), i })?;
            return Ok(Proof::build(
                Rule::Co {
                    from: vec![s; k],
                    to: d,
                    indices: (0..k).collect(),
                    body: formula.clone(),
                },
                vec![cur],
            )?);
        }
        NativeRule::Dig { i } => Rule::Dg {
            e1: d.clone(),
            e2: d.clone(),
            e: d,
            i: *i,
        },
        NativeRule::PromF { i } | NativeRule::PromU { i } => Rule::Prom { e: d, i: *i },
        NativeRule::PromSec { i, bullets } => Rule::PromOrdered {
            e: s.clone(),
            i: *i,
            targets: bullets
                .iter()
                .map(|&b| if b { d.clone() } else { s.clone() })
                .collect(),
        },
        NativeRule::PromG { e, i } | NativeRule::PromSub { e, i } => {
            let ctx = np.premises[0].conclusion.without(&[*i]);
            Rule::PromGirard {
                e: e.clone(),
                i: *i,
                targets: ctx
                    .iter()
                    .map(|g| g.as_quest().expect("checked why-not").0.clone())
                    .collect(),
            }
        }
        NativeRule::PromMul { e, i, targets } => Rule::PromGirard {
            e: e.clone(),
            i: *i,
            targets: targets.clone(),
        },
    };
    Ok(Proof::build(rule, prems)?)
}

/// Removes the `star` modalities, as done when reading SLL proofs back.
pub fn erase_star(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        Atom(_) | NegAtom(_) | One | Bot | Top | Zero => f.clone(),
        Tensor(a, b) => Formula::tensor(erase_star(a), erase_star(b)),
        Par(a, b) => Formula::par(erase_star(a), erase_star(b)),
        With(a, b) => Formula::with(erase_star(a), erase_star(b)),
        Plus(a, b) => Formula::plus(erase_star(a), erase_star(b)),
        Bang(e, a) | Quest(e, a) if e.name() == STAR => erase_star(a),
        Bang(e, a) => Formula::bang(e.clone(), erase_star(a)),
        Quest(e, a) => Formula::quest(e.clone(), erase_star(a)),
    }
}

/// The native sequent a superLL sequent corresponds to.
pub fn native_sequent(id: &PresetId, s: &Sequent) -> Sequent {
    match id {
        PresetId::Sll => Sequent(s.iter().map(erase_star).collect()),
        _ => s.clone(),
    }
}

/// Translates a valid superLL proof into the preset's native system. Promotion
/// and contraction forms outside the native vocabulary are first rewritten
/// (Girardization, subsumption elimination, unfolding of derived promotions,
/// contraction chains).
pub fn decode_native(id: &PresetId, p: &Proof) -> Result<NativeProof, TranslateError> {
    let inst = make_preset(id)?;
    let q = match id {
        PresetId::Lll => eliminate_subsumption(&inst, p)?.0,
        PresetId::LlFull | PresetId::Shift | PresetId::Sell(_) | PresetId::Bsll(_) => {
            girardize(&inst, p)?.0
        }
        PresetId::LlFunctorial | PresetId::Ell | PresetId::Sll => {
            check_proof(&inst, p, &CheckOptions::default()).map_err(TranslateError::Invalid)?;
            unfold_promotions(p.clone(), true, true)?
        }
    };
    let q = match id {
        PresetId::Sll | PresetId::Bsll(_) => q,
        _ => chain_contractions(q)?,
    };
    let np = decode(id, &q)?;
    let np = np.exchange_to(&native_sequent(id, &p.conclusion))?;
    check_native(&id.native_system(), &np).map_err(TranslateError::Native)?;
    Ok(np)
}

/// Rewrites uniform contractions of arity 1 and at least 3 into exchanges and
/// chains of binary contractions.
fn chain_contractions(p: Proof) -> Result<Proof, TranslateError> {
    let Proof {
        rule,
        conclusion,
        premises,
    } = p;
    let mut premises = premises
        .into_iter()
        .map(chain_contractions)
        .collect::<Result<Vec<_>, _>>()?;
    match rule {
        Rule::Co {
            from,
            to,
            indices,
            body,
        } if (from.len() == 1 || from.len() >= 3) && from.iter().all(|e| *e == to) => {
            let q = derive_contraction(premises.pop().unwrap(), &to, &body, &indices)?;
            Ok(crate::proof::exchange_to(q, &conclusion)?)
        }
        rule => Ok(Proof {
            rule,
            conclusion,
            premises,
        }),
    }
}

fn decode(id: &PresetId, p: &Proof) -> Result<NativeProof, TranslateError> {
    let prems = p
        .premises
        .iter()
        .map(|q| decode(id, q))
        .collect::<Result<Vec<_>, _>>()?;
    let sll = matches!(id, PresetId::Sll);
    let target = native_sequent(id, &p.conclusion);
    let unsupported = |detail: &str| TranslateError::Unsupported {
        rule: p.rule.name(),
        system: id.name(),
        detail: detail.to_string(),
    };
    let is_star = |e: &Signature| e.name() == STAR;
    let rule = match &p.rule {
        Rule::Ax(a) if sll => NativeRule::Std(Rule::Ax(erase_star(a))),
        Rule::Cut {
            formula,
            left,
            right,
        } if sll => NativeRule::Std(Rule::Cut {
            formula: erase_star(formula),
            left: *left,
            right: *right,
        }),
        Rule::Plus1 { i, other } if sll => NativeRule::Std(Rule::Plus1 {
            i: *i,
            other: erase_star(other),
        }),
        Rule::Plus2 { i, other } if sll => NativeRule::Std(Rule::Plus2 {
            i: *i,
            other: erase_star(other),
        }),
        Rule::Top { context } if sll => NativeRule::Std(Rule::Top {
            context: context.iter().map(erase_star).collect(),
        }),
        r if !r.is_exponential() => NativeRule::Std(r.clone()),
        Rule::De { e, .. } | Rule::Prom { e, .. } if sll && is_star(e) => {
            let prem = prems.into_iter().next().unwrap();
            return Ok(prem.exchange_to(&target)?);
        }
        Rule::De { e, i } => NativeRule::Der {
            e: e.clone(),
            i: *i,
        },
        Rule::Co {
            from,
            to,
            indices,
            body,
        } => match (id, from.len()) {
            (PresetId::Sll, _) => NativeRule::Mpx {
                indices: indices.clone(),
                formula: erase_star(body),
            },
            (_, 0) => NativeRule::Weak {
                e: to.clone(),
                formula: body.clone(),
            },
            (PresetId::Bsll(_), 1) => NativeRule::Subsume {
                to: to.clone(),
                i: indices[0],
            },
            (PresetId::Bsll(_), 2) => NativeRule::ContrPlus {
                e: to.clone(),
                i: indices[0],
                j: indices[1],
            },
            (_, 2) => NativeRule::Contr {
                i: indices[0],
                j: indices[1],
            },
            _ => return Err(unsupported("contraction arity")),
        },
        Rule::Dg { i, .. } => NativeRule::Dig { i: *i },
        Rule::Prom { i, .. } => NativeRule::PromF { i: *i },
        Rule::PromGirard { e, i, targets } => match id {
            PresetId::LlFull | PresetId::Shift => NativeRule::PromG {
                e: e.clone(),
                i: *i,
            },
            PresetId::Sell(_) => NativeRule::PromSub {
                e: e.clone(),
                i: *i,
            },
            PresetId::Bsll(_) => NativeRule::PromMul {
                e: e.clone(),
                i: *i,
                targets: targets.clone(),
            },
            _ => return Err(unsupported("Girard promotion")),
        },
        Rule::PromOrdered { e, i, targets } => match id {
            PresetId::Lll if is_star(e) => NativeRule::PromSec {
                i: *i,
                bullets: targets.iter().map(|t| t.name() == DOT).collect(),
            },
            PresetId::Lll => NativeRule::PromU { i: *i },
            _ => return Err(unsupported("ordered promotion")),
        },
        _ => return Err(unsupported("unexpected rule")),
    };
    Ok(NativeProof::build(rule, prems)?.exchange_to(&target)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::native::parse_native;
    use crate::proof::parse_proof;

    fn round_trip(id: &PresetId, text: &str) -> (Proof, NativeProof) {
        let np = parse_native(text).unwrap();
        let p = encode_native(id, &np).unwrap();
        let back = decode_native(id, &p).unwrap();
        assert!(back.conclusion.perm_eq(&np.conclusion));
        (p, back)
    }

    #[test]
    fn multiplexing_round_trip() {
        let (p, back) = round_trip(
            &PresetId::Sll,
            r#"(mpx [1 2] "X" (tensor 0 0 (ax "X^") (ax "X^")))"#,
        );
        assert!(p.any(&|r| matches!(r, Rule::De { e, .. } if e.name() == STAR)));
        assert!(back.any(&|r| matches!(r, NativeRule::Mpx { .. })));
    }

    #[test]
    fn subexponential_promotion_unfolds_to_digging() {
        let id = PresetId::Sell(Default::default());
        let (p, back) = round_trip(&id, r#"(prom-sub a 1 (der c 1 (ax "X")))"#);
        assert!(p.any(&|r| matches!(r, Rule::Dg { .. })));
        assert!(back.any(&|r| matches!(r, NativeRule::PromSub { .. })));
    }

    #[test]
    fn paragraph_round_trip() {
        let (p, back) = round_trip(
            &PresetId::Lll,
            r#"(prom-sec 0 [1 0] (tensor 0 0 (ax "X") (ax "Y")))"#,
        );
        assert!(p.any(&|r| matches!(r, Rule::Co { from, .. } if from.len() == 1)));
        assert!(back.any(&|r| matches!(r, NativeRule::PromSec { .. })));
    }

    #[test]
    fn bounded_promotion_round_trip() {
        round_trip(
            &PresetId::from_name("bsll").unwrap(),
            r#"(prom-mul 2 1 [4] (subsume 2 0 (der 1 1 (ax "X"))))"#,
        );
    }

    #[test]
    fn star_promotion_is_erased() {
        let p = parse_proof(r#"(prom star 0 (de star 1 (ax "X")))"#).unwrap();
        let np = decode_native(&PresetId::Sll, &p).unwrap();
        assert_eq!(np.conclusion.to_string(), "|- X^, X");
        assert!(!np.any(&|r| !matches!(r, NativeRule::Std(Rule::Ax(_) | Rule::Exchange(_)))));
    }

    #[test]
    fn ell_is_node_for_node() {
        let p = parse_proof(
            r#"(co [dot dot] dot [1 2] "X^" (prom dot 0 (tensor 0 0 (ax "X") (ax "X"))))"#,
        )
        .unwrap();
        let np = decode_native(&PresetId::Ell, &p).unwrap();
        assert_eq!(np.size(), p.count(&|_| true));
    }

    #[test]
    fn invalid_native_proof_is_rejected() {
        let np = parse_native(r#"(mpx [0] "X" (ax "X"))"#).unwrap();
        let err = encode_native(&PresetId::Ell, &np).unwrap_err();
        assert!(matches!(err, TranslateError::Native(_)));
    }
}
