//! Removing unary contraction (subsumption) and functorial promotion in
//! favour of ordered promotion.

use super::{
    default_bounds, rebuild, refuse_unless, stuck, unfold_promotions, validate_input, with_stack,
    Ctx, TransformError, TransformReport,
};
use crate::instance::{AxiomTable, Instance, Obligation};
use crate::proof::{exchange_to, origins, Origin, Proof, Rule};
use crate::syntax::{Formula, Sequent, Signature};

/// `?from A` at `pos` is to become `?to A`.
#[derive(Debug, Clone)]
struct Sub {
    pos: usize,
    from: Signature,
    to: Signature,
}

/// Rewrites `p` so that it has no functorial promotion and no unary
/// contraction. Cut-free inputs give cut-free outputs.
pub fn eliminate_subsumption(
    inst: &Instance,
    p: &Proof,
) -> Result<(Proof, TransformReport), TransformError> {
    refuse_unless(AxiomTable::Subsumption, inst.proved().subsumption, || {
        inst.cached_subsumption_report(default_bounds()).clone()
    })?;
    validate_input(inst, p)?;
    with_stack(|| {
        let mut ctx = Ctx::new(inst, p);
        let q = unfold_promotions(p.clone(), true, false)?;
        let q = to_ordered(&mut ctx, q);
        let out = remove_unary(&mut ctx, q)?;
        let report = ctx.finish(&out);
        Ok((out, report))
    })
}

fn to_ordered(ctx: &mut Ctx, p: Proof) -> Proof {
    let Proof {
        rule,
        conclusion,
        premises,
    } = p;
    let premises: Vec<Proof> = premises.into_iter().map(|q| to_ordered(ctx, q)).collect();
    let rule = match rule {
        Rule::Prom { e, i } => {
            ctx.step("prom-to-ordered");
            let n = premises[0].conclusion.len() - 1;
            Rule::PromOrdered {
                e: e.clone(),
                i,
                targets: vec![e; n],
            }
        }
        r => r,
    };
    Proof {
        rule,
        conclusion,
        premises,
    }
}

fn remove_unary(ctx: &mut Ctx, p: Proof) -> Result<Proof, TransformError> {
    let Proof {
        rule,
        conclusion,
        premises,
    } = p;
    let mut premises = premises
        .into_iter()
        .map(|q| remove_unary(ctx, q))
        .collect::<Result<Vec<_>, _>>()?;
    match rule {
        Rule::Co {
            from, to, indices, ..
        } if from.len() == 1 => {
            ctx.step("co1");
            let sub = Sub {
                pos: indices[0],
                from: from[0].clone(),
                to,
            };
            let out = desub(ctx, premises.pop().unwrap(), vec![sub])?;
            Ok(exchange_to(out, &conclusion)?)
        }
        rule => Ok(Proof {
            rule,
            conclusion,
            premises,
        }),
    }
}

fn lens(p: &Proof) -> Vec<usize> {
    p.premises.iter().map(|q| q.conclusion.len()).collect()
}

fn body_at(s: &Sequent, pos: usize) -> Result<&Formula, TransformError> {
    s.formulas()[pos]
        .as_quest()
        .map(|(_, b)| b)
        .ok_or_else(|| stuck("subsumption target is not a why-not"))
}

/// Replaces `?from A` by `?to A` at each target position, in place.
fn desub(ctx: &mut Ctx, p: Proof, subs: Vec<Sub>) -> Result<Proof, TransformError> {
    let subs: Vec<Sub> = subs.into_iter().filter(|s| s.from != s.to).collect();
    if subs.is_empty() {
        return Ok(p);
    }
    let mut expected = p.conclusion.clone();
    for s in &subs {
        let body = body_at(&p.conclusion, s.pos)?.clone();
        expected.0[s.pos] = Formula::quest(s.to.clone(), body);
    }
    let out = desub_inner(ctx, p, subs, &expected)?;
    Ok(exchange_to(out, &expected)?)
}

fn desub_inner(
    ctx: &mut Ctx,
    mut p: Proof,
    subs: Vec<Sub>,
    expected: &Sequent,
) -> Result<Proof, TransformError> {
    let org = origins(&p.rule, &lens(&p));
    match p.rule.clone() {
        Rule::Exchange(perm) => {
            let subs = subs
                .into_iter()
                .map(|s| Sub {
                    pos: perm[s.pos],
                    ..s
                })
                .collect();
            return desub(ctx, p.premises.pop().unwrap(), subs);
        }
        Rule::Ax(_) => {
            ctx.step("desub-ax");
            let s = &subs[0];
            let body = body_at(&p.conclusion, s.pos)?.clone();
            return Ok(Proof::build(
                Rule::PromOrdered {
                    e: s.from.clone(),
                    i: 0,
                    targets: vec![s.to.clone()],
                },
                vec![Proof::ax(body.dual())],
            )?);
        }
        Rule::Top { .. } => {
            ctx.step("desub-top");
            let context = expected.without(&[0]);
            return Ok(Proof::build(Rule::Top { context }, vec![])?);
        }
        _ => {}
    }
    let to_premise = |s: Sub| match org[s.pos] {
        Origin::Premise(0, pos) => Ok(Sub { pos, ..s }),
        _ => Err(stuck("target not inherited from the premise")),
    };
    if let Some(k) = subs.iter().position(|s| org[s.pos] == Origin::Principal) {
        let main = subs[k].clone();
        let mut others = subs
            .into_iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, s)| to_premise(s))
            .collect::<Result<Vec<_>, _>>()?;
        let prem = p.premises.pop().unwrap();
        return match p.rule {
            Rule::De { i, .. } => {
                ctx.step("desub-de");
                let s = desub(ctx, prem, others)?;
                Ok(Proof::build(Rule::De { e: main.to, i }, vec![s])?)
            }
            Rule::Co {
                from,
                indices,
                body,
                ..
            } => {
                ctx.step("desub-co");
                let eps2 = ctx.witness(Obligation::Sb5 {
                    eps: from.clone(),
                    e1: main.from.clone(),
                    e2: main.to.clone(),
                })?;
                others.extend(
                    indices
                        .iter()
                        .zip(from.iter().zip(&eps2))
                        .map(|(&pos, (f, t))| Sub {
                            pos,
                            from: f.clone(),
                            to: t.clone(),
                        }),
                );
                let s = desub(ctx, prem, others)?;
                Ok(Proof::build(
                    Rule::Co {
                        from: eps2,
                        to: main.to,
                        indices,
                        body,
                    },
                    vec![s],
                )?)
            }
            Rule::Dg { e1, e2, i, .. } => {
                ctx.step("desub-dg");
                let w = ctx.witness(Obligation::Sb6 {
                    eps1: e1.clone(),
                    eps2: e2.clone(),
                    e1: main.from.clone(),
                    e2: main.to.clone(),
                })?;
                others.push(Sub {
                    pos: i,
                    from: e1,
                    to: w[0].clone(),
                });
                let s = desub(ctx, prem, others)?;
                Ok(Proof::build(
                    Rule::Dg {
                        e1: w[0].clone(),
                        e2,
                        e: main.to,
                        i,
                    },
                    vec![s],
                )?)
            }
            ref r => Err(stuck(format!("{} acts on a subsumption target", r.name()))),
        };
    }
    if let Rule::PromOrdered { e, i, mut targets } = p.rule.clone() {
        ctx.step("desub-prom");
        for s in subs {
            if !matches!(org[s.pos], Origin::Wrapped(_)) {
                return Err(stuck("ordered promotion target"));
            }
            targets[s.pos - 1] = s.to;
        }
        return Ok(Proof::build(
            Rule::PromOrdered { e, i, targets },
            p.premises,
        )?);
    }
    if p.rule.is_promotion() {
        return Err(stuck(format!("{} left after subsumption", p.rule.name())));
    }

    ctx.step("desub-context");
    let mut per: Vec<Vec<Sub>> = vec![Vec::new(); p.premises.len()];
    for s in subs {
        match org[s.pos] {
            Origin::Premise(q, pos) => per[q].push(Sub { pos, ..s }),
            Origin::Both(x, y) => {
                per[0].push(Sub {
                    pos: x,
                    ..s.clone()
                });
                per[1].push(Sub { pos: y, ..s });
            }
            _ => return Err(stuck("unexpected subsumption target")),
        }
    }
    let old: Vec<Sequent> = p.premises.iter().map(|q| q.conclusion.clone()).collect();
    let old_refs: Vec<&Sequent> = old.iter().collect();
    let mut new = Vec::new();
    for (q, ss) in p.premises.into_iter().zip(per) {
        new.push(desub(ctx, q, ss)?);
    }
    rebuild(&p.rule, &old_refs, new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{make_preset, PresetId};
    use crate::proof::{check_proof, parse_proof, CheckOptions};

    fn clean(p: &Proof) -> bool {
        !p.any(&|r| match r {
            Rule::Prom { .. } => true,
            Rule::Co { from, .. } => from.len() == 1,
            _ => false,
        })
    }

    #[test]
    fn subsumption_under_promotion() {
        let inst = make_preset(&PresetId::Lll).unwrap();
        let p =
            parse_proof(r#"(co [star] dot [1] "?star X" (prom star 1 (ax "?star X")))"#).unwrap();
        check_proof(&inst, &p, &CheckOptions::default()).unwrap();
        let (q, _) = eliminate_subsumption(&inst, &p).unwrap();
        assert!(clean(&q));
        check_proof(&inst, &q, &CheckOptions::strict()).unwrap();
        assert_eq!(q.conclusion, p.conclusion);
    }

    #[test]
    fn subsumption_over_axiom() {
        let inst = make_preset(&PresetId::Lll).unwrap();
        let p = parse_proof(r#"(co [star] dot [0] "X" (ax "?star X"))"#).unwrap();
        let (q, _) = eliminate_subsumption(&inst, &p).unwrap();
        assert!(clean(&q));
        check_proof(&inst, &q, &CheckOptions::strict()).unwrap();
        assert_eq!(q.conclusion, p.conclusion);
    }

    #[test]
    fn ell_is_refused() {
        let inst = make_preset(&PresetId::Ell).unwrap();
        let r = eliminate_subsumption(&inst, &Proof::ax(Formula::atom("X")));
        assert!(matches!(r, Err(TransformError::Refused { .. })));
    }
}
