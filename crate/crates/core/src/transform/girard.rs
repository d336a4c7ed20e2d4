//! Replacing functorial promotion and digging by Girard's promotion.

use super::{
    default_bounds, rebuild, refuse_unless, stuck, unfold_promotions, validate_input, with_stack,
    wrap_front, Ctx, TransformError, TransformReport,
};
use crate::instance::{AxiomTable, Instance, Obligation};
use crate::proof::{exchange_to, origins, Origin, Proof, Rule};
use crate::syntax::{Formula, Sequent, Signature};

/// `?outer ?inner body` at `pos` is to become `?result body`.
#[derive(Debug, Clone)]
struct Dig {
    pos: usize,
    outer: Signature,
    result: Signature,
}

/// Rewrites `p` so that it uses neither functorial promotion nor digging.
/// Cut-free inputs give cut-free outputs.
pub fn girardize(inst: &Instance, p: &Proof) -> Result<(Proof, TransformReport), TransformError> {
    refuse_unless(
        AxiomTable::Girardization,
        inst.proved().girardization,
        || inst.cached_girard_report(default_bounds()).clone(),
    )?;
    validate_input(inst, p)?;
    with_stack(|| {
        let mut ctx = Ctx::new(inst, p);
        let q = unfold_promotions(p.clone(), false, true)?;
        let q = to_girard(&mut ctx, q)?;
        let out = remove_digging(&mut ctx, q)?;
        let report = ctx.finish(&out);
        Ok((out, report))
    })
}

fn to_girard(ctx: &mut Ctx, p: Proof) -> Result<Proof, TransformError> {
    let Proof {
        rule,
        conclusion,
        premises,
    } = p;
    let mut premises = premises
        .into_iter()
        .map(|q| to_girard(ctx, q))
        .collect::<Result<Vec<_>, _>>()?;
    let Rule::Prom { e, i } = rule else {
        return Ok(Proof {
            rule,
            conclusion,
            premises,
        });
    };
    ctx.step("prom-to-girard");
    let prem = premises.pop().unwrap();
    let n = prem.conclusion.len() - 1;
    let mut order = prem.conclusion.without(&[i]);
    order.push(prem.conclusion.formulas()[i].clone());
    let mut cur = exchange_to(prem, &Sequent(order))?;
    if n > 0 {
        let w = ctx.witness(Obligation::Gir5 { n, e: e.clone() })?;
        cur = wrap_front(cur, n, |i| Rule::De { e: w[0].clone(), i })?;
    }
    let cur = Proof::build(
        Rule::PromGirard {
            e: e.clone(),
            i: n,
            targets: vec![e; n],
        },
        vec![cur],
    )?;
    Ok(exchange_to(cur, &conclusion)?)
}

fn remove_digging(ctx: &mut Ctx, p: Proof) -> Result<Proof, TransformError> {
    let Proof {
        rule,
        conclusion,
        premises,
    } = p;
    let mut premises = premises
        .into_iter()
        .map(|q| remove_digging(ctx, q))
        .collect::<Result<Vec<_>, _>>()?;
    let Rule::Dg { e1, e2, e, i } = rule else {
        return Ok(Proof {
            rule,
            conclusion,
            premises,
        });
    };
    ctx.step("dg");
    let prem = premises.pop().unwrap();
    let body = prem.conclusion.formulas()[i]
        .strip_quests(&[e1.clone(), e2.clone()])
        .ok_or_else(|| stuck("dg shape"))?
        .clone();
    let dig = Dig {
        pos: i,
        outer: e1,
        result: e,
    };
    let out = undig(ctx, prem, vec![dig], &e2, &body)?;
    Ok(exchange_to(out, &conclusion)?)
}

fn lens(p: &Proof) -> Vec<usize> {
    p.premises.iter().map(|q| q.conclusion.len()).collect()
}

/// Replaces each `?outer ?inner body` at a target position by
/// `?result body`, in place, in a proof free of digging and functorial
/// promotion.
fn undig(
    ctx: &mut Ctx,
    p: Proof,
    digs: Vec<Dig>,
    inner: &Signature,
    body: &Formula,
) -> Result<Proof, TransformError> {
    if digs.is_empty() {
        return Ok(p);
    }
    let mut expected = p.conclusion.clone();
    for d in &digs {
        expected.0[d.pos] = Formula::quest(d.result.clone(), body.clone());
    }
    let out = undig_inner(ctx, p, digs, inner, body, &expected)?;
    Ok(exchange_to(out, &expected)?)
}

fn undig_inner(
    ctx: &mut Ctx,
    mut p: Proof,
    digs: Vec<Dig>,
    inner: &Signature,
    body: &Formula,
    expected: &Sequent,
) -> Result<Proof, TransformError> {
    let org = origins(&p.rule, &lens(&p));
    let inner_f = Formula::quest(inner.clone(), body.clone());
    match p.rule.clone() {
        Rule::Exchange(perm) => {
            let digs = digs
                .into_iter()
                .map(|d| Dig {
                    pos: perm[d.pos],
                    ..d
                })
                .collect();
            return undig(ctx, p.premises.pop().unwrap(), digs, inner, body);
        }
        Rule::Ax(_) => {
            ctx.step("undig-ax");
            let d = &digs[0];
            return Ok(Proof::build(
                Rule::PromGirard {
                    e: d.outer.clone(),
                    i: 0,
                    targets: vec![d.result.clone()],
                },
                vec![Proof::ax(inner_f.dual())],
            )?);
        }
        Rule::Top { .. } => {
            ctx.step("undig-top");
            let context = expected.without(&[0]);
            return Ok(Proof::build(Rule::Top { context }, vec![])?);
        }
        _ => {}
    }
    let to_premise = |d: Dig| match org[d.pos] {
        Origin::Premise(0, pos) => Ok(Dig { pos, ..d }),
        _ => Err(stuck("target not inherited from the premise")),
    };
    if let Some(k) = digs.iter().position(|d| org[d.pos] == Origin::Principal) {
        let main = digs[k].clone();
        let others = digs
            .into_iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, d)| to_premise(d))
            .collect::<Result<Vec<_>, _>>()?;
        let prem = p.premises.pop().unwrap();
        return match p.rule {
            Rule::De { i, .. } => {
                ctx.step("undig-de");
                let s = undig(ctx, prem, others, inner, body)?;
                Ok(Proof::build(
                    Rule::Co {
                        from: vec![inner.clone()],
                        to: main.result,
                        indices: vec![i],
                        body: body.clone(),
                    },
                    vec![s],
                )?)
            }
            Rule::Co { from, indices, .. } => {
                ctx.step("undig-co");
                let eps2 = ctx.witness(Obligation::Gir3 {
                    eps: from.clone(),
                    e1: main.outer.clone(),
                    e2: inner.clone(),
                    e: main.result.clone(),
                })?;
                let mut ds: Vec<Dig> = indices
                    .iter()
                    .zip(from.iter().zip(&eps2))
                    .map(|(&pos, (f, t))| Dig {
                        pos,
                        outer: f.clone(),
                        result: t.clone(),
                    })
                    .collect();
                ds.extend(others);
                let s = undig(ctx, prem, ds, inner, body)?;
                Ok(Proof::build(
                    Rule::Co {
                        from: eps2,
                        to: main.result,
                        indices,
                        body: body.clone(),
                    },
                    vec![s],
                )?)
            }
            ref r => Err(stuck(format!("{} acts on a digging target", r.name()))),
        };
    }
    if let Rule::PromGirard { e, i, mut targets } = p.rule.clone() {
        ctx.step("undig-prom");
        let prem = p.premises.pop().unwrap();
        let mut ds = Vec::new();
        for d in digs {
            let Origin::Wrapped(pos) = org[d.pos] else {
                return Err(stuck("girard promotion target"));
            };
            let (eps, _) = prem.conclusion.formulas()[pos]
                .as_quest()
                .ok_or_else(|| stuck("girard context"))?;
            let w = ctx.witness(Obligation::Gir4 {
                e1: e.clone(),
                e2: eps.clone(),
                e3: inner.clone(),
                e_mid: d.outer.clone(),
                e: d.result.clone(),
            })?;
            targets[d.pos - 1] = d.result.clone();
            ds.push(Dig {
                pos,
                outer: eps.clone(),
                result: w[0].clone(),
            });
        }
        let s = undig(ctx, prem, ds, inner, body)?;
        return Ok(Proof::build(Rule::PromGirard { e, i, targets }, vec![s])?);
    }
    if p.rule.is_promotion() || matches!(p.rule, Rule::Dg { .. }) {
        return Err(stuck(format!(
            "{} left in a Girardized proof",
            p.rule.name()
        )));
    }

    ctx.step("undig-context");
    let mut per: Vec<Vec<Dig>> = vec![Vec::new(); p.premises.len()];
    for d in digs {
        match org[d.pos] {
            Origin::Premise(q, pos) => per[q].push(Dig { pos, ..d }),
            Origin::Both(x, y) => {
                per[0].push(Dig {
                    pos: x,
                    ..d.clone()
                });
                per[1].push(Dig { pos: y, ..d });
            }
            _ => return Err(stuck("unexpected digging target")),
        }
    }
    let old: Vec<Sequent> = p.premises.iter().map(|q| q.conclusion.clone()).collect();
    let old_refs: Vec<&Sequent> = old.iter().collect();
    let mut new = Vec::new();
    for (q, ds) in p.premises.into_iter().zip(per) {
        new.push(undig(ctx, q, ds, inner, body)?);
    }
    rebuild(&p.rule, &old_refs, new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{make_preset, PresetId};
    use crate::proof::{check_proof, parse_proof, CheckOptions};

    fn no_prom_no_dg(p: &Proof) -> bool {
        !p.any(&|r| matches!(r, Rule::Prom { .. } | Rule::Dg { .. }))
    }

    #[test]
    fn ll_promotion_with_digging() {
        let inst = make_preset(&PresetId::LlFull).unwrap();
        let p = parse_proof(r#"(dg dot dot dot 1 (prom dot 0 (ax "!dot X")))"#).unwrap();
        check_proof(&inst, &p, &CheckOptions::default()).unwrap();
        let (q, _) = girardize(&inst, &p).unwrap();
        assert!(no_prom_no_dg(&q));
        check_proof(&inst, &q, &CheckOptions::strict()).unwrap();
        assert_eq!(q.conclusion, p.conclusion);
    }

    #[test]
    fn digging_over_axiom() {
        let inst = make_preset(&PresetId::LlFull).unwrap();
        let p = parse_proof(r#"(dg dot dot dot 0 (ax "?dot ?dot X"))"#).unwrap();
        let (q, _) = girardize(&inst, &p).unwrap();
        assert!(no_prom_no_dg(&q));
        check_proof(&inst, &q, &CheckOptions::strict()).unwrap();
    }

    #[test]
    fn identity_without_promotions() {
        let inst = make_preset(&PresetId::Shift).unwrap();
        let p = parse_proof(r#"(parr 0 1 (ax "X"))"#).unwrap();
        assert_eq!(girardize(&inst, &p).unwrap().0, p);
    }

    #[test]
    fn lll_is_refused() {
        let inst = make_preset(&PresetId::Lll).unwrap();
        let err = girardize(&inst, &Proof::ax(Formula::atom("X"))).unwrap_err();
        assert!(err.to_string().contains("gir5"), "{err}");
    }
}
