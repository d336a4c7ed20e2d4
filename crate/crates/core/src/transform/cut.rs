//! Cut elimination through the substitution of `?`-prefixed occurrences.

use super::{
    default_bounds, rebuild, refuse_unless, stuck, unfold_promotions, validate_input, with_stack,
    wrap_front, Ctx, TransformError, TransformReport,
};
use crate::instance::{AxiomTable, Instance};
use crate::proof::{
    check_proof, exchange_to, fmt_path, locate, origins, proof_size, CheckOptions, Origin, Proof,
    Rule, SizeMode,
};
use crate::syntax::{Formula, Sequent, Signature};

/// Turns a proof of `|- a, G` (with `a` at the given index) into a cut-free
/// proof of `|- D, G`.
pub type Replacer<'r> = dyn FnMut(Proof, usize) -> Result<Proof, TransformError> + Send + 'r;

type Rep<'r> = dyn FnMut(&mut Ctx, Proof, usize) -> Result<Proof, TransformError> + 'r;

/// A target occurrence `?lists a` at a position of the conclusion.
type Target = (usize, Vec<Signature>);

/// Removes every cut from `p`, innermost cuts first.
pub fn eliminate_cut(
    inst: &Instance,
    p: &Proof,
) -> Result<(Proof, TransformReport), TransformError> {
    refuse_unless(AxiomTable::CutElimination, inst.proved().cut, || {
        inst.cached_cut_report(default_bounds()).clone()
    })?;
    validate_input(inst, p)?;
    with_stack(|| {
        let mut ctx = Ctx::new(inst, p);
        let q = unfold_promotions(p.clone(), true, true)?;
        let out = elim_all(&mut ctx, q, &mut Vec::new())?;
        let report = ctx.finish(&out);
        Ok((out, report))
    })
}

fn at_path(e: TransformError, path: &[usize]) -> TransformError {
    match e {
        TransformError::Stuck { message, .. } => TransformError::Stuck {
            path: fmt_path(path),
            message,
        },
        other => other,
    }
}

fn elim_all(ctx: &mut Ctx, p: Proof, path: &mut Vec<usize>) -> Result<Proof, TransformError> {
    let Proof {
        rule,
        conclusion,
        premises,
    } = p;
    let mut new = Vec::with_capacity(premises.len());
    for (k, q) in premises.into_iter().enumerate() {
        path.push(k);
        new.push(elim_all(ctx, q, path)?);
        path.pop();
    }
    if let Rule::Cut { left, right, .. } = rule {
        ctx.step("cut");
        let r = new.pop().unwrap();
        let l = new.pop().unwrap();
        let out = elim(ctx, l, left, r, right).map_err(|e| at_path(e, path))?;
        let out = exchange_to(out, &conclusion).map_err(|e| at_path(e.into(), path))?;
        check_proof(ctx.inst, &out, &CheckOptions::default()).map_err(|f| {
            TransformError::Stuck {
                path: fmt_path(path),
                message: format!("result fails to re-validate {f}"),
            }
        })?;
        return Ok(out);
    }
    Ok(Proof {
        rule,
        conclusion,
        premises: new,
    })
}

fn lens(p: &Proof) -> Vec<usize> {
    p.premises.iter().map(|q| q.conclusion.len()).collect()
}

/// A cut-free proof of exactly `l \ i ++ r \ j`, for cut-free `l` and `r`
/// with `l[i]` dual to `r[j]`.
pub(crate) fn elim(
    ctx: &mut Ctx,
    l: Proof,
    i: usize,
    r: Proof,
    j: usize,
) -> Result<Proof, TransformError> {
    let mut target = l.conclusion.without(&[i]);
    target.extend(r.conclusion.without(&[j]));
    let measure = (
        l.conclusion.formulas()[i].size(),
        proof_size(&l, SizeMode::Raw) + proof_size(&r, SizeMode::Raw),
    );
    if let Some(outer) = ctx.cut_measures.last() {
        debug_assert!(
            measure < *outer,
            "cut measure {measure:?} does not decrease from {outer:?}"
        );
    }
    ctx.cut_measures.push(measure);
    let out = elim_inner(ctx, l, i, r, j);
    ctx.cut_measures.pop();
    Ok(exchange_to(out?, &Sequent(target))?)
}

fn elim_inner(
    ctx: &mut Ctx,
    mut l: Proof,
    i: usize,
    mut r: Proof,
    j: usize,
) -> Result<Proof, TransformError> {
    if matches!(l.rule, Rule::Ax(_)) {
        ctx.step("key-ax");
        return Ok(r);
    }
    if matches!(r.rule, Rule::Ax(_)) {
        ctx.step("key-ax");
        return Ok(l);
    }
    if let Rule::Exchange(perm) = &l.rule {
        let k = perm[i];
        return elim(ctx, l.premises.pop().unwrap(), k, r, j);
    }
    if let Rule::Exchange(perm) = &r.rule {
        let k = perm[j];
        return elim(ctx, l, i, r.premises.pop().unwrap(), k);
    }
    let passive = |o: Origin| {
        matches!(
            o,
            Origin::Premise(..) | Origin::Both(..) | Origin::Introduced
        )
    };
    if passive(origins(&l.rule, &lens(&l))[i]) {
        return commute(ctx, l, i, &r, j, true);
    }
    if passive(origins(&r.rule, &lens(&r))[j]) {
        return commute(ctx, r, j, &l, i, false);
    }
    key(ctx, l, i, r, j)
}

/// Moves the cut into the premises of `s`, whose last rule does not act on
/// the cut formula at `k`. `o` is the other side.
fn commute(
    ctx: &mut Ctx,
    s: Proof,
    k: usize,
    o: &Proof,
    ok: usize,
    s_left: bool,
) -> Result<Proof, TransformError> {
    ctx.step("commute");
    let cut = |ctx: &mut Ctx, prem: Proof, pos: usize| {
        if s_left {
            elim(ctx, prem, pos, o.clone(), ok)
        } else {
            elim(ctx, o.clone(), ok, prem, pos)
        }
    };
    let origin = origins(&s.rule, &lens(&s))[k];
    let old: Vec<Sequent> = s.premises.iter().map(|q| q.conclusion.clone()).collect();
    let old_refs: Vec<&Sequent> = old.iter().collect();
    let mut prems = s.premises;
    match origin {
        Origin::Introduced => {
            let mut context = s.conclusion.without(&[0, k]);
            context.extend(o.conclusion.without(&[ok]));
            return Ok(Proof::build(Rule::Top { context }, vec![])?);
        }
        Origin::Premise(p, pos) => {
            let prem = std::mem::replace(&mut prems[p], Proof::ax(Formula::One));
            prems[p] = cut(ctx, prem, pos)?;
        }
        Origin::Both(a, b) => {
            let second = prems.pop().unwrap();
            let first = prems.pop().unwrap();
            prems = vec![cut(ctx, first, a)?, cut(ctx, second, b)?];
        }
        _ => return Err(stuck("commutation on an active formula")),
    }
    rebuild(&s.rule, &old_refs, prems)
}

/// Both premises end with a rule introducing the cut formula.
fn key(ctx: &mut Ctx, l: Proof, i: usize, r: Proof, j: usize) -> Result<Proof, TransformError> {
    let a = l.conclusion.formulas()[i].clone();
    if a.is_exponential() {
        let (bang, quest, k) = if a.as_bang().is_some() {
            (l, r, j)
        } else {
            (r, l, i)
        };
        return key_exp(ctx, bang, quest, k);
    }
    if let Some(p) = key_pair(ctx, &l, &r)? {
        return Ok(p);
    }
    if let Some(p) = key_pair(ctx, &r, &l)? {
        return Ok(p);
    }
    Err(stuck(format!(
        "no reduction for {} against {} on {a}",
        l.rule.name(),
        r.rule.name()
    )))
}

fn key_pair(ctx: &mut Ctx, x: &Proof, y: &Proof) -> Result<Option<Proof>, TransformError> {
    Ok(Some(match (&x.rule, &y.rule) {
        (Rule::Tensor { left, right }, Rule::Parr { i, j }) => {
            ctx.step("key-tensor");
            let (t0, t1, p0) = (&x.premises[0], &x.premises[1], &y.premises[0]);
            let first = elim(ctx, t0.clone(), *left, p0.clone(), *i)?;
            let c = t0.conclusion.len() - 1 + j - usize::from(j > i);
            elim(ctx, t1.clone(), *right, first, c)?
        }
        (Rule::One, Rule::Bot) => {
            ctx.step("key-one");
            y.premises[0].clone()
        }
        (Rule::With { left, .. }, Rule::Plus1 { i, .. }) => {
            ctx.step("key-with");
            elim(ctx, x.premises[0].clone(), *left, y.premises[0].clone(), *i)?
        }
        (Rule::With { right, .. }, Rule::Plus2 { i, .. }) => {
            ctx.step("key-with");
            elim(
                ctx,
                x.premises[1].clone(),
                *right,
                y.premises[0].clone(),
                *i,
            )?
        }
        _ => return Ok(None),
    }))
}

/// `!e B` introduced by a promotion against `?e B^` at `k` in `quest`.
fn key_exp(ctx: &mut Ctx, bang: Proof, quest: Proof, k: usize) -> Result<Proof, TransformError> {
    let Rule::Prom { e, i: ip } = &bang.rule else {
        return Err(stuck(format!(
            "{} introduces a !-formula",
            bang.rule.name()
        )));
    };
    ctx.step("key-exp");
    let prem = bang.premises[0].clone();
    let ip = *ip;
    let a = prem.conclusion.formulas()[ip].dual();
    let delta = prem.conclusion.without(&[ip]);
    let mut rep = |ctx: &mut Ctx, p: Proof, pos: usize| {
        ctx.step("replace");
        elim(ctx, prem.clone(), ip, p, pos)
    };
    subst(ctx, &a, &delta, vec![(k, vec![e.clone()])], quest, &mut rep)
}

/// Substitutes `delta` for the occurrences `?lists_j a` at positions
/// `0..lists.len()` of a cut-free `p`. The result proves
/// `?lists_1 delta, ..., ?lists_s delta, G`.
pub fn substitute(
    inst: &Instance,
    a: &Formula,
    delta: &Sequent,
    lists: &[Vec<Signature>],
    p: &Proof,
    replacer: &mut Replacer,
) -> Result<(Proof, TransformReport), TransformError> {
    validate_input(inst, p)?;
    if !p.is_cut_free() {
        return Err(stuck("substitution needs a cut-free proof"));
    }
    for (k, list) in lists.iter().enumerate() {
        if list.is_empty() {
            return Err(stuck("empty signature list"));
        }
        if p.conclusion.get(k) != Some(&Formula::quest_list(list, a.clone())) {
            return Err(stuck(format!("position {k} is not ?{list:?} {a}")));
        }
        for e in list {
            if !inst
                .p(delta.len(), e)
                .map_err(|err| stuck(err.to_string()))?
            {
                return Err(stuck(format!("p({}, {e}) is false", delta.len())));
            }
        }
    }
    with_stack(|| {
        let mut ctx = Ctx::new(inst, p);
        let q = unfold_promotions(p.clone(), true, true)?;
        let targets = lists.iter().cloned().enumerate().collect();
        let mut rep = |_: &mut Ctx, q: Proof, k: usize| replacer(q, k);
        let out = subst(&mut ctx, a, delta.formulas(), targets, q, &mut rep)?;
        let report = ctx.finish(&out);
        Ok((out, report))
    })
}

fn block(list: &[Signature], delta: &[Formula]) -> Vec<Formula> {
    delta
        .iter()
        .map(|d| Formula::quest_list(list, d.clone()))
        .collect()
}

fn subst(
    ctx: &mut Ctx,
    a: &Formula,
    delta: &[Formula],
    targets: Vec<Target>,
    q: Proof,
    rep: &mut Rep,
) -> Result<Proof, TransformError> {
    if targets.is_empty() {
        return Ok(q);
    }
    ctx.step("substitute");
    let positions: Vec<usize> = targets.iter().map(|t| t.0).collect();
    let mut expected = Vec::new();
    for (_, list) in &targets {
        expected.extend(block(list, delta));
    }
    let blocks_len = expected.len();
    expected.extend(q.conclusion.without(&positions));
    let expected = Sequent(expected);
    let out = subst_inner(ctx, a, delta, targets, q, rep, &expected, blocks_len)?;
    let out = exchange_to(out, &expected)?;
    #[cfg(debug_assertions)]
    if let Err(f) = check_proof(ctx.inst, &out, &CheckOptions::default()) {
        return Err(stuck(format!("substitution produced an invalid proof {f}")));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn subst_inner(
    ctx: &mut Ctx,
    a: &Formula,
    delta: &[Formula],
    targets: Vec<Target>,
    mut q: Proof,
    rep: &mut Rep,
    expected: &Sequent,
    blocks_len: usize,
) -> Result<Proof, TransformError> {
    let n = delta.len();
    let org = origins(&q.rule, &lens(&q));
    match q.rule.clone() {
        Rule::Exchange(perm) => {
            let inner = targets.into_iter().map(|(k, l)| (perm[k], l)).collect();
            return subst(ctx, a, delta, inner, q.premises.pop().unwrap(), rep);
        }
        Rule::Ax(_) => {
            ctx.step("subst-ax");
            let [(_, list)] =
                <[Target; 1]>::try_from(targets).map_err(|_| stuck("axiom with two targets"))?;
            let mut cur = rep(ctx, Proof::ax(a.clone()), 0)?;
            let mut at = n;
            for e in list.iter().rev() {
                cur = Proof::build(
                    Rule::Prom {
                        e: e.clone(),
                        i: at,
                    },
                    vec![cur],
                )?;
                at = 0;
            }
            return Ok(cur);
        }
        Rule::Top { .. } => {
            ctx.step("subst-top");
            let context = expected.without(&[blocks_len]);
            return Ok(Proof::build(Rule::Top { context }, vec![])?);
        }
        _ => {}
    }
    let principal = targets.iter().position(|t| org[t.0] == Origin::Principal);
    let wrapped = targets
        .iter()
        .any(|t| matches!(org[t.0], Origin::Wrapped(_)));
    let premise_pos = |k: usize| match org[k] {
        Origin::Premise(0, pos) => Ok(pos),
        _ => Err(stuck("target not inherited from the premise")),
    };

    if let Some(pi) = principal {
        let (_, list) = targets[pi].clone();
        let mut others = Vec::new();
        for (k, (pos, l)) in targets.into_iter().enumerate() {
            if k != pi {
                others.push((premise_pos(pos)?, l));
            }
        }
        let rest = list[1..].to_vec();
        let prem = q.premises.pop().unwrap();
        return match q.rule {
            Rule::De { e, i } => {
                ctx.step("subst-de");
                if rest.is_empty() {
                    let others_pos: Vec<usize> = others.iter().map(|t| t.0).collect();
                    let olen: usize = others.len() * n;
                    let at = olen + i - others_pos.iter().filter(|&&p| p < i).count();
                    let s = subst(ctx, a, delta, others, prem, rep)?;
                    let s = rep(ctx, s, at)?;
                    wrap_front(s, n, |i| Rule::De { e: e.clone(), i })
                } else {
                    let mut ts = vec![(i, rest)];
                    ts.extend(others);
                    let s = subst(ctx, a, delta, ts, prem, rep)?;
                    wrap_front(s, n, |i| Rule::De { e: e.clone(), i })
                }
            }
            Rule::Dg { e1, e2, e, i } => {
                ctx.step("subst-dg");
                let mut l = vec![e1.clone(), e2.clone()];
                l.extend(rest);
                let mut ts = vec![(i, l)];
                ts.extend(others);
                let s = subst(ctx, a, delta, ts, prem, rep)?;
                wrap_front(s, n, |i| Rule::Dg {
                    e1: e1.clone(),
                    e2: e2.clone(),
                    e: e.clone(),
                    i,
                })
            }
            Rule::Co {
                from, to, indices, ..
            } => {
                ctx.step("subst-co");
                let mut ts: Vec<Target> = from
                    .iter()
                    .zip(&indices)
                    .map(|(f, &k)| {
                        let mut l = vec![f.clone()];
                        l.extend(rest.iter().cloned());
                        (k, l)
                    })
                    .collect();
                ts.extend(others);
                let mut cur = subst(ctx, a, delta, ts, prem, rep)?;
                for (t, d) in delta.iter().enumerate() {
                    let body = Formula::quest_list(&rest, d.clone());
                    let mut used: Vec<usize> = (0..t).collect();
                    for f in &from {
                        let g = Formula::quest(f.clone(), body.clone());
                        let k = locate(&cur.conclusion, &g, &used)
                            .ok_or_else(|| stuck("lost contraction copy"))?;
                        used.push(k);
                    }
                    let indices = used[t..].to_vec();
                    cur = Proof::build(
                        Rule::Co {
                            from: from.clone(),
                            to: to.clone(),
                            indices,
                            body,
                        },
                        vec![cur],
                    )?;
                }
                Ok(cur)
            }
            _ => Err(stuck(format!(
                "{} acts on a substituted occurrence",
                q.rule.name()
            ))),
        };
    }

    if wrapped {
        let Rule::Prom { e, i } = q.rule.clone() else {
            return Err(stuck(format!(
                "{} promotes a substituted occurrence",
                q.rule.name()
            )));
        };
        ctx.step("subst-prom");
        let prem = q.premises.pop().unwrap();
        let body = prem.conclusion.formulas()[i].clone();
        let mut inner = Vec::new();
        let mut bare = 0;
        for (k, list) in targets {
            let Origin::Wrapped(pos) = org[k] else {
                return Err(stuck("mixed promotion targets"));
            };
            if list.len() == 1 {
                bare += 1;
            } else {
                inner.push((pos, list[1..].to_vec()));
            }
        }
        let mut cur = subst(ctx, a, delta, inner, prem, rep)?;
        for _ in 0..bare {
            let k = locate(&cur.conclusion, a, &[]).ok_or_else(|| stuck("lost bare occurrence"))?;
            cur = rep(ctx, cur, k)?;
        }
        let at =
            locate(&cur.conclusion, &body, &[]).ok_or_else(|| stuck("lost promoted formula"))?;
        return Ok(Proof::build(Rule::Prom { e, i: at }, vec![cur])?);
    }

    ctx.step("subst-context");
    let mut per: Vec<Vec<Target>> = vec![Vec::new(); q.premises.len()];
    for (k, list) in targets {
        match org[k] {
            Origin::Premise(p, pos) => per[p].push((pos, list)),
            Origin::Both(x, y) => {
                per[0].push((x, list.clone()));
                per[1].push((y, list));
            }
            _ => return Err(stuck("unexpected target origin")),
        }
    }
    let old: Vec<Sequent> = q.premises.iter().map(|p| p.conclusion.clone()).collect();
    let old_refs: Vec<&Sequent> = old.iter().collect();
    let mut new = Vec::new();
    for (prem, ts) in q.premises.into_iter().zip(per) {
        new.push(subst(ctx, a, delta, ts, prem, rep)?);
    }
    rebuild(&q.rule, &old_refs, new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_formula, parse_sequent};
    use crate::presets::{make_preset, PresetId};
    use crate::proof::parse_proof;

    fn preset(name: &str) -> Instance {
        make_preset(&PresetId::from_name(name).unwrap()).unwrap()
    }

    fn check(inst: &Instance, text: &str) -> Proof {
        let p = parse_proof(text).unwrap();
        check_proof(inst, &p, &CheckOptions::default()).unwrap();
        let (q, _) = eliminate_cut(inst, &p).unwrap();
        assert!(q.is_cut_free());
        check_proof(inst, &q, &CheckOptions::strict()).unwrap();
        assert!(q.conclusion.perm_eq(&p.conclusion));
        q
    }

    #[test]
    fn axiom_cut_disappears() {
        let inst = preset("ll-full");
        let q = check(&inst, r#"(cut "X" 0 0 (ax "X") (ax "X^"))"#);
        assert_eq!(q.rule.name(), "ax");
    }

    #[test]
    fn multiplicative_key_case() {
        let inst = preset("ll-full");
        check(
            &inst,
            r#"(cut "X * Y" 0 0
                 (tensor 0 0 (ax "X") (ax "Y"))
                 (parr 1 2 (tensor 0 0 (ax "X") (ax "Y"))))"#,
        );
    }

    #[test]
    fn exponential_key_case_with_contraction() {
        let inst = preset("ll-full");
        // !X against ?X^ contracted from two derelictions
        let q = check(
            &inst,
            r#"(cut "!dot X" 0 0
                 (prom dot 0 (ax "X"))
                 (co [dot dot] dot [0 1] "X^"
                   (de dot 2 (de dot 1 (tensor 0 0 (ax "X") (ax "X"))))))"#,
        );
        assert_eq!(q.conclusion.len(), 2);
    }

    #[test]
    fn broken_instance_is_refused() {
        let inst = crate::instance::parse_instance(
            "signatures: e e'\nco 1: e' -> e\np: e = >=2\np: e' = {1}\n",
        )
        .unwrap();
        let err = eliminate_cut(&inst, &Proof::ax(Formula::atom("X"))).unwrap_err();
        assert!(matches!(err, TransformError::Refused { .. }));
    }

    #[test]
    fn substitution_by_itself() {
        let inst = preset("ll-full");
        let a = parse_formula("X").unwrap();
        let p = parse_proof(r#"(de dot 0 (ax "X"))"#).unwrap();
        let mut id = |q: Proof, k: usize| Ok(crate::proof::bring_to_front(q, k)?);
        let (out, _) = substitute(
            &inst,
            &a,
            &parse_sequent("|- X").unwrap(),
            &[vec![Signature::new("dot")]],
            &p,
            &mut id,
        )
        .unwrap();
        check_proof(&inst, &out, &CheckOptions::default()).unwrap();
        assert!(out.conclusion.perm_eq(&p.conclusion));
    }
}
