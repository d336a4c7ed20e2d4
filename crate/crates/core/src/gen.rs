//! Random formulas and random valid proofs, for tests and benchmarks.
//!
//! Proofs are assembled forward: every rule is applied only when its side
//! condition holds in the instance, so the results pass `check_proof`.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::instance::Instance;
use crate::proof::{locate, Proof, Rule};
use crate::syntax::{Formula, Signature};

const ATOMS: [&str; 3] = ["X", "Y", "Z"];

pub struct Gen<'a, R: Rng> {
    inst: &'a Instance,
    rng: &'a mut R,
    sigs: Vec<Signature>,
}

impl<'a, R: Rng> Gen<'a, R> {
    pub fn new(inst: &'a Instance, rng: &'a mut R) -> Self {
        let mut sigs = inst.signatures().to_vec();
        sigs.truncate(6);
        Gen { inst, rng, sigs }
    }

    fn sig(&mut self) -> Signature {
        self.sigs
            .choose(self.rng)
            .expect("instances have signatures")
            .clone()
    }

    fn pick<T: Clone>(&mut self, v: &[T]) -> Option<T> {
        v.choose(self.rng).cloned()
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    /// A random formula with at most `size` connectives and atoms.
    pub fn formula(&mut self, size: usize) -> Formula {
        if size <= 1 {
            let a = *ATOMS.choose(self.rng).unwrap();
            return match self.rng.random_range(0..10) {
                0 => Formula::One,
                1 => Formula::Bot,
                2..=5 => Formula::atom(a),
                _ => Formula::neg_atom(a),
            };
        }
        match self.rng.random_range(0..8) {
            0..=3 => {
                let l = self.rng.random_range(1..size);
                let a = self.formula(l);
                let b = self.formula(size - l);
                match self.rng.random_range(0..4) {
                    0 => Formula::tensor(a, b),
                    1 => Formula::par(a, b),
                    2 => Formula::with(a, b),
                    _ => Formula::plus(a, b),
                }
            }
            4 | 5 => {
                let e = self.sig();
                Formula::quest(e, self.formula(size - 1))
            }
            _ => {
                let e = self.sig();
                Formula::bang(e, self.formula(size - 1))
            }
        }
    }

    fn leaf(&mut self) -> Proof {
        match self.rng.random_range(0..12) {
            0 => Proof::build(Rule::One, vec![]).unwrap(),
            1 => {
                let n = self.rng.random_range(0..3);
                let context = (0..n).map(|_| self.formula(2)).collect();
                Proof::build(Rule::Top { context }, vec![]).unwrap()
            }
            2 | 3 => {
                let (e1, e2) = (self.sig(), self.sig());
                let a = Formula::atom(*ATOMS.choose(self.rng).unwrap());
                Proof::ax(Formula::quest(e1, Formula::quest(e2, a)))
            }
            _ => {
                let n = self.rng.random_range(1..4);
                Proof::ax(self.formula(n))
            }
        }
    }

    /// A random cut-free proof of height at most `depth`.
    pub fn cutfree(&mut self, depth: usize) -> Proof {
        if depth <= 1 || self.chance(0.15) {
            return self.leaf();
        }
        let p = self.cutfree(depth - 1);
        for _ in 0..6 {
            if let Some(q) = self.step(&p, depth) {
                return q;
            }
        }
        p
    }

    /// One random rule applied below `p`; the result has height at most
    /// `depth`.
    pub fn step(&mut self, p: &Proof, depth: usize) -> Option<Proof> {
        if p.depth() >= depth {
            return None;
        }
        let n = p.conclusion.len();
        let rule = match self.rng.random_range(0..11) {
            0 if n >= 2 => {
                let i = self.rng.random_range(0..n);
                let j = (i + self.rng.random_range(1..n)) % n;
                Rule::Parr { i, j }
            }
            1 => Rule::Bot,
            2 if n >= 1 => {
                let i = self.rng.random_range(0..n);
                let other = self.formula(2);
                if self.chance(0.5) {
                    Rule::Plus1 { i, other }
                } else {
                    Rule::Plus2 { i, other }
                }
            }
            3 if n >= 1 => {
                let i = self.rng.random_range(0..n);
                return Proof::build(Rule::With { left: i, right: i }, vec![p.clone(), p.clone()])
                    .ok();
            }
            4 if n >= 1 => {
                let q = self.cutfree(depth - 1);
                let (left, right) = (
                    self.rng.random_range(0..n),
                    self.rng.random_range(0..q.conclusion.len().max(1)),
                );
                return Proof::build(Rule::Tensor { left, right }, vec![p.clone(), q]).ok();
            }
            5 if n >= 1 => {
                let i = self.rng.random_range(0..n);
                let es: Vec<Signature> = self
                    .sigs
                    .iter()
                    .filter(|e| self.inst.de(e).unwrap_or(false))
                    .cloned()
                    .collect();
                Rule::De {
                    e: self.pick(&es)?,
                    i,
                }
            }
            6 => {
                let es: Vec<Signature> = self
                    .sigs
                    .iter()
                    .filter(|e| self.inst.co(&[], e).unwrap_or(false))
                    .cloned()
                    .collect();
                let e = self.pick(&es)?;
                let body = self.formula(2);
                return Proof::build(
                    Rule::Co {
                        from: vec![],
                        to: e,
                        indices: vec![],
                        body,
                    },
                    vec![p.clone()],
                )
                .ok();
            }
            7 => return self.contract(p),
            8 => return self.dig(p),
            9 | 10 if n >= 1 => {
                let es: Vec<Signature> = self
                    .sigs
                    .iter()
                    .filter(|e| self.inst.p(n - 1, e).unwrap_or(false))
                    .cloned()
                    .collect();
                let i = self.rng.random_range(0..n);
                Rule::Prom {
                    e: self.pick(&es)?,
                    i,
                }
            }
            _ => return None,
        };
        Proof::build(rule, vec![p.clone()]).ok()
    }

    /// A contraction on `?`-formulas of `p` sharing a body.
    fn contract(&mut self, p: &Proof) -> Option<Proof> {
        let fs = p.conclusion.formulas();
        let qs: Vec<usize> = (0..fs.len())
            .filter(|&k| fs[k].as_quest().is_some())
            .collect();
        let first = self.pick(&qs)?;
        let body = fs[first].as_quest().unwrap().1.clone();
        let mut indices: Vec<usize> = qs
            .into_iter()
            .filter(|&k| fs[k].as_quest().unwrap().1 == &body)
            .collect();
        let k = self.rng.random_range(1..=indices.len().min(3));
        indices.retain(|&x| x != first);
        let mut chosen = vec![first];
        while chosen.len() < k {
            let x = indices.remove(self.rng.random_range(0..indices.len()));
            chosen.push(x);
        }
        let from: Vec<Signature> = chosen
            .iter()
            .map(|&k| fs[k].as_quest().unwrap().0.clone())
            .collect();
        let targets: Vec<Signature> = self
            .sigs
            .iter()
            .filter(|e| !(from.len() == 1 && &from[0] == *e))
            .filter(|e| self.inst.co(&from, e).unwrap_or(false))
            .cloned()
            .collect();
        let to = self.pick(&targets)?;
        Proof::build(
            Rule::Co {
                from,
                to,
                indices: chosen,
                body,
            },
            vec![p.clone()],
        )
        .ok()
    }

    fn dig(&mut self, p: &Proof) -> Option<Proof> {
        let fs = p.conclusion.formulas();
        let cands: Vec<usize> = (0..fs.len())
            .filter(|&k| matches!(fs[k].as_quest(), Some((_, b)) if b.as_quest().is_some()))
            .collect();
        let i = self.pick(&cands)?;
        let (e1, inner) = fs[i].as_quest().unwrap();
        let (e2, _) = inner.as_quest().unwrap();
        let es: Vec<Signature> = self
            .sigs
            .iter()
            .filter(|e| self.inst.dg(e1, e2, e).unwrap_or(false))
            .cloned()
            .collect();
        let e = self.pick(&es)?;
        Proof::build(
            Rule::Dg {
                e1: e1.clone(),
                e2: e2.clone(),
                e,
                i,
            },
            vec![p.clone()],
        )
        .ok()
    }

    /// A cut-free proof whose conclusion contains `f`, introduced by its
    /// own rule when possible.
    pub fn containing(&mut self, f: &Formula, depth: usize) -> Proof {
        let fallback = |f: &Formula| Proof::ax(f.dual());
        if depth <= 1 || self.chance(0.03) {
            return fallback(f);
        }
        let Some(mut p) = self.introduce(f, depth - 1) else {
            return fallback(f);
        };
        // A few context steps that leave `f` in place.
        for _ in 0..self.rng.random_range(0..2) {
            if let Some(q) = self.step(&p, depth) {
                if locate(&q.conclusion, f, &[]).is_some() {
                    p = q;
                }
            }
        }
        p
    }

    fn introduce(&mut self, f: &Formula, d: usize) -> Option<Proof> {
        match f {
            Formula::One => Proof::build(Rule::One, vec![]).ok(),
            Formula::Top => {
                let context = if self.chance(0.5) {
                    vec![self.formula(2)]
                } else {
                    vec![]
                };
                Proof::build(Rule::Top { context }, vec![]).ok()
            }
            Formula::Bot => {
                let p = self.cutfree(d);
                Proof::build(Rule::Bot, vec![p]).ok()
            }
            Formula::Tensor(a, b) => {
                let p = self.containing(a, d);
                let q = self.containing(b, d);
                let (l, r) = (
                    locate(&p.conclusion, a, &[])?,
                    locate(&q.conclusion, b, &[])?,
                );
                Proof::build(Rule::Tensor { left: l, right: r }, vec![p, q]).ok()
            }
            Formula::Par(a, b) => {
                let p = self.containing(a, d.saturating_sub(1));
                let q = self.containing(b, d.saturating_sub(1));
                let l = locate(&p.conclusion, a, &[])?;
                let r = locate(&q.conclusion, b, &[])?;
                let lo = (0..p.conclusion.len()).find(|&k| k != l)?;
                let ro = (0..q.conclusion.len()).find(|&k| k != r)?;
                let t = Proof::build(
                    Rule::Tensor {
                        left: lo,
                        right: ro,
                    },
                    vec![p, q],
                )
                .ok()?;
                let i = locate(&t.conclusion, a, &[0])?;
                let j = locate(&t.conclusion, b, &[0, i])?;
                Proof::build(Rule::Parr { i, j }, vec![t]).ok()
            }
            Formula::With(a, b) if a == b => {
                let p = self.containing(a, d);
                let i = locate(&p.conclusion, a, &[])?;
                Proof::build(Rule::With { left: i, right: i }, vec![p.clone(), p]).ok()
            }
            Formula::Plus(a, b) => {
                if self.chance(0.5) {
                    let p = self.containing(a, d);
                    let i = locate(&p.conclusion, a, &[])?;
                    Proof::build(
                        Rule::Plus1 {
                            i,
                            other: (**b).clone(),
                        },
                        vec![p],
                    )
                    .ok()
                } else {
                    let p = self.containing(b, d);
                    let i = locate(&p.conclusion, b, &[])?;
                    Proof::build(
                        Rule::Plus2 {
                            i,
                            other: (**a).clone(),
                        },
                        vec![p],
                    )
                    .ok()
                }
            }
            Formula::Bang(e, a) => {
                let p = self.containing(a, d);
                let i = locate(&p.conclusion, a, &[])?;
                let n = p.conclusion.len() - 1;
                if self.inst.p(n, e).unwrap_or(false) {
                    Proof::build(Rule::Prom { e: e.clone(), i }, vec![p]).ok()
                } else {
                    None
                }
            }
            Formula::Quest(e, a) => self.why_not_containing(e, a, d),
            _ => None,
        }
    }

    fn why_not_containing(&mut self, e: &Signature, a: &Formula, d: usize) -> Option<Proof> {
        match self.rng.random_range(0..4) {
            0 if self.inst.co(&[], e).unwrap_or(false) => {
                let p = self.cutfree(d);
                Proof::build(
                    Rule::Co {
                        from: vec![],
                        to: e.clone(),
                        indices: vec![],
                        body: a.clone(),
                    },
                    vec![p],
                )
                .ok()
            }
            1 => {
                // ?e a as context of a promotion.
                let p = self.containing(a, d);
                let i = locate(&p.conclusion, a, &[])?;
                let n = p.conclusion.len() - 1;
                if n == 0 || !self.inst.p(n, e).unwrap_or(false) {
                    return None;
                }
                let j = (0..p.conclusion.len()).find(|&k| k != i)?;
                Proof::build(Rule::Prom { e: e.clone(), i: j }, vec![p]).ok()
            }
            2 => {
                // Contraction of two copies of ?eps a.
                let from: Vec<Signature> = self
                    .sigs
                    .iter()
                    .flat_map(|x| self.sigs.iter().map(move |y| vec![x.clone(), y.clone()]))
                    .filter(|v| self.inst.co(v, e).unwrap_or(false))
                    .collect::<Vec<_>>()
                    .choose(self.rng)?
                    .clone();
                let p = self.containing(
                    &Formula::quest(from[0].clone(), a.clone()),
                    d.saturating_sub(1),
                );
                let q = self.containing(
                    &Formula::quest(from[1].clone(), a.clone()),
                    d.saturating_sub(1),
                );
                let f0 = Formula::quest(from[0].clone(), a.clone());
                let f1 = Formula::quest(from[1].clone(), a.clone());
                let l = locate(&p.conclusion, &f0, &[])?;
                let r = locate(&q.conclusion, &f1, &[])?;
                let lo = (0..p.conclusion.len()).find(|&k| k != l)?;
                let ro = (0..q.conclusion.len()).find(|&k| k != r)?;
                let t = Proof::build(
                    Rule::Tensor {
                        left: lo,
                        right: ro,
                    },
                    vec![p, q],
                )
                .ok()?;
                let i = locate(&t.conclusion, &f0, &[0])?;
                let j = locate(&t.conclusion, &f1, &[0, i])?;
                Proof::build(
                    Rule::Co {
                        from,
                        to: e.clone(),
                        indices: vec![i, j],
                        body: a.clone(),
                    },
                    vec![t],
                )
                .ok()
            }
            _ if self.inst.de(e).unwrap_or(false) => {
                let p = self.containing(a, d);
                let i = locate(&p.conclusion, a, &[])?;
                Proof::build(Rule::De { e: e.clone(), i }, vec![p]).ok()
            }
            _ => None,
        }
    }

    /// A proof of height at most `depth` with at least one cut, whose cut
    /// formula is introduced on both sides where the instance allows it.
    pub fn with_cut(&mut self, depth: usize) -> Proof {
        loop {
            let size = self.rng.random_range(2..8);
            let f = self.formula(size);
            let half = depth.saturating_sub(2).max(1);
            let low = (half / 2).max(1);
            let (dl, dr) = (
                self.rng.random_range(low..=half),
                self.rng.random_range(low..=half),
            );
            let p = self.containing(&f, dl);
            let q = self.containing(&f.dual(), dr);
            let (Some(l), Some(r)) = (
                locate(&p.conclusion, &f, &[]),
                locate(&q.conclusion, &f.dual(), &[]),
            ) else {
                continue;
            };
            let Ok(mut c) = Proof::build(
                Rule::Cut {
                    formula: f,
                    left: l,
                    right: r,
                },
                vec![p, q],
            ) else {
                continue;
            };
            if c.depth() > depth {
                continue;
            }
            // A second cut below the first one.
            if c.depth() + 1 < depth && !c.conclusion.is_empty() && self.chance(0.4) {
                let k = self.rng.random_range(0..c.conclusion.len());
                let h = c.conclusion.formulas()[k].clone();
                let q = self.containing(&h.dual(), depth - c.depth());
                if let Some(r) = locate(&q.conclusion, &h.dual(), &[]) {
                    let d = Proof::build(
                        Rule::Cut {
                            formula: h,
                            left: k,
                            right: r,
                        },
                        vec![c.clone(), q],
                    );
                    match d {
                        Ok(d) if d.depth() <= depth => c = d,
                        _ => {}
                    }
                }
            }
            for _ in 0..self.rng.random_range(0..3) {
                if let Some(q) = self.step(&c, depth) {
                    c = q;
                }
            }
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{make_preset, PresetId};
    use crate::proof::{check_proof, CheckOptions};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_proofs_check() {
        for id in PresetId::all() {
            let inst = make_preset(&id).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let mut g = Gen::new(&inst, &mut rng);
            for _ in 0..100 {
                let p = g.cutfree(6);
                check_proof(&inst, &p, &CheckOptions::default())
                    .unwrap_or_else(|e| panic!("{id}: {e}\n{p}"));
                assert!(p.is_cut_free() && p.depth() <= 6);
                let c = g.with_cut(8);
                check_proof(&inst, &c, &CheckOptions::default())
                    .unwrap_or_else(|e| panic!("{id}: {e}\n{c}"));
                assert!(
                    !c.is_cut_free() && c.depth() <= 8,
                    "{id}: depth {}",
                    c.depth()
                );
            }
        }
    }
}
