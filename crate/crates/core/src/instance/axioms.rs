//! Bounded checking of the axiom tables.

use std::fmt;

use super::witness::{find_witness, Obligation, WitnessError};
use super::{Instance, InstanceError};
use crate::syntax::Signature;

/// `k` bounds contraction arity and `n` promotion width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub k: usize,
    pub n: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { k: 6, n: 6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomTable {
    CutElimination,
    Expansion,
    Girardization,
    Subsumption,
}

impl fmt::Display for AxiomTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomTable::CutElimination => "cut-elimination",
            AxiomTable::Expansion => "expansion",
            AxiomTable::Girardization => "girardization",
            AxiomTable::Subsumption => "subsumption",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub axiom: String,
    /// `(name, value)` pairs, values being signatures or naturals.
    pub tuple: Vec<(String, String)>,
    pub bad_witness: bool,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.axiom)?;
        for (k, v) in &self.tuple {
            write!(f, " {k}={v}")?;
        }
        if self.bad_witness {
            f.write_str(" (bad witness)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub table: AxiomTable,
    pub verdicts: Vec<(String, bool)>,
    pub counterexamples: Vec<Counterexample>,
    pub bounds: Bounds,
    /// The whole signature set was enumerated (not a sample).
    pub exhaustive: bool,
    /// The instance carries a hand proof of this table.
    pub analytic: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, ok)| *ok)
    }

    pub fn verdict(&self, axiom: &str) -> Option<bool> {
        self.verdicts
            .iter()
            .find(|(a, _)| a == axiom)
            .map(|(_, v)| *v)
    }
}

const MAX_COUNTEREXAMPLES: usize = 8;

struct Recorder {
    verdicts: Vec<(String, bool)>,
    counterexamples: Vec<Counterexample>,
    current: Option<(String, usize)>,
}

impl Recorder {
    fn new() -> Self {
        Recorder {
            verdicts: Vec::new(),
            counterexamples: Vec::new(),
            current: None,
        }
    }

    fn start(&mut self, axiom: &str) {
        self.finish();
        self.current = Some((axiom.to_string(), 0));
    }

    fn fail(&mut self, tuple: Vec<(String, String)>, bad_witness: bool) {
        let (axiom, count) = self.current.as_mut().expect("axiom started");
        *count += 1;
        if *count <= MAX_COUNTEREXAMPLES {
            self.counterexamples.push(Counterexample {
                axiom: axiom.clone(),
                tuple,
                bad_witness,
            });
        }
    }

    fn finish(&mut self) {
        if let Some((axiom, count)) = self.current.take() {
            self.verdicts.push((axiom, count == 0));
        }
    }

    fn report(
        mut self,
        table: AxiomTable,
        inst: &Instance,
        bounds: Bounds,
        analytic: bool,
    ) -> AxiomReport {
        self.finish();
        AxiomReport {
            table,
            verdicts: self.verdicts,
            counterexamples: self.counterexamples,
            bounds,
            exhaustive: inst.domain().is_finite(),
            analytic,
        }
    }
}

fn kv(k: impl Into<String>, v: impl ToString) -> (String, String) {
    (k.into(), v.to_string())
}

/// Calls `f` on every tuple of length `k` over `d`, in lexicographic
/// declaration order.
fn for_each_tuple(d: &[Signature], k: usize, mut f: impl FnMut(&[Signature])) {
    if k > 0 && d.is_empty() {
        return;
    }
    let mut idx = vec![0usize; k];
    let mut buf: Vec<Signature> = idx.iter().map(|&i| d[i].clone()).collect();
    loop {
        f(&buf);
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < d.len() {
                buf[pos] = d[idx[pos]].clone();
                break;
            }
            idx[pos] = 0;
            buf[pos] = d[0].clone();
        }
    }
}

fn eps_tuple(prefix: &str, eps: &[Signature]) -> Vec<(String, String)> {
    eps.iter()
        .enumerate()
        .map(|(i, s)| kv(format!("{prefix}{}", i + 1), s))
        .collect()
}

// Predicates below are evaluated on enumerated signatures, which belong to
// the domain, so lookups cannot fail.
fn ok(r: Result<bool, InstanceError>) -> bool {
    r.unwrap_or(false)
}

pub fn check_cut_axioms(inst: &Instance, bounds: Bounds) -> AxiomReport {
    let d = inst.signatures();
    let mut rec = Recorder::new();

    rec.start("ce1");
    for e in d {
        for m in 1..=bounds.n {
            for n in 0..=bounds.n {
                if ok(inst.p(m, e)) && ok(inst.p(n, e)) && !ok(inst.p(m + n - 1, e)) {
                    rec.fail(vec![kv("m", m), kv("n", n), kv("e", e)], false);
                }
            }
        }
    }

    rec.start("ce2");
    for k in 0..=bounds.k {
        for_each_tuple(d, k, |eps| {
            for e in d {
                if !ok(inst.co(eps, e)) {
                    continue;
                }
                for n in 0..=bounds.n {
                    if ok(inst.p(n, e)) && !eps.iter().all(|ei| ok(inst.p(n, ei))) {
                        let mut t = vec![kv("k", k)];
                        t.extend(eps_tuple("e", eps));
                        t.push(kv("e", e));
                        t.push(kv("n", n));
                        rec.fail(t, false);
                    }
                }
            }
        });
    }

    rec.start("ce3");
    for_each_tuple(d, 3, |t| {
        let (e1, e2, e) = (&t[0], &t[1], &t[2]);
        if !ok(inst.dg(e1, e2, e)) {
            return;
        }
        for n in 0..=bounds.n {
            if ok(inst.p(n, e)) && !(ok(inst.p(n, e1)) && ok(inst.p(n, e2))) {
                rec.fail(
                    vec![kv("e1", e1), kv("e2", e2), kv("e", e), kv("n", n)],
                    false,
                );
            }
        }
    });

    rec.report(AxiomTable::CutElimination, inst, bounds, inst.proved().cut)
}

fn check_ea(inst: &Instance, rec: &mut Recorder, name: &str) {
    rec.start(name);
    for e in inst.signatures() {
        if !ok(inst.p(1, e)) {
            rec.fail(vec![kv("e", e)], false);
        }
    }
}

pub fn check_expansion_axiom(inst: &Instance) -> AxiomReport {
    let mut rec = Recorder::new();
    check_ea(inst, &mut rec, "ea");
    rec.report(
        AxiomTable::Expansion,
        inst,
        Bounds::default(),
        inst.proved().expansion,
    )
}

fn discharge(inst: &Instance, rec: &mut Recorder, ob: Obligation, tuple: Vec<(String, String)>) {
    match find_witness(inst, &ob) {
        Ok(_) => {}
        Err(WitnessError::BadWitness { .. }) => rec.fail(tuple, true),
        Err(_) => rec.fail(tuple, false),
    }
}

pub fn check_girardization_axioms(inst: &Instance, bounds: Bounds) -> AxiomReport {
    let d = inst.signatures();
    let mut rec = Recorder::new();

    rec.start("gir1");
    for_each_tuple(d, 3, |t| {
        if ok(inst.dg(&t[0], &t[1], &t[2])) && !ok(inst.p(1, &t[0])) {
            rec.fail(
                vec![kv("e1", &t[0]), kv("e2", &t[1]), kv("e", &t[2])],
                false,
            );
        }
    });

    rec.start("gir2");
    for_each_tuple(d, 3, |t| {
        if ok(inst.de(&t[0])) && ok(inst.dg(&t[0], &t[1], &t[2])) && !ok(inst.leq(&t[1], &t[2])) {
            rec.fail(
                vec![kv("e1", &t[0]), kv("e2", &t[1]), kv("e", &t[2])],
                false,
            );
        }
    });

    rec.start("gir3");
    for k in 0..=bounds.k {
        for_each_tuple(d, k, |eps| {
            for e1 in d {
                if !ok(inst.co(eps, e1)) {
                    continue;
                }
                for e2 in d {
                    for e in d {
                        if !ok(inst.dg(e1, e2, e)) {
                            continue;
                        }
                        let mut t = vec![kv("k", k)];
                        t.extend(eps_tuple("eps", eps));
                        t.extend([kv("e1", e1), kv("e2", e2), kv("e", e)]);
                        let ob = Obligation::Gir3 {
                            eps: eps.to_vec(),
                            e1: e1.clone(),
                            e2: e2.clone(),
                            e: e.clone(),
                        };
                        discharge(inst, &mut rec, ob, t);
                    }
                }
            }
        });
    }

    rec.start("gir4");
    for_each_tuple(d, 3, |t| {
        let (e1, e2, e_mid) = (&t[0], &t[1], &t[2]);
        if !ok(inst.dg(e1, e2, e_mid)) {
            return;
        }
        for e3 in d {
            for e in d {
                if !ok(inst.dg(e_mid, e3, e)) {
                    continue;
                }
                let ob = Obligation::Gir4 {
                    e1: e1.clone(),
                    e2: e2.clone(),
                    e3: e3.clone(),
                    e_mid: e_mid.clone(),
                    e: e.clone(),
                };
                let tuple = vec![
                    kv("e1", e1),
                    kv("e2", e2),
                    kv("e3", e3),
                    kv("e'", e_mid),
                    kv("e", e),
                ];
                discharge(inst, &mut rec, ob, tuple);
            }
        }
    });

    rec.start("gir5");
    for e in d {
        for n in 1..=bounds.n {
            if ok(inst.p(n, e)) {
                let ob = Obligation::Gir5 { n, e: e.clone() };
                discharge(inst, &mut rec, ob, vec![kv("n", n), kv("e", e)]);
            }
        }
    }

    rec.report(
        AxiomTable::Girardization,
        inst,
        bounds,
        inst.proved().girardization,
    )
}

pub fn check_subsumption_axioms(inst: &Instance, bounds: Bounds) -> AxiomReport {
    let d = inst.signatures();
    let mut rec = Recorder::new();

    check_ea(inst, &mut rec, "sb1");

    rec.start("sb2");
    for e in d {
        if !ok(inst.leq(e, e)) {
            rec.fail(vec![kv("e", e)], false);
        }
    }

    rec.start("sb3");
    for_each_tuple(d, 3, |t| {
        if ok(inst.leq(&t[0], &t[1])) && ok(inst.leq(&t[1], &t[2])) && !ok(inst.leq(&t[0], &t[2])) {
            rec.fail(
                vec![kv("e1", &t[0]), kv("e2", &t[1]), kv("e3", &t[2])],
                false,
            );
        }
    });

    rec.start("sb4");
    for_each_tuple(d, 2, |t| {
        if ok(inst.de(&t[0])) && ok(inst.leq(&t[0], &t[1])) && !ok(inst.de(&t[1])) {
            rec.fail(vec![kv("e1", &t[0]), kv("e2", &t[1])], false);
        }
    });

    rec.start("sb5");
    for k in 0..=bounds.k {
        for_each_tuple(d, k, |eps| {
            for e1 in d {
                if !ok(inst.co(eps, e1)) {
                    continue;
                }
                for e2 in d {
                    if !ok(inst.leq(e1, e2)) {
                        continue;
                    }
                    let mut t = vec![kv("k", k)];
                    t.extend(eps_tuple("eps", eps));
                    t.extend([kv("e1", e1), kv("e2", e2)]);
                    let ob = Obligation::Sb5 {
                        eps: eps.to_vec(),
                        e1: e1.clone(),
                        e2: e2.clone(),
                    };
                    discharge(inst, &mut rec, ob, t);
                }
            }
        });
    }

    rec.start("sb6");
    for_each_tuple(d, 3, |t| {
        let (eps1, eps2, e1) = (&t[0], &t[1], &t[2]);
        if !ok(inst.dg(eps1, eps2, e1)) {
            return;
        }
        for e2 in d {
            if !ok(inst.leq(e1, e2)) {
                continue;
            }
            let ob = Obligation::Sb6 {
                eps1: eps1.clone(),
                eps2: eps2.clone(),
                e1: e1.clone(),
                e2: e2.clone(),
            };
            let tuple = vec![
                kv("eps1", eps1),
                kv("eps2", eps2),
                kv("e1", e1),
                kv("e2", e2),
            ];
            discharge(inst, &mut rec, ob, tuple);
        }
    });

    rec.report(
        AxiomTable::Subsumption,
        inst,
        bounds,
        inst.proved().subsumption,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalReport {
    pub functional: bool,
    /// Verdict per relation: `de`, `dg`, then `co0`, `co2`, ... up to the bound.
    pub relations: Vec<(String, bool)>,
    /// The first offending pair found, rendered as `rel(prefix..., last1 | last2)`.
    pub offending: Option<String>,
    pub bounds: Bounds,
}

/// Checks that `de`, `dg` and every `co_k` with `k != 1` determine their last
/// argument from the others.
pub fn is_functional(inst: &Instance, bounds: Bounds) -> FunctionalReport {
    let d = inst.signatures();
    let mut relations = Vec::new();
    let mut offending: Option<String> = None;

    let mut scan = |rel: String, arity: usize, holds: &dyn Fn(&[Signature], &Signature) -> bool| {
        let mut first: Option<String> = None;
        for_each_tuple(d, arity, |prefix| {
            if first.is_some() {
                return;
            }
            let lasts: Vec<&Signature> = d.iter().filter(|e| holds(prefix, e)).collect();
            if lasts.len() >= 2 {
                let mut s = format!("{rel}(");
                for p in prefix {
                    s.push_str(p.name());
                    s.push(',');
                }
                first = Some(format!("{s}{} | {})", lasts[0], lasts[1]));
            }
        });
        relations.push((rel, first.is_none()));
        if offending.is_none() {
            offending = first;
        }
    };

    scan("de".into(), 0, &|_, e| ok(inst.de(e)));
    scan("dg".into(), 2, &|t, e| ok(inst.dg(&t[0], &t[1], e)));
    for k in (0..=bounds.k).filter(|&k| k != 1) {
        scan(format!("co{k}"), k, &|eps, e| ok(inst.co(eps, e)));
    }
    FunctionalReport {
        functional: offending.is_none(),
        relations,
        offending,
        bounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_enumerate_in_order() {
        let d = [Signature::new("a"), Signature::new("b")];
        let mut seen = Vec::new();
        for_each_tuple(&d, 2, |t| seen.push(format!("{}{}", t[0], t[1])));
        assert_eq!(seen, ["aa", "ab", "ba", "bb"]);
        let mut count = 0;
        for_each_tuple(&d, 0, |t| {
            assert!(t.is_empty());
            count += 1
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn counterexample_rendering() {
        let c = Counterexample {
            axiom: "ce2".into(),
            tuple: vec![kv("k", 1), kv("e1", "e'"), kv("e", "e"), kv("n", 2)],
            bad_witness: false,
        };
        assert_eq!(c.to_string(), "ce2 k=1 e1=e' e=e n=2");
    }
}
