//! Bounded backward search for cut-free proofs.

use std::collections::HashMap;
use std::fmt;

use crate::instance::Instance;
use crate::proof::{exchange_to, Proof, Rule};
use crate::syntax::{Formula, Sequent, Signature};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximal height of the proof tree, exchanges not counted.
    pub max_depth: usize,
    /// Maximal number of sequents expanded, over all deepening rounds.
    pub max_nodes: usize,
    pub max_contraction_arity: usize,
    pub max_promotion_width: usize,
    /// Consecutive backward `Dg` steps allowed on one branch.
    pub max_digging_streak: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_depth: 10,
            max_nodes: 100_000,
            max_contraction_arity: 3,
            max_promotion_width: 8,
            max_digging_streak: 2,
        }
    }
}

impl SearchBudget {
    pub fn new(max_depth: usize, max_nodes: usize) -> Self {
        SearchBudget {
            max_depth,
            max_nodes,
            ..SearchBudget::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    Found(Proof),
    /// The node budget ran out first.
    Exhausted,
    /// Every proof of height at most `max_depth` was ruled out.
    NotProvableWithinBudget,
}

impl SearchResult {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchResult::Found(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchResult::Found(_) => "found",
            SearchResult::Exhausted => "exhausted",
            SearchResult::NotProvableWithinBudget => "not-provable-within-budget",
        }
    }
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub nodes: usize,
}

struct OutOfNodes;

type Step = Result<Option<Proof>, OutOfNodes>;

struct Searcher<'a> {
    inst: &'a Instance,
    budget: &'a SearchBudget,
    sigs: Vec<Signature>,
    nodes: usize,
    /// Largest remaining depth at which a sequent is known to fail.
    failed: HashMap<(Vec<Formula>, usize), usize>,
}

/// Searches for a cut-free proof of `goal`. Proofs are tried in a fixed
/// rule order, so the outcome depends only on the inputs.
pub fn search_cutfree(inst: &Instance, goal: &Sequent, budget: &SearchBudget) -> SearchOutcome {
    let mut sigs: Vec<Signature> = inst.signatures().to_vec();
    for e in goal.signatures() {
        if inst.domain().contains(&e) && !sigs.contains(&e) {
            sigs.push(e);
        }
    }
    let mut s = Searcher {
        inst,
        budget,
        sigs,
        nodes: 0,
        failed: HashMap::new(),
    };
    let result = crate::transform::with_stack(|| s.run(goal));
    SearchOutcome {
        result,
        nodes: s.nodes,
    }
}

impl Searcher<'_> {
    fn run(&mut self, goal: &Sequent) -> SearchResult {
        if goal
            .signatures()
            .iter()
            .any(|e| self.inst.check_signature(e).is_err())
        {
            return SearchResult::NotProvableWithinBudget;
        }
        for depth in 1..=self.budget.max_depth {
            match self.prove(goal.0.clone(), depth, 0) {
                Err(OutOfNodes) => return SearchResult::Exhausted,
                Ok(Some(p)) => {
                    return SearchResult::Found(
                        exchange_to(p, goal).expect("search keeps formulas"),
                    )
                }
                Ok(None) => {}
            }
        }
        SearchResult::NotProvableWithinBudget
    }

    /// A proof of `seq` with conclusion exactly `seq`.
    fn prove(&mut self, seq: Vec<Formula>, left: usize, streak: usize) -> Step {
        if left == 0 {
            return Ok(None);
        }
        let mut sorted = seq.clone();
        sorted.sort();
        let key = (sorted, streak);
        if self.failed.get(&key).is_some_and(|&d| d >= left) {
            return Ok(None);
        }
        if self.nodes >= self.budget.max_nodes {
            return Err(OutOfNodes);
        }
        self.nodes += 1;
        let (sorted, _) = &key;
        let found = self.expand(sorted, left, streak)?;
        match found {
            Some(p) => Ok(Some(
                exchange_to(p, &Sequent(seq)).expect("search keeps formulas"),
            )),
            None => {
                let d = self.failed.entry(key).or_insert(0);
                *d = (*d).max(left);
                Ok(None)
            }
        }
    }

    fn build(&self, rule: Rule, prems: Vec<Proof>) -> Proof {
        Proof::build(rule, prems).expect("search builds well-formed nodes")
    }

    fn expand(&mut self, seq: &[Formula], left: usize, streak: usize) -> Step {
        let n = seq.len();
        let rest = |k: usize| -> Vec<Formula> {
            seq.iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, f)| f.clone())
                .collect()
        };
        let front = |a: &Formula, k: usize| -> Vec<Formula> {
            let mut v = vec![a.clone()];
            v.extend(rest(k));
            v
        };

        if let Some(k) = seq.iter().position(|f| *f == Formula::Top) {
            return Ok(Some(self.build(Rule::Top { context: rest(k) }, vec![])));
        }
        if n == 2 && seq[0].dual() == seq[1] {
            return Ok(Some(Proof::ax(seq[0].clone())));
        }
        if n == 1 && seq[0] == Formula::One {
            return Ok(Some(self.build(Rule::One, vec![])));
        }

        // Invertible connectives: the first one found is the only choice.
        for (k, f) in seq.iter().enumerate() {
            match f {
                Formula::Bot => {
                    let Some(p) = self.prove(rest(k), left - 1, 0)? else {
                        return Ok(None);
                    };
                    return Ok(Some(self.build(Rule::Bot, vec![p])));
                }
                Formula::Par(a, b) => {
                    let mut prem = vec![(**a).clone(), (**b).clone()];
                    prem.extend(rest(k));
                    let Some(p) = self.prove(prem, left - 1, 0)? else {
                        return Ok(None);
                    };
                    return Ok(Some(self.build(Rule::Parr { i: 0, j: 1 }, vec![p])));
                }
                Formula::With(a, b) => {
                    let Some(p) = self.prove(front(a, k), left - 1, 0)? else {
                        return Ok(None);
                    };
                    let Some(q) = self.prove(front(b, k), left - 1, 0)? else {
                        return Ok(None);
                    };
                    return Ok(Some(
                        self.build(Rule::With { left: 0, right: 0 }, vec![p, q]),
                    ));
                }
                _ => {}
            }
        }
        if left == 1 {
            return Ok(None);
        }

        for k in 0..n {
            if k > 0 && seq[k] == seq[k - 1] {
                continue;
            }
            let found = match &seq[k] {
                Formula::Tensor(a, b) => self.tensor(a, b, rest(k), left)?,
                Formula::Plus(a, b) => {
                    let r = self.prove(front(a, k), left - 1, 0)?.map(|p| {
                        self.build(
                            Rule::Plus1 {
                                i: 0,
                                other: (**b).clone(),
                            },
                            vec![p],
                        )
                    });
                    match r {
                        Some(p) => Some(p),
                        None => self.prove(front(b, k), left - 1, 0)?.map(|p| {
                            self.build(
                                Rule::Plus2 {
                                    i: 0,
                                    other: (**a).clone(),
                                },
                                vec![p],
                            )
                        }),
                    }
                }
                Formula::Bang(e, a) => self.promote(e, a, rest(k), left)?,
                Formula::Quest(e, a) => self.why_not(e, a, rest(k), left, streak)?,
                _ => None,
            };
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn tensor(&mut self, a: &Formula, b: &Formula, ctx: Vec<Formula>, left: usize) -> Step {
        let m = ctx.len();
        if m >= usize::BITS as usize - 1 {
            return Ok(None);
        }
        for mask in 0..(1usize << m) {
            let (mut l, mut r) = (vec![a.clone()], vec![b.clone()]);
            for (j, f) in ctx.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    r.push(f.clone());
                } else {
                    l.push(f.clone());
                }
            }
            let Some(p) = self.prove(l, left - 1, 0)? else {
                continue;
            };
            let Some(q) = self.prove(r, left - 1, 0)? else {
                continue;
            };
            return Ok(Some(
                self.build(Rule::Tensor { left: 0, right: 0 }, vec![p, q]),
            ));
        }
        Ok(None)
    }

    fn promote(&mut self, e: &Signature, a: &Formula, ctx: Vec<Formula>, left: usize) -> Step {
        if ctx.len() > self.budget.max_promotion_width {
            return Ok(None);
        }
        let mut prem = vec![a.clone()];
        for f in &ctx {
            match f.as_quest() {
                Some((eps, body)) if eps == e => prem.push(body.clone()),
                _ => return Ok(None),
            }
        }
        if !self.inst.p(ctx.len(), e).unwrap_or(false) {
            return Ok(None);
        }
        Ok(self
            .prove(prem, left - 1, 0)?
            .map(|p| self.build(Rule::Prom { e: e.clone(), i: 0 }, vec![p])))
    }

    fn why_not(
        &mut self,
        e: &Signature,
        a: &Formula,
        ctx: Vec<Formula>,
        left: usize,
        streak: usize,
    ) -> Step {
        let with_front = |fs: Vec<Formula>| -> Vec<Formula> {
            let mut v = fs;
            v.extend(ctx.iter().cloned());
            v
        };
        if self.inst.de(e).unwrap_or(false) {
            if let Some(p) = self.prove(with_front(vec![a.clone()]), left - 1, 0)? {
                return Ok(Some(self.build(Rule::De { e: e.clone(), i: 0 }, vec![p])));
            }
        }
        let sigs = self.sigs.clone();
        for k in 0..=self.budget.max_contraction_arity {
            let mut tuple = vec![0usize; k];
            loop {
                let from: Vec<Signature> = tuple.iter().map(|&t| sigs[t].clone()).collect();
                let trivial = k == 1 && &from[0] == e;
                // Tuples are tried up to reordering only.
                let sorted = tuple.windows(2).all(|w| w[0] <= w[1]);
                if !trivial && sorted && self.inst.co(&from, e).unwrap_or(false) {
                    let copies = from
                        .iter()
                        .map(|f| Formula::quest(f.clone(), a.clone()))
                        .collect();
                    if let Some(p) = self.prove(with_front(copies), left - 1, 0)? {
                        let rule = Rule::Co {
                            from,
                            to: e.clone(),
                            indices: (0..k).collect(),
                            body: a.clone(),
                        };
                        return Ok(Some(self.build(rule, vec![p])));
                    }
                }
                if !next_tuple(&mut tuple, sigs.len()) {
                    break;
                }
            }
        }
        if streak < self.budget.max_digging_streak {
            for e1 in &sigs {
                for e2 in &sigs {
                    if !self.inst.dg(e1, e2, e).unwrap_or(false) {
                        continue;
                    }
                    let f = Formula::quest(e1.clone(), Formula::quest(e2.clone(), a.clone()));
                    if let Some(p) = self.prove(with_front(vec![f]), left - 1, streak + 1)? {
                        let rule = Rule::Dg {
                            e1: e1.clone(),
                            e2: e2.clone(),
                            e: e.clone(),
                            i: 0,
                        };
                        return Ok(Some(self.build(rule, vec![p])));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Advances `t` to the next tuple over `0..base`, in lexicographic order.
fn next_tuple(t: &mut [usize], base: usize) -> bool {
    for x in t.iter_mut().rev() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use crate::parse::parse_sequent;
    use crate::presets::{make_preset, PresetId};
    use crate::proof::{check_proof, CheckOptions};

    fn found(inst: &Instance, goal: &str, budget: &SearchBudget) -> Proof {
        let g = parse_sequent(goal).unwrap();
        match search_cutfree(inst, &g, budget).result {
            SearchResult::Found(p) => {
                check_proof(inst, &p, &CheckOptions::strict()).unwrap();
                assert!(p.is_cut_free());
                assert_eq!(p.conclusion, g);
                p
            }
            r => panic!("{goal}: {r}"),
        }
    }

    #[test]
    fn one_at_depth_one() {
        let inst = make_preset(&PresetId::Ell).unwrap();
        let p = found(&inst, "|- 1", &SearchBudget::new(1, 10));
        assert_eq!(p.rule, Rule::One);
    }

    #[test]
    fn parr_then_axiom() {
        let inst = make_preset(&PresetId::Ell).unwrap();
        let p = found(&inst, "|- X^ | X", &SearchBudget::default());
        assert!(matches!(p.rule, Rule::Parr { .. }));
        assert!(p.premises[0].any(&|r| matches!(r, Rule::Ax(_))));
        assert!(p.depth() <= 3);
    }

    #[test]
    fn exponentials() {
        let inst = make_preset(&PresetId::LlFull).unwrap();
        found(&inst, "|- ?dot X^, !dot (X * X)", &SearchBudget::default());
        found(&inst, "|- ?dot X^, !dot !dot X", &SearchBudget::default());
        let sll = make_preset(&PresetId::Sll).unwrap();
        found(&sll, "|- ?dot X^, X * X", &SearchBudget::default());
    }

    #[test]
    fn unprovable_atom() {
        let inst = make_preset(&PresetId::LlFull).unwrap();
        let g = parse_sequent("|- X, Y").unwrap();
        let out = search_cutfree(&inst, &g, &SearchBudget::new(6, 10_000));
        assert_eq!(out.result, SearchResult::NotProvableWithinBudget);
    }

    #[test]
    fn node_budget_is_respected() {
        let inst = make_preset(&PresetId::LlFull).unwrap();
        let g = parse_sequent("|- ?dot X^, ?dot Y^, !dot (X * Y * X * Y)").unwrap();
        let out = search_cutfree(&inst, &g, &SearchBudget::new(12, 50));
        assert!(out.nodes <= 50);
    }

    #[test]
    fn broken_instance_goal() {
        let inst =
            parse_instance("signatures: e e'\nco 1: e' -> e\np: e = >=2\np: e' = {1}\n").unwrap();
        let g = parse_sequent("|- !e' X^, ?e (X * X), ?e X^").unwrap();
        let out = search_cutfree(&inst, &g, &SearchBudget::new(12, 100_000));
        assert_eq!(out.result, SearchResult::NotProvableWithinBudget);
    }
}
