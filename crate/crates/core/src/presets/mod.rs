//! Built-in instances for known linear logic systems, and translations
//! between their native rules and superLL.

mod native;
mod translate;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::instance::{Domain, Instance, Obligation, Proved};
use crate::proof::{bring_to_front, locate, InferError, Proof, Rule};
use crate::syntax::{Formula, Signature};

pub use native::{
    check_native, native_conclude, parse_native, print_native, NativeCheckFailure, NativeProof,
    NativeRule, NativeSystem,
};
pub use translate::{decode_native, encode_native, erase_star, native_sequent, TranslateError};

pub const DOT: &str = "dot";
pub const STAR: &str = "star";

pub fn dot() -> Signature {
    Signature::new(DOT)
}

pub fn star() -> Signature {
    Signature::new(STAR)
}

/// Parameters of a subexponential system: a preorder given by generating
/// pairs (its reflexive-transitive closure is taken) and the signatures
/// allowing weakening and contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SellParams {
    pub signatures: Vec<Signature>,
    pub order: Vec<(Signature, Signature)>,
    pub weak: Vec<Signature>,
    pub contr: Vec<Signature>,
}

impl Default for SellParams {
    /// The chain `a <= b <= c` with weakening on `b, c` and contraction on `c`.
    fn default() -> Self {
        let s = |x: &str| Signature::new(x);
        SellParams {
            signatures: vec![s("a"), s("b"), s("c")],
            order: vec![(s("a"), s("b")), (s("b"), s("c"))],
            weak: vec![s("b"), s("c")],
            contr: vec![s("c")],
        }
    }
}

impl SellParams {
    /// The reflexive-transitive closure of `order`.
    pub fn closure(&self) -> BTreeSet<(Signature, Signature)> {
        let mut rel: BTreeSet<(Signature, Signature)> = self.order.iter().cloned().collect();
        for e in &self.signatures {
            rel.insert((e.clone(), e.clone()));
        }
        loop {
            let mut added = Vec::new();
            for (a, b) in &rel {
                for (c, d) in &rel {
                    if b == c && !rel.contains(&(a.clone(), d.clone())) {
                        added.push((a.clone(), d.clone()));
                    }
                }
            }
            if added.is_empty() {
                return rel;
            }
            rel.extend(added);
        }
    }
}

/// An ordered semiring on naturals, with numerals as signatures.
#[derive(Clone)]
pub struct Semiring {
    pub name: String,
    pub add: Arc<dyn Fn(u64, u64) -> u64 + Send + Sync>,
    pub mul: Arc<dyn Fn(u64, u64) -> u64 + Send + Sync>,
    pub zero: u64,
    pub one: u64,
    pub leq: Arc<dyn Fn(u64, u64) -> bool + Send + Sync>,
}

impl fmt::Debug for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semiring({})", self.name)
    }
}

impl PartialEq for Semiring {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Semiring {}

impl Semiring {
    /// `(N, +, 0, *, 1, <=)`.
    pub fn nat_plus() -> Self {
        Semiring {
            name: "nat-plus".into(),
            add: Arc::new(|a, b| a.saturating_add(b)),
            mul: Arc::new(|a, b| a.saturating_mul(b)),
            zero: 0,
            one: 1,
            leq: Arc::new(|a, b| a <= b),
        }
    }

    /// `(N, max, 0, *, 1, <=)`.
    pub fn nat_max() -> Self {
        Semiring {
            name: "nat-max".into(),
            add: Arc::new(|a, b| a.max(b)),
            mul: Arc::new(|a, b| a.saturating_mul(b)),
            zero: 0,
            one: 1,
            leq: Arc::new(|a, b| a <= b),
        }
    }

    /// The first violated law on `sample`, if any.
    pub fn probe(&self, sample: &[u64]) -> Option<String> {
        let (add, mul, leq) = (&self.add, &self.mul, &self.leq);
        for &a in sample {
            if add(a, self.zero) != a || add(self.zero, a) != a {
                return Some(format!("0 is not neutral for + at {a}"));
            }
            if mul(a, self.one) != a || mul(self.one, a) != a {
                return Some(format!("1 is not neutral for * at {a}"));
            }
            if mul(a, self.zero) != self.zero || mul(self.zero, a) != self.zero {
                return Some(format!("0 does not annihilate {a}"));
            }
            if !leq(a, a) {
                return Some(format!("order is not reflexive at {a}"));
            }
            for &b in sample {
                if add(a, b) != add(b, a) {
                    return Some(format!("+ is not commutative at ({a},{b})"));
                }
                for &c in sample {
                    if add(add(a, b), c) != add(a, add(b, c)) {
                        return Some(format!("+ is not associative at ({a},{b},{c})"));
                    }
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Some(format!("* is not associative at ({a},{b},{c})"));
                    }
                    if mul(a, add(b, c)) != add(mul(a, b), mul(a, c))
                        || mul(add(a, b), c) != add(mul(a, c), mul(b, c))
                    {
                        return Some(format!("* does not distribute over + at ({a},{b},{c})"));
                    }
                    if leq(a, b) && leq(b, c) && !leq(a, c) {
                        return Some(format!("order is not transitive at ({a},{b},{c})"));
                    }
                    if leq(a, b)
                        && !(leq(add(a, c), add(b, c))
                            && leq(mul(a, c), mul(b, c))
                            && leq(mul(c, a), mul(c, b)))
                    {
                        return Some(format!("order is not compatible at ({a},{b},{c})"));
                    }
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsllParams {
    pub semiring: Semiring,
    pub sample: Vec<u64>,
}

impl BsllParams {
    pub fn with(semiring: Semiring) -> Self {
        BsllParams {
            semiring,
            sample: (0..=4).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresetId {
    LlFunctorial,
    Ell,
    Sll,
    LlFull,
    Lll,
    Shift,
    Sell(SellParams),
    Bsll(BsllParams),
}

impl PresetId {
    pub const NAMES: [&'static str; 9] = [
        "ll-functorial",
        "ell",
        "sll",
        "ll-full",
        "lll",
        "shift",
        "sell",
        "bsll",
        "bsll-max",
    ];

    pub fn from_name(name: &str) -> Option<PresetId> {
        Some(match name {
            "ll-functorial" => PresetId::LlFunctorial,
            "ell" => PresetId::Ell,
            "sll" => PresetId::Sll,
            "ll-full" => PresetId::LlFull,
            "lll" => PresetId::Lll,
            "shift" => PresetId::Shift,
            "sell" => PresetId::Sell(SellParams::default()),
            "bsll" => PresetId::Bsll(BsllParams::with(Semiring::nat_plus())),
            "bsll-max" => PresetId::Bsll(BsllParams::with(Semiring::nat_max())),
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            PresetId::LlFunctorial => "ll-functorial",
            PresetId::Ell => "ell",
            PresetId::Sll => "sll",
            PresetId::LlFull => "ll-full",
            PresetId::Lll => "lll",
            PresetId::Shift => "shift",
            PresetId::Sell(_) => "sell",
            PresetId::Bsll(p) if p.semiring.name == "nat-max" => "bsll-max",
            PresetId::Bsll(_) => "bsll",
        }
    }

    /// The eight systems with default parameters.
    pub fn all() -> Vec<PresetId> {
        [
            "ll-functorial",
            "ell",
            "sll",
            "ll-full",
            "lll",
            "shift",
            "sell",
            "bsll",
        ]
        .iter()
        .map(|n| PresetId::from_name(n).unwrap())
        .collect()
    }

    pub fn native_system(&self) -> NativeSystem {
        match self {
            PresetId::LlFunctorial => NativeSystem::LlFunctorial,
            PresetId::Ell => NativeSystem::Ell,
            PresetId::Sll => NativeSystem::Sll,
            PresetId::LlFull => NativeSystem::Ll,
            PresetId::Lll => NativeSystem::Lll,
            PresetId::Shift => NativeSystem::Shift,
            PresetId::Sell(p) => NativeSystem::Sell(p.clone()),
            PresetId::Bsll(p) => NativeSystem::Bsll(p.semiring.clone()),
        }
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("{0} is not upward closed")]
    NotUpwardClosed(&'static str),
    #[error("signature `{0}` is not declared")]
    Undeclared(Signature),
    #[error("semiring law fails: {0}")]
    SemiringLaw(String),
    #[error("empty sample")]
    EmptySample,
}

fn all_same(v: &[Signature], e: &Signature) -> bool {
    v.iter().all(|x| x == e)
}

fn finite(name: &str, sigs: &[&str]) -> (String, Domain) {
    (
        name.to_string(),
        Domain::Finite(sigs.iter().map(Signature::new).collect()),
    )
}

/// Builds the instance of a preset, validating its parameters.
pub fn make_preset(id: &PresetId) -> Result<Instance, PresetError> {
    let cut_exp = Proved {
        cut: true,
        expansion: true,
        ..Proved::default()
    };
    let with_gir = Proved {
        girardization: true,
        ..cut_exp
    };
    Ok(match id {
        PresetId::LlFunctorial => {
            let (n, d) = finite("ll-functorial", &[DOT]);
            Instance::builder(n, d)
                .de(|_| true)
                .co(|from, _| from.is_empty() || from.len() == 2)
                .dg(|_, _, _| true)
                .p(|_, _| true)
                .proved(cut_exp)
                .build()
        }
        PresetId::Ell => {
            let (n, d) = finite("ell", &[DOT]);
            Instance::builder(n, d)
                .co(|from, _| from.is_empty() || from.len() == 2)
                .p(|_, _| true)
                .proved(cut_exp)
                .build()
        }
        PresetId::Sll => {
            let (n, d) = finite("sll", &[DOT, STAR]);
            Instance::builder(n, d)
                .de(|e| e.name() == STAR)
                .co(|from, e| e.name() == DOT && all_same(from, &star()))
                .p(|_, _| true)
                .proved(cut_exp)
                .build()
        }
        PresetId::LlFull => {
            let (n, d) = finite("ll-full", &[DOT]);
            Instance::builder(n, d)
                .de(|_| true)
                .co(|_, _| true)
                .dg(|_, _, _| true)
                .p(|_, _| true)
                .proved(with_gir)
                .build()
        }
        PresetId::Lll => {
            let (n, d) = finite("lll", &[DOT, STAR]);
            Instance::builder(n, d)
                .co(|from, e| match from.len() {
                    0 | 2 => e.name() == DOT && all_same(from, e),
                    1 => from[0] == *e || (from[0].name() == STAR && e.name() == DOT),
                    _ => false,
                })
                .p(|n, e| e.name() == STAR || n == 1)
                .proved(Proved {
                    subsumption: true,
                    ..cut_exp
                })
                .build()
        }
        PresetId::Shift => {
            let (n, d) = finite("shift", &[DOT, STAR]);
            Instance::builder(n, d)
                .de(|_| true)
                .co(|from, e| match from.len() {
                    0 | 2 => e.name() == DOT && all_same(from, e),
                    1 => from[0] == *e,
                    _ => false,
                })
                .dg(|a, b, e| a == b && b == e)
                .p(|_, _| true)
                .proved(with_gir)
                .build()
        }
        PresetId::Sell(params) => make_sell(params, with_gir)?,
        PresetId::Bsll(params) => make_bsll(params, with_gir)?,
    })
}

fn make_sell(params: &SellParams, proved: Proved) -> Result<Instance, PresetError> {
    let declared = &params.signatures;
    for e in params
        .order
        .iter()
        .flat_map(|(a, b)| [a, b])
        .chain(&params.weak)
        .chain(&params.contr)
    {
        if !declared.contains(e) {
            return Err(PresetError::Undeclared(e.clone()));
        }
    }
    let leq = Arc::new(params.closure());
    let upward = |set: &[Signature]| leq.iter().all(|(a, b)| !set.contains(a) || set.contains(b));
    if !upward(&params.weak) {
        return Err(PresetError::NotUpwardClosed("weakening set"));
    }
    if !upward(&params.contr) {
        return Err(PresetError::NotUpwardClosed("contraction set"));
    }
    let weak = params.weak.clone();
    let contr = params.contr.clone();
    let leq_dg = leq.clone();
    Ok(Instance::builder("sell", Domain::Finite(declared.clone()))
        .de(|_| true)
        .co(move |from, e| match from.len() {
            0 => weak.contains(e),
            1 => from[0] == *e,
            2 => all_same(from, e) && contr.contains(e),
            _ => false,
        })
        .dg(move |a, b, e| b == e && leq_dg.contains(&(a.clone(), b.clone())))
        .p(|_, _| true)
        .proved(proved)
        .build())
}

/// Numerals in canonical decimal form.
pub(crate) fn numeral(e: &Signature) -> Option<u64> {
    let s = e.name();
    if s.is_empty() || (s.len() > 1 && s.starts_with('0')) || !s.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    s.parse().ok()
}

pub fn num_sig(n: u64) -> Signature {
    Signature::new(n.to_string())
}

fn make_bsll(params: &BsllParams, proved: Proved) -> Result<Instance, PresetError> {
    if params.sample.is_empty() {
        return Err(PresetError::EmptySample);
    }
    let sr = params.semiring.clone();
    if let Some(law) = sr.probe(&params.sample) {
        return Err(PresetError::SemiringLaw(law));
    }
    let sample: Vec<Signature> = params.sample.iter().map(|&n| num_sig(n)).collect();
    let name = if sr.name == "nat-max" {
        "bsll-max"
    } else {
        "bsll"
    };
    let domain = Domain::Generated {
        sample,
        member: Arc::new(|e| numeral(e).is_some()),
    };
    let v = |e: &Signature| numeral(e).expect("validated numeral");
    let (s_de, s_co, s_dg, s_w) = (sr.clone(), sr.clone(), sr.clone(), sr);
    Ok(Instance::builder(name, domain)
        .de(move |e| v(e) == s_de.one)
        .co(move |from, e| match from.len() {
            0 => v(e) == s_co.zero,
            1 => (s_co.leq)(v(&from[0]), v(e)),
            2 => (s_co.add)(v(&from[0]), v(&from[1])) == v(e),
            _ => false,
        })
        .dg(move |a, b, e| (s_dg.mul)(v(a), v(b)) == v(e))
        .p(|_, _| true)
        .witness(move |ob| {
            let mul = |a: &Signature, b: &Signature| num_sig((s_w.mul)(v(a), v(b)));
            match ob {
                Obligation::Gir3 { eps, e2, .. } => Some(eps.iter().map(|x| mul(x, e2)).collect()),
                Obligation::Gir4 { e2, e3, .. } => Some(vec![mul(e2, e3)]),
                Obligation::Gir5 { .. } => Some(vec![num_sig(s_w.one)]),
                _ => None,
            }
        })
        .proved(proved)
        .build())
}

/// The `k`-ary contraction on `?e body` at `indices`, derived from nullary
/// and binary contractions. The result has `?e body` first, then the rest of
/// `p`'s conclusion in order.
pub fn derive_contraction(
    p: Proof,
    e: &Signature,
    body: &Formula,
    indices: &[usize],
) -> Result<Proof, InferError> {
    let target = Formula::quest(e.clone(), body.clone());
    match indices.len() {
        0 => Proof::build(
            Rule::Co {
                from: vec![],
                to: e.clone(),
                indices: vec![],
                body: body.clone(),
            },
            vec![p],
        ),
        1 => {
            let mut v = vec![target];
            v.extend(p.conclusion.without(indices));
            bring_to_front(p, indices[0]).inspect(|q| {
                debug_assert_eq!(q.conclusion.0, v);
            })
        }
        k => {
            let rest = p.conclusion.without(indices);
            let mut cur = Proof::build(
                Rule::Co {
                    from: vec![e.clone(), e.clone()],
                    to: e.clone(),
                    indices: vec![indices[0], indices[1]],
                    body: body.clone(),
                },
                vec![p],
            )?;
            for _ in 2..k {
                let second = locate(&cur.conclusion, &target, &[0])
                    .ok_or_else(|| InferError::Shape("missing contraction occurrence".into()))?;
                cur = Proof::build(
                    Rule::Co {
                        from: vec![e.clone(), e.clone()],
                        to: e.clone(),
                        indices: vec![0, second],
                        body: body.clone(),
                    },
                    vec![cur],
                )?;
            }
            let mut v = vec![target];
            v.extend(rest);
            crate::proof::exchange_to(cur, &crate::syntax::Sequent(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{
        check_cut_axioms, check_expansion_axiom, check_girardization_axioms,
        check_subsumption_axioms, eval_param, is_functional, Bounds, ParamQuery,
    };
    use crate::proof::{check_proof, CheckOptions};

    fn preset(name: &str) -> Instance {
        make_preset(&PresetId::from_name(name).unwrap()).unwrap()
    }

    #[test]
    fn table_values() {
        let ell = preset("ell");
        assert!(eval_param(&ell, &ParamQuery::Co(vec![dot(), dot()], dot())).unwrap());
        assert!(!ell.de(&dot()).unwrap());
        assert!(!ell.dg(&dot(), &dot(), &dot()).unwrap());
        let sll = preset("sll");
        assert!(sll.co(&[star(), star(), star()], &dot()).unwrap());
        assert!(sll.de(&star()).unwrap());
        let lll = preset("lll");
        assert!(!lll.leq(&dot(), &star()).unwrap());
        assert!(lll.leq(&star(), &dot()).unwrap());
        let full = preset("ll-full");
        assert!(full.co(&vec![dot(); 5], &dot()).unwrap());
    }

    #[test]
    fn sell_requires_upward_closure() {
        let p = SellParams {
            weak: vec![Signature::new("a")],
            ..SellParams::default()
        };
        assert_eq!(
            make_preset(&PresetId::Sell(p)).unwrap_err(),
            PresetError::NotUpwardClosed("weakening set")
        );
    }

    #[test]
    fn bad_semiring_is_rejected() {
        let mut sr = Semiring::nat_plus();
        sr.name = "broken".into();
        sr.add = Arc::new(|a, b| a.saturating_sub(b));
        let err = make_preset(&PresetId::Bsll(BsllParams::with(sr))).unwrap_err();
        assert!(matches!(err, PresetError::SemiringLaw(_)));
    }

    #[test]
    fn bsll_numerals() {
        let b = preset("bsll");
        assert!(b.dg(&num_sig(2), &num_sig(3), &num_sig(6)).unwrap());
        assert!(b.co(&[num_sig(2), num_sig(3)], &num_sig(5)).unwrap());
        assert!(b.check_signature(&Signature::new("07")).is_err());
        assert!(b.check_signature(&num_sig(123)).is_ok());
        let m = preset("bsll-max");
        assert!(m.co(&[num_sig(2), num_sig(3)], &num_sig(3)).unwrap());
    }

    #[test]
    fn axiom_tables_match_flags() {
        let b = Bounds::default();
        for id in PresetId::all() {
            let inst = make_preset(&id).unwrap();
            assert!(check_cut_axioms(&inst, b).passed(), "{id} cut");
            assert!(check_expansion_axiom(&inst).passed(), "{id} expansion");
            let gir = check_girardization_axioms(&inst, b).passed();
            assert_eq!(gir, inst.proved().girardization, "{id} girardization");
            if inst.proved().subsumption {
                assert!(
                    check_subsumption_axioms(&inst, b).passed(),
                    "{id} subsumption"
                );
            }
        }
    }

    #[test]
    fn functional_presets() {
        let b = Bounds::default();
        for name in ["ll-functorial", "ell", "ll-full"] {
            assert!(is_functional(&preset(name), b).functional, "{name}");
        }
        let bsll = make_preset(&PresetId::Bsll(BsllParams {
            semiring: Semiring::nat_plus(),
            sample: vec![0, 1, 2],
        }))
        .unwrap();
        assert!(is_functional(&bsll, b).functional);
    }

    #[test]
    fn sell_two_chain_digging_is_functional() {
        let s = |x: &str| Signature::new(x);
        let params = SellParams {
            signatures: vec![s("a"), s("b")],
            order: vec![(s("a"), s("b"))],
            weak: vec![s("b")],
            contr: vec![s("b")],
        };
        let inst = make_preset(&PresetId::Sell(params)).unwrap();
        let d = [s("a"), s("b")];
        let leq = |x: &Signature, y: &Signature| x == y || (x.name() == "a" && y.name() == "b");
        // Brute force: every (e1, e2) prefix has at most one last argument.
        let mut oracle = true;
        for e1 in &d {
            for e2 in &d {
                let lasts = d.iter().filter(|e| leq(e1, e2) && *e == e2).count();
                assert_eq!(
                    lasts,
                    d.iter().filter(|e| inst.dg(e1, e2, e).unwrap()).count()
                );
                oracle &= lasts <= 1;
            }
        }
        assert!(oracle);
        let report = is_functional(&inst, Bounds::default());
        assert_eq!(report.relations[1], ("dg".to_string(), oracle));
        // Dereliction holds for both signatures, so the instance as a whole is not.
        assert_eq!(report.relations[0], ("de".to_string(), false));
        assert!(!report.functional);
    }

    #[test]
    fn contraction_chain_checks() {
        let inst = preset("ll-functorial");
        let x = Formula::atom("X");
        let qx = Formula::quest(dot(), x.clone());
        // |- ?X, ?X, ?X, X^, X
        let mut p = Proof::ax(x.dual());
        for _ in 0..3 {
            p = Proof::build(
                Rule::Co {
                    from: vec![],
                    to: dot(),
                    indices: vec![],
                    body: x.clone(),
                },
                vec![p],
            )
            .unwrap();
        }
        for k in 0..=3 {
            let idx: Vec<usize> = (0..k).collect();
            let q = derive_contraction(p.clone(), &dot(), &x, &idx).unwrap();
            assert_eq!(q.conclusion.0[0], qx);
            assert_eq!(q.conclusion.len(), 6 - k);
            check_proof(&inst, &q, &CheckOptions::strict()).unwrap();
        }
    }
}
