//! Parameter bundles `(E, de, co, dg, p)` and their axiom tables.

mod axioms;
mod file;
mod witness;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::syntax::Signature;

pub use axioms::{
    check_cut_axioms, check_expansion_axiom, check_girardization_axioms, check_subsumption_axioms,
    is_functional, AxiomReport, AxiomTable, Bounds, Counterexample, FunctionalReport,
};
pub use file::{parse_instance, InstanceFileError};
pub use witness::{find_witness, Obligation, WitnessError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("unknown signature `{0}`")]
    UnknownSignature(Signature),
}

/// A single predicate query, used both for evaluation and for error reporting.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParamQuery {
    De(Signature),
    Co(Vec<Signature>, Signature),
    Dg(Signature, Signature, Signature),
    P(usize, Signature),
}

impl fmt::Display for ParamQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamQuery::De(e) => write!(f, "de({e})"),
            ParamQuery::Co(from, e) => {
                write!(f, "co{}(", from.len())?;
                for s in from {
                    write!(f, "{s},")?;
                }
                write!(f, "{e})")
            }
            ParamQuery::Dg(a, b, c) => write!(f, "dg({a},{b},{c})"),
            ParamQuery::P(n, e) => write!(f, "p({n},{e})"),
        }
    }
}

/// The signature set of an instance.
#[derive(Clone)]
pub enum Domain {
    /// A finite set, in declaration order.
    Finite(Vec<Signature>),
    /// An infinite set given by a membership test, with a finite sample used
    /// for bounded checking and enumeration.
    Generated {
        sample: Vec<Signature>,
        member: Arc<dyn Fn(&Signature) -> bool + Send + Sync>,
    },
}

impl Domain {
    pub fn contains(&self, e: &Signature) -> bool {
        match self {
            Domain::Finite(v) => v.contains(e),
            Domain::Generated { member, .. } => member(e),
        }
    }

    /// The enumerable part of the domain.
    pub fn enumerate(&self) -> &[Signature] {
        match self {
            Domain::Finite(v) => v,
            Domain::Generated { sample, .. } => sample,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Domain::Finite(_))
    }
}

type DePred = Arc<dyn Fn(&Signature) -> bool + Send + Sync>;
type CoPred = Arc<dyn Fn(&[Signature], &Signature) -> bool + Send + Sync>;
type DgPred = Arc<dyn Fn(&Signature, &Signature, &Signature) -> bool + Send + Sync>;
type PPred = Arc<dyn Fn(usize, &Signature) -> bool + Send + Sync>;
pub type WitnessFn = Arc<dyn Fn(&Obligation) -> Option<Vec<Signature>> + Send + Sync>;

/// Which axiom tables are known to hold by a hand proof, independently of
/// bounded checking.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Proved {
    pub cut: bool,
    pub expansion: bool,
    pub girardization: bool,
    pub subsumption: bool,
}

/// One superLL system.
#[derive(Clone)]
pub struct Instance {
    name: String,
    domain: Domain,
    de: DePred,
    co: CoPred,
    dg: DgPred,
    p: PPred,
    witness: Option<WitnessFn>,
    proved: Proved,
    cache: Arc<ReportCache>,
}

#[derive(Default)]
struct ReportCache {
    cut: OnceLock<AxiomReport>,
    girard: OnceLock<AxiomReport>,
    subsumption: OnceLock<AxiomReport>,
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("name", &self.name)
            .field("signatures", &self.domain.enumerate())
            .field("proved", &self.proved)
            .finish()
    }
}

impl Instance {
    pub fn builder(name: impl Into<String>, domain: Domain) -> InstanceBuilder {
        InstanceBuilder {
            name: name.into(),
            domain,
            de: Arc::new(|_| false),
            co: Arc::new(|_, _| false),
            dg: Arc::new(|_, _, _| false),
            p: Arc::new(|_, _| false),
            witness: None,
            proved: Proved::default(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// The enumerable signatures in canonical order.
    pub fn signatures(&self) -> &[Signature] {
        self.domain.enumerate()
    }

    pub fn proved(&self) -> Proved {
        self.proved
    }

    pub fn witness_fn(&self) -> Option<&WitnessFn> {
        self.witness.as_ref()
    }

    pub fn check_signature(&self, e: &Signature) -> Result<(), InstanceError> {
        if self.domain.contains(e) {
            Ok(())
        } else {
            Err(InstanceError::UnknownSignature(e.clone()))
        }
    }

    pub fn de(&self, e: &Signature) -> Result<bool, InstanceError> {
        self.check_signature(e)?;
        Ok((self.de)(e))
    }

    pub fn co(&self, from: &[Signature], e: &Signature) -> Result<bool, InstanceError> {
        for s in from {
            self.check_signature(s)?;
        }
        self.check_signature(e)?;
        Ok((self.co)(from, e))
    }

    /// `co1(a, b)`, written `a <= b` in the subsumption axioms.
    pub fn leq(&self, a: &Signature, b: &Signature) -> Result<bool, InstanceError> {
        self.co(std::slice::from_ref(a), b)
    }

    pub fn dg(&self, a: &Signature, b: &Signature, e: &Signature) -> Result<bool, InstanceError> {
        self.check_signature(a)?;
        self.check_signature(b)?;
        self.check_signature(e)?;
        Ok((self.dg)(a, b, e))
    }

    pub fn p(&self, n: usize, e: &Signature) -> Result<bool, InstanceError> {
        self.check_signature(e)?;
        Ok((self.p)(n, e))
    }

    pub(crate) fn cached_cut_report(&self, bounds: Bounds) -> &AxiomReport {
        self.cache
            .cut
            .get_or_init(|| check_cut_axioms(self, bounds))
    }

    pub(crate) fn cached_girard_report(&self, bounds: Bounds) -> &AxiomReport {
        self.cache
            .girard
            .get_or_init(|| check_girardization_axioms(self, bounds))
    }

    pub(crate) fn cached_subsumption_report(&self, bounds: Bounds) -> &AxiomReport {
        self.cache
            .subsumption
            .get_or_init(|| check_subsumption_axioms(self, bounds))
    }
}

pub fn eval_param(inst: &Instance, query: &ParamQuery) -> Result<bool, InstanceError> {
    match query {
        ParamQuery::De(e) => inst.de(e),
        ParamQuery::Co(from, e) => inst.co(from, e),
        ParamQuery::Dg(a, b, e) => inst.dg(a, b, e),
        ParamQuery::P(n, e) => inst.p(*n, e),
    }
}

pub struct InstanceBuilder {
    name: String,
    domain: Domain,
    de: DePred,
    co: CoPred,
    dg: DgPred,
    p: PPred,
    witness: Option<WitnessFn>,
    proved: Proved,
}

impl InstanceBuilder {
    pub fn de(mut self, f: impl Fn(&Signature) -> bool + Send + Sync + 'static) -> Self {
        self.de = Arc::new(f);
        self
    }

    pub fn co(
        mut self,
        f: impl Fn(&[Signature], &Signature) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.co = Arc::new(f);
        self
    }

    pub fn dg(
        mut self,
        f: impl Fn(&Signature, &Signature, &Signature) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.dg = Arc::new(f);
        self
    }

    pub fn p(mut self, f: impl Fn(usize, &Signature) -> bool + Send + Sync + 'static) -> Self {
        self.p = Arc::new(f);
        self
    }

    pub fn witness(
        mut self,
        f: impl Fn(&Obligation) -> Option<Vec<Signature>> + Send + Sync + 'static,
    ) -> Self {
        self.witness = Some(Arc::new(f));
        self
    }

    pub fn proved(mut self, proved: Proved) -> Self {
        self.proved = proved;
        self
    }

    pub fn build(self) -> Instance {
        Instance {
            name: self.name,
            domain: self.domain,
            de: self.de,
            co: self.co,
            dg: self.dg,
            p: self.p,
            witness: self.witness,
            proved: self.proved,
            cache: Arc::default(),
        }
    }
}

/// The set `{n | p_n(e)}` for one signature, as written in instance files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PSet {
    All,
    Empty,
    Finite(BTreeSet<usize>),
    AtLeast(usize),
}

impl PSet {
    pub fn contains(&self, n: usize) -> bool {
        match self {
            PSet::All => true,
            PSet::Empty => false,
            PSet::Finite(s) => s.contains(&n),
            PSet::AtLeast(m) => n >= *m,
        }
    }
}

/// Explicit relation tables over a finite signature set.
#[derive(Debug, Clone, Default)]
pub struct Tables {
    pub signatures: Vec<Signature>,
    pub de: HashSet<Signature>,
    pub co: HashSet<(Vec<Signature>, Signature)>,
    pub dg: HashSet<(Signature, Signature, Signature)>,
    pub p: HashMap<Signature, PSet>,
}

impl Tables {
    pub fn into_instance(self, name: impl Into<String>) -> Instance {
        let Tables {
            signatures,
            de,
            co,
            dg,
            p,
        } = self;
        Instance::builder(name, Domain::Finite(signatures))
            .de(move |e| de.contains(e))
            .co(move |from, e| co.contains(&(from.to_vec(), e.clone())))
            .dg(move |a, b, e| dg.contains(&(a.clone(), b.clone(), e.clone())))
            .p(move |n, e| p.get(e).is_some_and(|s| s.contains(n)))
            .build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        Signature::new(s)
    }

    fn broken() -> Instance {
        let mut t = Tables {
            signatures: vec![sig("e"), sig("e'")],
            ..Tables::default()
        };
        t.co.insert((vec![sig("e'")], sig("e")));
        t.p.insert(sig("e"), PSet::AtLeast(2));
        t.p.insert(sig("e'"), PSet::Finite([1].into()));
        t.into_instance("broken")
    }

    #[test]
    fn table_lookup() {
        let inst = broken();
        assert!(inst.co(&[sig("e'")], &sig("e")).unwrap());
        assert!(!inst.co(&[sig("e")], &sig("e'")).unwrap());
        assert!(inst.p(2, &sig("e")).unwrap());
        assert!(!inst.p(2, &sig("e'")).unwrap());
        assert!(inst.p(1, &sig("e'")).unwrap());
    }

    #[test]
    fn unknown_signature_is_named() {
        let inst = broken();
        let err = eval_param(&inst, &ParamQuery::De(sig("z"))).unwrap_err();
        assert_eq!(err.to_string(), "unknown signature `z`");
    }

    #[test]
    fn query_display() {
        assert_eq!(ParamQuery::P(3, sig("e")).to_string(), "p(3,e)");
        assert_eq!(
            ParamQuery::Co(vec![sig("a"), sig("b")], sig("c")).to_string(),
            "co2(a,b,c)"
        );
    }
}
