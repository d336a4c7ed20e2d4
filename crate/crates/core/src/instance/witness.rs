//! Existential witnesses demanded by the Girardization and subsumption axioms.

use std::fmt;

use thiserror::Error;

use super::{Instance, InstanceError};
use crate::syntax::Signature;

/// An existential query. Field names follow the axiom statements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Obligation {
    /// `co_k(eps, e1) & dg(e1, e2, e)` gives `eps'` with `dg(eps_i, e2, eps'_i)`
    /// and `co_k(eps', e)`.
    Gir3 {
        eps: Vec<Signature>,
        e1: Signature,
        e2: Signature,
        e: Signature,
    },
    /// `dg(e1, e2, e_mid) & dg(e_mid, e3, e)` gives `e''` with
    /// `dg(e2, e3, e'')` and `dg(e1, e'', e)`.
    Gir4 {
        e1: Signature,
        e2: Signature,
        e3: Signature,
        e_mid: Signature,
        e: Signature,
    },
    /// `n > 0 & p_n(e)` gives `e'` with `de(e')` and `dg(e, e', e)`.
    Gir5 { n: usize, e: Signature },
    /// `co_k(eps, e1) & e1 <= e2` gives `eps'` with `eps_i <= eps'_i` and
    /// `co_k(eps', e2)`.
    Sb5 {
        eps: Vec<Signature>,
        e1: Signature,
        e2: Signature,
    },
    /// `dg(eps1, eps2, e1) & e1 <= e2` gives `eps1'` with `eps1 <= eps1'` and
    /// `dg(eps1', eps2, e2)`.
    Sb6 {
        eps1: Signature,
        eps2: Signature,
        e1: Signature,
        e2: Signature,
    },
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obligation::Gir3 { eps, e1, e2, e } => {
                write!(f, "gir3 k={} eps={eps:?} e1={e1} e2={e2} e={e}", eps.len())
            }
            Obligation::Gir4 {
                e1,
                e2,
                e3,
                e_mid,
                e,
            } => write!(f, "gir4 e1={e1} e2={e2} e3={e3} e'={e_mid} e={e}"),
            Obligation::Gir5 { n, e } => write!(f, "gir5 n={n} e={e}"),
            Obligation::Sb5 { eps, e1, e2 } => {
                write!(f, "sb5 k={} eps={eps:?} e1={e1} e2={e2}", eps.len())
            }
            Obligation::Sb6 { eps1, eps2, e1, e2 } => {
                write!(f, "sb6 eps1={eps1} eps2={eps2} e1={e1} e2={e2}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no witness for {0}")]
    NoWitness(Obligation),
    #[error("bad witness {witness:?} for {obligation}")]
    BadWitness {
        obligation: Obligation,
        witness: Vec<Signature>,
    },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

impl Obligation {
    /// Number of signatures in a witness.
    pub fn arity(&self) -> usize {
        match self {
            Obligation::Gir3 { eps, .. } | Obligation::Sb5 { eps, .. } => eps.len(),
            _ => 1,
        }
    }

    /// Whether the universal hypothesis of the axiom holds.
    pub fn hypothesis(&self, inst: &Instance) -> Result<bool, InstanceError> {
        Ok(match self {
            Obligation::Gir3 { eps, e1, e2, e } => inst.co(eps, e1)? && inst.dg(e1, e2, e)?,
            Obligation::Gir4 {
                e1,
                e2,
                e3,
                e_mid,
                e,
            } => inst.dg(e1, e2, e_mid)? && inst.dg(e_mid, e3, e)?,
            Obligation::Gir5 { n, e } => *n > 0 && inst.p(*n, e)?,
            Obligation::Sb5 { eps, e1, e2 } => inst.co(eps, e1)? && inst.leq(e1, e2)?,
            Obligation::Sb6 { eps1, eps2, e1, e2 } => {
                inst.dg(eps1, eps2, e1)? && inst.leq(e1, e2)?
            }
        })
    }

    /// Per-position constraint on a witness component, where one exists.
    fn position_ok(&self, inst: &Instance, i: usize, w: &Signature) -> Result<bool, InstanceError> {
        Ok(match self {
            Obligation::Gir3 { eps, e2, .. } => inst.dg(&eps[i], e2, w)?,
            Obligation::Gir4 { e2, e3, .. } => inst.dg(e2, e3, w)?,
            Obligation::Gir5 { e, .. } => inst.de(w)? && inst.dg(e, w, e)?,
            Obligation::Sb5 { eps, .. } => inst.leq(&eps[i], w)?,
            Obligation::Sb6 { eps1, .. } => inst.leq(eps1, w)?,
        })
    }

    /// Whether `w` discharges the conclusion of the axiom.
    pub fn satisfied_by(&self, inst: &Instance, w: &[Signature]) -> Result<bool, InstanceError> {
        if w.len() != self.arity() {
            return Ok(false);
        }
        for (i, s) in w.iter().enumerate() {
            inst.check_signature(s)?;
            if !self.position_ok(inst, i, s)? {
                return Ok(false);
            }
        }
        Ok(match self {
            Obligation::Gir3 { e, .. } => inst.co(w, e)?,
            Obligation::Gir4 { e1, e, .. } => inst.dg(e1, &w[0], e)?,
            Obligation::Gir5 { .. } => true,
            Obligation::Sb5 { e2, .. } => inst.co(w, e2)?,
            Obligation::Sb6 { eps2, e2, .. } => inst.dg(&w[0], eps2, e2)?,
        })
    }
}

/// Finds a witness for `ob`: the instance's witness function when present
/// (validated), otherwise the first tuple in declaration order.
pub fn find_witness(inst: &Instance, ob: &Obligation) -> Result<Vec<Signature>, WitnessError> {
    if let Some(f) = inst.witness_fn() {
        if let Some(w) = f(ob) {
            return if ob.satisfied_by(inst, &w)? {
                Ok(w)
            } else {
                Err(WitnessError::BadWitness {
                    obligation: ob.clone(),
                    witness: w,
                })
            };
        }
    }
    let k = ob.arity();
    let mut candidates: Vec<Vec<Signature>> = Vec::with_capacity(k);
    for i in 0..k {
        let mut c = Vec::new();
        for s in inst.signatures() {
            if ob.position_ok(inst, i, s)? {
                c.push(s.clone());
            }
        }
        if c.is_empty() {
            return Err(WitnessError::NoWitness(ob.clone()));
        }
        candidates.push(c);
    }
    let mut idx = vec![0usize; k];
    loop {
        let w: Vec<Signature> = idx
            .iter()
            .enumerate()
            .map(|(i, &j)| candidates[i][j].clone())
            .collect();
        if ob.satisfied_by(inst, &w)? {
            return Ok(w);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return Err(WitnessError::NoWitness(ob.clone()));
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
