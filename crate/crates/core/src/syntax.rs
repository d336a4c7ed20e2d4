//! Formulas with indexed exponentials, duality and one-sided sequents.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// An exponential signature, the index carried by `!e` and `?e`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(Arc<str>);

impl Signature {
    pub fn new(name: impl AsRef<str>) -> Self {
        Signature(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Signature {
    fn from(s: &str) -> Self {
        Signature::new(s)
    }
}

/// Formulas in negation normal form. Negation only appears on atoms;
/// the dual of a compound formula is computed by [`Formula::dual`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Atom(Arc<str>),
    NegAtom(Arc<str>),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    One,
    Bot,
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    Top,
    Zero,
    Bang(Signature, Box<Formula>),
    Quest(Signature, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl AsRef<str>) -> Self {
        Formula::Atom(Arc::from(name.as_ref()))
    }

    pub fn neg_atom(name: impl AsRef<str>) -> Self {
        Formula::NegAtom(Arc::from(name.as_ref()))
    }

    pub fn tensor(a: Formula, b: Formula) -> Self {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Self {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn with(a: Formula, b: Formula) -> Self {
        Formula::With(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Formula, b: Formula) -> Self {
        Formula::Plus(Box::new(a), Box::new(b))
    }

    pub fn bang(e: impl Into<Signature>, a: Formula) -> Self {
        Formula::Bang(e.into(), Box::new(a))
    }

    pub fn quest(e: impl Into<Signature>, a: Formula) -> Self {
        Formula::Quest(e.into(), Box::new(a))
    }

    /// `?e1 ?e2 ... ?en a`.
    pub fn quest_list(sigs: &[Signature], a: Formula) -> Self {
        sigs.iter()
            .rev()
            .fold(a, |acc, e| Formula::Quest(e.clone(), Box::new(acc)))
    }

    /// `!e1 !e2 ... !en a`.
    pub fn bang_list(sigs: &[Signature], a: Formula) -> Self {
        sigs.iter()
            .rev()
            .fold(a, |acc, e| Formula::Bang(e.clone(), Box::new(acc)))
    }

    pub fn dual(&self) -> Formula {
        use Formula::*;
        match self {
            Atom(x) => NegAtom(x.clone()),
            NegAtom(x) => Atom(x.clone()),
            Tensor(a, b) => Par(Box::new(a.dual()), Box::new(b.dual())),
            Par(a, b) => Tensor(Box::new(a.dual()), Box::new(b.dual())),
            One => Bot,
            Bot => One,
            With(a, b) => Plus(Box::new(a.dual()), Box::new(b.dual())),
            Plus(a, b) => With(Box::new(a.dual()), Box::new(b.dual())),
            Top => Zero,
            Zero => Top,
            Bang(e, a) => Quest(e.clone(), Box::new(a.dual())),
            Quest(e, a) => Bang(e.clone(), Box::new(a.dual())),
        }
    }

    /// Number of nodes in the formula tree.
    pub fn size(&self) -> usize {
        use Formula::*;
        match self {
            Atom(_) | NegAtom(_) | One | Bot | Top | Zero => 1,
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => 1 + a.size() + b.size(),
            Bang(_, a) | Quest(_, a) => 1 + a.size(),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::NegAtom(_))
    }

    pub fn is_exponential(&self) -> bool {
        matches!(self, Formula::Bang(..) | Formula::Quest(..))
    }

    /// Splits `?e a` into its signature and body.
    pub fn as_quest(&self) -> Option<(&Signature, &Formula)> {
        match self {
            Formula::Quest(e, a) => Some((e, a)),
            _ => None,
        }
    }

    pub fn as_bang(&self) -> Option<(&Signature, &Formula)> {
        match self {
            Formula::Bang(e, a) => Some((e, a)),
            _ => None,
        }
    }

    /// Strips the `?` prefix given by `sigs`, returning the remaining body.
    pub fn strip_quests(&self, sigs: &[Signature]) -> Option<&Formula> {
        let mut cur = self;
        for e in sigs {
            match cur {
                Formula::Quest(f, a) if f == e => cur = a,
                _ => return None,
            }
        }
        Some(cur)
    }

    /// Every signature occurring in the formula, in order of first appearance.
    pub fn signatures(&self) -> Vec<Signature> {
        let mut out = Vec::new();
        self.collect_signatures(&mut out);
        out
    }

    fn collect_signatures(&self, out: &mut Vec<Signature>) {
        use Formula::*;
        match self {
            Atom(_) | NegAtom(_) | One | Bot | Top | Zero => {}
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => {
                a.collect_signatures(out);
                b.collect_signatures(out);
            }
            Bang(e, a) | Quest(e, a) => {
                if !out.contains(e) {
                    out.push(e.clone());
                }
                a.collect_signatures(out);
            }
        }
    }

    /// Applies `f` to every signature.
    pub fn map_signatures(&self, f: &impl Fn(&Signature) -> Signature) -> Formula {
        use Formula::*;
        match self {
            Atom(_) | NegAtom(_) | One | Bot | Top | Zero => self.clone(),
            Tensor(a, b) => Formula::tensor(a.map_signatures(f), b.map_signatures(f)),
            Par(a, b) => Formula::par(a.map_signatures(f), b.map_signatures(f)),
            With(a, b) => Formula::with(a.map_signatures(f), b.map_signatures(f)),
            Plus(a, b) => Formula::plus(a.map_signatures(f), b.map_signatures(f)),
            Bang(e, a) => Bang(f(e), Box::new(a.map_signatures(f))),
            Quest(e, a) => Quest(f(e), Box::new(a.map_signatures(f))),
        }
    }
}

/// A one-sided sequent `|- A1, ..., An`, kept as an ordered list.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Sequent(pub Vec<Formula>);

impl Sequent {
    pub fn new(formulas: Vec<Formula>) -> Self {
        Sequent(formulas)
    }

    pub fn empty() -> Self {
        Sequent(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<&Formula> {
        self.0.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.0.iter()
    }

    /// The sequent with the formulas at `indices` removed, order preserved.
    pub fn without(&self, indices: &[usize]) -> Vec<Formula> {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| !indices.contains(i))
            .map(|(_, f)| f.clone())
            .collect()
    }

    /// Multiset equality.
    pub fn perm_eq(&self, other: &Sequent) -> bool {
        sequent_perm_eq(self, other)
    }

    /// Sorted copy, used as the canonical representative of the multiset.
    pub fn canonical(&self) -> Sequent {
        let mut v = self.0.clone();
        v.sort();
        Sequent(v)
    }

    pub fn signatures(&self) -> Vec<Signature> {
        let mut out: Vec<Signature> = Vec::new();
        for f in &self.0 {
            for e in f.signatures() {
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        out
    }

    /// A permutation `sigma` with `other[k] == self[sigma[k]]`, if one exists.
    pub fn permutation_to(&self, other: &Sequent) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let mut used = vec![false; self.len()];
        let mut sigma = Vec::with_capacity(other.len());
        for f in &other.0 {
            let k = (0..self.len()).find(|&k| !used[k] && &self.0[k] == f)?;
            used[k] = true;
            sigma.push(k);
        }
        Some(sigma)
    }
}

impl From<Vec<Formula>> for Sequent {
    fn from(v: Vec<Formula>) -> Self {
        Sequent(v)
    }
}

impl FromIterator<Formula> for Sequent {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        Sequent(iter.into_iter().collect())
    }
}

/// True iff `g2` is a permutation of `g1`.
pub fn sequent_perm_eq(g1: &Sequent, g2: &Sequent) -> bool {
    if g1.len() != g2.len() {
        return false;
    }
    let mut counts: BTreeMap<&Formula, isize> = BTreeMap::new();
    for f in &g1.0 {
        *counts.entry(f).or_default() += 1;
    }
    for f in &g2.0 {
        match counts.get_mut(f) {
            Some(c) if *c > 0 => *c -= 1,
            _ => return false,
        }
    }
    true
}

pub fn dual(a: &Formula) -> Formula {
    a.dual()
}

pub fn formula_size(a: &Formula) -> usize {
    a.size()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Formula {
        Formula::atom("X")
    }

    fn y() -> Formula {
        Formula::atom("Y")
    }

    #[test]
    fn dual_table() {
        assert_eq!(
            Formula::tensor(x(), y()).dual(),
            Formula::par(Formula::neg_atom("X"), Formula::neg_atom("Y"))
        );
        let a = Formula::with(x(), Formula::Zero);
        assert_eq!(a.dual().dual(), a);
        assert_eq!(
            Formula::bang("e", x()).dual(),
            Formula::quest("e", Formula::neg_atom("X"))
        );
        assert_eq!(Formula::One.dual(), Formula::Bot);
        assert_eq!(Formula::Top.dual(), Formula::Zero);
    }

    #[test]
    fn sizes() {
        assert_eq!(x().size(), 1);
        assert_eq!(Formula::tensor(x(), x()).size(), 3);
        assert_eq!(Formula::quest("e", Formula::quest("f", x())).size(), 3);
    }

    #[test]
    fn perm_eq_examples() {
        let s = |v: Vec<Formula>| Sequent::new(v);
        assert!(sequent_perm_eq(&s(vec![x(), y()]), &s(vec![y(), x()])));
        assert!(!sequent_perm_eq(
            &s(vec![x(), x(), y()]),
            &s(vec![x(), y()])
        ));
        assert!(!sequent_perm_eq(&s(vec![x(), x()]), &s(vec![x(), y()])));
        assert!(sequent_perm_eq(&s(vec![]), &s(vec![])));
    }

    #[test]
    fn permutation_to_round_trips() {
        let g = Sequent::new(vec![x(), y(), x(), Formula::One]);
        let h = Sequent::new(vec![Formula::One, x(), x(), y()]);
        let sigma = g.permutation_to(&h).unwrap();
        let applied: Vec<Formula> = sigma.iter().map(|&k| g.0[k].clone()).collect();
        assert_eq!(applied, h.0);
    }

    #[test]
    fn quest_lists() {
        let sigs = [Signature::new("a"), Signature::new("b")];
        let f = Formula::quest_list(&sigs, x());
        assert_eq!(f, Formula::quest("a", Formula::quest("b", x())));
        assert_eq!(f.strip_quests(&sigs), Some(&x()));
        assert_eq!(f.strip_quests(&sigs[1..]), None);
    }
}
