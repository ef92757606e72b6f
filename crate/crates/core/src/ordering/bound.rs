use std::collections::HashMap;
use std::sync::Arc;

use super::atom::{AtomOrdering, OrderingError};
use crate::term::{Atom, Clause, Literal, Sym};

/// Default limit on the number of ground atoms below a bound.
pub const DEFAULT_ATOM_CAP: usize = 1_000_000;

/// The limiting literal β together with the finite set of atoms below it.
#[derive(Clone, Debug)]
pub struct Bound {
    beta: Literal,
    ordering: Arc<AtomOrdering>,
    below: Vec<Atom>,
    index: HashMap<Atom, usize>,
    by_pred: HashMap<Sym, Vec<usize>>,
}

impl Bound {
    pub fn new(beta: Literal, ordering: Arc<AtomOrdering>, cap: usize) -> Result<Self, OrderingError> {
        let below = ordering.atoms_below(&beta.atom, cap)?;
        let mut index = HashMap::with_capacity(below.len());
        let mut by_pred: HashMap<Sym, Vec<usize>> = HashMap::new();
        for (i, a) in below.iter().enumerate() {
            index.insert(a.clone(), i);
            by_pred.entry(a.pred).or_default().push(i);
        }
        Ok(Bound {
            beta,
            ordering,
            below,
            index,
            by_pred,
        })
    }

    pub fn beta(&self) -> &Literal {
        &self.beta
    }

    pub fn ordering(&self) -> &Arc<AtomOrdering> {
        &self.ordering
    }

    /// Atoms below β in ascending order.
    pub fn atoms(&self) -> &[Atom] {
        &self.below
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    /// Position of `atom` in the ascending enumeration, if it is below β.
    pub fn position(&self, atom: &Atom) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub fn atom_below(&self, atom: &Atom) -> bool {
        self.index.contains_key(atom)
    }

    /// `L ≺_B β`, comparing atoms only.
    pub fn literal_below(&self, lit: &Literal) -> bool {
        self.atom_below(&lit.atom)
    }

    /// `C ≺_B {β}`: every literal of the ground clause is below β.
    pub fn clause_below(&self, clause: &Clause) -> bool {
        clause.iter().all(|l| self.literal_below(l))
    }

    /// Atoms below β with predicate `pred`, ascending.
    pub fn atoms_with_pred(&self, pred: Sym) -> impl Iterator<Item = &Atom> + '_ {
        self.by_pred
            .get(&pred)
            .into_iter()
            .flatten()
            .map(move |&i| &self.below[i])
    }
}
