use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use super::atom::AtomOrdering;
use crate::term::{Atom, Clause, Literal};

/// Snapshot of a trail `L1, …, Ln` inducing
/// `L1 ≺ comp(L1) ≺ L2 ≺ … ≺ comp(Ln)`, with undefined literals above all
/// defined ones. Undefined literals are ordered by atom, then negative
/// before positive.
#[derive(Clone, Debug)]
pub struct TrailOrder {
    literals: Vec<Literal>,
    positions: HashMap<Atom, (usize, bool)>,
    ordering: Arc<AtomOrdering>,
}

impl TrailOrder {
    pub fn new(literals: Vec<Literal>, ordering: Arc<AtomOrdering>) -> Self {
        let positions = literals
            .iter()
            .enumerate()
            .map(|(i, l)| (l.atom.clone(), (i, l.positive)))
            .collect();
        TrailOrder {
            literals,
            positions,
            ordering,
        }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn is_defined(&self, lit: &Literal) -> bool {
        self.positions.contains_key(&lit.atom)
    }

    /// Rank among defined literals: `2i` for the i-th trail literal, `2i + 1`
    /// for its complement.
    fn rank(&self, lit: &Literal) -> Option<usize> {
        self.positions
            .get(&lit.atom)
            .map(|&(i, pos)| 2 * i + usize::from(pos != lit.positive))
    }

    pub fn compare(&self, x: &Literal, y: &Literal) -> Ordering {
        match (self.rank(x), self.rank(y)) {
            (Some(i), Some(j)) => i.cmp(&j),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self
                .ordering
                .compare_atoms(&x.atom, &y.atom)
                .then(x.positive.cmp(&y.positive)),
        }
    }

    /// Multiset extension of [`TrailOrder::compare`] to ground clauses.
    pub fn compare_clauses(&self, c: &Clause, d: &Clause) -> Ordering {
        multiset_compare(c.literals(), d.literals(), |x, y| self.compare(x, y))
    }
}

/// Multiset extension of a total order: compare the descending sorted
/// sequences lexicographically, a proper prefix being smaller.
pub fn multiset_compare<T>(xs: &[T], ys: &[T], cmp: impl Fn(&T, &T) -> Ordering) -> Ordering {
    let mut a: Vec<&T> = xs.iter().collect();
    let mut b: Vec<&T> = ys.iter().collect();
    a.sort_by(|x, y| cmp(y, x));
    b.sort_by(|x, y| cmp(y, x));
    for (x, y) in a.iter().zip(&b) {
        match cmp(x, y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}
