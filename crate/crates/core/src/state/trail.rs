use std::collections::HashMap;

use thiserror::Error;

use crate::proof::ClauseId;
use crate::term::{Atom, Clause, Closure, Literal, Subst, Sym};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annotation {
    /// The `level`-th decision.
    Decision(usize),
    /// Propagated by the closure `(C0 ∨ L)δ · σ`, a factor of clause
    /// `source` under `delta`; `pivot` is the position of `L` in the closure.
    Propagation {
        source: ClauseId,
        delta: Subst,
        closure: Closure,
        pivot: usize,
    },
}

impl Annotation {
    pub fn is_decision(&self) -> bool {
        matches!(self, Annotation::Decision(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrailEntry {
    pub literal: Literal,
    pub annotation: Annotation,
    /// Level of the closest decision at or left of this entry.
    pub level: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("literal is undefined in the trail")]
pub struct UndefinedLiteral;

/// Sequence of annotated ground literals with an atom index for constant
/// time definedness tests.
#[derive(Clone, Debug, Default)]
pub struct Trail {
    entries: Vec<TrailEntry>,
    index: HashMap<Atom, usize>,
    by_sign: HashMap<(Sym, bool), Vec<usize>>,
}

impl Trail {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[TrailEntry] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Option<&TrailEntry> {
        self.entries.get(i)
    }

    pub fn top(&self) -> Option<&TrailEntry> {
        self.entries.last()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> + '_ {
        self.entries.iter().map(|e| &e.literal)
    }

    /// Level of the trail, i.e. of its last entry.
    pub fn level(&self) -> usize {
        self.entries.last().map_or(0, |e| e.level)
    }

    pub fn decisions(&self) -> usize {
        self.entries.iter().filter(|e| e.annotation.is_decision()).count()
    }

    /// Appends an entry. Rule guards keep the literal ground and undefined;
    /// the soundness checker reports trails built otherwise.
    pub fn push(&mut self, literal: Literal, annotation: Annotation) {
        let level = match annotation {
            Annotation::Decision(l) => l,
            Annotation::Propagation { .. } => self.level(),
        };
        let i = self.entries.len();
        self.index.entry(literal.atom.clone()).or_insert(i);
        self.by_sign
            .entry((literal.atom.pred, literal.positive))
            .or_default()
            .push(i);
        self.entries.push(TrailEntry {
            literal,
            annotation,
            level,
        });
    }

    pub fn pop(&mut self) -> Option<TrailEntry> {
        let e = self.entries.pop()?;
        if self.index.get(&e.literal.atom) == Some(&self.entries.len()) {
            self.index.remove(&e.literal.atom);
        }
        if let Some(v) = self.by_sign.get_mut(&(e.literal.atom.pred, e.literal.positive)) {
            v.pop();
        }
        Some(e)
    }

    pub fn truncate(&mut self, len: usize) {
        while self.entries.len() > len {
            self.pop();
        }
    }

    /// Trail position of the entry defining `atom`.
    pub fn position(&self, atom: &Atom) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub fn value(&self, lit: &Literal) -> Truth {
        self.value_in_prefix(lit, self.entries.len())
    }

    /// Truth value under the first `len` entries.
    pub fn value_in_prefix(&self, lit: &Literal, len: usize) -> Truth {
        match self.index.get(&lit.atom) {
            Some(&i) if i < len => {
                if self.entries[i].literal.positive == lit.positive {
                    Truth::True
                } else {
                    Truth::False
                }
            }
            _ => Truth::Undefined,
        }
    }

    pub fn is_defined(&self, lit: &Literal) -> bool {
        self.index.contains_key(&lit.atom)
    }

    /// Positions of trail literals with the given predicate and sign, in
    /// trail order.
    pub fn with_sign(&self, pred: Sym, positive: bool) -> &[usize] {
        self.by_sign.get(&(pred, positive)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn literal_level(&self, lit: &Literal) -> Option<usize> {
        self.position(&lit.atom).map(|i| self.entries[i].level)
    }

    /// Maximal level of the clause's literals; 0 for the empty clause.
    pub fn clause_level(&self, clause: &Clause) -> Result<usize, UndefinedLiteral> {
        clause.iter().try_fold(0, |acc, l| {
            self.literal_level(l).map(|lv| acc.max(lv)).ok_or(UndefinedLiteral)
        })
    }

    /// True iff every literal of the ground clause is false.
    pub fn falsifies(&self, clause: &Clause) -> bool {
        clause.iter().all(|l| self.value(l) == Truth::False)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{Signature, Term};

    #[test]
    fn levels_and_values() {
        let mut sig = Signature::new();
        let a = sig.function("a", 0).unwrap();
        let b = sig.function("b", 0).unwrap();
        let p = sig.predicate("P", 1).unwrap();
        let q = sig.predicate("Q", 1).unwrap();
        let pa = Literal::pos(Atom::new(p, vec![Term::constant(a)]));
        let qb = Literal::pos(Atom::new(q, vec![Term::constant(b)]));
        let mut t = Trail::new();
        t.push(pa.complement(), Annotation::Decision(1));
        assert_eq!(t.value(&pa), Truth::False);
        assert_eq!(t.value(&qb), Truth::Undefined);
        t.push(
            qb.complement(),
            Annotation::Propagation {
                source: 1,
                delta: Subst::new(),
                closure: Closure::new(Clause::new(vec![qb.complement()]), Subst::new()),
                pivot: 0,
            },
        );
        assert_eq!(t.literal_level(&qb), Some(1));
        assert_eq!(t.clause_level(&Clause::empty()), Ok(0));
        assert_eq!(t.with_sign(q, false), &[1]);
        t.pop();
        assert_eq!(t.value(&qb), Truth::Undefined);
        assert!(t.with_sign(q, false).is_empty());
        assert_eq!(t.clause_level(&Clause::new(vec![qb])), Err(UndefinedLiteral));
    }
}
