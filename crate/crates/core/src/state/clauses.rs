use std::sync::Arc;

use crate::proof::{ClauseId, Derivation};
use crate::term::{normalize_clause, Clause};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Input { name: Option<String> },
    Learned(Derivation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoredClause {
    pub id: ClauseId,
    pub clause: Clause,
    pub origin: Origin,
}

impl StoredClause {
    pub fn is_input(&self) -> bool {
        matches!(self.origin, Origin::Input { .. })
    }
}

/// `N ∪ U`: input clauses followed by learned clauses. Variables are
/// normalized on insertion.
#[derive(Clone, Debug, Default)]
pub struct ClauseDb {
    clauses: Vec<Arc<StoredClause>>,
    n_input: usize,
}

impl ClauseDb {
    pub fn new<I>(inputs: I) -> Self
    where
        I: IntoIterator<Item = (Option<String>, Clause)>,
    {
        let clauses: Vec<Arc<StoredClause>> = inputs
            .into_iter()
            .enumerate()
            .map(|(id, (name, c))| {
                Arc::new(StoredClause {
                    id,
                    clause: normalize_clause(&c),
                    origin: Origin::Input { name },
                })
            })
            .collect();
        let n_input = clauses.len();
        ClauseDb { clauses, n_input }
    }

    pub fn from_clauses(clauses: impl IntoIterator<Item = Clause>) -> Self {
        Self::new(clauses.into_iter().map(|c| (None, c)))
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn n_input(&self) -> usize {
        self.n_input
    }

    pub fn n_learned(&self) -> usize {
        self.clauses.len() - self.n_input
    }

    pub fn get(&self, id: ClauseId) -> &StoredClause {
        &self.clauses[id]
    }

    pub fn clause(&self, id: ClauseId) -> &Clause {
        &self.clauses[id].clause
    }

    pub fn iter(&self) -> impl Iterator<Item = &StoredClause> + '_ {
        self.clauses.iter().map(|c| c.as_ref())
    }

    pub fn inputs(&self) -> impl Iterator<Item = &StoredClause> + '_ {
        self.iter().take(self.n_input)
    }

    pub fn learned(&self) -> impl Iterator<Item = &StoredClause> + '_ {
        self.iter().skip(self.n_input)
    }

    pub fn add_learned(&mut self, clause: Clause, derivation: Derivation) -> ClauseId {
        let id = self.clauses.len();
        self.clauses.push(Arc::new(StoredClause {
            id,
            clause: normalize_clause(&clause),
            origin: Origin::Learned(derivation),
        }));
        id
    }
}
