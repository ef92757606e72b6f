//! The SCL problem state `(Γ; N; U; β; k; D)` and its soundness checker.

mod clauses;
mod sound;
mod trace;
mod trail;

use std::sync::Arc;

pub use clauses::{ClauseDb, Origin, StoredClause};
pub use sound::{SoundnessChecker, Violation};
pub use trace::{render_trace, status_text, TraceEvent};
pub use trail::{Annotation, Trail, TrailEntry, Truth, UndefinedLiteral};

use crate::ordering::{Bound, TrailOrder};
use crate::proof::{ClauseId, Derivation, LearnedEntry, Proof};
use crate::term::{Closure, Literal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    /// ⊤: no conflict.
    Top,
    /// A false closure under conflict resolution.
    Conflict(Closure),
    /// ⊥ has been derived.
    Bottom,
}

#[derive(Clone, Debug)]
pub struct ProblemState {
    pub trail: Trail,
    pub clauses: ClauseDb,
    pub bound: Arc<Bound>,
    pub k: usize,
    pub status: Status,
    /// Derivation of the current conflict closure, from Conflict on.
    pub derivation: Option<Derivation>,
    /// The derivation of ⊥ once the status is `Bottom`.
    pub refutation: Option<Derivation>,
}

impl ProblemState {
    /// `(ε; N; ∅; β; 0; ⊤)`.
    pub fn initial(clauses: ClauseDb, bound: Arc<Bound>) -> Self {
        ProblemState {
            trail: Trail::new(),
            clauses,
            bound,
            k: 0,
            status: Status::Top,
            derivation: None,
            refutation: None,
        }
    }

    pub fn beta(&self) -> &Literal {
        self.bound.beta()
    }

    pub fn is_top(&self) -> bool {
        self.status == Status::Top
    }

    pub fn conflict(&self) -> Option<&Closure> {
        match &self.status {
            Status::Conflict(c) => Some(c),
            _ => None,
        }
    }

    pub fn truth_value(&self, lit: &Literal) -> Truth {
        self.trail.value(lit)
    }

    /// Snapshot of `≺_Γ` for the current trail.
    pub fn trail_order(&self) -> TrailOrder {
        TrailOrder::new(self.trail.literals().cloned().collect(), self.bound.ordering().clone())
    }

    /// The refutation as a proof object, once ⊥ has been derived.
    pub fn proof(&self) -> Option<Proof> {
        let refutation = self.refutation.as_ref()?;
        let mut learned: Vec<LearnedEntry> = self
            .clauses
            .learned()
            .filter_map(|c| match &c.origin {
                Origin::Learned(d) => Some(LearnedEntry {
                    id: c.id,
                    derivation: d.clone(),
                }),
                Origin::Input { .. } => None,
            })
            .collect();
        let id: ClauseId = if refutation.steps.is_empty() {
            refutation.conflict
        } else {
            let id = self.clauses.len();
            learned.push(LearnedEntry {
                id,
                derivation: refutation.clone(),
            });
            id
        };
        Some(Proof {
            learned,
            refutation: id,
        })
    }
}
