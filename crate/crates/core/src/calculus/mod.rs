//! The SCL rules as guarded state transitions. Every `apply_*` function
//! checks its guard first and leaves the state untouched on failure.

mod search;

use std::sync::Arc;

use thiserror::Error;

pub use search::{
    decision_candidates, find_false_instance, find_false_instance_in_prefix, find_false_instance_using,
    first_propagation, is_reasonable, min_false_prefix, propagations, reasonable_decisions, Propagation,
};

use crate::ordering::{Bound, OrderingError};
use crate::proof::{ClauseId, Derivation, Step};
use crate::state::{Annotation, ProblemState, Status, Truth};
use crate::term::{match_atom, mgu, mgu_all, Clause, Closure, Literal, Subst, Substitutable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("{rule} is not applicable: {reason}")]
    GuardFailed { rule: &'static str, reason: String },
    #[error(transparent)]
    Bound(#[from] OrderingError),
}

fn guard(rule: &'static str, reason: impl Into<String>) -> RuleError {
    RuleError::GuardFailed {
        rule,
        reason: reason.into(),
    }
}

/// A rule together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleApplication {
    Propagate {
        clause: ClauseId,
        literal: usize,
        subst: Subst,
    },
    Decide {
        literal: Literal,
    },
    Conflict {
        clause: ClauseId,
        subst: Subst,
    },
    Skip,
    Factorize {
        keep: usize,
        drop: usize,
    },
    Resolve {
        literal: usize,
    },
    Backtrack,
    Grow {
        beta: Literal,
    },
}

impl RuleApplication {
    pub fn name(&self) -> &'static str {
        match self {
            RuleApplication::Propagate { .. } => "Propagate",
            RuleApplication::Decide { .. } => "Decide",
            RuleApplication::Conflict { .. } => "Conflict",
            RuleApplication::Skip => "Skip",
            RuleApplication::Factorize { .. } => "Factorize",
            RuleApplication::Resolve { .. } => "Resolve",
            RuleApplication::Backtrack => "Backtrack",
            RuleApplication::Grow { .. } => "Grow",
        }
    }
}

pub fn apply(s: &mut ProblemState, rule: &RuleApplication) -> Result<(), RuleError> {
    match rule {
        RuleApplication::Propagate { clause, literal, subst } => apply_propagate(s, *clause, *literal, subst),
        RuleApplication::Decide { literal } => apply_decide(s, literal),
        RuleApplication::Conflict { clause, subst } => apply_conflict(s, *clause, subst),
        RuleApplication::Skip => apply_skip(s),
        RuleApplication::Factorize { keep, drop } => apply_factorize(s, *keep, *drop),
        RuleApplication::Resolve { literal } => apply_resolve(s, *literal),
        RuleApplication::Backtrack => apply_backtrack(s).map(|_| ()),
        RuleApplication::Grow { beta } => {
            let bound = Bound::new(
                beta.clone(),
                s.bound.ordering().clone(),
                crate::ordering::DEFAULT_ATOM_CAP,
            )?;
            apply_grow(s, Arc::new(bound))
        }
    }
}

fn require_top(s: &ProblemState, rule: &'static str) -> Result<(), RuleError> {
    if s.is_top() {
        Ok(())
    } else {
        Err(guard(rule, "the state is not in status top"))
    }
}

fn require_conflict(s: &ProblemState, rule: &'static str) -> Result<Closure, RuleError> {
    s.conflict()
        .cloned()
        .ok_or_else(|| guard(rule, "there is no conflict closure"))
}

fn require_clause(s: &ProblemState, rule: &'static str, id: ClauseId) -> Result<Clause, RuleError> {
    if id < s.clauses.len() {
        Ok(s.clauses.clause(id).clone())
    } else {
        Err(guard(rule, format!("no clause {}", id + 1)))
    }
}

/// Propagate: `C0σ` false, `Lσ` undefined, the grounding below β. Literals
/// of `C` with the same instance as `L` are merged by `δ = mgu` and the
/// trail is annotated with `(C0 ∨ L)δ·σ`.
pub fn apply_propagate(s: &mut ProblemState, id: ClauseId, literal: usize, subst: &Subst) -> Result<(), RuleError> {
    const RULE: &str = "Propagate";
    require_top(s, RULE)?;
    let clause = require_clause(s, RULE, id)?;
    let Some(l) = clause.literals().get(literal) else {
        return Err(guard(RULE, "literal position out of range"));
    };
    let sigma = subst.restrict(&clause.vars());
    if !sigma.grounds(&clause) {
        return Err(guard(RULE, "substitution does not ground the clause"));
    }
    let ground = clause.apply(&sigma);
    let lg = &ground.literals()[literal];
    if s.trail.value(lg) != Truth::Undefined {
        return Err(guard(RULE, "propagated literal is already defined"));
    }
    if !s.bound.clause_below(&ground) {
        return Err(guard(RULE, "clause instance is not below beta"));
    }
    let mut copies = vec![l];
    let mut kept = Vec::new();
    for (j, (m, mg)) in clause.iter().zip(ground.iter()).enumerate() {
        if j == literal {
            kept.push(j);
        } else if mg == lg {
            copies.push(m);
        } else if s.trail.value(mg) == Truth::False {
            kept.push(j);
        } else {
            return Err(guard(RULE, "side literal is not false in the trail"));
        }
    }
    let delta = mgu_all(&copies).ok_or_else(|| guard(RULE, "copies of the literal do not unify"))?;
    let lits: Vec<Literal> = kept.iter().map(|&j| clause.literals()[j].apply(&delta)).collect();
    let pivot = kept.iter().position(|&j| j == literal).expect("pivot is kept");
    let factor = Clause::new(lits);
    let closure = Closure::new(factor.clone(), sigma.restrict(&factor.vars()));
    let lit = lg.clone();
    s.trail.push(
        lit,
        Annotation::Propagation {
            source: id,
            delta,
            closure,
            pivot,
        },
    );
    Ok(())
}

/// Decide: an undefined ground literal below β whose atom is an instance
/// of some clause literal.
pub fn apply_decide(s: &mut ProblemState, literal: &Literal) -> Result<(), RuleError> {
    const RULE: &str = "Decide";
    require_top(s, RULE)?;
    if !literal.is_ground() {
        return Err(guard(RULE, "decision literal is not ground"));
    }
    if s.trail.is_defined(literal) {
        return Err(guard(RULE, "decision literal is already defined"));
    }
    if !s.bound.literal_below(literal) {
        return Err(guard(RULE, "decision literal is not below beta"));
    }
    let instance = s.clauses.iter().any(|c| {
        c.clause
            .iter()
            .any(|l| match_atom(&l.atom, &literal.atom, &Subst::new()).is_some())
    });
    if !instance {
        return Err(guard(RULE, "decision literal is not an instance of a clause literal"));
    }
    s.k += 1;
    s.trail.push(literal.clone(), Annotation::Decision(s.k));
    Ok(())
}

/// Conflict: a grounding of a clause false in the trail. The empty clause
/// goes straight to ⊥.
pub fn apply_conflict(s: &mut ProblemState, id: ClauseId, subst: &Subst) -> Result<(), RuleError> {
    const RULE: &str = "Conflict";
    require_top(s, RULE)?;
    let clause = require_clause(s, RULE, id)?;
    let sigma = subst.restrict(&clause.vars());
    if !sigma.grounds(&clause) {
        return Err(guard(RULE, "substitution does not ground the clause"));
    }
    if !s.trail.falsifies(&clause.apply(&sigma)) {
        return Err(guard(RULE, "clause instance is not false in the trail"));
    }
    let derivation = Derivation::new(id, clause.clone(), sigma.clone());
    if clause.is_empty() {
        s.status = Status::Bottom;
        s.refutation = Some(derivation);
    } else {
        s.status = Status::Conflict(Closure::new(clause, sigma));
        s.derivation = Some(derivation);
    }
    Ok(())
}

/// Skip: the complement of the top literal does not occur in `Dσ`.
pub fn apply_skip(s: &mut ProblemState) -> Result<(), RuleError> {
    const RULE: &str = "Skip";
    let conflict = require_conflict(s, RULE)?;
    let Some(top) = s.trail.top() else {
        return Err(guard(RULE, "the trail is empty"));
    };
    let comp = top.literal.complement();
    if conflict.ground().contains(&comp) {
        return Err(guard(
            RULE,
            "the conflict clause contains the complement of the top literal",
        ));
    }
    if let Some(e) = s.trail.pop() {
        if e.annotation.is_decision() {
            s.k -= 1;
        }
    }
    Ok(())
}

fn record(s: &mut ProblemState, next: Closure, step: Step) {
    let d = s.derivation.as_mut().expect("conflict has a derivation");
    d.steps.push(step);
    if next.clause.is_empty() {
        s.refutation = s.derivation.take();
        s.status = Status::Bottom;
    } else {
        s.status = Status::Conflict(next);
    }
}

/// Factorize: merges two literals of the conflict clause with the same
/// ground instance.
pub fn apply_factorize(s: &mut ProblemState, keep: usize, drop: usize) -> Result<(), RuleError> {
    const RULE: &str = "Factorize";
    let conflict = require_conflict(s, RULE)?;
    let lits = conflict.clause.literals();
    let (Some(a), Some(b)) = (lits.get(keep), lits.get(drop)) else {
        return Err(guard(RULE, "literal position out of range"));
    };
    if keep == drop || a.apply(&conflict.subst) != b.apply(&conflict.subst) {
        return Err(guard(RULE, "literals have different ground instances"));
    }
    let eta = mgu(a, b).ok_or_else(|| guard(RULE, "literals do not unify"))?;
    let clause = conflict.clause.without(drop).apply(&eta);
    let next = Closure::new(clause, conflict.subst.clone()).normalized();
    let step = Step::Factorize {
        keep,
        drop,
        result: next.clause.clone(),
    };
    record(s, next, step);
    Ok(())
}

/// Resolve: the conflict literal at `literal` is complementary to the top
/// literal, which was propagated.
pub fn apply_resolve(s: &mut ProblemState, literal: usize) -> Result<(), RuleError> {
    const RULE: &str = "Resolve";
    let conflict = require_conflict(s, RULE)?;
    let Some(top) = s.trail.top() else {
        return Err(guard(RULE, "the trail is empty"));
    };
    let Annotation::Propagation {
        source,
        delta,
        closure,
        pivot,
    } = &top.annotation
    else {
        return Err(guard(RULE, "the top literal is a decision"));
    };
    let Some(l) = conflict.clause.literals().get(literal) else {
        return Err(guard(RULE, "literal position out of range"));
    };
    if l.apply(&conflict.subst) != top.literal.complement() {
        return Err(guard(RULE, "literal is not the complement of the top literal"));
    }
    let offset = conflict
        .clause
        .vars()
        .into_iter()
        .chain(conflict.subst.domain())
        .map(|v| v.0 + 1)
        .max()
        .unwrap_or(0);
    let other = closure.shifted(offset);
    let k = other.clause.literals()[*pivot].complement();
    let eta = mgu(l, &k).ok_or_else(|| guard(RULE, "literals do not unify"))?;
    let lits: Vec<Literal> = conflict
        .clause
        .without(literal)
        .iter()
        .chain(other.clause.without(*pivot).iter())
        .map(|x| x.apply(&eta))
        .collect();
    let next = Closure::new(Clause::new(lits), conflict.subst.union(&other.subst)).normalized();
    let step = Step::Resolve {
        literal,
        source: *source,
        pivot: *pivot,
        delta: delta.clone(),
        annotation: closure.clone(),
        result: next.clause.clone(),
    };
    record(s, next, step);
    Ok(())
}

/// Backtrack: the conflict clause is `D ∨ L` with `Lσ` the complement of
/// the top decision and `Dσ` of lower level. The clause is learned and the
/// trail is cut just before the shortest prefix that falsifies it. Returns
/// the id of the learned clause.
pub fn apply_backtrack(s: &mut ProblemState) -> Result<ClauseId, RuleError> {
    const RULE: &str = "Backtrack";
    let conflict = require_conflict(s, RULE)?;
    let Some(top) = s.trail.top() else {
        return Err(guard(RULE, "the trail is empty"));
    };
    if !top.annotation.is_decision() {
        return Err(guard(RULE, "the top literal is not a decision"));
    }
    let comp = top.literal.complement();
    let top_level = top.level;
    let ground = conflict.ground();
    let matching = ground.iter().filter(|l| **l == comp).count();
    if matching != 1 {
        return Err(guard(
            RULE,
            "the conflict clause must contain the complement of the top decision exactly once",
        ));
    }
    let rest = Clause::new(ground.iter().filter(|l| **l != comp).cloned().collect());
    let level = s
        .trail
        .clause_level(&rest)
        .map_err(|_| guard(RULE, "conflict clause has an undefined literal"))?;
    if level >= top_level {
        return Err(guard(
            RULE,
            "the rest of the conflict clause is not below the top level",
        ));
    }
    let prefix = min_false_prefix(&s.trail, &conflict.clause)
        .ok_or_else(|| guard(RULE, "the conflict clause has no false instance"))?;
    let derivation = s.derivation.take().expect("conflict has a derivation");
    let id = s.clauses.add_learned(conflict.clause.clone(), derivation);
    s.trail.truncate(prefix.saturating_sub(1));
    s.k = s.trail.level();
    s.status = Status::Top;
    Ok(id)
}

/// Grow: restart with a larger bound, keeping all learned clauses.
pub fn apply_grow(s: &mut ProblemState, bound: Arc<Bound>) -> Result<(), RuleError> {
    const RULE: &str = "Grow";
    require_top(s, RULE)?;
    if !Arc::ptr_eq(bound.ordering(), s.bound.ordering()) && bound.ordering().kind() != s.bound.ordering().kind() {
        return Err(guard(RULE, "the new bound uses a different ordering"));
    }
    let old = &s.beta().atom;
    let new = &bound.beta().atom;
    if bound.ordering().compare_atoms(old, new) != std::cmp::Ordering::Less {
        return Err(guard(RULE, "the new bound is not larger"));
    }
    s.trail.truncate(0);
    s.k = 0;
    s.bound = bound;
    Ok(())
}
