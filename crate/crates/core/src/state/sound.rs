use std::collections::HashSet;

use thiserror::Error;

use super::{Annotation, Origin, ProblemState, Status, Truth};
use crate::oracle::{self, OracleError};
use crate::term::{bounded_groundings, is_variant, match_atom, set_subsumes, Clause, Literal, Subst};

/// A violated sound-state condition (numbered 1 to 6) with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sound-state condition {condition} violated: {witness}")]
pub struct Violation {
    pub condition: u8,
    pub witness: String,
}

fn violation(condition: u8, witness: impl Into<String>) -> Violation {
    Violation {
        condition,
        witness: witness.into(),
    }
}

/// Checks all six sound-state conditions. Entailment is decided exactly
/// over β-bounded groundings by the brute-force oracle; derivations of
/// learned clauses are replayed once and remembered.
#[derive(Debug)]
pub struct SoundnessChecker {
    atom_cap: usize,
    verified: HashSet<usize>,
    pool: Option<(usize, Literal, Vec<Clause>)>,
    /// Entailment checks skipped because the atom cap was exceeded.
    pub skipped: usize,
}

impl Default for SoundnessChecker {
    fn default() -> Self {
        Self::new(oracle::DEFAULT_ATOM_CAP)
    }
}

impl SoundnessChecker {
    pub fn new(atom_cap: usize) -> Self {
        SoundnessChecker {
            atom_cap,
            verified: HashSet::new(),
            pool: None,
            skipped: 0,
        }
    }

    pub fn check(&mut self, s: &ProblemState) -> Result<(), Violation> {
        self.trail_conditions(s)?;
        self.learned_entailed(s)?;
        self.conflict_condition(s)
    }

    /// Conditions 1, 2, 3 and 6.
    fn trail_conditions(&self, s: &ProblemState) -> Result<(), Violation> {
        let entries = s.trail.entries();
        let mut decisions = 0;
        for (i, e) in entries.iter().enumerate() {
            let lit = &e.literal;
            if !lit.is_ground() {
                return Err(violation(1, format!("trail literal {i} is not ground")));
            }
            let earlier = entries[..i].iter().position(|f| f.literal.atom == lit.atom);
            if let Some(j) = earlier {
                let condition = if e.annotation.is_decision() { 3 } else { 1 };
                let what = if entries[j].literal == *lit {
                    "repeats"
                } else {
                    "contradicts"
                };
                return Err(violation(condition, format!("trail literal {i} {what} literal {j}")));
            }
            match &e.annotation {
                Annotation::Decision(level) => {
                    decisions += 1;
                    if *level != decisions {
                        return Err(violation(
                            3,
                            format!("decision {i} has level {level}, expected {decisions}"),
                        ));
                    }
                }
                Annotation::Propagation {
                    source, closure, pivot, ..
                } => {
                    if *source >= s.clauses.len() {
                        return Err(violation(2, format!("entry {i} cites unknown clause")));
                    }
                    if !closure.is_grounding() {
                        return Err(violation(2, format!("entry {i} closure is not ground")));
                    }
                    let ground = closure.ground();
                    if ground.literals().get(*pivot) != Some(lit) {
                        return Err(violation(2, format!("entry {i} closure does not propagate it")));
                    }
                    let prefix_false = ground
                        .without(*pivot)
                        .iter()
                        .all(|l| s.trail.value_in_prefix(l, i) == Truth::False);
                    if !prefix_false {
                        return Err(violation(2, format!("entry {i} side literals not false before it")));
                    }
                    if set_subsumes(s.clauses.clause(*source), &closure.clause).is_none() {
                        return Err(violation(
                            2,
                            format!("entry {i} closure is not implied by clause {}", source + 1),
                        ));
                    }
                }
            }
            if !s.bound.literal_below(lit) {
                return Err(violation(6, format!("trail literal {i} is not below beta")));
            }
            let instance = s.clauses.iter().any(|c| {
                c.clause
                    .iter()
                    .any(|l| match_atom(&l.atom, &lit.atom, &Subst::new()).is_some())
            });
            if !instance {
                return Err(violation(
                    6,
                    format!("trail literal {i} is not an instance of a clause literal"),
                ));
            }
        }
        if decisions != s.k {
            return Err(violation(
                3,
                format!("decision counter is {}, trail has {decisions} decisions", s.k),
            ));
        }
        Ok(())
    }

    /// Condition 4: every learned clause is derivable from earlier clauses.
    fn learned_entailed(&mut self, s: &ProblemState) -> Result<(), Violation> {
        for c in s.clauses.learned() {
            if self.verified.contains(&c.id) {
                continue;
            }
            let Origin::Learned(d) = &c.origin else {
                unreachable!("learned clauses carry derivations")
            };
            let derived = oracle::replay_derivation(&s.clauses, c.id, d)
                .map_err(|e| violation(4, format!("learned clause {}: {e}", c.id + 1)))?;
            if !is_variant(&derived, &c.clause) {
                return Err(violation(
                    4,
                    format!("learned clause {} differs from its derivation", c.id + 1),
                ));
            }
            self.verified.insert(c.id);
        }
        Ok(())
    }

    /// Condition 5.
    fn conflict_condition(&mut self, s: &ProblemState) -> Result<(), Violation> {
        let closure = match &s.status {
            Status::Top => return Ok(()),
            Status::Bottom => {
                return match &s.refutation {
                    Some(d) if d.result().is_empty() => oracle::replay_derivation(&s.clauses, s.clauses.len(), d)
                        .map(|_| ())
                        .map_err(|e| violation(5, format!("refutation does not replay: {e}"))),
                    _ => Err(violation(5, "bottom status without a derivation of the empty clause")),
                };
            }
            Status::Conflict(c) => c,
        };
        if !closure.is_grounding() {
            return Err(violation(5, "conflict closure is not ground"));
        }
        let ground = closure.ground();
        if !s.trail.falsifies(&ground) {
            return Err(violation(5, "conflict clause is not false under the trail"));
        }
        let Some(d) = &s.derivation else {
            return Err(violation(5, "conflict without a derivation"));
        };
        let derived = oracle::replay_derivation(&s.clauses, s.clauses.len(), d)
            .map_err(|e| violation(5, format!("conflict clause does not replay: {e}")))?;
        if !is_variant(&derived, &closure.clause) {
            return Err(violation(5, "conflict clause differs from its derivation"));
        }
        let fresh = matches!(&self.pool, Some((n, beta, _)) if *n == s.clauses.len() && beta == s.beta());
        if !fresh {
            let pool = s
                .clauses
                .iter()
                .flat_map(|c| bounded_groundings(&c.clause, &s.bound))
                .collect();
            self.pool = Some((s.clauses.len(), s.beta().clone(), pool));
        }
        let pool = &self.pool.as_ref().expect("pool computed above").2;
        match oracle::ground_entails(pool, &ground, self.atom_cap) {
            Ok(true) => Ok(()),
            Ok(false) => Err(violation(5, "bounded groundings do not entail the conflict instance")),
            Err(OracleError::CapExceeded { .. }) => {
                self.skipped += 1;
                Ok(())
            }
        }
    }
}
