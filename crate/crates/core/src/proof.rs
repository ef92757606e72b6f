//! Derivations of learned clauses and refutations, in a form that can be
//! replayed with nothing but unification and substitution.

use std::fmt::Write;

use crate::term::{Clause, Closure, Render, Signature, Subst};

/// Zero-based index into the clause database: input clauses first, then
/// learned clauses in learning order. Printed one-based.
pub type ClauseId = usize;

/// One conflict-resolution step. `result` is the normalized conflict clause
/// after the step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Resolves literal `literal` of the conflict clause with the trail
    /// closure `annotation`, whose clause is the factor of `source·delta`
    /// annotated by Propagate; `pivot` is the propagated literal's position.
    Resolve {
        literal: usize,
        source: ClauseId,
        pivot: usize,
        delta: Subst,
        annotation: Closure,
        result: Clause,
    },
    /// Merges literal `drop` into literal `keep`.
    Factorize { keep: usize, drop: usize, result: Clause },
}

impl Step {
    pub fn result(&self) -> &Clause {
        match self {
            Step::Resolve { result, .. } | Step::Factorize { result, .. } => result,
        }
    }
}

/// A conflict closure `D·σ` followed by Resolve/Factorize steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub conflict: ClauseId,
    pub conflict_clause: Clause,
    pub subst: Subst,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn new(conflict: ClauseId, conflict_clause: Clause, subst: Subst) -> Self {
        Derivation {
            conflict,
            conflict_clause,
            subst,
            steps: Vec::new(),
        }
    }

    /// The clause derived so far.
    pub fn result(&self) -> &Clause {
        self.steps.last().map(Step::result).unwrap_or(&self.conflict_clause)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LearnedEntry {
    pub id: ClauseId,
    pub derivation: Derivation,
}

/// A refutation: every learned clause with its derivation and the id of
/// the empty clause. The empty clause is either an input clause or the
/// result of the last entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub learned: Vec<LearnedEntry>,
    pub refutation: ClauseId,
}

impl Proof {
    /// Line-oriented text form; clause ids are printed one-based.
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        for entry in &self.learned {
            render_derivation(entry.id, &entry.derivation, sig, &mut out);
        }
        let _ = writeln!(out, "refutation: clause {} = $false", self.refutation + 1);
        out
    }
}

pub fn render_derivation(id: ClauseId, d: &Derivation, sig: &Signature, out: &mut String) {
    let _ = writeln!(out, "learned {}:", id + 1);
    let _ = writeln!(out, "  conflict {} {}", d.conflict + 1, d.subst.show(sig));
    let _ = writeln!(out, "  clause {}", d.conflict_clause.show(sig));
    for step in &d.steps {
        match step {
            Step::Resolve {
                literal,
                source,
                pivot,
                delta,
                annotation,
                result,
            } => {
                let _ = writeln!(
                    out,
                    "  resolve {} {} {} {} {}",
                    literal,
                    source + 1,
                    pivot,
                    delta.show(sig),
                    annotation.show(sig)
                );
                let _ = writeln!(out, "  clause {}", result.show(sig));
            }
            Step::Factorize { keep, drop, result } => {
                let _ = writeln!(out, "  factorize {keep} {drop}");
                let _ = writeln!(out, "  clause {}", result.show(sig));
            }
        }
    }
}
