use std::collections::HashSet;

use thiserror::Error;

use super::grounding::brute_groundings;
use crate::ordering::Bound;
use crate::term::{Clause, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model contains both a literal and its complement")]
    Inconsistent(Literal),
    #[error("bounded ground instance is false in the model")]
    Falsified(Clause),
}

/// Checks that the literal set makes every clause of `Gnd^{≺_B β}(N)` true.
pub fn check_model(model: &[Literal], clauses: &[Clause], bound: &Bound) -> Result<(), ModelError> {
    let set: HashSet<&Literal> = model.iter().collect();
    if let Some(l) = model.iter().find(|l| set.contains(&l.complement())) {
        return Err(ModelError::Inconsistent(l.clone()));
    }
    for c in clauses {
        for g in brute_groundings(c, bound) {
            if !g.iter().any(|l| set.contains(l)) {
                return Err(ModelError::Falsified(g));
            }
        }
    }
    Ok(())
}
