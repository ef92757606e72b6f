use thiserror::Error;

use crate::proof::{ClauseId, Derivation, Proof, Step};
use crate::state::ClauseDb;
use crate::term::{mgu, normalize_clause, subsumes, Clause, Closure, Literal, Subst, Substitutable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("clause {0} is not available at this point")]
    UnknownClause(usize),
    #[error("step {step}: {reason}")]
    StepMismatch { step: usize, reason: String },
    #[error("learned clause {found} is out of sequence, expected {expected}")]
    OutOfSequence { expected: usize, found: usize },
    #[error("clause {0} is not the empty clause")]
    NotRefutation(usize),
}

/// Random access to clauses by id.
pub trait ClauseSource {
    fn clause_by_id(&self, id: ClauseId) -> Option<&Clause>;
}

impl ClauseSource for ClauseDb {
    fn clause_by_id(&self, id: ClauseId) -> Option<&Clause> {
        (id < self.len()).then(|| self.clause(id))
    }
}

impl ClauseSource for [Clause] {
    fn clause_by_id(&self, id: ClauseId) -> Option<&Clause> {
        self.get(id)
    }
}

impl ClauseSource for Vec<Clause> {
    fn clause_by_id(&self, id: ClauseId) -> Option<&Clause> {
        self.get(id)
    }
}

fn mismatch(step: usize, reason: impl Into<String>) -> ProofError {
    ProofError::StepMismatch {
        step,
        reason: reason.into(),
    }
}

/// Replays a derivation using clauses with id below `limit` and returns the
/// derived clause. Step 0 is the conflict; steps are numbered from 1.
pub fn replay_derivation<S: ClauseSource + ?Sized>(
    clauses: &S,
    limit: ClauseId,
    d: &Derivation,
) -> Result<Clause, ProofError> {
    let lookup = |id: ClauseId| {
        if id < limit {
            clauses.clause_by_id(id).ok_or(ProofError::UnknownClause(id + 1))
        } else {
            Err(ProofError::UnknownClause(id + 1))
        }
    };
    let start = lookup(d.conflict)?;
    if normalize_clause(start) != normalize_clause(&d.conflict_clause) {
        return Err(mismatch(0, "conflict clause differs from the cited clause"));
    }
    let mut current = Closure::new(d.conflict_clause.clone(), d.subst.clone());
    if !current.is_grounding() {
        return Err(mismatch(0, "conflict substitution is not grounding"));
    }
    for (n, step) in d.steps.iter().enumerate() {
        let n = n + 1;
        let replayed = match step {
            Step::Resolve {
                literal,
                source,
                pivot,
                delta,
                annotation,
                ..
            } => {
                let parent = lookup(*source)?;
                if !is_factor(&annotation.clause, &parent.apply(delta)) {
                    return Err(mismatch(n, "trail closure is not a factor of its source clause"));
                }
                if !annotation.is_grounding() {
                    return Err(mismatch(n, "trail closure is not ground"));
                }
                let (Some(l), Some(k)) = (
                    current.clause.literals().get(*literal),
                    annotation.clause.literals().get(*pivot),
                ) else {
                    return Err(mismatch(n, "literal position out of range"));
                };
                if l.apply(&current.subst) != k.apply(&annotation.subst).complement() {
                    return Err(mismatch(n, "resolved literals are not complementary instances"));
                }
                let offset = current.clause.vars().last().map_or(0, |v| v.0 + 1);
                let offset = offset.max(current.subst.domain().last().map_or(0, |v| v.0 + 1));
                let other = annotation.shifted(offset);
                let k = &other.clause.literals()[*pivot];
                let Some(eta) = mgu(l, &k.complement()) else {
                    return Err(mismatch(n, "resolved literals do not unify"));
                };
                let lits: Vec<Literal> = current
                    .clause
                    .without(*literal)
                    .iter()
                    .chain(other.clause.without(*pivot).iter())
                    .map(|x| x.apply(&eta))
                    .collect();
                Closure::new(Clause::new(lits), current.subst.union(&other.subst)).normalized()
            }
            Step::Factorize { keep, drop, .. } => {
                let lits = current.clause.literals();
                let (Some(a), Some(b)) = (lits.get(*keep), lits.get(*drop)) else {
                    return Err(mismatch(n, "literal position out of range"));
                };
                if keep == drop || a.apply(&current.subst) != b.apply(&current.subst) {
                    return Err(mismatch(n, "factorized literals have different instances"));
                }
                let Some(eta) = mgu(a, b) else {
                    return Err(mismatch(n, "factorized literals do not unify"));
                };
                let clause = current.clause.without(*drop).apply(&eta);
                Closure::new(clause, current.subst.clone()).normalized()
            }
        };
        current = adopt(n, replayed, step.result())?;
    }
    Ok(current.clause)
}

/// Continues with the recorded clause once it is known to be a variant of
/// the replayed one, carrying the grounding over.
fn adopt(step: usize, replayed: Closure, recorded: &Clause) -> Result<Closure, ProofError> {
    if &replayed.clause == recorded {
        return Ok(replayed);
    }
    let forward = subsumes(&replayed.clause, recorded);
    let backward = subsumes(recorded, &replayed.clause);
    let (Some(rho), true) = (forward, backward.is_some() && replayed.clause.len() == recorded.len()) else {
        return Err(mismatch(
            step,
            "recorded clause is not a variant of the replayed clause",
        ));
    };
    let mut subst = Subst::new();
    for (v, t) in rho.iter() {
        if let (crate::term::Term::Var(w), Some(g)) = (t, replayed.subst.get(*v)) {
            subst.bind(*w, g.clone());
        }
    }
    let adopted = Closure::new(recorded.clone(), subst);
    if adopted.ground().canonical() != replayed.ground().canonical() {
        return Err(mismatch(step, "recorded clause has a different ground instance"));
    }
    Ok(adopted)
}

/// `factor` consists of literals of `clause` with only duplicates removed:
/// same literal set, and a sub-multiset.
fn is_factor(factor: &Clause, clause: &Clause) -> bool {
    let mut rest: Vec<&Literal> = clause.iter().collect();
    for l in factor {
        match rest.iter().position(|x| *x == l) {
            Some(i) => {
                rest.swap_remove(i);
            }
            None => return false,
        }
    }
    rest.iter().all(|l| factor.contains(l))
}

/// Checks a refutation of `inputs`: every learned clause replays from input
/// and earlier learned clauses, and the refutation clause is empty.
pub fn check_proof(inputs: &[Clause], proof: &Proof) -> Result<(), ProofError> {
    let mut clauses: Vec<Clause> = inputs.iter().map(normalize_clause).collect();
    for entry in &proof.learned {
        if entry.id != clauses.len() {
            return Err(ProofError::OutOfSequence {
                expected: clauses.len() + 1,
                found: entry.id + 1,
            });
        }
        let derived = replay_derivation(&clauses, entry.id, &entry.derivation)?;
        clauses.push(derived);
    }
    match clauses.get(proof.refutation) {
        Some(c) if c.is_empty() => Ok(()),
        Some(_) => Err(ProofError::NotRefutation(proof.refutation + 1)),
        None => Err(ProofError::UnknownClause(proof.refutation + 1)),
    }
}
