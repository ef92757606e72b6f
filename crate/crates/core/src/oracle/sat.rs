use std::collections::HashMap;

use thiserror::Error;

use crate::term::{Atom, Clause, Literal};

/// Default limit on distinct atoms in a ground satisfiability query.
pub const DEFAULT_ATOM_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("ground problem has {atoms} atoms, more than the cap of {cap}")]
    CapExceeded { atoms: usize, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    /// A total assignment over the atoms of the problem, as true literals.
    Satisfiable(Vec<Literal>),
    Unsatisfiable,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Satisfiable(_))
    }
}

/// Ground clauses over atom indices; literal `i + 1` is atom `i` positive,
/// `-(i + 1)` negative.
struct Encoded {
    atoms: Vec<Atom>,
    clauses: Vec<Vec<i32>>,
}

fn encode(clauses: &[Clause], cap: usize) -> Result<Encoded, OracleError> {
    let mut index: HashMap<&Atom, i32> = HashMap::new();
    let mut atoms = Vec::new();
    let mut out = Vec::with_capacity(clauses.len());
    for c in clauses {
        assert!(c.is_ground(), "oracle needs ground clauses");
        let mut lits = Vec::with_capacity(c.len());
        for l in c {
            let next = index.len() as i32 + 1;
            let v = *index.entry(&l.atom).or_insert_with(|| {
                atoms.push(l.atom.clone());
                next
            });
            lits.push(if l.positive { v } else { -v });
        }
        lits.sort_unstable();
        lits.dedup();
        if has_complementary(&lits) {
            continue;
        }
        out.push(lits);
    }
    if atoms.len() > cap {
        return Err(OracleError::CapExceeded {
            atoms: atoms.len(),
            cap,
        });
    }
    Ok(Encoded { atoms, clauses: out })
}

fn has_complementary(lits: &[i32]) -> bool {
    lits.iter().any(|l| lits.contains(&-l))
}

fn decode(enc: &Encoded, assignment: &[Option<bool>]) -> Vec<Literal> {
    enc.atoms
        .iter()
        .zip(assignment)
        .map(|(a, v)| Literal::new(v.unwrap_or(false), a.clone()))
        .collect()
}

/// Satisfiability of a set of ground clauses by DPLL with unit propagation.
pub fn ground_sat(clauses: &[Clause], cap: usize) -> Result<SatResult, OracleError> {
    let enc = encode(clauses, cap)?;
    let mut assignment = vec![None; enc.atoms.len()];
    if dpll(&enc.clauses, &mut assignment) {
        Ok(SatResult::Satisfiable(decode(&enc, &assignment)))
    } else {
        Ok(SatResult::Unsatisfiable)
    }
}

fn lit_value(l: i32, assignment: &[Option<bool>]) -> Option<bool> {
    assignment[(l.unsigned_abs() - 1) as usize].map(|v| v == (l > 0))
}

fn dpll(clauses: &[Vec<i32>], assignment: &mut Vec<Option<bool>>) -> bool {
    let mut trail = Vec::new();
    loop {
        let mut unit = None;
        for c in clauses {
            let mut unassigned = None;
            let mut count = 0;
            let mut satisfied = false;
            for &l in c {
                match lit_value(l, assignment) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        count += 1;
                        unassigned = Some(l);
                    }
                }
            }
            if satisfied {
                continue;
            }
            if count == 0 {
                for v in trail {
                    assignment[v] = None;
                }
                return false;
            }
            if count == 1 {
                unit = unassigned;
                break;
            }
        }
        match unit {
            Some(l) => {
                let v = (l.unsigned_abs() - 1) as usize;
                assignment[v] = Some(l > 0);
                trail.push(v);
            }
            None => break,
        }
    }
    let Some(v) = assignment.iter().position(Option::is_none) else {
        return true;
    };
    for value in [true, false] {
        assignment[v] = Some(value);
        if dpll(clauses, assignment) {
            return true;
        }
    }
    assignment[v] = None;
    for v in trail {
        assignment[v] = None;
    }
    false
}

/// Satisfiability by enumerating all assignments; a second, independent
/// decision procedure for cross-checking.
pub fn truth_table_sat(clauses: &[Clause], cap: usize) -> Result<SatResult, OracleError> {
    let enc = encode(clauses, cap.min(24))?;
    let n = enc.atoms.len();
    for bits in 0u64..(1u64 << n) {
        let assignment: Vec<Option<bool>> = (0..n).map(|i| Some(bits >> i & 1 == 1)).collect();
        let ok = enc
            .clauses
            .iter()
            .all(|c| c.iter().any(|&l| lit_value(l, &assignment) == Some(true)));
        if ok {
            return Ok(SatResult::Satisfiable(decode(&enc, &assignment)));
        }
    }
    Ok(SatResult::Unsatisfiable)
}

/// `S ⊨ C` for ground `S` and `C`: `S ∪ {comp(L) | L ∈ C}` is unsatisfiable.
pub fn ground_entails(set: &[Clause], clause: &Clause, cap: usize) -> Result<bool, OracleError> {
    let mut query: Vec<Clause> = set.to_vec();
    query.extend(clause.iter().map(|l| Clause::new(vec![l.complement()])));
    Ok(!ground_sat(&query, cap)?.is_sat())
}
