use std::cmp::Ordering;

use super::grounding::brute_groundings;
use super::sat::{ground_entails, OracleError};
use crate::ordering::{Bound, TrailOrder};
use crate::term::Clause;

/// Whether `clause` is redundant with respect to `pool` under the snapshot
/// ordering `≺_Γ`: every β-bounded ground instance `C'` is either an
/// instance in the pool or entailed by the pool instances `D ⪯_Γ C'`.
///
/// Bounded groundings suffice on both sides: clauses `⪯_Γ C'` only contain
/// trail literals or literals `≺_B`-below some literal of `C'`.
pub fn is_redundant_snapshot(
    clause: &Clause,
    pool: &[Clause],
    order: &TrailOrder,
    bound: &Bound,
    cap: usize,
) -> Result<bool, OracleError> {
    let pool_ground: Vec<Clause> = pool.iter().flat_map(|c| brute_groundings(c, bound)).collect();
    for instance in brute_groundings(clause, bound) {
        let smaller: Vec<Clause> = pool_ground
            .iter()
            .filter(|d| order.compare_clauses(d, &instance) != Ordering::Greater)
            .cloned()
            .collect();
        if smaller.iter().any(|d| d.multiset_eq(&instance)) {
            continue;
        }
        if !ground_entails(&smaller, &instance, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}
