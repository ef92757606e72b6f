//! Applicability searches: false clause instances, propagation candidates
//! and decision candidates. All searches visit clauses by id, literals by
//! position, trail candidates left to right and atoms in ascending ≺_B
//! order, so results are deterministic.

use std::ops::ControlFlow;

use crate::proof::ClauseId;
use crate::state::{ProblemState, Trail, Truth};
use crate::term::{match_atom, Clause, Literal, Subst, Substitutable};

/// Enumerates substitutions making every literal of `lits` false in the
/// first `limit` trail entries. `visit` receives the substitution and the
/// highest trail position used. With `must_use`, at least one literal has
/// to be falsified by that position.
pub(crate) fn false_instances(
    trail: &Trail,
    lits: &[Literal],
    limit: usize,
    must_use: Option<usize>,
    visit: &mut dyn FnMut(&Subst, Option<usize>) -> ControlFlow<()>,
) -> ControlFlow<()> {
    #[allow(clippy::too_many_arguments)]
    fn go(
        trail: &Trail,
        lits: &[Literal],
        limit: usize,
        must_use: Option<usize>,
        s: &Subst,
        max_pos: Option<usize>,
        used: bool,
        visit: &mut dyn FnMut(&Subst, Option<usize>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some((l, rest)) = lits.split_first() else {
            if must_use.is_none() || used {
                return visit(s, max_pos);
            }
            return ControlFlow::Continue(());
        };
        let inst = l.atom.apply(s);
        if inst.is_ground() {
            if let Some(p) = trail.position(&inst) {
                let entry = &trail.entries()[p];
                if p < limit && entry.literal.positive != l.positive {
                    let used = used || Some(p) == must_use;
                    return go(trail, rest, limit, must_use, s, max_pos.max(Some(p)), used, visit);
                }
            }
            return ControlFlow::Continue(());
        }
        for &p in trail.with_sign(l.atom.pred, !l.positive) {
            if p >= limit {
                break;
            }
            let target = &trail.entries()[p].literal.atom;
            if let Some(ext) = match_atom(&l.atom, target, s) {
                let used = used || Some(p) == must_use;
                go(trail, rest, limit, must_use, &ext, max_pos.max(Some(p)), used, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
    go(trail, lits, limit, must_use, &Subst::new(), None, false, visit)
}

/// First clause of `N ∪ U` with a grounding false in the first `limit`
/// trail entries.
pub fn find_false_instance_in_prefix(s: &ProblemState, limit: usize) -> Option<(ClauseId, Subst)> {
    find_false_instance_using(s, limit, None)
}

/// First clause of `N ∪ U` with a grounding false in the trail.
pub fn find_false_instance(s: &ProblemState) -> Option<(ClauseId, Subst)> {
    find_false_instance_using(s, s.trail.len(), None)
}

/// Like [`find_false_instance`], restricted to instances in which the
/// trail entry at `position` falsifies at least one literal.
pub fn find_false_instance_using(s: &ProblemState, limit: usize, must_use: Option<usize>) -> Option<(ClauseId, Subst)> {
    for c in s.clauses.iter() {
        let mut found = None;
        let _ = false_instances(&s.trail, c.clause.literals(), limit, must_use, &mut |sub, _| {
            found = Some(sub.clone());
            ControlFlow::Break(())
        });
        if let Some(sub) = found {
            return Some((c.id, sub));
        }
    }
    None
}

/// Length of the shortest trail prefix in which some grounding of `clause`
/// is false, if any.
pub fn min_false_prefix(trail: &Trail, clause: &Clause) -> Option<usize> {
    let mut best: Option<usize> = None;
    let _ = false_instances(trail, clause.literals(), trail.len(), None, &mut |_, max_pos| {
        let len = max_pos.map_or(0, |p| p + 1);
        if best.is_none_or(|b| len < b) {
            best = Some(len);
        }
        if len == 0 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    best
}

/// A Propagate instance: clause `clause`, propagated literal position
/// `literal`, grounding `subst` of the whole clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Propagation {
    pub clause: ClauseId,
    pub literal: usize,
    pub subst: Subst,
    pub propagated: Literal,
}

/// Visits every Propagate instance. Each other literal of the clause is
/// either false in the trail or becomes a copy of the propagated literal.
pub fn propagations(s: &ProblemState, visit: &mut dyn FnMut(Propagation) -> ControlFlow<()>) -> ControlFlow<()> {
    for c in s.clauses.iter() {
        let lits = c.clause.literals();
        for i in 0..lits.len() {
            let others: Vec<usize> = (0..lits.len()).filter(|&j| j != i).collect();
            propagate_split(s, c.id, lits, i, &others, 0, &Subst::new(), &mut Vec::new(), visit)?;
        }
    }
    ControlFlow::Continue(())
}

#[allow(clippy::too_many_arguments)]
fn propagate_split(
    s: &ProblemState,
    id: ClauseId,
    lits: &[Literal],
    pivot: usize,
    others: &[usize],
    next: usize,
    sub: &Subst,
    copies: &mut Vec<usize>,
    visit: &mut dyn FnMut(Propagation) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if next == others.len() {
        return finish_propagation(s, id, lits, pivot, sub, copies, visit);
    }
    let l = &lits[others[next]];
    // l false in the trail
    let inst = l.atom.apply(sub);
    if inst.is_ground() {
        if s.trail.value(&Literal::new(l.positive, inst)) == Truth::False {
            propagate_split(s, id, lits, pivot, others, next + 1, sub, copies, visit)?;
        }
    } else {
        for &p in s.trail.with_sign(l.atom.pred, !l.positive) {
            let target = &s.trail.entries()[p].literal.atom;
            if let Some(ext) = match_atom(&l.atom, target, sub) {
                propagate_split(s, id, lits, pivot, others, next + 1, &ext, copies, visit)?;
            }
        }
    }
    // l becomes a copy of the propagated literal
    if l.positive == lits[pivot].positive && l.atom.pred == lits[pivot].atom.pred {
        copies.push(others[next]);
        let r = propagate_split(s, id, lits, pivot, others, next + 1, sub, copies, visit);
        copies.pop();
        r?;
    }
    ControlFlow::Continue(())
}

fn finish_propagation(
    s: &ProblemState,
    id: ClauseId,
    lits: &[Literal],
    pivot: usize,
    sub: &Subst,
    copies: &[usize],
    visit: &mut dyn FnMut(Propagation) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let l = &lits[pivot];
    let mut emit = |ext: Subst, atom: crate::term::Atom| -> ControlFlow<()> {
        let mut full = ext;
        for &j in copies {
            match match_atom(&lits[j].atom, &atom, &full) {
                Some(f) => full = f,
                None => return ControlFlow::Continue(()),
            }
        }
        visit(Propagation {
            clause: id,
            literal: pivot,
            subst: full,
            propagated: Literal::new(l.positive, atom),
        })
    };
    let inst = l.atom.apply(sub);
    if inst.is_ground() {
        if !s.trail.is_defined(&Literal::new(l.positive, inst.clone())) && s.bound.atom_below(&inst) {
            return emit(sub.clone(), inst);
        }
        return ControlFlow::Continue(());
    }
    for target in s.bound.atoms_with_pred(l.atom.pred) {
        if s.trail.position(target).is_some() {
            continue;
        }
        if let Some(ext) = match_atom(&l.atom, target, sub) {
            emit(ext, target.clone())?;
        }
    }
    ControlFlow::Continue(())
}

/// First Propagate instance, if any.
pub fn first_propagation(s: &ProblemState) -> Option<Propagation> {
    let mut found = None;
    let _ = propagations(s, &mut |p| {
        found = Some(p);
        ControlFlow::Break(())
    });
    found
}

/// True iff `atom` is an instance of the atom of some literal of `N ∪ U`.
fn is_clause_atom_instance(s: &ProblemState, atom: &crate::term::Atom) -> bool {
    s.clauses.iter().any(|c| {
        c.clause
            .iter()
            .any(|l| match_atom(&l.atom, atom, &Subst::new()).is_some())
    })
}

/// Decide candidates: undefined literals below β whose atom is an instance
/// of a clause literal's atom, both polarities, positive first, atoms in
/// ascending ≺_B order.
pub fn decision_candidates(s: &ProblemState) -> Vec<Literal> {
    let mut out = Vec::new();
    for atom in s.bound.atoms() {
        if s.trail.position(atom).is_some() || !is_clause_atom_instance(s, atom) {
            continue;
        }
        out.push(Literal::pos(atom.clone()));
        out.push(Literal::neg(atom.clone()));
    }
    out
}

/// A decision is reasonable if it does not make any clause instance false.
pub fn is_reasonable(s: &mut ProblemState, lit: &Literal) -> bool {
    let level = s.k + 1;
    s.trail.push(lit.clone(), crate::state::Annotation::Decision(level));
    let pos = s.trail.len() - 1;
    let conflict = find_false_instance_using(s, s.trail.len(), Some(pos)).is_some();
    s.trail.pop();
    !conflict
}

/// All reasonable Decide candidates.
pub fn reasonable_decisions(s: &mut ProblemState) -> Vec<Literal> {
    decision_candidates(s)
        .into_iter()
        .filter(|l| is_reasonable(s, l))
        .collect()
}
