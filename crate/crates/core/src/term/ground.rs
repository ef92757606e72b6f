use std::collections::HashSet;

use super::subst::{Subst, Substitutable};
use super::syntax::Clause;
use super::unify::match_atom_into;
use crate::ordering::Bound;

/// All grounding substitutions (restricted to the clause's variables) under
/// which every literal of `clause` is below β, in enumeration order.
pub fn bounded_grounding_substs(clause: &Clause, bound: &Bound) -> Vec<Subst> {
    let mut out = Vec::new();
    extend(clause, 0, Subst::new(), bound, &mut out);
    out
}

fn extend(clause: &Clause, i: usize, s: Subst, bound: &Bound, out: &mut Vec<Subst>) {
    let Some(lit) = clause.literals().get(i) else {
        out.push(s);
        return;
    };
    let inst = lit.atom.apply(&s);
    if inst.is_ground() {
        if bound.atom_below(&inst) {
            extend(clause, i + 1, s, bound, out);
        }
        return;
    }
    for target in bound.atoms_with_pred(lit.atom.pred) {
        let mut ext = s.clone();
        if match_atom_into(&mut ext, &lit.atom, target).is_some() {
            extend(clause, i + 1, ext, bound, out);
        }
    }
}

/// `Gnd^{≺_B β}(clause)`: its distinct ground instances with all literals
/// below β (distinct as multisets).
pub fn bounded_groundings(clause: &Clause, bound: &Bound) -> Vec<Clause> {
    let mut seen = HashSet::new();
    bounded_grounding_substs(clause, bound)
        .into_iter()
        .map(|s| clause.apply(&s))
        .filter(|g| seen.insert(g.canonical()))
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ordering::{AtomOrdering, OrderingKind};
    use crate::term::{Atom, Literal, Signature, Term};

    #[test]
    fn grow_example_groundings() {
        let mut sig = Signature::new();
        let a = sig.function("a", 0).unwrap();
        let g = sig.function("g", 1).unwrap();
        let p = sig.predicate("P", 1).unwrap();
        let ord = Arc::new(AtomOrdering::new(OrderingKind::Kbo, &sig, &[a, g, p]).unwrap());
        let ga = Term::App(g, vec![Term::constant(a)]);
        let gga = Term::App(g, vec![ga.clone()]);
        let bound = Bound::new(Literal::pos(Atom::new(p, vec![gga])), ord, 100).unwrap();
        let px = Clause::new(vec![Literal::pos(Atom::new(p, vec![Term::var(0)]))]);
        assert_eq!(
            bounded_groundings(&px, &bound),
            vec![
                Clause::new(vec![Literal::pos(Atom::new(p, vec![Term::constant(a)]))]),
                Clause::new(vec![Literal::pos(Atom::new(p, vec![ga.clone()]))]),
            ]
        );
        // ¬P(x) ∨ P(g(x)) has only the instance x ↦ a below β.
        let step = Clause::new(vec![
            Literal::neg(Atom::new(p, vec![Term::var(0)])),
            Literal::pos(Atom::new(p, vec![Term::App(g, vec![Term::var(0)])])),
        ]);
        assert_eq!(bounded_grounding_substs(&step, &bound).len(), 1);
    }
}
