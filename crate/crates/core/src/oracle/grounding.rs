use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::ordering::Bound;
use crate::term::{Clause, Subst, Substitutable, Term};

/// `Gnd^{≺_B β}(clause)` by brute force: every assignment of candidate
/// terms to the clause variables, kept when all literals compare below β.
/// Candidates are the argument subterms of the atoms below β, which
/// contain every term that can occur in a bounded instance.
pub fn brute_groundings(clause: &Clause, bound: &Bound) -> Vec<Clause> {
    let candidates = candidate_terms(bound);
    let vars: Vec<_> = clause.vars().into_iter().collect();
    let ord = bound.ordering();
    let beta = &bound.beta().atom;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut choice = vec![0usize; vars.len()];
    if !vars.is_empty() && candidates.is_empty() {
        return out;
    }
    loop {
        let s: Subst = vars
            .iter()
            .zip(&choice)
            .map(|(v, &i)| (*v, candidates[i].clone()))
            .collect();
        let g = clause.apply(&s);
        if g.iter().all(|l| ord.compare_atoms(&l.atom, beta) == Ordering::Less) && seen.insert(g.canonical()) {
            out.push(g);
        }
        // next assignment in odometer order
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < candidates.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn candidate_terms(bound: &Bound) -> Vec<Term> {
    fn collect(t: &Term, out: &mut BTreeSet<Term>) {
        if let Term::App(_, args) = t {
            args.iter().for_each(|a| collect(a, out));
        }
        out.insert(t.clone());
    }
    let mut set = BTreeSet::new();
    for a in bound.atoms() {
        a.args.iter().for_each(|t| collect(t, &mut set));
    }
    set.into_iter().collect()
}
