//! Unification, one-sided matching and the instance relations built on
//! matching (subsumption, variants).

use super::subst::{Subst, Substitutable};
use super::syntax::{Atom, Clause, Literal, Term, Var};

/// Most general unifier of two terms (Robinson, with occurs check).
///
/// The result is idempotent and introduces no variables beyond those of the
/// inputs.
pub fn mgu_terms(a: &Term, b: &Term) -> Option<Subst> {
    let mut s = Subst::new();
    unify_into(&mut s, a, b)?;
    Some(s)
}

pub fn mgu_atoms(a: &Atom, b: &Atom) -> Option<Subst> {
    let mut s = Subst::new();
    unify_atoms_into(&mut s, a, b)?;
    Some(s)
}

/// Most general unifier of two literals; polarities must agree.
pub fn mgu(a: &Literal, b: &Literal) -> Option<Subst> {
    if a.positive != b.positive {
        return None;
    }
    mgu_atoms(&a.atom, &b.atom)
}

/// Simultaneous unifier of all given literals (iterated mgu).
pub fn mgu_all(lits: &[&Literal]) -> Option<Subst> {
    let mut s = Subst::new();
    if let Some((first, rest)) = lits.split_first() {
        for l in rest {
            if l.positive != first.positive {
                return None;
            }
            unify_atoms_into(&mut s, &first.atom, &l.atom)?;
        }
    }
    Some(s)
}

fn unify_atoms_into(s: &mut Subst, a: &Atom, b: &Atom) -> Option<()> {
    if a.pred != b.pred || a.args.len() != b.args.len() {
        return None;
    }
    for (x, y) in a.args.iter().zip(&b.args) {
        unify_into(s, x, y)?;
    }
    Some(())
}

/// Extends the idempotent substitution `s` so that it also unifies `a` and `b`.
fn unify_into(s: &mut Subst, a: &Term, b: &Term) -> Option<()> {
    let mut stack = vec![(a.apply(s), b.apply(s))];
    while let Some((x, y)) = stack.pop() {
        let x = x.apply(s);
        let y = y.apply(s);
        match (x, y) {
            (Term::Var(v), Term::Var(w)) if v == w => {}
            (Term::Var(v), t) | (t, Term::Var(v)) => {
                if t.contains_var(v) {
                    return None;
                }
                eliminate(s, v, t);
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return None;
                }
                stack.extend(xs.into_iter().zip(ys));
            }
        }
    }
    Some(())
}

/// Adds `v ↦ t` to an idempotent substitution, keeping it idempotent.
fn eliminate(s: &mut Subst, v: Var, t: Term) {
    let single = Subst::from_pairs([(v, t.clone())]);
    let updated: Vec<(Var, Term)> = s.iter().map(|(w, u)| (*w, u.apply(&single))).collect();
    let mut out = Subst::from_pairs(updated);
    out.bind(v, t);
    *s = out;
}

/// One-sided matching: extends `partial` to some `τ` with `pattern·τ = target`.
///
/// Only variables of `pattern` are bound; variables occurring in `target`
/// are treated as constants.
pub fn match_term(pattern: &Term, target: &Term, partial: &Subst) -> Option<Subst> {
    let mut s = partial.clone();
    match_term_into(&mut s, pattern, target)?;
    Some(s)
}

pub fn match_atom(pattern: &Atom, target: &Atom, partial: &Subst) -> Option<Subst> {
    let mut s = partial.clone();
    match_atom_into(&mut s, pattern, target)?;
    Some(s)
}

pub fn match_literal(pattern: &Literal, target: &Literal, partial: &Subst) -> Option<Subst> {
    if pattern.positive != target.positive {
        return None;
    }
    match_atom(&pattern.atom, &target.atom, partial)
}

pub(crate) fn match_atom_into(s: &mut Subst, pattern: &Atom, target: &Atom) -> Option<()> {
    if pattern.pred != target.pred || pattern.args.len() != target.args.len() {
        return None;
    }
    for (p, t) in pattern.args.iter().zip(&target.args) {
        match_term_into(s, p, t)?;
    }
    Some(())
}

fn match_term_into(s: &mut Subst, pattern: &Term, target: &Term) -> Option<()> {
    match pattern {
        Term::Var(v) => match s.get(*v) {
            Some(bound) => (bound == target).then_some(()),
            None => {
                s.bind(*v, target.clone());
                Some(())
            }
        },
        Term::App(f, ps) => match target {
            Term::App(g, ts) if f == g && ps.len() == ts.len() => {
                for (p, t) in ps.iter().zip(ts) {
                    match_term_into(s, p, t)?;
                }
                Some(())
            }
            _ => None,
        },
    }
}

/// Multiset subsumption: some `θ` maps the literals of `general`
/// injectively onto literals of `specific`.
pub fn subsumes(general: &Clause, specific: &Clause) -> Option<Subst> {
    if general.len() > specific.len() {
        return None;
    }
    let mut used = vec![false; specific.len()];
    subsume_search(general.literals(), specific.literals(), &mut used, Subst::new(), true)
}

/// Set subsumption: every literal of `general·θ` occurs in `specific`,
/// several literals may map onto the same one. Implies `general ⊨ specific`.
pub fn set_subsumes(general: &Clause, specific: &Clause) -> Option<Subst> {
    let mut used = vec![false; specific.len()];
    subsume_search(general.literals(), specific.literals(), &mut used, Subst::new(), false)
}

fn subsume_search(rest: &[Literal], target: &[Literal], used: &mut [bool], s: Subst, injective: bool) -> Option<Subst> {
    let Some((lit, rest)) = rest.split_first() else {
        return Some(s);
    };
    for (i, t) in target.iter().enumerate() {
        if injective && used[i] {
            continue;
        }
        if let Some(ext) = match_literal(lit, t, &s) {
            used[i] = true;
            let found = subsume_search(rest, target, used, ext, injective);
            used[i] = false;
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// True iff the clauses are equal as multisets up to variable renaming.
pub fn is_variant(a: &Clause, b: &Clause) -> bool {
    a.len() == b.len() && subsumes(a, b).is_some() && subsumes(b, a).is_some()
}
