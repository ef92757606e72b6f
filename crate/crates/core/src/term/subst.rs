use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::syntax::{Atom, Clause, Literal, Term, Var};

/// Finite substitution; `dom` holds exactly the variables that are moved.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subst(BTreeMap<Var, Term>);

impl Subst {
    pub fn new() -> Self {
        Subst(BTreeMap::new())
    }

    pub fn identity() -> Self {
        Subst::new()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, Term)>>(pairs: I) -> Self {
        let mut s = Subst::new();
        for (v, t) in pairs {
            s.bind(v, t);
        }
        s
    }

    /// Adds `v ↦ t`; trivial bindings `v ↦ v` are dropped.
    pub fn bind(&mut self, v: Var, t: Term) {
        if t == Term::Var(v) {
            self.0.remove(&v);
        } else {
            self.0.insert(v, t);
        }
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.0.get(&v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.0.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.keys().copied()
    }

    pub fn is_ground(&self) -> bool {
        self.0.values().all(Term::is_ground)
    }

    /// True iff applying `self` to `x` yields a ground object.
    pub fn grounds<T: Substitutable>(&self, x: &T) -> bool {
        x.apply(self).is_ground_value()
    }

    /// Keeps only the bindings for variables in `vars`.
    pub fn restrict(&self, vars: &BTreeSet<Var>) -> Subst {
        Subst(
            self.0
                .iter()
                .filter(|(v, _)| vars.contains(v))
                .map(|(v, t)| (*v, t.clone()))
                .collect(),
        )
    }

    /// Composition `self ∘ then`: first `self`, then `then`.
    pub fn compose(&self, then: &Subst) -> Subst {
        let mut out = Subst::new();
        for (v, t) in &self.0 {
            out.bind(*v, t.apply(then));
        }
        for (v, t) in &then.0 {
            if !self.0.contains_key(v) {
                out.bind(*v, t.clone());
            }
        }
        out
    }

    /// Union of two substitutions with disjoint domains; bindings of `self`
    /// win on overlap.
    pub fn union(&self, other: &Subst) -> Subst {
        let mut out = other.clone();
        for (v, t) in &self.0 {
            out.0.insert(*v, t.clone());
        }
        out
    }

    pub(crate) fn max_var(&self) -> Option<u32> {
        self.0
            .iter()
            .flat_map(|(v, t)| std::iter::once(Some(v.0)).chain(std::iter::once(t.max_var())))
            .flatten()
            .max()
    }

    pub(crate) fn map_vars(&self, f: &mut impl FnMut(Var) -> Var) -> Subst {
        let mut out = Subst::new();
        for (v, t) in &self.0 {
            out.bind(f(*v), t.map_vars(f));
        }
        out
    }
}

impl FromIterator<(Var, Term)> for Subst {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        Subst::from_pairs(iter)
    }
}

/// Objects that substitutions act on.
pub trait Substitutable: Sized {
    fn apply(&self, s: &Subst) -> Self;
    fn is_ground_value(&self) -> bool;
}

impl Substitutable for Term {
    fn apply(&self, s: &Subst) -> Term {
        match self {
            Term::Var(v) => s.get(*v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.apply(s)).collect()),
        }
    }

    fn is_ground_value(&self) -> bool {
        self.is_ground()
    }
}

impl Substitutable for Atom {
    fn apply(&self, s: &Subst) -> Atom {
        Atom {
            pred: self.pred,
            args: self.args.iter().map(|a| a.apply(s)).collect(),
        }
    }

    fn is_ground_value(&self) -> bool {
        self.is_ground()
    }
}

impl Substitutable for Literal {
    fn apply(&self, s: &Subst) -> Literal {
        Literal {
            positive: self.positive,
            atom: self.atom.apply(s),
        }
    }

    fn is_ground_value(&self) -> bool {
        self.is_ground()
    }
}

impl Substitutable for Clause {
    fn apply(&self, s: &Subst) -> Clause {
        Clause(self.0.iter().map(|l| l.apply(s)).collect())
    }

    fn is_ground_value(&self) -> bool {
        self.is_ground()
    }
}

/// A clause paired with a grounding substitution, written `C·σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Closure {
    pub clause: Clause,
    pub subst: Subst,
}

impl Closure {
    pub fn new(clause: Clause, subst: Subst) -> Self {
        Closure { clause, subst }
    }

    /// The ground clause `Cσ`.
    pub fn ground(&self) -> Clause {
        self.clause.apply(&self.subst)
    }

    pub fn is_grounding(&self) -> bool {
        self.subst.grounds(&self.clause)
    }

    fn max_var(&self) -> Option<u32> {
        self.clause.max_var().max(self.subst.max_var())
    }

    /// Shifts every variable of the clause and of the substitution by
    /// `offset`, leaving the ground instance unchanged.
    pub fn shifted(&self, offset: u32) -> Closure {
        let mut f = |v: Var| Var(v.0 + offset);
        Closure {
            clause: self.clause.map_vars(&mut f),
            subst: self.subst.map_vars(&mut f),
        }
    }

    /// Renumbers the clause variables 0, 1, … in order of first occurrence
    /// and drops bindings for variables that no longer occur.
    pub fn normalized(&self) -> Closure {
        let (clause, renaming) = normalize_with_renaming(&self.clause);
        let mut subst = Subst::new();
        for (old, new) in &renaming {
            if let Some(t) = self.subst.get(*old) {
                subst.bind(*new, t.clone());
            }
        }
        Closure { clause, subst }
    }
}

/// Renames `second` apart from `first`: the returned closure shares no
/// variable with `first` and has the same ground instance as `second`.
pub fn rename_apart(first: &Closure, second: &Closure) -> Closure {
    let offset = first.max_var().map_or(0, |m| m + 1);
    second.shifted(offset)
}

/// Renumbers variables by first occurrence.
pub fn normalize_clause(clause: &Clause) -> Clause {
    normalize_with_renaming(clause).0
}

fn normalize_with_renaming(clause: &Clause) -> (Clause, Vec<(Var, Var)>) {
    let mut map: HashMap<Var, Var> = HashMap::new();
    let mut order = Vec::new();
    let renamed = clause.map_vars(&mut |v| {
        let next = Var(map.len() as u32);
        *map.entry(v).or_insert_with(|| {
            order.push((v, next));
            next
        })
    });
    (renamed, order)
}
