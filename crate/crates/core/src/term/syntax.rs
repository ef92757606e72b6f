use std::collections::BTreeSet;

use super::signature::Sym;

/// Clause-local variable. Variables are renamed apart by shifting indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Sym, Vec<Term>),
}

impl Term {
    pub fn var(index: u32) -> Self {
        Term::Var(Var(index))
    }

    pub fn constant(sym: Sym) -> Self {
        Term::App(sym, Vec::new())
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub(crate) fn max_var(&self) -> Option<u32> {
        match self {
            Term::Var(v) => Some(v.0),
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    pub(crate) fn map_vars(&self, f: &mut impl FnMut(Var) -> Var) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(*v)),
            Term::App(s, args) => Term::App(*s, args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: Sym,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: Sym, args: Vec<Term>) -> Self {
        Atom { pred, args }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn size(&self) -> usize {
        1 + self.args.iter().map(Term::size).sum::<usize>()
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.args.iter().for_each(|a| a.collect_vars(out));
    }

    pub(crate) fn max_var(&self) -> Option<u32> {
        self.args.iter().filter_map(Term::max_var).max()
    }

    pub(crate) fn map_vars(&self, f: &mut impl FnMut(Var) -> Var) -> Atom {
        Atom {
            pred: self.pred,
            args: self.args.iter().map(|a| a.map_vars(f)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn new(positive: bool, atom: Atom) -> Self {
        Literal { positive, atom }
    }

    pub fn pos(atom: Atom) -> Self {
        Literal::new(true, atom)
    }

    pub fn neg(atom: Atom) -> Self {
        Literal::new(false, atom)
    }

    /// The literal of opposite polarity over the same atom.
    pub fn complement(&self) -> Literal {
        Literal {
            positive: !self.positive,
            atom: self.atom.clone(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        self.atom.collect_vars(out)
    }

    pub(crate) fn max_var(&self) -> Option<u32> {
        self.atom.max_var()
    }

    pub(crate) fn map_vars(&self, f: &mut impl FnMut(Var) -> Var) -> Literal {
        Literal {
            positive: self.positive,
            atom: self.atom.map_vars(f),
        }
    }
}

/// A clause as a multiset of literals. Literal order is kept stable so that
/// positions can be referenced by rule applications; duplicates are kept
/// until they are explicitly factored away.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(pub Vec<Literal>);

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Self {
        Clause(literals)
    }

    /// The empty clause ⊥.
    pub fn empty() -> Self {
        Clause(Vec::new())
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Literal> {
        self.0.iter()
    }

    pub fn is_ground(&self) -> bool {
        self.0.iter().all(Literal::is_ground)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.0.iter().for_each(|l| l.collect_vars(&mut out));
        out
    }

    /// Symbol and variable occurrences over all literals.
    pub fn size(&self) -> usize {
        self.0.iter().map(|l| l.atom.size()).sum()
    }

    pub(crate) fn max_var(&self) -> Option<u32> {
        self.0.iter().filter_map(Literal::max_var).max()
    }

    pub(crate) fn map_vars(&self, f: &mut impl FnMut(Var) -> Var) -> Clause {
        Clause(self.0.iter().map(|l| l.map_vars(f)).collect())
    }

    /// Clause with the literal at `index` removed.
    pub fn without(&self, index: usize) -> Clause {
        let mut lits = self.0.clone();
        lits.remove(index);
        Clause(lits)
    }

    /// Literals sorted; two ground clauses are equal as multisets iff their
    /// canonical forms are equal.
    pub fn canonical(&self) -> Clause {
        let mut lits = self.0.clone();
        lits.sort();
        Clause(lits)
    }

    pub fn multiset_eq(&self, other: &Clause) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.0.contains(lit)
    }
}

impl FromIterator<Literal> for Clause {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        Clause(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Clause {
    type Item = &'a Literal;
    type IntoIter = std::slice::Iter<'a, Literal>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
