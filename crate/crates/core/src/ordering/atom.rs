use std::cmp::Ordering;
use std::collections::HashMap;

use thiserror::Error;

use crate::term::{Atom, Signature, Sym, SymbolKind, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderingKind {
    /// Knuth-Bendix ordering with every symbol of weight one: compare symbol
    /// counts, then head precedence, then arguments left to right.
    Kbo,
    /// Lexicographic path ordering, restricted to signatures whose Herbrand
    /// base is finite.
    Lpo,
}

impl std::fmt::Display for OrderingKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OrderingKind::Kbo => "kbo",
            OrderingKind::Lpo => "lpo",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("more than {cap} ground atoms below the bound")]
    CapExceeded { cap: usize },
    #[error("lpo needs a finite Herbrand base, but `{symbol}` is a non-constant function symbol")]
    InfiniteBase { symbol: String },
    #[error("symbol `{0}` is listed twice in the precedence")]
    DuplicatePrecedence(String),
    #[error("bound literal must be ground")]
    NonGroundBound,
    #[error("no ground atom above the current bound")]
    SignatureExhausted,
}

/// A total, well-founded strict ordering on ground atoms with finitely many
/// atoms below any given atom.
#[derive(Clone, Debug)]
pub struct AtomOrdering {
    kind: OrderingKind,
    /// Precedence rank per symbol index; higher is greater.
    rank: Vec<u32>,
    functions: Vec<(Sym, usize)>,
    predicates: Vec<(Sym, usize)>,
}

impl AtomOrdering {
    /// Builds an ordering over `sig`. Symbols missing from `listed` come
    /// first (functions by arity, then predicates, each in declaration
    /// order), followed by `listed` in the given order.
    pub fn new(kind: OrderingKind, sig: &Signature, listed: &[Sym]) -> Result<Self, OrderingError> {
        let mut seen = vec![false; sig.len()];
        for &s in listed {
            if std::mem::replace(&mut seen[s.index()], true) {
                return Err(OrderingError::DuplicatePrecedence(sig.name(s).to_string()));
            }
        }
        let mut unlisted: Vec<Sym> = sig.symbols().filter(|s| !seen[s.index()]).collect();
        unlisted.sort_by_key(|&s| match sig.kind(s) {
            SymbolKind::Function => (0, sig.arity(s)),
            SymbolKind::Predicate => (1, 0),
        });
        let mut rank = vec![0; sig.len()];
        for (i, s) in unlisted.iter().chain(listed).enumerate() {
            rank[s.index()] = i as u32;
        }
        let functions: Vec<(Sym, usize)> = sig.functions().map(|f| (f, sig.arity(f))).collect();
        if kind == OrderingKind::Lpo {
            if let Some(&(f, _)) = functions.iter().find(|(_, n)| *n > 0) {
                return Err(OrderingError::InfiniteBase {
                    symbol: sig.name(f).to_string(),
                });
            }
        }
        Ok(AtomOrdering {
            kind,
            rank,
            functions,
            predicates: sig.predicates().map(|p| (p, sig.arity(p))).collect(),
        })
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn rank(&self, s: Sym) -> u32 {
        self.rank[s.index()]
    }

    /// All symbols from least to greatest precedence.
    pub fn precedence(&self) -> Vec<Sym> {
        let mut syms: Vec<Sym> = self.functions.iter().chain(&self.predicates).map(|(s, _)| *s).collect();
        syms.sort_by_key(|&s| self.rank(s));
        syms
    }

    pub fn has_finite_base(&self) -> bool {
        self.functions.iter().all(|(_, n)| *n == 0)
    }

    pub fn compare_atoms(&self, a: &Atom, b: &Atom) -> Ordering {
        self.compare_apps(a.pred, &a.args, b.pred, &b.args)
    }

    pub fn compare_terms(&self, s: &Term, t: &Term) -> Ordering {
        match (s, t) {
            (Term::App(f, xs), Term::App(g, ys)) => self.compare_apps(*f, xs, *g, ys),
            _ => panic!("ordering comparison on non-ground term"),
        }
    }

    fn compare_apps(&self, f: Sym, xs: &[Term], g: Sym, ys: &[Term]) -> Ordering {
        match self.kind {
            OrderingKind::Kbo => kbo(self, f, xs, g, ys),
            OrderingKind::Lpo => lpo(self, f, xs, g, ys),
        }
    }

    /// Symbol count of a ground atom; the weight used by the count-KBO.
    pub fn weight(atom: &Atom) -> usize {
        atom.size()
    }

    /// Every ground atom strictly below `bound`, in ascending order.
    pub fn atoms_below(&self, bound: &Atom, cap: usize) -> Result<Vec<Atom>, OrderingError> {
        if !bound.is_ground() {
            return Err(OrderingError::NonGroundBound);
        }
        let mut out = Vec::new();
        let mut terms = TermTable::new(&self.functions);
        let max_weight = match self.kind {
            OrderingKind::Kbo => Self::weight(bound),
            OrderingKind::Lpo => usize::MAX,
        };
        for atom in self.atoms_up_to(&mut terms, max_weight) {
            if self.compare_atoms(&atom, bound) == Ordering::Less {
                if out.len() == cap {
                    return Err(OrderingError::CapExceeded { cap });
                }
                out.push(atom);
            }
        }
        out.sort_by(|a, b| self.compare_atoms(a, b));
        Ok(out)
    }

    /// The next bound after `bound`: under KBO the greatest atom of the least
    /// weight above `bound`'s weight, under LPO the least atom above `bound`.
    pub fn next_bound(&self, bound: &Atom) -> Result<Atom, OrderingError> {
        let mut terms = TermTable::new(&self.functions);
        match self.kind {
            OrderingKind::Kbo => {
                let w = Self::weight(bound);
                let finite = self.has_finite_base();
                let max_arity = self.predicates.iter().map(|(_, n)| *n).max().unwrap_or(0);
                for weight in w + 1..=w + 64 {
                    if finite && weight > max_arity + 1 {
                        break;
                    }
                    let atoms = self.atoms_of_weight(&mut terms, weight);
                    if let Some(best) = atoms.into_iter().max_by(|a, b| self.compare_atoms(a, b)) {
                        return Ok(best);
                    }
                }
                Err(OrderingError::SignatureExhausted)
            }
            OrderingKind::Lpo => self
                .atoms_up_to(&mut terms, usize::MAX)
                .into_iter()
                .filter(|a| self.compare_atoms(a, bound) == Ordering::Greater)
                .min_by(|a, b| self.compare_atoms(a, b))
                .ok_or(OrderingError::SignatureExhausted),
        }
    }

    /// All atoms of weight at most `max_weight` (for a finite base the whole
    /// base when `max_weight` is unbounded).
    fn atoms_up_to(&self, terms: &mut TermTable, max_weight: usize) -> Vec<Atom> {
        let limit = if max_weight == usize::MAX {
            let max_arity = self.predicates.iter().map(|(_, n)| *n).max().unwrap_or(0);
            max_arity + 1
        } else {
            max_weight
        };
        (1..=limit).flat_map(|w| self.atoms_of_weight(terms, w)).collect()
    }

    fn atoms_of_weight(&self, terms: &mut TermTable, weight: usize) -> Vec<Atom> {
        let mut out = Vec::new();
        for &(p, n) in &self.predicates {
            if weight == 0 {
                continue;
            }
            for args in terms.tuples(n, weight - 1) {
                out.push(Atom::new(p, args));
            }
        }
        out
    }
}

fn kbo(ord: &AtomOrdering, f: Sym, xs: &[Term], g: Sym, ys: &[Term]) -> Ordering {
    let ws: usize = 1 + xs.iter().map(Term::size).sum::<usize>();
    let wt: usize = 1 + ys.iter().map(Term::size).sum::<usize>();
    ws.cmp(&wt)
        .then_with(|| ord.rank(f).cmp(&ord.rank(g)))
        .then_with(|| lex(xs, ys, |a, b| ord.compare_terms(a, b)))
}

fn lex(xs: &[Term], ys: &[Term], mut cmp: impl FnMut(&Term, &Term) -> Ordering) -> Ordering {
    for (x, y) in xs.iter().zip(ys) {
        match cmp(x, y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    xs.len().cmp(&ys.len())
}

fn lpo(ord: &AtomOrdering, f: Sym, xs: &[Term], g: Sym, ys: &[Term]) -> Ordering {
    if f == g && xs == ys {
        return Ordering::Equal;
    }
    if lpo_greater(ord, f, xs, g, ys) {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// `f(xs) >lpo g(ys)` on ground terms.
fn lpo_greater(ord: &AtomOrdering, f: Sym, xs: &[Term], g: Sym, ys: &[Term]) -> bool {
    let ge = |x: &Term| match x {
        Term::App(h, zs) => h == &g && zs == ys || lpo_greater(ord, *h, zs, g, ys),
        Term::Var(_) => false,
    };
    if xs.iter().any(ge) {
        return true;
    }
    let dominates_args = || {
        ys.iter().all(|y| match y {
            Term::App(h, zs) => lpo_greater(ord, f, xs, *h, zs),
            Term::Var(_) => false,
        })
    };
    match ord.rank(f).cmp(&ord.rank(g)) {
        Ordering::Greater => dominates_args(),
        Ordering::Less => false,
        Ordering::Equal => lex(xs, ys, |a, b| ord.compare_terms(a, b)) == Ordering::Greater && dominates_args(),
    }
}

/// Ground terms grouped by symbol count, built on demand.
struct TermTable<'a> {
    functions: &'a [(Sym, usize)],
    by_weight: Vec<Vec<Term>>,
    tuple_cache: HashMap<(usize, usize), Vec<Vec<Term>>>,
}

impl<'a> TermTable<'a> {
    fn new(functions: &'a [(Sym, usize)]) -> Self {
        TermTable {
            functions,
            by_weight: vec![Vec::new()],
            tuple_cache: HashMap::new(),
        }
    }

    fn of_weight(&mut self, w: usize) -> Vec<Term> {
        while self.by_weight.len() <= w {
            let next = self.by_weight.len();
            let mut terms = Vec::new();
            for &(f, n) in self.functions {
                if n == 0 {
                    if next == 1 {
                        terms.push(Term::constant(f));
                    }
                } else {
                    for args in self.tuples(n, next - 1) {
                        terms.push(Term::App(f, args));
                    }
                }
            }
            self.by_weight.push(terms);
        }
        self.by_weight[w].clone()
    }

    /// All `n`-tuples of ground terms whose weights sum to `total`.
    fn tuples(&mut self, n: usize, total: usize) -> Vec<Vec<Term>> {
        if n == 0 {
            return if total == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        if total < n {
            return Vec::new();
        }
        if let Some(hit) = self.tuple_cache.get(&(n, total)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for first in 1..=total - (n - 1) {
            let heads = self.of_weight(first);
            if heads.is_empty() {
                continue;
            }
            let tails = self.tuples(n - 1, total - first);
            for h in &heads {
                for t in &tails {
                    let mut v = Vec::with_capacity(n);
                    v.push(h.clone());
                    v.extend(t.iter().cloned());
                    out.push(v);
                }
            }
        }
        self.tuple_cache.insert((n, total), out.clone());
        out
    }
}
