//! First-order syntax without equality: terms, literals, clauses,
//! substitutions and closures, together with unification, matching and
//! β-bounded grounding.

mod display;
mod ground;
mod signature;
mod subst;
mod syntax;
mod unify;

pub use display::{var_name, Render, Shown};
pub use ground::{bounded_grounding_substs, bounded_groundings};
pub use signature::{Signature, SignatureError, Sym, SymbolInfo, SymbolKind};
pub use subst::{normalize_clause, rename_apart, Closure, Subst, Substitutable};
pub use syntax::{Atom, Clause, Literal, Term, Var};
pub use unify::{
    is_variant, match_atom, match_literal, match_term, mgu, mgu_all, mgu_atoms, mgu_terms, set_subsumes, subsumes,
};
