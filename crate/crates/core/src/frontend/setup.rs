use std::sync::Arc;

use thiserror::Error;

use super::{parse_literal, ParseError};
use crate::ordering::{AtomOrdering, Bound, OrderingError, OrderingKind};
use crate::term::{Atom, Clause, Literal, Signature, Sym, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetupError {
    #[error("bound literal: {0}")]
    Beta(ParseError),
    #[error("bound literal must be ground")]
    NonGroundBeta,
    #[error("unknown symbol `{0}` in precedence")]
    UnknownSymbol(String),
    #[error("bound weight must be at least 1")]
    ZeroWeight,
    #[error(transparent)]
    Ordering(#[from] OrderingError),
}

/// How β is given: as a literal, or as a weight such that every atom of at
/// most that weight is below β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaSpec {
    Literal(String),
    Weight(usize),
}

/// Largest clause symbol count in `clauses` plus two.
pub fn default_beta_weight(clauses: &[Clause]) -> usize {
    clauses.iter().map(Clause::size).max().unwrap_or(0) + 2
}

/// `s1<s2<…` as a list of declared symbols.
pub fn parse_precedence(text: &str, sig: &Signature) -> Result<Vec<Sym>, SetupError> {
    text.split('<')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| {
            sig.lookup(name)
                .ok_or_else(|| SetupError::UnknownSymbol(name.to_string()))
        })
        .collect()
}

/// Builds the ordering and the bound. A weight bound `W` becomes a fresh
/// predicate of arity `W - 1`, greatest in the precedence, applied to the
/// least constant: every other atom of weight at most `W` lies below it.
pub fn build_bound(
    sig: &mut Signature,
    kind: OrderingKind,
    precedence: &[Sym],
    beta: &BetaSpec,
    cap: usize,
) -> Result<Arc<Bound>, SetupError> {
    sig.ensure_constant();
    let beta = match beta {
        BetaSpec::Literal(text) => {
            let lit = parse_literal(text, sig).map_err(SetupError::Beta)?;
            if !lit.is_ground() {
                return Err(SetupError::NonGroundBeta);
            }
            let ordering = Arc::new(AtomOrdering::new(kind, sig, precedence)?);
            return Ok(Arc::new(Bound::new(lit, ordering, cap)?));
        }
        BetaSpec::Weight(0) => return Err(SetupError::ZeroWeight),
        BetaSpec::Weight(w) => *w,
    };
    let name = sig.fresh_name("$beta");
    let pred = sig.predicate(&name, beta - 1).expect("fresh name cannot clash");
    let mut listed = precedence.to_vec();
    listed.push(pred);
    let ordering = Arc::new(AtomOrdering::new(kind, sig, &listed)?);
    let least = sig
        .constants()
        .min_by_key(|c| ordering.rank(*c))
        .expect("a constant was ensured");
    let atom = Atom::new(pred, vec![Term::constant(least); beta - 1]);
    Ok(Arc::new(Bound::new(Literal::pos(atom), ordering, cap)?))
}
