//! The bounding ordering ≺_B on ground atoms, the bound β, and the
//! trail-induced ordering ≺_Γ.

mod atom;
mod bound;
mod trail;

pub use atom::{AtomOrdering, OrderingError, OrderingKind};
pub use bound::{Bound, DEFAULT_ATOM_CAP};
pub use trail::{multiset_compare, TrailOrder};
