//! Independent, deliberately simple checkers: ground satisfiability and
//! entailment, redundancy under a trail snapshot, proof replay and model
//! checking. Nothing here depends on the calculus or the driver.

mod grounding;
mod model;
mod redundancy;
mod replay;
mod sat;

pub use grounding::brute_groundings;
pub use model::{check_model, ModelError};
pub use redundancy::is_redundant_snapshot;
pub use replay::{check_proof, replay_derivation, ClauseSource, ProofError};
pub use sat::{ground_entails, ground_sat, truth_table_sat, OracleError, SatResult, DEFAULT_ATOM_CAP};
