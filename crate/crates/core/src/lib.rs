//! Clause learning from simple models for first-order logic without
//! equality: a bounded, regular SCL prover with proof and model output and
//! independent brute-force checkers.

pub mod calculus;
pub mod frontend;
pub mod oracle;
pub mod ordering;
pub mod proof;
pub mod state;
pub mod strategy;
pub mod term;
