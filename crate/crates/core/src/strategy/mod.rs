//! The regular-run driver: Conflict first, then Propagate or a reasonable
//! Decide, conflict resolution down to Backtrack, and Grow when stalled.

mod config;
mod driver;

pub use config::{CheckLevel, Factoring, GrowPolicy, Heuristic, Mode, RunConfig};
pub use driver::{
    conflict_step, extract_model, next_beta, run, run_exhaustive_benchmark, Driver, LearningRecord, Model, RunError,
    RunResult, Stats, Verdict,
};
