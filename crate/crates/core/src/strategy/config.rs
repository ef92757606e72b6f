use crate::term::Sym;

/// How Decide picks among reasonable decisions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Heuristic {
    /// First undefined bounded atom, positive polarity first.
    First,
    /// Uniform choice among propagations and reasonable decisions.
    Random(u64),
    /// Like `First`, but propagations and decisions on these predicates
    /// are postponed until nothing else applies.
    Avoid(Vec<Sym>),
}

/// When the conflict loop applies Factorize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Factoring {
    /// As soon as two conflict literals have the same ground instance.
    #[default]
    Eager,
    /// Only duplicates of the complement of the top decision, right before
    /// Backtrack.
    Lazy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Regular,
    /// Every possible propagation before any decision. Only for the
    /// exponential-propagation benchmark.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GrowPolicy {
    #[default]
    Off,
    /// Grow to the next weight at most `max` times.
    WeightIncrement { max: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub enum CheckLevel {
    #[default]
    Off,
    /// Regular-run assertions and cross-checks of the incremental searches.
    Invariants,
    /// Additionally the sound-state checker after every transition and the
    /// non-redundancy check for every learned clause.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub heuristic: Heuristic,
    pub factoring: Factoring,
    pub mode: Mode,
    pub grow: GrowPolicy,
    pub max_steps: usize,
    pub check: CheckLevel,
    /// Atom cap for oracle calls made by the checks.
    pub oracle_cap: usize,
    pub record_trace: bool,
    /// Keep a trail snapshot for every learned clause.
    pub record_learning: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            heuristic: Heuristic::First,
            factoring: Factoring::Eager,
            mode: Mode::Regular,
            grow: GrowPolicy::Off,
            max_steps: 1_000_000,
            check: CheckLevel::Off,
            oracle_cap: crate::oracle::DEFAULT_ATOM_CAP,
            record_trace: false,
            record_learning: false,
        }
    }
}
