use std::collections::BTreeMap;
use std::fmt::Write;
use std::ops::ControlFlow;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::config::{CheckLevel, Factoring, GrowPolicy, Heuristic, Mode, RunConfig};
use crate::calculus::{
    self, apply, decision_candidates, find_false_instance, find_false_instance_using, is_reasonable, propagations,
    RuleApplication, RuleError,
};
use crate::oracle;
use crate::ordering::{Bound, OrderingError, OrderingKind, TrailOrder};
use crate::proof::{ClauseId, Proof};
use crate::state::{status_text, Annotation, ClauseDb, ProblemState, SoundnessChecker, Status, TraceEvent};
use crate::term::{Clause, Literal, Render, Signature, Sym};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("invariant violated at step {step} ({rule}): {message}")]
    Invariant {
        step: usize,
        rule: &'static str,
        message: String,
    },
    #[error("step {step}: {source}")]
    Rule { step: usize, source: RuleError },
}

/// A bounded model: the final trail, which satisfies every ground instance
/// of the input below β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub literals: Vec<Literal>,
    pub beta: Literal,
    pub ordering: OrderingKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Unsat(Proof),
    SatBounded(Model),
    ResourceOut,
}

impl Verdict {
    pub fn is_unsat(&self) -> bool {
        matches!(self, Verdict::Unsat(_))
    }

    pub fn is_sat_bounded(&self) -> bool {
        matches!(self, Verdict::SatBounded(_))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub steps: usize,
    pub rules: BTreeMap<&'static str, usize>,
    pub learned: usize,
    pub max_trail: usize,
    pub growths: usize,
    /// Number of Propagate applications per predicate.
    pub propagations_by_pred: BTreeMap<Sym, usize>,
    /// Largest number of trail literals per predicate at any point.
    pub peak_by_pred: BTreeMap<Sym, usize>,
    /// Entailment and redundancy checks skipped for exceeding the oracle cap.
    pub unchecked: usize,
}

impl Stats {
    pub fn rule_count(&self, rule: &str) -> usize {
        self.rules.get(rule).copied().unwrap_or(0)
    }

    /// `key=value` lines.
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "steps={}", self.steps);
        for rule in [
            "Propagate",
            "Decide",
            "Conflict",
            "Skip",
            "Factorize",
            "Resolve",
            "Backtrack",
            "Grow",
        ] {
            let _ = writeln!(out, "rule.{}={}", rule.to_lowercase(), self.rule_count(rule));
        }
        let _ = writeln!(out, "learned={}", self.learned);
        let _ = writeln!(out, "max_trail={}", self.max_trail);
        let _ = writeln!(out, "growths={}", self.growths);
        let _ = writeln!(out, "unchecked={}", self.unchecked);
        for (p, n) in &self.propagations_by_pred {
            let _ = writeln!(out, "propagations.{}={n}", sig.name(*p));
        }
        for (p, n) in &self.peak_by_pred {
            let _ = writeln!(out, "peak_trail.{}={n}", sig.name(*p));
        }
        out
    }
}

/// A learned clause with the `≺_Γ` snapshot taken when its conflict fired
/// and the clauses available before it was added.
#[derive(Clone, Debug)]
pub struct LearningRecord {
    pub id: ClauseId,
    pub clause: Clause,
    pub order: TrailOrder,
    pub bound: Arc<Bound>,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub verdict: Verdict,
    pub stats: Stats,
    pub trace: Vec<TraceEvent>,
    pub learning: Vec<LearningRecord>,
    pub state: ProblemState,
}

/// The next conflict-resolution rule under the given factoring policy, or
/// `None` once the status is no longer a conflict.
pub fn conflict_step(s: &ProblemState, factoring: Factoring) -> Option<RuleApplication> {
    let closure = s.conflict()?;
    let ground = closure.ground();
    let lits = ground.literals();
    let top = s.trail.top()?;
    let comp = top.literal.complement();
    if factoring == Factoring::Eager {
        for j in 0..lits.len() {
            if let Some(i) = lits[..j].iter().position(|l| *l == lits[j]) {
                return Some(RuleApplication::Factorize { keep: i, drop: j });
            }
        }
    }
    let hits: Vec<usize> = (0..lits.len()).filter(|&i| lits[i] == comp).collect();
    match (&top.annotation, hits.as_slice()) {
        (_, []) => Some(RuleApplication::Skip),
        (Annotation::Propagation { .. }, [i, ..]) => Some(RuleApplication::Resolve { literal: *i }),
        (Annotation::Decision(_), [_]) => Some(RuleApplication::Backtrack),
        (Annotation::Decision(_), [i, j, ..]) => Some(RuleApplication::Factorize { keep: *i, drop: *j }),
    }
}

/// Next β under the weight-increment policy, keeping β's polarity.
pub fn next_beta(bound: &Bound) -> Result<Literal, OrderingError> {
    let beta = bound.beta();
    let atom = bound.ordering().next_bound(&beta.atom)?;
    Ok(Literal::new(beta.positive, atom))
}

/// The trail as a model, verified against `Gnd^{≺_B β}(N)`.
pub fn extract_model(s: &ProblemState) -> Result<Model, oracle::ModelError> {
    let literals: Vec<Literal> = s.trail.literals().cloned().collect();
    let inputs: Vec<Clause> = s.clauses.inputs().map(|c| c.clause.clone()).collect();
    oracle::check_model(&literals, &inputs, &s.bound)?;
    Ok(Model {
        literals,
        beta: s.beta().clone(),
        ordering: s.bound.ordering().kind(),
    })
}

pub fn run(sig: &Signature, clauses: ClauseDb, bound: Arc<Bound>, cfg: &RunConfig) -> Result<RunResult, RunError> {
    Driver::new(sig, ProblemState::initial(clauses, bound), cfg.clone()).run()
}

/// Runs in exhaustive-propagation mode and returns the statistics.
pub fn run_exhaustive_benchmark(
    sig: &Signature,
    clauses: ClauseDb,
    bound: Arc<Bound>,
    cfg: &RunConfig,
) -> Result<RunResult, RunError> {
    let cfg = RunConfig {
        mode: Mode::Exhaustive,
        ..cfg.clone()
    };
    run(sig, clauses, bound, &cfg)
}

enum Choice {
    Propagate(calculus::Propagation),
    Decide(Literal),
}

/// Owns one problem state and applies rules to it under a [`RunConfig`].
pub struct Driver<'a> {
    sig: &'a Signature,
    pub state: ProblemState,
    cfg: RunConfig,
    stats: Stats,
    trace: Vec<TraceEvent>,
    learning: Vec<LearningRecord>,
    checker: SoundnessChecker,
    rng: ChaCha8Rng,
    /// Set when the trail may contain a false clause instance not involving
    /// its top literal.
    rescan: bool,
    snapshot: Option<TrailOrder>,
    resolves: usize,
}

impl<'a> Driver<'a> {
    pub fn new(sig: &'a Signature, state: ProblemState, cfg: RunConfig) -> Self {
        let seed = match cfg.heuristic {
            Heuristic::Random(seed) => seed,
            _ => 0,
        };
        Driver {
            sig,
            state,
            checker: SoundnessChecker::new(cfg.oracle_cap),
            cfg,
            stats: Stats::default(),
            trace: Vec::new(),
            learning: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            rescan: true,
            snapshot: None,
            resolves: 0,
        }
    }

    fn invariant(&self, rule: &'static str, message: impl Into<String>) -> RunError {
        RunError::Invariant {
            step: self.stats.steps,
            rule,
            message: message.into(),
        }
    }

    fn regular(&self) -> bool {
        self.cfg.mode == Mode::Regular
    }

    /// Applies one rule, updating statistics, trace and checks.
    pub fn step(&mut self, rule: RuleApplication) -> Result<(), RuleError> {
        let subject = self.subject(&rule);
        let learned_before = self.state.clauses.len();
        apply(&mut self.state, &rule)?;
        self.stats.steps += 1;
        *self.stats.rules.entry(rule.name()).or_default() += 1;
        if let RuleApplication::Propagate { clause, literal, .. } = &rule {
            let pred = self.state.clauses.clause(*clause).literals()[*literal].atom.pred;
            *self.stats.propagations_by_pred.entry(pred).or_default() += 1;
        }
        self.stats.learned += self.state.clauses.len() - learned_before;
        self.stats.max_trail = self.stats.max_trail.max(self.state.trail.len());
        if matches!(rule, RuleApplication::Propagate { .. } | RuleApplication::Decide { .. }) {
            let pred = self.state.trail.top().expect("just pushed").literal.atom.pred;
            let count = self.state.trail.literals().filter(|l| l.atom.pred == pred).count();
            let peak = self.stats.peak_by_pred.entry(pred).or_default();
            *peak = (*peak).max(count);
        }
        if self.cfg.record_trace {
            let subject = match (&rule, self.state.clauses.learned().last()) {
                (RuleApplication::Backtrack, Some(c)) => c.clause.show(self.sig),
                _ => subject,
            };
            self.trace.push(TraceEvent {
                step: self.stats.steps,
                rule: rule.name(),
                subject,
                k: self.state.k,
                status: status_text(&self.state.status, self.sig),
            });
        }
        Ok(())
    }

    fn subject(&self, rule: &RuleApplication) -> String {
        let sig = self.sig;
        let s = &self.state;
        match rule {
            RuleApplication::Propagate { clause, literal, subst } => {
                let c = s.clauses.clause(*clause);
                let lit = crate::term::Substitutable::apply(&c.literals()[*literal], subst);
                format!("{} from {} {}", lit.show(sig), clause + 1, subst.show(sig))
            }
            RuleApplication::Decide { literal } => literal.show(sig),
            RuleApplication::Conflict { clause, subst } => format!("{} {}", clause + 1, subst.show(sig)),
            RuleApplication::Skip | RuleApplication::Resolve { .. } => {
                let top = s.trail.top().map(|e| e.literal.show(sig)).unwrap_or_default();
                match rule {
                    RuleApplication::Resolve { literal } => format!("{literal} with {top}"),
                    _ => top,
                }
            }
            RuleApplication::Factorize { keep, drop } => format!("{keep} {drop}"),
            RuleApplication::Backtrack => String::new(),
            RuleApplication::Grow { beta } => beta.show(sig),
        }
    }

    fn apply_checked(&mut self, rule: RuleApplication) -> Result<(), RunError> {
        let name = rule.name();
        self.step(rule).map_err(|source| RunError::Rule {
            step: self.stats.steps + 1,
            source,
        })?;
        if self.cfg.check == CheckLevel::Full {
            self.checker
                .check(&self.state)
                .map_err(|v| self.invariant(name, v.to_string()))?;
        }
        Ok(())
    }

    pub fn run(mut self) -> Result<RunResult, RunError> {
        let verdict = loop {
            if self.stats.steps >= self.cfg.max_steps {
                break Verdict::ResourceOut;
            }
            match self.state.status.clone() {
                Status::Bottom => {
                    let proof = self.state.proof().expect("bottom carries a refutation");
                    if self.cfg.check >= CheckLevel::Invariants {
                        let inputs: Vec<Clause> = self.state.clauses.inputs().map(|c| c.clause.clone()).collect();
                        oracle::check_proof(&inputs, &proof)
                            .map_err(|e| self.invariant("Resolve", format!("proof does not check: {e}")))?;
                    }
                    break Verdict::Unsat(proof);
                }
                Status::Conflict(_) => self.resolve_conflict_loop()?,
                Status::Top => {
                    if let Some((clause, subst)) = self.find_conflict()? {
                        self.fire_conflict(clause, subst)?;
                        continue;
                    }
                    match self.choose()? {
                        Some(Choice::Propagate(p)) => {
                            self.apply_checked(RuleApplication::Propagate {
                                clause: p.clause,
                                literal: p.literal,
                                subst: p.subst,
                            })?;
                        }
                        Some(Choice::Decide(literal)) => {
                            self.apply_checked(RuleApplication::Decide { literal })?;
                            if self.regular() && self.find_conflict()?.is_some() {
                                return Err(self.invariant("Decide", "decision enabled an immediate conflict"));
                            }
                        }
                        None => match self.try_grow()? {
                            true => continue,
                            false => {
                                let model = extract_model(&self.state)
                                    .map_err(|e| self.invariant("Decide", format!("model check failed: {e}")))?;
                                break Verdict::SatBounded(model);
                            }
                        },
                    }
                }
            }
        };
        self.stats.unchecked = self.checker.skipped;
        Ok(RunResult {
            verdict,
            stats: self.stats,
            trace: self.trace,
            learning: self.learning,
            state: self.state,
        })
    }

    /// Conflict search; incremental (the top literal must be involved)
    /// unless the trail was cut since the last search.
    fn find_conflict(&mut self) -> Result<Option<(ClauseId, crate::term::Subst)>, RunError> {
        let s = &self.state;
        let found = if self.rescan || s.trail.is_empty() {
            find_false_instance(s)
        } else {
            find_false_instance_using(s, s.trail.len(), Some(s.trail.len() - 1))
        };
        if self.cfg.check >= CheckLevel::Invariants && found.is_none() && !self.rescan {
            if let Some((id, _)) = find_false_instance(s) {
                return Err(self.invariant(
                    "Conflict",
                    format!("incremental search missed a false instance of clause {}", id + 1),
                ));
            }
        }
        self.rescan = false;
        Ok(found)
    }

    fn fire_conflict(&mut self, clause: ClauseId, subst: crate::term::Subst) -> Result<(), RunError> {
        let empty = self.state.clauses.clause(clause).is_empty();
        if self.regular() && !empty {
            match self.state.trail.top() {
                Some(e) if !e.annotation.is_decision() => {}
                _ => {
                    return Err(self.invariant("Conflict", "conflict without a propagation on top of the trail"));
                }
            }
        }
        if self.cfg.record_learning || self.cfg.check == CheckLevel::Full {
            self.snapshot = Some(self.state.trail_order());
        }
        self.resolves = 0;
        self.apply_checked(RuleApplication::Conflict { clause, subst })
    }

    /// Skip, Factorize and Resolve until Backtrack has been applied or ⊥
    /// has been derived.
    pub fn resolve_conflict_loop(&mut self) -> Result<(), RunError> {
        while let Some(rule) = conflict_step(&self.state, self.cfg.factoring) {
            if self.stats.steps >= self.cfg.max_steps {
                return Ok(());
            }
            match rule {
                RuleApplication::Resolve { .. } => self.resolves += 1,
                RuleApplication::Backtrack => {
                    if self.regular() && self.resolves == 0 {
                        return Err(self.invariant("Backtrack", "conflict resolved without any Resolve step"));
                    }
                    let pool: Vec<Clause> = self.state.clauses.iter().map(|c| c.clause.clone()).collect();
                    self.apply_checked(RuleApplication::Backtrack)?;
                    self.rescan = true;
                    self.after_learning(pool)?;
                    return Ok(());
                }
                _ => {}
            }
            self.apply_checked(rule)?;
        }
        if self.state.conflict().is_some() {
            return Err(self.invariant("Skip", "conflict with an empty trail"));
        }
        Ok(())
    }

    fn after_learning(&mut self, pool: Vec<Clause>) -> Result<(), RunError> {
        let Some(order) = self.snapshot.take() else {
            return Ok(());
        };
        let learned = self.state.clauses.learned().last().expect("Backtrack learned a clause");
        let record = LearningRecord {
            id: learned.id,
            clause: learned.clause.clone(),
            order,
            bound: self.state.bound.clone(),
        };
        if self.cfg.check == CheckLevel::Full {
            let redundant =
                oracle::is_redundant_snapshot(&record.clause, &pool, &record.order, &record.bound, self.cfg.oracle_cap);
            match redundant {
                Ok(true) => {
                    return Err(self.invariant(
                        "Backtrack",
                        format!("learned clause {} is redundant", record.clause.show(self.sig)),
                    ));
                }
                Ok(false) => {}
                Err(_) => self.checker.skipped += 1,
            }
        }
        if self.cfg.record_learning {
            self.learning.push(record);
        }
        Ok(())
    }

    fn try_grow(&mut self) -> Result<bool, RunError> {
        let GrowPolicy::WeightIncrement { max } = self.cfg.grow else {
            return Ok(false);
        };
        if self.stats.growths >= max {
            return Ok(false);
        }
        let beta = match next_beta(&self.state.bound) {
            Ok(b) => b,
            Err(OrderingError::SignatureExhausted) => return Ok(false),
            Err(e) => {
                return Err(RunError::Rule {
                    step: self.stats.steps + 1,
                    source: e.into(),
                })
            }
        };
        self.apply_checked(RuleApplication::Grow { beta })?;
        self.stats.growths += 1;
        self.rescan = true;
        Ok(true)
    }

    fn avoided(&self, pred: Sym) -> bool {
        matches!(&self.cfg.heuristic, Heuristic::Avoid(preds) if preds.contains(&pred))
    }

    fn choose(&mut self) -> Result<Option<Choice>, RunError> {
        if let Heuristic::Random(_) = self.cfg.heuristic {
            return Ok(self.choose_random());
        }
        let exhaustive = self.cfg.mode == Mode::Exhaustive;
        let mut deferred = None;
        let mut first = None;
        let _ = propagations(&self.state, &mut |p| {
            if !exhaustive && self.avoided(p.propagated.atom.pred) {
                deferred.get_or_insert(p);
                ControlFlow::Continue(())
            } else {
                first = Some(p);
                ControlFlow::Break(())
            }
        });
        if let Some(p) = first {
            return Ok(Some(Choice::Propagate(p)));
        }
        if exhaustive {
            if let Some(p) = deferred {
                return Ok(Some(Choice::Propagate(p)));
            }
        }
        let mut avoided_decision = None;
        for lit in decision_candidates(&self.state) {
            let avoid = self.avoided(lit.atom.pred);
            if avoid && (avoided_decision.is_some() || deferred.is_some()) {
                continue;
            }
            if !is_reasonable(&mut self.state, &lit) {
                continue;
            }
            if !avoid {
                return Ok(Some(Choice::Decide(lit)));
            }
            avoided_decision = Some(lit);
        }
        Ok(deferred.map(Choice::Propagate).or(avoided_decision.map(Choice::Decide)))
    }

    fn choose_random(&mut self) -> Option<Choice> {
        let mut props = Vec::new();
        let _ = propagations(&self.state, &mut |p| {
            props.push(p);
            ControlFlow::Continue(())
        });
        if self.cfg.mode == Mode::Exhaustive && !props.is_empty() {
            let i = self.rng.gen_range(0..props.len());
            return Some(Choice::Propagate(props.swap_remove(i)));
        }
        let decisions: Vec<Literal> = decision_candidates(&self.state)
            .into_iter()
            .filter(|l| is_reasonable(&mut self.state, l))
            .collect();
        let total = props.len() + decisions.len();
        if total == 0 {
            return None;
        }
        let i = self.rng.gen_range(0..total);
        if i < props.len() {
            Some(Choice::Propagate(props.swap_remove(i)))
        } else {
            Some(Choice::Decide(decisions[i - props.len()].clone()))
        }
    }
}
