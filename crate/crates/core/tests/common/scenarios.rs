//! Scripted traces, mutation cases and the random corpus, shared by the
//! topic tests and the acceptance target.

use scl::calculus::{apply, RuleApplication};
use scl::oracle::{brute_groundings, check_model, check_proof, ground_sat, is_redundant_snapshot};
use scl::proof::Derivation;
use scl::state::{Annotation, ProblemState, SoundnessChecker, Status, TraceEvent};
use scl::strategy::{conflict_step, run, CheckLevel, Factoring, Heuristic, RunConfig, Verdict};
use scl::term::{Clause, Closure, Render};

use super::*;

pub type Script = Vec<(RuleApplication, &'static str)>;

pub fn propagate(p: &Problem, clause: usize, literal: usize, subst: &str) -> RuleApplication {
    RuleApplication::Propagate {
        clause: clause - 1,
        literal,
        subst: p.subst(subst),
    }
}

pub fn conflict(p: &Problem, clause: usize, subst: &str) -> RuleApplication {
    RuleApplication::Conflict {
        clause: clause - 1,
        subst: p.subst(subst),
    }
}

pub fn decide(p: &Problem, lit: &str) -> RuleApplication {
    RuleApplication::Decide { literal: p.lit(lit) }
}

pub fn full() -> RunConfig {
    RunConfig {
        check: CheckLevel::Full,
        record_trace: true,
        ..RunConfig::default()
    }
}

/// Applies `script` from `s`, comparing every successor with the expected
/// rendering and running the soundness checker on it. Returns the number
/// of transitions.
pub fn replay_checked(p: &Problem, s: &mut ProblemState, script: &Script) -> Result<usize, String> {
    let mut checker = SoundnessChecker::default();
    checker.check(s).map_err(|v| format!("initial state: {v}"))?;
    for (i, (rule, want)) in script.iter().enumerate() {
        apply(s, rule).map_err(|e| format!("step {} ({}): {e}", i + 1, rule.name()))?;
        let got = show_state(s, &p.sig);
        if got != *want {
            return Err(format!(
                "after step {} ({}):\n  got  {got}\n  want {want}",
                i + 1,
                rule.name()
            ));
        }
        checker.check(s).map_err(|v| format!("step {}: {v}", i + 1))?;
    }
    if checker.skipped > 0 {
        return Err(format!("{} checks skipped", checker.skipped));
    }
    Ok(script.len())
}

pub fn pq_script(p: &Problem) -> Script {
    vec![
        (decide(p, "~P(a)"), "[~P(a)^1]; 1; []; top"),
        (
            propagate(p, 2, 1, "{X->a, Y->b}"),
            "[~P(a)^1, ~Q(b)^2{X->a, Y->b}]; 1; []; top",
        ),
        (
            conflict(p, 1, "{X->a}"),
            "[~P(a)^1, ~Q(b)^2{X->a, Y->b}]; 1; []; P(X) | Q(b) . {X->a}",
        ),
        (
            RuleApplication::Resolve { literal: 1 },
            "[~P(a)^1, ~Q(b)^2{X->a, Y->b}]; 1; []; P(X) | P(Y) . {X->a, Y->a}",
        ),
        (
            RuleApplication::Factorize { keep: 0, drop: 1 },
            "[~P(a)^1, ~Q(b)^2{X->a, Y->b}]; 1; []; P(X) . {X->a}",
        ),
        (RuleApplication::Skip, "[~P(a)^1]; 1; []; P(X) . {X->a}"),
        (RuleApplication::Backtrack, "[]; 0; [P(X)]; top"),
        (propagate(p, 5, 0, "{X->a}"), "[P(a)^5{X->a}]; 0; [P(X)]; top"),
        (
            propagate(p, 3, 1, "{X->b}"),
            "[P(a)^5{X->a}, Q(b)^3{X->b}]; 0; [P(X)]; top",
        ),
        (
            conflict(p, 4, "{X->a}"),
            "[P(a)^5{X->a}, Q(b)^3{X->b}]; 0; [P(X)]; ~P(X) | ~Q(b) . {X->a}",
        ),
        (
            RuleApplication::Resolve { literal: 1 },
            "[P(a)^5{X->a}, Q(b)^3{X->b}]; 0; [P(X)]; ~P(X) | ~P(a) . {X->a}",
        ),
        (
            RuleApplication::Skip,
            "[P(a)^5{X->a}]; 0; [P(X)]; ~P(X) | ~P(a) . {X->a}",
        ),
        (
            RuleApplication::Factorize { keep: 1, drop: 0 },
            "[P(a)^5{X->a}]; 0; [P(X)]; ~P(a) . {}",
        ),
        (
            RuleApplication::Resolve { literal: 0 },
            "[P(a)^5{X->a}]; 0; [P(X)]; bottom",
        ),
    ]
}

/// The stall on `{P(a), P(g(a))}` up to the Grow, then the refutation.
pub fn grow_prefix(p: &Problem) -> Script {
    vec![
        (propagate(p, 2, 0, "{}"), "[P(a)^2{}]; 0; []; top"),
        (propagate(p, 1, 1, "{X->a}"), "[P(a)^2{}, P(g(a))^1{X->a}]; 0; []; top"),
    ]
}

pub fn grow_script(p: &Problem) -> Script {
    vec![
        (
            RuleApplication::Grow {
                beta: p.lit("P(g(g(g(a))))"),
            },
            "[]; 0; []; top",
        ),
        (propagate(p, 2, 0, "{}"), "[P(a)^2{}]; 0; []; top"),
        (propagate(p, 1, 1, "{X->a}"), "[P(a)^2{}, P(g(a))^1{X->a}]; 0; []; top"),
        (
            propagate(p, 1, 1, "{X->g(a)}"),
            "[P(a)^2{}, P(g(a))^1{X->a}, P(g(g(a)))^1{X->g(a)}]; 0; []; top",
        ),
        (
            conflict(p, 3, "{}"),
            "[P(a)^2{}, P(g(a))^1{X->a}, P(g(g(a)))^1{X->g(a)}]; 0; []; ~P(g(g(a))) . {}",
        ),
        (
            RuleApplication::Resolve { literal: 0 },
            "[P(a)^2{}, P(g(a))^1{X->a}, P(g(g(a)))^1{X->g(a)}]; 0; []; ~P(g(a)) . {}",
        ),
        (
            RuleApplication::Skip,
            "[P(a)^2{}, P(g(a))^1{X->a}]; 0; []; ~P(g(a)) . {}",
        ),
        (
            RuleApplication::Resolve { literal: 0 },
            "[P(a)^2{}, P(g(a))^1{X->a}]; 0; []; ~P(a) . {}",
        ),
        (RuleApplication::Skip, "[P(a)^2{}]; 0; []; ~P(a) . {}"),
        (RuleApplication::Resolve { literal: 0 }, "[P(a)^2{}]; 0; []; bottom"),
    ]
}

/// Learns `~P(X) | P(f(f(X)))` under β = P(f(f(f(a)))). The Skip of the
/// propagated `~P(f(a))` is explicit.
pub fn alternation_script(p: &Problem) -> Script {
    vec![
        (decide(p, "P(a)"), "[P(a)^1]; 1; []; top"),
        (decide(p, "~P(f(f(a)))"), "[P(a)^1, ~P(f(f(a)))^2]; 2; []; top"),
        (
            propagate(p, 1, 1, "{X->a}"),
            "[P(a)^1, ~P(f(f(a)))^2, ~P(f(a))^1{X->a}]; 2; []; top",
        ),
        (
            conflict(p, 2, "{X->f(a)}"),
            "[P(a)^1, ~P(f(f(a)))^2, ~P(f(a))^1{X->a}]; 2; []; P(X) | P(f(X)) . {X->f(a)}",
        ),
        (
            RuleApplication::Resolve { literal: 0 },
            "[P(a)^1, ~P(f(f(a)))^2, ~P(f(a))^1{X->a}]; 2; []; P(f(f(X))) | ~P(X) . {X->a}",
        ),
        (
            RuleApplication::Skip,
            "[P(a)^1, ~P(f(f(a)))^2]; 2; []; P(f(f(X))) | ~P(X) . {X->a}",
        ),
        (RuleApplication::Backtrack, "[P(a)^1]; 1; [P(f(f(X))) | ~P(X)]; top"),
    ]
}

/// Four decisions, one propagation and the conflict on the first clause.
pub fn factoring_conflict_state(p: &Problem) -> ProblemState {
    let mut s = p.state();
    for l in ["~P(a)", "~P(b)", "~S(a,b)", "~Q"] {
        apply(&mut s, &decide(p, l)).unwrap();
    }
    apply(&mut s, &propagate(p, 2, 4, "{X->a, Y->b}")).unwrap();
    // stored as Q | R(a,X) | R(Y,b) after normalization
    apply(&mut s, &conflict(p, 1, "{X->b, Y->a}")).unwrap();
    s
}

pub struct Learned {
    pub clause: Clause,
    pub redundant: bool,
    pub transitions: usize,
}

/// Resolves the factoring-set conflict to a learned clause under `factoring`,
/// checking soundness after every transition.
pub fn factoring_learn(p: &Problem, factoring: Factoring) -> Result<Learned, String> {
    let mut s = factoring_conflict_state(p);
    let order = s.trail_order();
    let pool: Vec<_> = s.clauses.iter().map(|c| c.clause.clone()).collect();
    let mut checker = SoundnessChecker::default();
    let mut transitions = 0;
    loop {
        let rule = conflict_step(&s, factoring).ok_or("conflict vanished before Backtrack")?;
        let done = rule == RuleApplication::Backtrack;
        apply(&mut s, &rule).map_err(|e| format!("{}: {e}", rule.name()))?;
        checker.check(&s).map_err(|v| format!("{}: {v}", rule.name()))?;
        transitions += 1;
        if done {
            break;
        }
    }
    let clause = s.clauses.learned().next().unwrap().clause.clone();
    let redundant = is_redundant_snapshot(&clause, &pool, &order, &s.bound, 24).map_err(|e| e.to_string())?;
    Ok(Learned {
        clause,
        redundant,
        transitions,
    })
}

pub struct Mutation {
    pub name: &'static str,
    pub condition: u8,
    pub state: ProblemState,
}

/// The P/Q set after `Decide ~P(a)`.
fn decided(p: &Problem) -> ProblemState {
    let mut s = p.state();
    apply(&mut s, &decide(p, "~P(a)")).unwrap();
    s
}

/// States that a rule with one guard removed would produce, each with the
/// soundness condition it breaks.
pub fn mutations() -> Vec<Mutation> {
    let p = pq_set();
    let mut out = Vec::new();
    let mut push = |name, condition, state| out.push(Mutation { name, condition, state });

    let mut s = decided(&p);
    s.trail.push(
        p.lit("P(a)"),
        Annotation::Propagation {
            source: 0,
            delta: p.subst("{}"),
            closure: Closure::new(p.clause("P(X) | Q(b)"), p.subst("{X->a}")),
            pivot: 0,
        },
    );
    push("propagate a defined literal", 1, s);

    let c2 = Annotation::Propagation {
        source: 1,
        delta: p.subst("{}"),
        closure: Closure::new(p.clause("P(X) | ~Q(Y)"), p.subst("{X->a, Y->b}")),
        pivot: 1,
    };
    let mut s = p.state();
    s.trail.push(p.lit("~Q(b)"), c2);
    push("propagate with a side literal not false", 2, s);

    let mut s = decided(&p);
    s.trail.push(
        p.lit("~Q(b)"),
        Annotation::Propagation {
            source: 0,
            delta: p.subst("{}"),
            closure: Closure::new(p.clause("P(X) | ~Q(Y)"), p.subst("{X->a, Y->b}")),
            pivot: 1,
        },
    );
    push("propagate from a clause that is not the source", 2, s);

    let mut s = decided(&p);
    s.k += 1;
    s.trail.push(p.lit("~P(a)"), Annotation::Decision(2));
    push("decide a defined literal", 3, s);

    let mut s = decided(&p);
    s.k = 0;
    push("decide without counting the level", 3, s);

    let mut s = decided(&p);
    s.clauses.add_learned(
        p.clause("Q(X)"),
        Derivation::new(0, p.clause("P(X) | Q(b)"), p.subst("{X->a}")),
    );
    push("learn a clause the derivation does not yield", 4, s);

    let mut s = decided(&p);
    s.status = Status::Conflict(Closure::new(p.clause("P(X) | Q(b)"), p.subst("{X->a}")));
    s.derivation = Some(Derivation::new(0, p.clause("P(X) | Q(b)"), p.subst("{X->a}")));
    push("conflict on a clause that is not false", 5, s);

    let mut s = decided(&p);
    s.status = Status::Bottom;
    push("bottom without a refutation", 5, s);

    let mut s = decided(&p);
    s.k += 1;
    s.trail.push(p.lit("Q(f(a))"), Annotation::Decision(2));
    push("decide above the bound", 6, s);

    let mut s = decided(&p);
    s.k += 1;
    s.trail.push(p.lit("R(a)"), Annotation::Decision(2));
    push("decide an atom no clause mentions", 6, s);

    out
}

/// Runs every mutation through the checker; reports the first one that is
/// missed or attributed to the wrong condition.
pub fn check_mutations() -> Result<usize, String> {
    let all = mutations();
    for m in &all {
        match SoundnessChecker::default().check(&m.state) {
            Ok(()) => return Err(format!("{}: not detected", m.name)),
            Err(v) if v.condition != m.condition => {
                return Err(format!(
                    "{}: condition {} instead of {}",
                    m.name, v.condition, m.condition
                ))
            }
            Err(_) => {}
        }
    }
    Ok(all.len())
}

/// Every Conflict directly follows a Propagate, and every episode between
/// a Conflict and its Backtrack contains a Resolve.
pub fn check_regular_trace(trace: &[TraceEvent]) -> Result<usize, String> {
    let mut conflicts = 0;
    let mut open: Option<(usize, usize)> = None;
    for (i, e) in trace.iter().enumerate() {
        match e.rule {
            "Conflict" => {
                if i == 0 || trace[i - 1].rule != "Propagate" {
                    let prev = if i == 0 { "start" } else { trace[i - 1].rule };
                    return Err(format!("step {}: Conflict after {prev}", e.step));
                }
                conflicts += 1;
                open = Some((e.step, 0));
            }
            "Resolve" => {
                if let Some((_, n)) = &mut open {
                    *n += 1;
                }
            }
            "Backtrack" => match open.take() {
                Some((step, 0)) => return Err(format!("conflict at step {step} learned without Resolve")),
                Some(_) => {}
                None => return Err(format!("step {}: Backtrack outside conflict", e.step)),
            },
            _ => {}
        }
    }
    Ok(conflicts)
}

pub const CORPUS_SIZE: u64 = 500;
pub const ORACLE_CAP: usize = 32;

pub struct CorpusRun {
    pub seed: u64,
    pub unsat: bool,
    pub learned: usize,
    pub steps: usize,
    pub conflicts: usize,
}

/// One random BS set, run in regular mode with full checking and compared
/// with the ground oracle. Half of the runs pick rules at random and a
/// quarter factorize lazily.
pub fn corpus_run(seed: u64) -> Result<CorpusRun, String> {
    let p = random_bs_problem(seed);
    let fail = |msg: String| format!("seed {seed}: {msg}\n{}", random_bs(seed));
    let heuristic = if seed.is_multiple_of(2) {
        Heuristic::First
    } else {
        Heuristic::Random(seed)
    };
    let factoring = if seed % 4 == 3 {
        Factoring::Lazy
    } else {
        Factoring::Eager
    };
    let cfg = RunConfig {
        heuristic,
        factoring,
        oracle_cap: ORACLE_CAP,
        record_learning: true,
        max_steps: 100_000,
        ..full()
    };
    let r = run(&p.sig, p.db(), p.bound.clone(), &cfg).map_err(|e| fail(e.to_string()))?;
    if r.stats.unchecked > 0 {
        return Err(fail(format!("{} checks skipped", r.stats.unchecked)));
    }
    let ground: Vec<_> = p.inputs.iter().flat_map(|c| brute_groundings(c, &p.bound)).collect();
    let expected_sat = ground_sat(&ground, ORACLE_CAP)
        .map_err(|e| fail(e.to_string()))?
        .is_sat();
    let unsat = match &r.verdict {
        Verdict::Unsat(proof) => {
            if expected_sat {
                return Err(fail("refuted a satisfiable set".into()));
            }
            check_proof(&p.inputs, proof).map_err(|e| fail(e.to_string()))?;
            true
        }
        Verdict::SatBounded(m) => {
            if !expected_sat {
                return Err(fail("model for an unsatisfiable set".into()));
            }
            check_model(&m.literals, &p.inputs, &p.bound).map_err(|e| fail(e.to_string()))?;
            false
        }
        Verdict::ResourceOut => return Err(fail("step limit".into())),
    };
    for rec in &r.learning {
        let pool: Vec<_> = r.state.clauses.iter().take(rec.id).map(|c| c.clause.clone()).collect();
        let redundant = is_redundant_snapshot(&rec.clause, &pool, &rec.order, &rec.bound, ORACLE_CAP)
            .map_err(|e| fail(e.to_string()))?;
        if redundant {
            return Err(fail(format!("learned clause {} is redundant", rec.clause.show(&p.sig))));
        }
    }
    let conflicts = check_regular_trace(&r.trace).map_err(fail)?;
    Ok(CorpusRun {
        seed,
        unsat,
        learned: r.learning.len(),
        steps: r.stats.steps,
        conflicts,
    })
}
