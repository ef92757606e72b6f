mod common;

use common::scenarios::*;
use common::*;
use scl::calculus::{apply, RuleApplication, RuleError};
use scl::oracle::{check_proof, is_redundant_snapshot};
use scl::strategy::Factoring;
use scl::term::{is_variant, subsumes};

#[test]
fn pq_scripted_trace() {
    let p = pq_set();
    let mut s = p.state();
    let n = replay_checked(&p, &mut s, &pq_script(&p)).unwrap_or_else(|e| panic!("{e}"));
    assert_eq!(n, 14);
    let proof = s.proof().expect("refutation");
    check_proof(&p.inputs, &proof).expect("proof checks");
}

#[test]
fn pq_learned_clause_is_not_redundant() {
    let p = pq_set();
    let mut s = p.state();
    for rule in [
        decide(&p, "~P(a)"),
        propagate(&p, 2, 1, "{X->a, Y->b}"),
        conflict(&p, 1, "{X->a}"),
    ] {
        apply(&mut s, &rule).unwrap();
    }
    let order = s.trail_order();
    let pool: Vec<_> = s.clauses.iter().map(|c| c.clause.clone()).collect();
    for rule in [
        RuleApplication::Resolve { literal: 1 },
        RuleApplication::Factorize { keep: 0, drop: 1 },
        RuleApplication::Skip,
        RuleApplication::Backtrack,
    ] {
        apply(&mut s, &rule).unwrap();
    }
    let learned = s.clauses.learned().next().unwrap().clause.clone();
    assert!(!is_redundant_snapshot(&learned, &pool, &order, &s.bound, 24).unwrap());
    assert!(is_redundant_snapshot(&p.inputs[0], &pool, &order, &s.bound, 24).unwrap());
}

#[test]
fn pq_guards() {
    let p = pq_set();
    let mut s = p.state();
    // R(b) is β itself
    assert!(matches!(
        apply(&mut s, &RuleApplication::Decide { literal: p.lit("R(b)") }),
        Err(RuleError::GuardFailed { .. })
    ));
    apply(&mut s, &decide(&p, "~P(a)")).unwrap();
    assert!(apply(&mut s, &decide(&p, "P(a)")).is_err());
    assert!(apply(&mut s, &conflict(&p, 1, "{X->a}")).is_err());
    assert!(apply(&mut s, &RuleApplication::Skip).is_err());
    // Q(b) would be propagated, not ~Q(b), by clause 1
    assert!(apply(&mut s, &propagate(&p, 1, 0, "{X->a}")).is_err());
    apply(&mut s, &propagate(&p, 2, 1, "{X->a, Y->b}")).unwrap();
    apply(&mut s, &conflict(&p, 1, "{X->a}")).unwrap();
    // resolving on P(X) against ~Q(b)
    assert!(apply(&mut s, &RuleApplication::Resolve { literal: 0 }).is_err());
    assert!(apply(&mut s, &RuleApplication::Backtrack).is_err());
    assert!(apply(&mut s, &RuleApplication::Factorize { keep: 0, drop: 1 }).is_err());
}

#[test]
fn factoring_policies_diverge() {
    let p = factoring_set();
    let c2 = p.clause("Q | S(a,b) | P(a) | P(b)");
    let c1 = p.clause("Q | S(X,b) | P(X) | P(b) | S(a,Y) | P(a) | P(Y)");
    let eager = factoring_learn(&p, Factoring::Eager).unwrap();
    let lazy = factoring_learn(&p, Factoring::Lazy).unwrap();
    let (eager_red, lazy_red) = (eager.redundant, lazy.redundant);
    let (eager, lazy) = (eager.clause, lazy.clause);
    assert!(
        eager.multiset_eq(&c2),
        "eager learned {}",
        scl::term::Render::show(&eager, &p.sig)
    );
    assert!(
        is_variant(&lazy, &c1),
        "lazy learned {}",
        scl::term::Render::show(&lazy, &p.sig)
    );
    assert!(!eager_red && !lazy_red);
    assert!(subsumes(&eager, &lazy).is_none());
    assert!(subsumes(&lazy, &eager).is_none());
}

#[test]
fn successor_chain_scripted_trace() {
    let p = successor_chain();
    let mut s = p.state();
    replay_checked(&p, &mut s, &grow_prefix(&p)).unwrap_or_else(|e| panic!("{e}"));
    assert!(apply(&mut s, &propagate(&p, 1, 1, "{X->g(a)}")).is_err());
    assert!(apply(
        &mut s,
        &RuleApplication::Grow {
            beta: p.lit("P(g(g(a)))")
        }
    )
    .is_err());
    replay_checked(&p, &mut s, &grow_script(&p)).unwrap_or_else(|e| panic!("{e}"));
    check_proof(&p.inputs, &s.proof().unwrap()).unwrap();
}

#[test]
fn alternation_scripted_trace() {
    let p = alternation("P(f(f(f(a))))");
    let mut s = p.state();
    replay_checked(&p, &mut s, &alternation_script(&p)).unwrap_or_else(|e| panic!("{e}"));
}
