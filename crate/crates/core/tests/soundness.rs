mod common;

use std::collections::BTreeSet;

use common::scenarios::*;
use common::*;
use scl::calculus::{apply, is_reasonable, RuleApplication};
use scl::state::SoundnessChecker;

#[test]
fn initial_state_is_sound() {
    let p = pq_set();
    assert!(SoundnessChecker::default().check(&p.state()).is_ok());
}

#[test]
fn each_condition_has_a_mutation() {
    let covered: BTreeSet<u8> = mutations().iter().map(|m| m.condition).collect();
    assert_eq!(covered, (1..=6).collect());
}

#[test]
fn mutations_are_reported_by_condition() {
    for m in mutations() {
        let v = SoundnessChecker::default().check(&m.state).expect_err(m.name);
        assert_eq!(v.condition, m.condition, "{}: {v}", m.name);
    }
}

#[test]
fn unreasonable_decision_is_detected() {
    let p = Problem::new(
        "P(a) | Q(b)\n",
        scl::ordering::OrderingKind::Kbo,
        "",
        scl::frontend::BetaSpec::Weight(3),
    );
    let mut s = p.state();
    apply(
        &mut s,
        &RuleApplication::Decide {
            literal: p.lit("~P(a)"),
        },
    )
    .unwrap();
    assert!(!is_reasonable(&mut s, &p.lit("~Q(b)")));
    assert!(is_reasonable(&mut s, &p.lit("Q(b)")));
    assert_eq!(s.trail.len(), 1);
}

#[test]
fn pq_opening_decision_is_reasonable() {
    let p = pq_set();
    let mut s = p.state();
    assert!(is_reasonable(&mut s, &p.lit("~P(a)")));
    assert!(scl::calculus::reasonable_decisions(&mut s).contains(&p.lit("~P(a)")));
}
