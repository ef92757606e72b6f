mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use scl::calculus::{find_false_instance, min_false_prefix};
use scl::frontend::{parse_native, parse_tptp, print_native, print_tptp};
use scl::oracle::{brute_groundings, ground_sat, truth_table_sat};
use scl::ordering::{AtomOrdering, OrderingKind};
use scl::state::{Annotation, ProblemState, Trail, Truth};
use scl::term::{match_atom, mgu_atoms, Atom, Clause, Literal, Signature, Subst, Substitutable, Sym, Term};

struct Sig {
    sig: Signature,
    consts: Vec<Sym>,
    f: Sym,
    g: Sym,
    p: Sym,
    q: Sym,
}

fn small_sig() -> Sig {
    let mut sig = Signature::new();
    let consts = vec![sig.function("a", 0).unwrap(), sig.function("b", 0).unwrap()];
    let f = sig.function("f", 1).unwrap();
    let g = sig.function("g", 2).unwrap();
    let p = sig.predicate("P", 2).unwrap();
    let q = sig.predicate("Q", 1).unwrap();
    Sig {
        sig,
        consts,
        f,
        g,
        p,
        q,
    }
}

fn term(s: &Sig, ground: bool) -> impl Strategy<Value = Term> {
    let consts = s.consts.clone();
    let leaf = if ground {
        prop::sample::select(consts).prop_map(Term::constant).boxed()
    } else {
        prop_oneof![
            prop::sample::select(consts).prop_map(Term::constant),
            (0u32..3).prop_map(Term::var),
        ]
        .boxed()
    };
    let (f, g) = (s.f, s.g);
    leaf.prop_recursive(3, 12, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(move |t| Term::App(f, vec![t])),
            (inner.clone(), inner).prop_map(move |(x, y)| Term::App(g, vec![x, y])),
        ]
    })
}

fn atom(s: &Sig, ground: bool) -> impl Strategy<Value = Atom> {
    let (p, q) = (s.p, s.q);
    prop_oneof![
        (term(s, ground), term(s, ground)).prop_map(move |(x, y)| Atom::new(p, vec![x, y])),
        term(s, ground).prop_map(move |x| Atom::new(q, vec![x])),
    ]
}

proptest! {
    #[test]
    fn mgu_is_an_idempotent_unifier(a in atom(&small_sig(), false), b in atom(&small_sig(), false)) {
        if let Some(s) = mgu_atoms(&a, &b) {
            let ua = a.apply(&s);
            prop_assert_eq!(&ua, &b.apply(&s));
            prop_assert_eq!(ua.apply(&s), ua);
        }
    }

    #[test]
    fn matching_instantiates_pattern(a in atom(&small_sig(), false), t in atom(&small_sig(), true)) {
        match match_atom(&a, &t, &Subst::new()) {
            Some(s) => prop_assert_eq!(a.apply(&s), t),
            None => {
                // no match means no unifier either, since t is ground
                prop_assert!(mgu_atoms(&a, &t).is_none());
            }
        }
    }

    #[test]
    fn kbo_is_a_strict_total_order(
        a in atom(&small_sig(), true),
        b in atom(&small_sig(), true),
        c in atom(&small_sig(), true),
    ) {
        let s = small_sig();
        let o = AtomOrdering::new(OrderingKind::Kbo, &s.sig, &[]).unwrap();
        prop_assert_eq!(o.compare_atoms(&a, &b), o.compare_atoms(&b, &a).reverse());
        prop_assert_eq!(o.compare_atoms(&a, &b) == Ordering::Equal, a == b);
        if o.compare_atoms(&a, &b) == Ordering::Less && o.compare_atoms(&b, &c) == Ordering::Less {
            prop_assert_eq!(o.compare_atoms(&a, &c), Ordering::Less);
        }
    }

    #[test]
    fn atoms_below_are_exactly_the_smaller_atoms(beta in atom(&small_sig(), true), probe in atom(&small_sig(), true)) {
        let s = small_sig();
        let o = AtomOrdering::new(OrderingKind::Kbo, &s.sig, &[]).unwrap();
        if AtomOrdering::weight(&beta) <= 5 {
            let below = o.atoms_below(&beta, 100_000).unwrap();
            for w in below.windows(2) {
                prop_assert_eq!(o.compare_atoms(&w[0], &w[1]), Ordering::Less);
            }
            let smaller = o.compare_atoms(&probe, &beta) == Ordering::Less;
            prop_assert_eq!(below.contains(&probe), smaller);
        }
    }

    #[test]
    fn trail_push_pop_restores_values(lits in prop::collection::vec((any::<bool>(), atom(&small_sig(), true)), 1..8)) {
        let mut trail = Trail::new();
        let mut pushed = Vec::new();
        for (positive, a) in lits {
            if trail.position(&a).is_none() {
                let l = Literal::new(positive, a);
                trail.push(l.clone(), Annotation::Decision(pushed.len() + 1));
                pushed.push(l);
            }
        }
        let before: Vec<Truth> = pushed.iter().map(|l| trail.value(l)).collect();
        prop_assert!(before.iter().all(|t| *t == Truth::True));
        let top = trail.pop().unwrap();
        prop_assert_eq!(trail.value(&top.literal), Truth::Undefined);
        trail.push(top.literal.clone(), top.annotation);
        let after: Vec<Truth> = pushed.iter().map(|l| trail.value(l)).collect();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn dpll_agrees_with_truth_tables(clauses in prop::collection::vec(prop::collection::vec((any::<bool>(), 0usize..8), 0..4), 0..12)) {
        let mut sig = Signature::new();
        let atoms: Vec<Atom> = (0..8).map(|i| Atom::new(sig.predicate(&format!("p{i}"), 0).unwrap(), vec![])).collect();
        let set: Vec<Clause> = clauses
            .iter()
            .map(|c| Clause::new(c.iter().map(|(s, i)| Literal::new(*s, atoms[*i].clone())).collect()))
            .collect();
        let dpll = ground_sat(&set, 16).unwrap();
        prop_assert_eq!(dpll.is_sat(), truth_table_sat(&set, 16).unwrap().is_sat());
    }

    #[test]
    fn printing_round_trips(seed in 0u64..5_000) {
        let text = random_bs(seed);
        let native = parse_native(&text).unwrap();
        prop_assert_eq!(&parse_native(&print_native(&native)).unwrap(), &native);
        let tptp = parse_tptp(&print_tptp(&native)).unwrap();
        prop_assert_eq!(&parse_tptp(&print_tptp(&tptp)).unwrap(), &tptp);
        prop_assert_eq!(tptp.clause_list(), native.clause_list());
    }

    #[test]
    fn false_instance_search_is_complete(seed in 0u64..5_000, picks in prop::collection::vec((any::<bool>(), any::<prop::sample::Index>()), 0..10)) {
        let p = random_bs_problem(seed);
        let state = random_trail_state(&p, &picks);
        let brute = p.inputs.iter().any(|c| {
            brute_groundings(c, &p.bound).iter().any(|g| state.trail.falsifies(g))
        });
        let found = find_false_instance(&state);
        prop_assert_eq!(found.is_some(), brute);
        if let Some((id, s)) = found {
            prop_assert!(state.trail.falsifies(&state.clauses.clause(id).apply(&s)));
        }
    }

    #[test]
    fn backtrack_prefix_is_minimal(seed in 0u64..5_000, picks in prop::collection::vec((any::<bool>(), any::<prop::sample::Index>()), 0..10)) {
        let p = random_bs_problem(seed);
        let state = random_trail_state(&p, &picks);
        let lits: Vec<Literal> = state.trail.literals().cloned().collect();
        for c in &p.inputs {
            let groundings = brute_groundings(c, &p.bound);
            let brute = (0..=lits.len()).find(|&n| {
                let prefix = &lits[..n];
                groundings.iter().any(|g| g.iter().all(|l| prefix.contains(&l.complement())))
            });
            prop_assert_eq!(min_false_prefix(&state.trail, c), brute);
        }
    }
}

/// A state whose trail consists of decisions on bounded atoms picked by
/// `picks`, skipping atoms already defined.
fn random_trail_state(p: &Problem, picks: &[(bool, prop::sample::Index)]) -> ProblemState {
    let mut s = p.state();
    let atoms = p.bound.atoms().to_vec();
    if atoms.is_empty() {
        return s;
    }
    for (positive, i) in picks {
        let a = i.get(&atoms).clone();
        if s.trail.position(&a).is_none() {
            s.k += 1;
            s.trail.push(Literal::new(*positive, a), Annotation::Decision(s.k));
        }
    }
    s
}

#[test]
fn next_beta_eventually_dominates_every_atom() {
    let s = small_sig();
    let o = Arc::new(AtomOrdering::new(OrderingKind::Kbo, &s.sig, &[]).unwrap());
    let mut beta = Atom::new(s.q, vec![Term::constant(s.consts[0])]);
    for _ in 0..8 {
        let next = o.next_bound(&beta).unwrap();
        assert_eq!(o.compare_atoms(&beta, &next), Ordering::Less);
        assert!(AtomOrdering::weight(&next) > AtomOrdering::weight(&beta));
        beta = next;
    }
    assert_eq!(AtomOrdering::weight(&beta), 10);
    // every atom of weight at most 9 lies below
    let below = o.atoms_below(&beta, 10_000_000).unwrap();
    let nine = o.atoms_below(&o.next_bound(&beta).unwrap(), 10_000_000).unwrap();
    for a in nine.iter().filter(|a| AtomOrdering::weight(a) <= 9) {
        assert!(below.contains(a));
    }
}

#[test]
fn finite_signature_is_exhausted() {
    let mut sig = Signature::new();
    sig.function("a", 0).unwrap();
    sig.function("b", 0).unwrap();
    let p = sig.predicate("P", 1).unwrap();
    let o = AtomOrdering::new(OrderingKind::Kbo, &sig, &[]).unwrap();
    let top = sig
        .constants()
        .map(|c| Atom::new(p, vec![Term::constant(c)]))
        .max_by(|x, y| o.compare_atoms(x, y))
        .unwrap();
    assert!(matches!(
        o.next_bound(&top),
        Err(scl::ordering::OrderingError::SignatureExhausted)
    ));
}
