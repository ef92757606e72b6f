#![allow(dead_code)]

pub mod scenarios;

use std::sync::Arc;

use scl::calculus::{apply, RuleApplication};
use scl::frontend::{build_bound, parse_clause, parse_literal, parse_native, parse_precedence, parse_subst, BetaSpec};
use scl::ordering::{Bound, OrderingKind, DEFAULT_ATOM_CAP};
use scl::state::{Annotation, ClauseDb, ProblemState, Status};
use scl::term::{Clause, Literal, Render, Signature, Subst};

pub struct Problem {
    pub sig: Signature,
    pub inputs: Vec<Clause>,
    pub bound: Arc<Bound>,
}

impl Problem {
    pub fn new(native: &str, kind: OrderingKind, precedence: &str, beta: BetaSpec) -> Self {
        let file = parse_native(native).expect("problem parses");
        let mut sig = file.signature.clone();
        let inputs = file.clause_list();
        // symbols of β may be new; declare them before reading the precedence
        if let BetaSpec::Literal(text) = &beta {
            parse_literal(text, &mut sig).expect("beta parses");
        }
        let prec = parse_precedence(precedence, &sig).expect("precedence");
        let bound = build_bound(&mut sig, kind, &prec, &beta, DEFAULT_ATOM_CAP).expect("bound");
        Problem { sig, inputs, bound }
    }

    pub fn db(&self) -> ClauseDb {
        ClauseDb::from_clauses(self.inputs.clone())
    }

    pub fn state(&self) -> ProblemState {
        ProblemState::initial(self.db(), self.bound.clone())
    }

    pub fn lit(&self, text: &str) -> Literal {
        let mut sig = self.sig.clone();
        parse_literal(text, &mut sig).expect("literal parses")
    }

    pub fn subst(&self, text: &str) -> Subst {
        parse_subst(text, &self.sig).expect("substitution parses")
    }

    pub fn clause(&self, text: &str) -> Clause {
        parse_clause(text, &self.sig).expect("clause parses")
    }
}

pub fn pq_set() -> Problem {
    Problem::new(
        "P(X) | Q(b)\nP(X) | ~Q(Y)\n~P(a) | Q(X)\n~P(X) | ~Q(b)\n",
        OrderingKind::Lpo,
        "a<b<P<Q<R",
        BetaSpec::Literal("R(b)".into()),
    )
}

pub fn factoring_set() -> Problem {
    Problem::new(
        "Q | R(a,Y) | R(X,b)\nQ | S(X,Y) | P(X) | P(Y) | ~R(X,Y)\n",
        OrderingKind::Lpo,
        "a<b<P<Q<S<R",
        BetaSpec::Literal("~R(b,b)".into()),
    )
}

pub fn successor_chain() -> Problem {
    Problem::new(
        "~P(X) | P(g(X))\nP(a)\n~P(g(g(a)))\n",
        OrderingKind::Kbo,
        "a<g<P",
        BetaSpec::Literal("P(g(g(a)))".into()),
    )
}

pub fn alternation(beta: &str) -> Problem {
    Problem::new(
        "~P(X) | ~P(f(X))\nP(X) | P(f(X))\n",
        OrderingKind::Kbo,
        "a<f<P",
        BetaSpec::Literal(beta.into()),
    )
}

/// One `R` unit over `n` variables and the four P/Q clauses, constants a, b.
pub fn exponential(n: usize) -> Problem {
    let xs: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let r = format!("R({},a,b)", xs.join(","));
    let text = format!("{r}\nP | Q\nP | ~Q\n~P | Q\n~P | ~Q\n");
    Problem::new(&text, OrderingKind::Kbo, "", BetaSpec::Weight(n + 3))
}

/// The weakly-regular blowup clause set for `n`.
pub fn blowup(n: usize) -> Problem {
    let xs: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let r = format!("R({},a,b)", xs.join(","));
    let mut text = String::new();
    for p in ["P", "~P"] {
        for q in ["Q", "~Q"] {
            for s in ["S", "~S"] {
                text.push_str(&format!("{p} | {q} | {s}\n"));
            }
        }
    }
    for l in ["P", "S", "Q", "~P", "~Q", "~S"] {
        text.push_str(&format!("{l} | {r}\n"));
    }
    Problem::new(&text, OrderingKind::Kbo, "", BetaSpec::Weight(n + 3))
}

/// `trail; k; U; status` with propagations shown as `L^id{σ}` (one-based
/// source clause id) and decisions as `L^level`.
pub fn show_state(s: &ProblemState, sig: &Signature) -> String {
    let trail: Vec<String> = s
        .trail
        .entries()
        .iter()
        .map(|e| match &e.annotation {
            Annotation::Decision(level) => format!("{}^{level}", e.literal.show(sig)),
            Annotation::Propagation { source, closure, .. } => {
                format!("{}^{}{}", e.literal.show(sig), source + 1, closure.subst.show(sig))
            }
        })
        .collect();
    let learned: Vec<String> = s.clauses.learned().map(|c| c.clause.show(sig)).collect();
    let status = match &s.status {
        Status::Top => "top".to_string(),
        Status::Bottom => "bottom".to_string(),
        Status::Conflict(c) => c.show(sig),
    };
    format!("[{}]; {}; [{}]; {}", trail.join(", "), s.k, learned.join(", "), status)
}

/// Applies `rules` one by one and compares each successor with `expected`.
pub fn replay_script(p: &Problem, s: &mut ProblemState, script: &[(RuleApplication, &str)]) {
    for (i, (rule, want)) in script.iter().enumerate() {
        apply(s, rule).unwrap_or_else(|e| panic!("step {} ({}): {e}", i + 1, rule.name()));
        assert_eq!(show_state(s, &p.sig), *want, "after step {} ({})", i + 1, rule.name());
    }
}

/// A random BS clause set: at most 3 predicates of arity at most 2, 3
/// constants, 8 clauses and 3 literals per clause, in native syntax.
pub fn random_bs(seed: u64) -> String {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let arities: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=2)).collect();
    let consts = rng.gen_range(1..=3);
    let mut text = String::new();
    // mostly non-unit clauses, so that runs need decisions and learning
    for _ in 0..rng.gen_range(3..=8) {
        let len = [1, 2, 2, 3, 3, 3][rng.gen_range(0..6)];
        let lits: Vec<String> = (0..len)
            .map(|_| {
                let p = rng.gen_range(0..arities.len());
                let args: Vec<String> = (0..arities[p])
                    .map(|_| {
                        if rng.gen_bool(0.6) {
                            ["X", "Y", "Z"][rng.gen_range(0..3)].to_string()
                        } else {
                            format!("c{}", rng.gen_range(0..consts))
                        }
                    })
                    .collect();
                let sign = if rng.gen_bool(0.5) { "~" } else { "" };
                if args.is_empty() {
                    format!("{sign}p{p}")
                } else {
                    format!("{sign}p{p}({})", args.join(","))
                }
            })
            .collect();
        text.push_str(&lits.join(" | "));
        text.push('\n');
    }
    text
}

pub fn random_bs_problem(seed: u64) -> Problem {
    Problem::new(
        &random_bs(seed),
        scl::ordering::OrderingKind::Kbo,
        "",
        scl::frontend::BetaSpec::Weight(3),
    )
}
