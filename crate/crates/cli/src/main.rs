use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use scl::frontend::{
    build_bound, default_beta_weight, parse_literal, parse_model, parse_precedence, parse_problem, parse_proof,
    render_model, BetaSpec, Format, ParseError,
};
use scl::oracle::{check_model, check_proof};
use scl::ordering::{Bound, OrderingKind, DEFAULT_ATOM_CAP};
use scl::state::{render_trace, ClauseDb};
use scl::strategy::{run, CheckLevel, Factoring, GrowPolicy, Heuristic, Mode, RunConfig, RunError, Verdict};
use scl::term::{Clause, Signature};
use thiserror::Error;

/// SCL clause learning for first-order logic without equality.
#[derive(Parser, Debug)]
#[command(name = "scl", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    problem: Option<ProblemArgs>,
    #[command(flatten)]
    solve: SolveArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Replay a proof file against the input clauses.
    CheckProof {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_name = "FILE")]
        proof: PathBuf,
    },
    /// Check that a model file satisfies every ground instance below its bound.
    CheckModel {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
struct ProblemArgs {
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Input format; by default `.p` and `.tptp` files are TPTP, others native.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum, default_value_t = OrderingArg::Kbo)]
    ordering: OrderingArg,
    /// Symbol precedence, least first: `a<b<P`.
    #[arg(long, default_value = "")]
    precedence: String,
    /// Ground bound literal.
    #[arg(long, value_name = "LITERAL", conflicts_with = "beta_weight")]
    beta: Option<String>,
    /// Bound every atom of at most this weight.
    #[arg(long, value_name = "W")]
    beta_weight: Option<usize>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// `off` or the number of times β may grow.
    #[arg(long, default_value = "off", value_parser = parse_grow)]
    grow: GrowPolicy,
    #[arg(long, value_enum, default_value_t = ModeArg::Regular)]
    mode: ModeArg,
    /// `first`, `random` or `avoid:P,Q`.
    #[arg(long, default_value = "first")]
    heuristic: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FactoringArg::Eager)]
    factoring: FactoringArg,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: usize,
    #[arg(long, value_enum, default_value_t = CheckArg::Off)]
    check: CheckArg,
    #[arg(long, value_name = "FILE")]
    proof: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    model: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
    /// Print run statistics to stderr.
    #[arg(long)]
    stats: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Tptp,
    Native,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderingArg {
    Kbo,
    Lpo,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Regular,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FactoringArg {
    Eager,
    Lazy,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckArg {
    Off,
    Invariants,
    Full,
}

fn parse_grow(text: &str) -> Result<GrowPolicy, String> {
    match text {
        "off" => Ok(GrowPolicy::Off),
        n => n
            .parse()
            .map(|max| GrowPolicy::WeightIncrement { max })
            .map_err(|_| format!("expected `off` or a number, got `{n}`")),
    }
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Internal(String),
    #[error("{0}")]
    Rejected(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Parse { .. } => 65,
            Failure::Internal(_) => 70,
            Failure::Rejected(_) => 1,
        }
    }
}

struct Setup {
    sig: Signature,
    clauses: Vec<Clause>,
    bound: Arc<Bound>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_error(path: &Path) -> impl FnOnce(ParseError) -> Failure + '_ {
    move |source| Failure::Parse {
        path: path.display().to_string(),
        source,
    }
}

fn setup(args: &ProblemArgs) -> Result<Setup, Failure> {
    let format = match args.format {
        Some(FormatArg::Tptp) => Format::Tptp,
        Some(FormatArg::Native) => Format::Native,
        None => match args.input.extension().and_then(|e| e.to_str()) {
            Some("p" | "tptp") => Format::Tptp,
            _ => Format::Native,
        },
    };
    let file = parse_problem(&read(&args.input)?, format).map_err(parse_error(&args.input))?;
    let clauses = file.clause_list();
    let mut sig = file.signature;
    let beta = match (&args.beta, args.beta_weight) {
        (Some(text), _) => {
            parse_literal(text, &mut sig).map_err(|e| Failure::Usage(format!("--beta: {e}")))?;
            BetaSpec::Literal(text.clone())
        }
        (None, Some(w)) => BetaSpec::Weight(w),
        (None, None) => BetaSpec::Weight(default_beta_weight(&clauses)),
    };
    let kind = match args.ordering {
        OrderingArg::Kbo => OrderingKind::Kbo,
        OrderingArg::Lpo => OrderingKind::Lpo,
    };
    let usage = |e: scl::frontend::SetupError| Failure::Usage(e.to_string());
    let precedence = parse_precedence(&args.precedence, &sig).map_err(usage)?;
    let bound = build_bound(&mut sig, kind, &precedence, &beta, DEFAULT_ATOM_CAP).map_err(usage)?;
    Ok(Setup { sig, clauses, bound })
}

/// Writes `contents` next to `path` and renames it into place.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Usage(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn heuristic(text: &str, seed: u64, sig: &Signature) -> Result<Heuristic, Failure> {
    match text {
        "first" => Ok(Heuristic::First),
        "random" => Ok(Heuristic::Random(seed)),
        _ => {
            let list = text
                .strip_prefix("avoid:")
                .ok_or_else(|| Failure::Usage(format!("unknown heuristic `{text}`")))?;
            let preds = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|name| {
                    sig.lookup(name)
                        .filter(|s| sig.predicates().any(|p| p == *s))
                        .ok_or_else(|| Failure::Usage(format!("--heuristic: unknown predicate `{name}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Heuristic::Avoid(preds))
        }
    }
}

fn solve(problem: &ProblemArgs, args: &SolveArgs) -> Result<u8, Failure> {
    let Setup { sig, clauses, bound } = setup(problem)?;
    let cfg = RunConfig {
        heuristic: heuristic(&args.heuristic, args.seed, &sig)?,
        factoring: match args.factoring {
            FactoringArg::Eager => Factoring::Eager,
            FactoringArg::Lazy => Factoring::Lazy,
        },
        mode: match args.mode {
            ModeArg::Regular => Mode::Regular,
            ModeArg::Exhaustive => Mode::Exhaustive,
        },
        grow: args.grow,
        max_steps: args.max_steps,
        check: match args.check {
            CheckArg::Off => CheckLevel::Off,
            CheckArg::Invariants => CheckLevel::Invariants,
            CheckArg::Full => CheckLevel::Full,
        },
        record_trace: args.trace.is_some(),
        ..RunConfig::default()
    };
    let result = run(&sig, ClauseDb::from_clauses(clauses), bound, &cfg).map_err(|e| match e {
        RunError::Invariant { .. } | RunError::Rule { .. } => Failure::Internal(e.to_string()),
    })?;
    if let Some(path) = &args.trace {
        write_atomic(path, &render_trace(&result.trace))?;
    }
    if args.stats {
        eprint!("{}", result.stats.render(&sig));
    }
    let code = match &result.verdict {
        Verdict::Unsat(proof) => {
            if let Some(path) = &args.proof {
                write_atomic(path, &proof.render(&sig))?;
            }
            println!("UNSATISFIABLE");
            0
        }
        Verdict::SatBounded(model) => {
            if let Some(path) = &args.model {
                write_atomic(path, &render_model(model, &sig))?;
            }
            println!("SATISFIABLE-BOUNDED");
            1
        }
        Verdict::ResourceOut => {
            println!("UNKNOWN(resource)");
            2
        }
    };
    Ok(code)
}

fn check_proof_file(problem: &ProblemArgs, path: &Path) -> Result<u8, Failure> {
    let Setup { sig, clauses, .. } = setup(problem)?;
    let proof = parse_proof(&read(path)?, &sig).map_err(parse_error(path))?;
    check_proof(&clauses, &proof).map_err(|e| Failure::Rejected(format!("proof rejected: {e}")))?;
    println!("proof ok");
    Ok(0)
}

fn check_model_file(problem: &ProblemArgs, path: &Path) -> Result<u8, Failure> {
    let Setup { sig, clauses, bound } = setup(problem)?;
    let model = parse_model(&read(path)?, &sig).map_err(parse_error(path))?;
    let kind = bound.ordering().kind();
    if model.ordering != kind {
        return Err(Failure::Usage(format!(
            "model was built under {}, not {kind}",
            model.ordering
        )));
    }
    // the model's β may have grown past the initial one
    let bound = Bound::new(model.beta.clone(), bound.ordering().clone(), DEFAULT_ATOM_CAP)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    check_model(&model.literals, &clauses, &bound).map_err(|e| Failure::Rejected(format!("model rejected: {e}")))?;
    println!("model ok");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let outcome = match (&cli.command, &cli.problem) {
        (Some(Command::CheckProof { problem, proof }), _) => check_proof_file(problem, proof),
        (Some(Command::CheckModel { problem, model }), _) => check_model_file(problem, model),
        (None, Some(problem)) => solve(problem, &cli.solve),
        (None, None) => Err(Failure::Usage("--input is required".into())),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("scl: {e}");
            ExitCode::from(e.code())
        }
    }
}
