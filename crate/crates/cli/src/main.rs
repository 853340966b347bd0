//! Command-line front end: verification pipeline, dimension computations,
//! poset/Hibi utilities, and the SAGBI criterion, with JSON or text reports.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed,
//! 2 usage/domain error, 3 time budget exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sagbi_forge_core::edge_ring::{
    binomial_gens, dim_edge_ring_kernel, dim_edge_ring_lattice, dim_upper_bound, kab_frame,
    named_graph, Graph, GraphJson, FieldChoice,
};
use sagbi_forge_core::groebner::GbConfig;
use sagbi_forge_core::poset::build_pi;
use sagbi_forge_core::sagbi::{sagbi_check, SagbiOutcome, SubalgebraGens};
use sagbi_forge_core::verify::verify_main_theorems;
use sagbi_forge_core::Error;

#[derive(Parser)]
#[command(
    name = "sagbi-forge",
    about = "Exact verification toolkit for binomial edge rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification pipeline for K_{a,b}
    Verify(VerifyArgs),
    /// Compute the Krull dimension of the edge ring of a graph
    Dim(DimArgs),
    /// Inspect the poset Pi_{a,b} and its Hibi ring
    Poset(PosetArgs),
    /// Run the SAGBI (subduction) criterion on a generating set
    Sagbi(SagbiArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Time budget in seconds (default: SAGBI_FORGE_BUDGET_SECS or none)
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Kernel,
    Lattice,
}

#[derive(Args)]
struct DimArgs {
    /// Built-in graph: g1, g2, path:d, cycle:d, star:b, complete:d,
    /// complete-bipartite:a,b
    #[arg(long, conflicts_with = "graph")]
    named: Option<String>,
    /// Graph JSON file: {"vertices": d, "edges": [[i, j], ...]}
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "kernel")]
    strategy: Strategy,
    /// Coefficient field: q or fp:<prime>
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PosetAction {
    /// List all poset ideals
    Ideals,
    /// Print the Hibi toric relations
    Hibi,
    /// Report whether all maximal chains have equal length
    Graded,
    /// Count the poset ideals
    Count,
}

#[derive(Args)]
struct PosetArgs {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    #[arg(value_enum)]
    action: PosetAction,
}

#[derive(Args)]
struct SagbiArgs {
    /// Complete bipartite parameters "a,b"
    #[arg(long)]
    kab: Option<String>,
    /// Graph JSON file; uses the plain edge generators
    #[arg(long, conflicts_with = "kab")]
    graph: Option<PathBuf>,
    /// For --kab: drop the quartic generators and test the quadrics alone
    #[arg(long)]
    quadrics_only: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    budget: Option<u64>,
}

/// Exit-code classes, per the CLI contract.
enum Outcome {
    Pass,
    CheckFailed,
    Usage(String),
    Budget(String),
}

impl Outcome {
    fn code(&self) -> ExitCode {
        match self {
            Outcome::Pass => ExitCode::from(0),
            Outcome::CheckFailed => ExitCode::from(1),
            Outcome::Usage(_) => ExitCode::from(2),
            Outcome::Budget(_) => ExitCode::from(3),
        }
    }
}

fn classify(err: &Error) -> Outcome {
    match err {
        Error::BudgetExceeded { stage } => Outcome::Budget(format!("budget exceeded ({stage})")),
        other => Outcome::Usage(other.to_string()),
    }
}

fn gb_config(budget: Option<u64>) -> GbConfig {
    let secs = budget.or_else(|| {
        std::env::var("SAGBI_FORGE_BUDGET_SECS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    GbConfig {
        max_degree: None,
        deadline: secs.map(|s| Instant::now() + Duration::from_secs(s)),
    }
}

fn parse_field(s: &str) -> Result<FieldChoice, String> {
    if s == "q" {
        return Ok(FieldChoice::Q);
    }
    if let Some(p) = s.strip_prefix("fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| format!("invalid prime in field spec '{s}'"))?;
        if p < 2 {
            return Err(format!("invalid prime {p}"));
        }
        return Ok(FieldChoice::Fp(p));
    }
    Err(format!("unknown field '{s}' (expected q or fp:<prime>)"))
}

fn load_graph(path: &PathBuf) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let json: GraphJson =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Graph::from_json(&json).map_err(|e| e.to_string())
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let cfg = gb_config(args.budget);
    let report = match verify_main_theorems(args.a, args.b, &cfg) {
        Ok(r) => r,
        Err(e) => return classify(&e),
    };
    let rendered = match args.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
        Format::Text => report.to_text(),
    };
    if let Err(msg) = emit(&rendered, &args.out) {
        return Outcome::Usage(msg);
    }
    if report.interrupted {
        Outcome::Budget("pipeline interrupted".into())
    } else if report.passed() {
        Outcome::Pass
    } else {
        Outcome::CheckFailed
    }
}

fn cmd_dim(args: &DimArgs) -> Outcome {
    let field = match parse_field(&args.field) {
        Ok(f) => f,
        Err(msg) => return Outcome::Usage(msg),
    };
    let graph = match (&args.named, &args.graph) {
        (Some(name), None) => named_graph(name),
        (None, Some(path)) => match load_graph(path) {
            Ok(g) => Ok(g),
            Err(msg) => return Outcome::Usage(msg),
        },
        _ => return Outcome::Usage("exactly one of --named/--graph is required".into()),
    };
    let graph = match graph {
        Ok(g) => g,
        Err(e) => return classify(&e),
    };
    let cfg = gb_config(args.budget);
    let result = match args.strategy {
        Strategy::Kernel => dim_edge_ring_kernel(&graph, &field, &cfg),
        Strategy::Lattice => {
            // lattice rank equals the dimension only for a verified SAGBI
            // basis, so complete bipartite graphs use the augmented
            // generating set (quadrics and quartics)
            let gens = match kab_of(&args.named) {
                Some((a, b)) => match kab_frame(a, b) {
                    Ok(frame) => frame.gens,
                    Err(e) => return classify(&e),
                },
                None => binomial_gens(&graph),
            };
            dim_edge_ring_lattice(&gens, &cfg)
        }
    };
    let result = match result {
        Ok(r) => r,
        Err(e) => return classify(&e),
    };
    let bound = dim_upper_bound(&graph);
    let report = json!({
        "dimension": result.dim,
        "bound": bound,
        "bipartite": graph.is_bipartite(),
        "field": result.field,
        "strategy": result.strategy,
    });
    let rendered = match args.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
        Format::Text => format!(
            "dimension {}  (bound {}, {}, field {}, strategy {})",
            result.dim,
            bound,
            if graph.is_bipartite() { "bipartite" } else { "non-bipartite" },
            result.field,
            result.strategy,
        ),
    };
    println!("{rendered}");
    Outcome::Pass
}

/// Parses "complete-bipartite:a,b" from a --named argument.
fn kab_of(named: &Option<String>) -> Option<(usize, usize)> {
    let spec = named.as_deref()?.strip_prefix("complete-bipartite:")?;
    let (a, b) = spec.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

fn cmd_poset(args: &PosetArgs) -> Outcome {
    let pi = match build_pi(args.a, args.b) {
        Ok(p) => p,
        Err(e) => return classify(&e),
    };
    match args.action {
        PosetAction::Count => println!("{}", pi.enumerate_ideals().len()),
        PosetAction::Graded => println!("{}", pi.is_graded()),
        PosetAction::Ideals => {
            for ideal in pi.enumerate_ideals() {
                println!("{{{}}}", pi.ideal_label_list(&ideal).join(", "));
            }
        }
        PosetAction::Hibi => {
            let (gens, _, _) = pi.hibi_toric_gens::<sagbi_forge_core::field::Rat>();
            for g in gens {
                println!("{g}");
            }
        }
    }
    Outcome::Pass
}

fn cmd_sagbi(args: &SagbiArgs) -> Outcome {
    let cfg = gb_config(args.budget);
    let (gens, source): (SubalgebraGens<_>, String) = match (&args.kab, &args.graph) {
        (Some(spec), None) => {
            let parsed = spec
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
            let Some((a, b)): Option<(usize, usize)> = parsed else {
                return Outcome::Usage(format!("invalid --kab '{spec}' (expected a,b)"));
            };
            let frame = match kab_frame(a, b) {
                Ok(f) => f,
                Err(e) => return classify(&e),
            };
            let gens = if args.quadrics_only {
                let quadrics = a * b;
                SubalgebraGens::new(
                    frame.gens.gens[..quadrics].to_vec(),
                    frame.gens.order.clone(),
                    frame.gens.labels[..quadrics].to_vec(),
                )
            } else {
                frame.gens
            };
            (gens, format!("K_{{{a},{b}}}"))
        }
        (None, Some(path)) => {
            if args.quadrics_only {
                return Outcome::Usage("--quadrics-only applies only to --kab".into());
            }
            let graph = match load_graph(path) {
                Ok(g) => g,
                Err(msg) => return Outcome::Usage(msg),
            };
            (binomial_gens(&graph), path.display().to_string())
        }
        _ => return Outcome::Usage("exactly one of --kab/--graph is required".into()),
    };

    let outcome = match sagbi_check(&gens, &cfg) {
        Ok(o) => o,
        Err(e) => return classify(&e),
    };
    let report = match &outcome {
        SagbiOutcome::Pass => json!({
            "source": source,
            "generators": gens.gens.len(),
            "pass": true,
        }),
        SagbiOutcome::Fail { witness, relation } => json!({
            "source": source,
            "generators": gens.gens.len(),
            "pass": false,
            "witness": witness.to_string(),
            "relation": relation.to_string(),
        }),
    };
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Err(msg) = emit(&rendered, &args.out) {
        return Outcome::Usage(msg);
    }
    if outcome.passed() {
        Outcome::Pass
    } else {
        Outcome::CheckFailed
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Dim(args) => cmd_dim(args),
        Command::Poset(args) => cmd_poset(args),
        Command::Sagbi(args) => cmd_sagbi(args),
    };
    match &outcome {
        Outcome::Usage(msg) | Outcome::Budget(msg) => eprintln!("error: {msg}"),
        _ => {}
    }
    outcome.code()
}
