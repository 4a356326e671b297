//! `maxtree`: maximal spanning trees under ordinal edge preferences.
//!
//! Exit codes: 0 ok, 1 negative finding, 2 unreadable or invalid input,
//! 3 oracle cap exceeded.

mod report;

use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxtree_core::gpc::gpc;
use maxtree_core::multiobjective::{inclusion_check, pareto_edge_relation};
use maxtree_core::session::ExactModeConfig;
use maxtree_core::solver::{oracle_maximal_trees, solve};
use maxtree_core::{Error, Instance, InstanceDocument, OracleCaps, ParsedDocument, TieBreak};

use report::Report;

#[derive(Parser)]
#[command(
    name = "maxtree",
    version,
    about = "Maximal spanning trees under ordinal edge preferences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report connectivity and acyclicity of the strict preferences.
    Check(Common),
    /// Build one maximal spanning tree.
    Solve(Common),
    /// List the edges that belong to at least one maximal spanning tree.
    Gpc(Common),
    /// List every maximal spanning tree (exhaustive).
    Enumerate(Common),
    /// Derive the Pareto edge relation from the criteria, then filter edges.
    Pareto(Common),
    /// Compare sum-then-Pareto trees with the trees maximal for the Pareto edge relation.
    Compare(Common),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Args)]
struct Common {
    /// Instance document (JSON).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// `lex` or `seed:N`.
    #[arg(long, default_value = "lex")]
    tie_break: TieBreak,
    /// Limit on linear extensions and spanning trees visited by exhaustive checks.
    #[arg(long)]
    exact_cap: Option<usize>,
}

impl Common {
    fn caps(&self) -> OracleCaps {
        self.exact_cap.map(OracleCaps::uniform).unwrap_or_default()
    }
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    /// Directory holding stored instances and session transcripts.
    #[arg(long, default_value = "maxtree-data")]
    data_dir: PathBuf,
    /// Largest edge count for which sessions default to exact mode.
    #[arg(long, default_value_t = 12)]
    exact_max_edges: usize,
    #[arg(long)]
    exact_cap: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OracleScaleExceeded { .. } => Failure::Cap(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<ParsedDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let doc = InstanceDocument::from_json(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    doc.resolve()
        .map_err(|e| Failure::Input(format!("{}: {e} [{}]", path.display(), e.code())))
}

fn instance(doc: &ParsedDocument, args: &Common) -> Result<Instance, Failure> {
    doc.instance()
        .map_err(|e| Failure::Input(format!("{}: {e} [{}]", args.input.display(), e.code())))
}

fn run(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Check(args) => {
            let doc = load(&args.input)?;
            Ok(Report::check(&doc).format(args.format))
        }
        Command::Solve(args) => {
            let inst = instance(&load(&args.input)?, &args)?;
            let tree = solve(&inst, &args.tie_break)?;
            Ok(Report::solve(&inst, tree.as_ref()).format(args.format))
        }
        Command::Gpc(args) => {
            let inst = instance(&load(&args.input)?, &args)?;
            Ok(Report::consistent(&inst, &gpc(&inst, &args.tie_break)).format(args.format))
        }
        Command::Enumerate(args) => {
            let inst = instance(&load(&args.input)?, &args)?;
            let trees = oracle_maximal_trees(&inst, args.caps())?;
            Ok(Report::trees(&inst, &trees).format(args.format))
        }
        Command::Pareto(args) => {
            let doc = load(&args.input)?;
            let criteria = doc.criteria.as_ref().ok_or_else(|| {
                Failure::Input(format!(
                    "{}: the document has no criteria block",
                    args.input.display()
                ))
            })?;
            let inst = Instance::new(doc.graph.clone(), pareto_edge_relation(criteria))?;
            let consistent = gpc(&inst, &args.tie_break);
            Ok(Report::pareto(&inst, &consistent).format(args.format))
        }
        Command::Compare(args) => {
            let doc = load(&args.input)?;
            let criteria = doc.criteria.as_ref().ok_or_else(|| {
                Failure::Input(format!(
                    "{}: the document has no criteria block",
                    args.input.display()
                ))
            })?;
            let report = inclusion_check(&doc.graph, criteria, args.caps())?;
            Ok(Report::compare(&doc.graph, &report).format(args.format))
        }
        Command::Serve(args) => {
            tracing_subscriber::fmt()
                .with_max_level(tracing::Level::INFO)
                .init();
            let mut config = ExactModeConfig {
                max_edges: args.exact_max_edges,
                ..ExactModeConfig::default()
            };
            if let Some(cap) = args.exact_cap {
                config.caps = OracleCaps::uniform(cap);
            }
            let addr = SocketAddr::new(args.host, args.port);
            let runtime =
                tokio::runtime::Runtime::new().map_err(|e| Failure::Input(e.to_string()))?;
            runtime
                .block_on(maxtree_service::serve(addr, args.data_dir, config))
                .map_err(|e| Failure::Input(format!("server: {e}")))?;
            Ok(Report::empty())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(report) => {
            if !report.output.is_empty() {
                println!("{}", report.output);
            }
            if report.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(message)) => {
            eprintln!("error: {message}; raise --exact-cap to go further");
            ExitCode::from(3)
        }
    }
}
