//! Command-line front end: build designs and decompositions, verify them,
//! and compute small extremal values.
//!
//! Exit codes: 0 ok, 1 usage or malformed input, 2 unsupported or unknown,
//! 3 infeasible, 4 verification failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use induced_decomp::dense::{assemble_with, DenseOptions};
use induced_decomp::designs::{mols, td_from_mols, verify_td};
use induced_decomp::oracle::{cex_exact, SearchBudget};
use induced_decomp::{blowup_decompose, to_canonical_json, Decomposition, Error, PatternSignature, SmallGraph};

#[derive(Parser)]
#[command(name = "induced-decomp", version, about = "Induced decompositions into complete multipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Edgelist,
}

#[derive(clap::Args)]
struct Output {
    /// Artifact destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Mutually orthogonal Latin squares of a given order.
    Mols {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transversal design TD(k,n), verified before it is written.
    Td {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose K_{m a_1,...,m a_k} into m^2 induced copies of the pattern.
    Blowup {
        /// Comma-separated part sizes, e.g. 1,2
        #[arg(long, value_parser = parse_pattern)]
        pattern: PatternSignature,
        #[command(flatten)]
        output: Output,
    },
    /// Near-complete n-vertex graph with an induced decomposition.
    Dense {
        #[arg(long, value_parser = parse_pattern)]
        pattern: PatternSignature,
        #[arg(long)]
        n: usize,
        /// Node limit for each clique decomposition search.
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Check a decomposition against an edge-list graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
        /// Require every copy to be induced even if the file does not claim it.
        #[arg(long)]
        induced: bool,
    },
    /// Exact cex(n, F) by exhaustive search.
    Cex {
        #[arg(long, value_parser = parse_pattern)]
        pattern: PatternSignature,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_pattern(s: &str) -> Result<PatternSignature, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Lib(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidPattern(_) | Error::Malformed(_) => 1,
        Error::NoFeasibleParameters(_) | Error::NoDecomposition => 3,
        Error::InternalInvariant(_) => 4,
        _ => 2,
    }
}

fn budget(base: SearchBudget, nodes: Option<u64>) -> SearchBudget {
    let mut b = base.with_env();
    if let Some(n) = nodes {
        b.max_nodes = n;
    }
    b
}

fn emit(out: &Option<PathBuf>, artifact: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, artifact)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{artifact}");
            Ok(())
        }
    }
}

/// Human-readable lines go to stdout when the artifact goes to a file, and
/// to stderr otherwise so the artifact stream stays clean.
fn summary(out: &Option<PathBuf>, line: &str) {
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Mols { order, count, out } => {
            let family = mols(order as usize, count)?;
            emit(&out, &to_canonical_json(&family.to_json()))?;
            summary(&out, &format!("{} MOLS of order {order}", family.len()));
        }
        Command::Td { k, n, out } => {
            let (k, n) = (k as usize, n as usize);
            let td = td_from_mols(&mols(n, k - 2)?, k)?;
            let report = verify_td(&td);
            if let Some(v) = report.violations.first() {
                return Err(Failure::Verification(format!("TD({k},{n}) failed verification: {v}")));
            }
            emit(&out, &to_canonical_json(&td.to_json()))?;
            summary(&out, &format!("TD({k},{n}) with {} blocks, verified", td.blocks().len()));
        }
        Command::Blowup { pattern, output } => {
            let d = blowup_decompose(&pattern)?;
            d.verify().map_err(|v| Failure::Verification(v.to_string()))?;
            let artifact = match output.format {
                Format::Json => to_canonical_json(&d.to_json()),
                Format::Edgelist => d.host.to_graph().to_edge_list(),
            };
            emit(&output.out, &artifact)?;
            summary(
                &output.out,
                &format!("{} copies of {pattern} in K_{{{}}}, verified", d.copies.len(), join(&d.host.parts)),
            );
        }
        Command::Dense { pattern, n, budget: nodes, output } => {
            let opts = DenseOptions {
                budget: budget(DenseOptions::default().budget, nodes),
                ..DenseOptions::default()
            };
            let cert = assemble_with(&pattern, n, &opts)?;
            let artifact = match output.format {
                Format::Json => to_canonical_json(&cert.to_json()),
                Format::Edgelist => cert.graph().to_edge_list(),
            };
            emit(&output.out, &artifact)?;
            let p = cert.params;
            summary(
                &output.out,
                &format!(
                    "n = {} = {}*{} + {} (q = {}, r = {}, s = {}); {} induced copies",
                    p.n, p.n_prime, p.p, p.t, p.q, p.r, p.s,
                    cert.decomposition.copies.len()
                ),
            );
            summary(
                &output.out,
                &format!("non-edges: lhs = {} < rhs = (pq + p/2) n = {}", cert.non_edge_count, cert.bound()),
            );
        }
        Command::Verify { graph, decomposition, induced } => {
            let json: Value = serde_json::from_str(&read(&decomposition)?)
                .map_err(|e| Failure::Usage(format!("malformed JSON in {}: {e}", decomposition.display())))?;
            let mut d = Decomposition::from_json(&json)?;
            let min_order = d.host.order();
            let g = SmallGraph::parse_edge_list(&read(&graph)?, min_order)?;
            d.induced |= induced;
            induced_decomp::verify_decomposition(&g, &d.pattern, &d.classes(), d.induced)
                .map_err(|v| Failure::Verification(v.to_string()))?;
            println!(
                "ok: {} {}copies of {} cover all {} edges",
                d.copies.len(),
                if d.induced { "induced " } else { "" },
                d.pattern,
                g.edge_count()
            );
        }
        Command::Cex { pattern, n, budget: nodes, output } => {
            let r = cex_exact(n, &pattern, budget(SearchBudget::default(), nodes))?;
            println!("cex({n}, {pattern}) = {}", r.value);
            print!("{}", r.witness.to_edge_list());
            if output.out.is_some() {
                let artifact = match output.format {
                    Format::Json => to_canonical_json(&r.decomposition.to_json()),
                    Format::Edgelist => r.witness.to_edge_list(),
                };
                emit(&output.out, &artifact)?;
            }
        }
    }
    Ok(())
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(4)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
