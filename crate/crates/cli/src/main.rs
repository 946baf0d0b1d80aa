//! `bricklayer`: eigenvalue tables, bound verification, subgraph search,
//! mutation-selection trajectories and exact polynomials from the command
//! line.

mod args;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use args::{GraphArg, Span};
use output::{Format, Provenance};

#[derive(Debug, Parser)]
#[command(name = "bricklayer", version, about = "Principal eigenvalues of Hamming-graph subgraphs")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write to this file instead of stdout, with a provenance header.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Directory for relative `--output` paths.
    #[arg(long, env = "BRICKLAYER_OUTPUT_DIR", global = true)]
    output_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalue of bricklayer's graph next to log2 n.
    Figure1 {
        #[arg(long, default_value_t = 16)]
        n_max: u64,
    },
    /// Check a bound and report every comparison.
    Verify {
        #[command(subcommand)]
        scope: Scope,
    },
    /// Largest eigenvalue among connected n-vertex subgraphs of the d-cube.
    Search {
        #[arg(long)]
        d: u32,
        /// A vertex count or a range such as `1..16`.
        #[arg(long)]
        n: Span,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: SearchMode,
        #[arg(long, default_value_t = 2000)]
        samples: u64,
    },
    /// Mutation-selection dynamics on a neutral network.
    Simulate {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long, default_value_t = 0.01)]
        mu: f64,
        #[arg(long, default_value_t = 1.0)]
        fitness: f64,
        #[arg(long, default_value_t = 10_000)]
        generations: u64,
    },
    /// Exact polynomial of one family.
    Poly {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        d: u32,
        /// Ball radius.
        #[arg(long)]
        r: Option<u32>,
    },
    /// Principal eigenvalue of one graph.
    Eig {
        #[arg(long)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value = "power")]
        method: EigMethod,
        /// Include the eigenvector.
        #[arg(long)]
        vector: bool,
    },
    /// Labels and edges of one graph.
    Graph {
        #[arg(long)]
        graph: GraphArg,
    },
}

#[derive(Debug, Subcommand)]
enum Scope {
    /// lambda(n) <= log2 n for every n up to the limit.
    Theorem {
        #[arg(long, default_value_t = 1024)]
        n_max: u64,
    },
    /// One level of the staircase condition.
    Staircase {
        #[arg(long)]
        k: u32,
    },
    /// Derive the bound level by level from the base case.
    Induction {
        #[arg(long, default_value_t = 8)]
        k_max: u32,
    },
    /// Bound chain for 2^d - 1 vertices.
    Minus {
        #[arg(long, default_value = "5..20")]
        d: Span,
    },
    /// Bound chain for 2^d + 1 vertices.
    Plus {
        #[arg(long, default_value = "5..20")]
        d: Span,
    },
    /// lambda(n, a) <= (a-1) log_a n; violations are reported, not failures.
    Conjecture {
        #[arg(long, default_value_t = 3)]
        a: u32,
        /// Defaults to a^4.
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Margins against log2(2^d - N) and log2(2^d + eps).
    Asymptotic {
        #[arg(long, default_value_t = 1)]
        offset: u64,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value = "2..20")]
        d: Span,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchMode {
    Exhaustive,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Minus,
    Plus,
    Cube,
    Ball,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EigMethod {
    Power,
    DistanceClass,
    CharPoly,
}

/// Exit status for anything other than success.
#[derive(Debug)]
enum Failure {
    Violation,
    Usage(String),
    NonConvergence(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violation => 1,
            Failure::Usage(_) => 2,
            Failure::NonConvergence(_) => 3,
        }
    }
}

fn command_line() -> String {
    std::iter::once("bricklayer".to_string())
        .chain(std::env::args().skip(1).map(|a| {
            if a.is_empty() || a.contains(char::is_whitespace) {
                format!("'{a}'")
            } else {
                a
            }
        }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let report = commands::dispatch(&cli.command, cli.seed)?;
    let target = cli.output.as_deref().map(|p| output::resolve_output(p, cli.output_dir.as_deref()));
    let provenance = Provenance { command: command_line(), seed: cli.seed };
    output::emit(&report.render(cli.format), cli.format, target.as_deref(), &provenance)
        .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))?;
    if report.violated {
        return Err(Failure::Violation);
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Violation => eprintln!("bricklayer: a verified claim was violated"),
                Failure::Usage(m) => eprintln!("bricklayer: {m}"),
                Failure::NonConvergence(m) => eprintln!("bricklayer: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_follow_the_subcommand() {
        let cli = Cli::try_parse_from(["bricklayer", "figure1", "--format", "csv", "--seed", "3"]).unwrap();
        assert_eq!(cli.format, Format::Csv);
        assert_eq!(cli.seed, 3);
    }

    #[test]
    fn unknown_flags_are_rejected() {
        assert!(Cli::try_parse_from(["bricklayer", "figure1", "--bogus"]).is_err());
        assert!(Cli::try_parse_from(["bricklayer", "verify", "minus", "--d", "9..2"]).is_err());
        assert!(Cli::try_parse_from(["bricklayer", "eig", "--graph", "cube:3"]).is_err());
    }
}
