use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arraygraph::{Mode, Vertex};
use arraygraph_cli::commands::{cmd_audit, cmd_bench, cmd_run, Algorithm};
use arraygraph_cli::format::{load_graph, save_graph, write_graph};
use arraygraph_cli::gen::generate;
use arraygraph_cli::{exit, CliError};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "arraygraph", version, about = "Bounded array-based graphs: generate, search, audit, benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    Dfs,
    Bfs,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random graph
    Gen {
        #[arg(long)]
        nodes: u64,
        #[arg(long)]
        edges_per_vertex: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a search or shortest-path algorithm on a graph file
    Run {
        algorithm: Algorithm,
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        start: Vertex,
        /// 0 spans everything reachable
        #[arg(long, default_value_t = 0)]
        target: Vertex,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for apsp
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Check store invariants of a graph file
    Audit { graph: PathBuf },
    /// Time full spanning runs on a generated graph
    Bench {
        #[arg(long)]
        nodes: u64,
        #[arg(long)]
        edges_per_vertex: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        start: Vertex,
        #[arg(long, value_enum, default_value = "dfs")]
        mode: SearchMode,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io("stdout".into(), e)),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Gen {
            nodes,
            edges_per_vertex,
            seed,
            out,
        } => {
            if nodes == 0 || edges_per_vertex == 0 {
                return Err(CliError::Usage("--nodes and --edges-per-vertex must be >= 1".into()));
            }
            let g = generate(nodes, edges_per_vertex, seed)?;
            match out {
                Some(p) => save_graph(&g, &p)?,
                None => write_graph(&g, io::stdout().lock()).map_err(|e| CliError::Io("stdout".into(), e))?,
            }
            Ok(exit::OK)
        }
        Command::Run {
            algorithm,
            graph,
            start,
            target,
            out,
            threads,
        } => {
            let g = load_graph(&graph)?;
            let r = cmd_run(algorithm, &g, start, target, threads)?;
            emit(&r.text, out.as_deref())?;
            Ok(match r.found {
                Some(false) => exit::NOT_FOUND,
                _ => exit::OK,
            })
        }
        Command::Audit { graph } => {
            let g = load_graph(&graph)?;
            let (text, clean) = cmd_audit(&g);
            emit(&text, None)?;
            Ok(if clean { exit::OK } else { exit::DATA })
        }
        Command::Bench {
            nodes,
            edges_per_vertex,
            seed,
            reps,
            start,
            mode,
        } => {
            if nodes == 0 || edges_per_vertex == 0 || reps == 0 {
                return Err(CliError::Usage(
                    "--nodes, --edges-per-vertex and --reps must be >= 1".into(),
                ));
            }
            let mode = match mode {
                SearchMode::Dfs => Mode::Dfs,
                SearchMode::Bfs => Mode::Bfs,
            };
            let report = cmd_bench(nodes, edges_per_vertex, seed, reps, start, mode)?;
            emit(&report.to_string(), None)?;
            Ok(if report.clean() { exit::OK } else { exit::DATA })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("arraygraph: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
