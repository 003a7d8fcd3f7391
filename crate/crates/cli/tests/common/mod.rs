#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output};

use arraygraph::oracle::{abstract_graph, oracle_apsp, oracle_span};
use arraygraph::Mode;
use arraygraph_cli::format::load_graph;

pub const GRAPHS: [&str; 5] = ["path", "triangle", "star", "diamond", "sparse"];
pub const ALGORITHMS: [&str; 3] = ["dfs", "bfs", "dijkstra"];
pub const START: u32 = 1;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn graph_path(name: &str) -> PathBuf {
    data_dir().join(format!("{name}.graph"))
}

pub fn golden_path(name: &str, alg: &str) -> PathBuf {
    data_dir().join(format!("{name}.{alg}.golden"))
}

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arraygraph"))
}

pub fn run_bin(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn arraygraph")
}

/// Expected `run` output computed from the reference models alone.
pub fn oracle_output(name: &str, alg: &str) -> String {
    let g = load_graph(&graph_path(name)).unwrap();
    let adj = abstract_graph(&g).unwrap();
    let mut out = String::new();
    match alg {
        "dfs" | "bfs" => {
            let mode = if alg == "dfs" { Mode::Dfs } else { Mode::Bfs };
            for (v, p) in oracle_span(&adj, START, mode) {
                writeln!(out, "{v} {p}").unwrap();
            }
        }
        "dijkstra" => {
            let d = oracle_apsp(&adj);
            for &t in adj.keys() {
                let Some(dt) = d.get(START, t) else {
                    writeln!(out, "{t} - -").unwrap();
                    continue;
                };
                // the fixtures are chosen so every shortest path is unique
                let preds: Vec<_> = adj
                    .iter()
                    .filter(|&(&p, es)| {
                        p != t && d.get(START, p).is_some_and(|dp| es.iter().any(|&(x, w)| x == t && dp + w == dt))
                    })
                    .map(|(&p, _)| p)
                    .collect();
                let pred = if t == START { 0 } else {
                    assert_eq!(preds.len(), 1, "{name}: shortest path to {t} is not unique");
                    preds[0]
                };
                writeln!(out, "{t} {dt} {pred}").unwrap();
            }
        }
        _ => unreachable!(),
    }
    out
}
