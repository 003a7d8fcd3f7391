use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use arraygraph::algos::{all_pairs_parallel, span_from};
use arraygraph::{all_pairs, dijkstra, Capacities, DistResult, GraphStore, Mode, SpanResult, Vertex};

use crate::gen::generate;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    Dfs,
    Bfs,
    Dijkstra,
    Apsp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub text: String,
    /// `Some` for targeted searches (target != 0).
    pub found: Option<bool>,
}

/// One `v pred` line per reached vertex, ascending by `v`.
pub fn render_span(r: &SpanResult) -> String {
    let mut out = String::new();
    for (v, p) in r.edges() {
        writeln!(out, "{v} {p}").unwrap();
    }
    out
}

/// One `v dist pred` line per live vertex, ascending; `-` marks unreachable.
pub fn render_dist(g: &GraphStore, d: &DistResult) -> String {
    let mut out = String::new();
    for v in g.live_vertices() {
        match d.dist[v as usize] {
            Some(dist) => writeln!(out, "{v} {dist} {}", d.pred[v as usize]).unwrap(),
            None => writeln!(out, "{v} - -").unwrap(),
        }
    }
    out
}

/// Runs `algorithm` on `g`. `threads > 1` splits all-pairs across threads.
pub fn cmd_run(
    algorithm: Algorithm,
    g: &GraphStore,
    start: Vertex,
    target: Vertex,
    threads: usize,
) -> Result<RunOutput, CliError> {
    let targeted = |found: bool| (target != 0).then_some(found);
    Ok(match algorithm {
        Algorithm::Dfs | Algorithm::Bfs => {
            let mode = if algorithm == Algorithm::Dfs { Mode::Dfs } else { Mode::Bfs };
            let r = span_from(g, start, target, mode)?;
            RunOutput {
                text: render_span(&r),
                found: targeted(r.found),
            }
        }
        Algorithm::Dijkstra => {
            let d = dijkstra(g, start)?;
            let reached = d.dist.get(target as usize).is_some_and(|x| x.is_some());
            RunOutput {
                text: render_dist(g, &d),
                found: targeted(reached),
            }
        }
        Algorithm::Apsp => {
            let all = if threads > 1 {
                all_pairs_parallel(g, threads)?
            } else {
                all_pairs(g)?
            };
            let mut text = String::new();
            for d in &all {
                writeln!(text, "source {}", d.source).unwrap();
                text.push_str(&render_dist(g, d));
            }
            RunOutput { text, found: None }
        }
    })
}

/// Audit text and whether the store is clean.
pub fn cmd_audit(g: &GraphStore) -> (String, bool) {
    let violations = g.audit();
    if violations.is_empty() {
        return ("clean\n".to_string(), true);
    }
    let mut out = String::new();
    for v in &violations {
        writeln!(out, "{v}").unwrap();
    }
    (out, false)
}

#[derive(Debug, Clone)]
pub struct BenchRep {
    pub time: Duration,
    pub reached: u32,
    pub peak_fringe: u32,
    pub exhausted: bool,
    pub tree_clean: bool,
}

impl BenchRep {
    /// Tree vertices plus the largest fringe seen.
    pub fn peak_live(&self) -> u64 {
        u64::from(self.reached) + u64::from(self.peak_fringe)
    }
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub nodes: u64,
    pub edges_per_vertex: u64,
    pub seed: u64,
    pub mode: Mode,
    pub graph_clean: bool,
    /// Graph array lengths before the first and after the last repetition.
    pub capacities: (Capacities, Capacities),
    pub reps: Vec<BenchRep>,
}

impl BenchReport {
    pub fn median(&self) -> Duration {
        let mut t: Vec<_> = self.reps.iter().map(|r| r.time).collect();
        t.sort();
        t.get(t.len() / 2).copied().unwrap_or_default()
    }

    pub fn clean(&self) -> bool {
        self.graph_clean
            && self.capacities.0 == self.capacities.1
            && self.reps.iter().all(|r| r.tree_clean && !r.exhausted)
    }
}

fn clean_word(ok: bool) -> &'static str {
    if ok {
        "clean"
    } else {
        "dirty"
    }
}

fn ms(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1e3)
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "graph nodes {} edges_per_vertex {} seed {} mode {} audit {}",
            self.nodes,
            self.edges_per_vertex,
            self.seed,
            if self.mode == Mode::Dfs { "dfs" } else { "bfs" },
            clean_word(self.graph_clean && self.capacities.0 == self.capacities.1)
        )?;
        for (i, r) in self.reps.iter().enumerate() {
            writeln!(
                f,
                "rep {} time_ms {} reached {} peak_fringe {} peak_live {} audit {}",
                i + 1,
                ms(r.time),
                r.reached,
                r.peak_fringe,
                r.peak_live(),
                clean_word(r.tree_clean && !r.exhausted)
            )?;
        }
        writeln!(f, "median time_ms {}", ms(self.median()))
    }
}

/// Generates a graph and times `reps` full spanning runs from `start` with
/// the null target.
pub fn cmd_bench(
    nodes: u64,
    edges_per_vertex: u64,
    seed: u64,
    reps: usize,
    start: Vertex,
    mode: Mode,
) -> Result<BenchReport, CliError> {
    let g = generate(nodes, edges_per_vertex, seed)?;
    let graph_clean = g.audit().is_empty();
    let before = g.capacities();
    let mut out = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t0 = Instant::now();
        let r = span_from(&g, start, 0, mode)?;
        let time = t0.elapsed();
        out.push(BenchRep {
            time,
            reached: r.tree.len(),
            peak_fringe: r.stats.peak_fringe,
            exhausted: r.stats.exhausted(),
            tree_clean: r.tree.audit().is_empty(),
        });
    }
    Ok(BenchReport {
        nodes,
        edges_per_vertex,
        seed,
        mode,
        graph_clean,
        capacities: (before, g.capacities()),
        reps: out,
    })
}
