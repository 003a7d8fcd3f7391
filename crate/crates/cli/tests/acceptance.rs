//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use arraygraph::oracle::{
    abstract_graph, diff_run, gen_bst_ops, oracle_apsp, oracle_bfs_depth, oracle_reach, BstOp, Structure,
    WorkloadConfig,
};
use arraygraph::{all_pairs, span_from, Bst, GraphStore, Mode, PairDeque, Probe, Vertex};
use arraygraph_cli::commands::cmd_bench;
use arraygraph_cli::gen::generate;
use common::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const SEEDS: u64 = 10;
const DIFF_OPS: usize = 100_000;

// ---------------------------------------------------------------------------
// 1. zero-slot immutability

fn zero_slot_immutability() -> Outcome {
    const N: u64 = 65_535;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bst = Bst::new(N).unwrap();
    let mut deque = PairDeque::new(N).unwrap();
    let mut raw = GraphStore::with_bounds(N, 2).unwrap();
    let key = |rng: &mut ChaCha8Rng| rng.gen_range(1..=N);
    let vtx = |rng: &mut ChaCha8Rng| rng.gen_range(1..=N as Vertex);
    let mut live: Vec<Vertex> = Vec::new();
    let alloc = |rng: &mut ChaCha8Rng, raw: &mut GraphStore, live: &mut Vec<Vertex>| {
        let v = raw.alloc_vertex(rng.gen_range(1..=N), rng.gen_range(1..=N));
        if v != 0 {
            live.push(v);
        }
    };
    for call in 0..100_000 {
        let which = rng.gen_range(0..3);
        let before = match which {
            0 => bst.store().zero_slots(),
            1 => deque.store().zero_slots(),
            _ => raw.zero_slots(),
        };
        match which {
            0 => {
                if rng.gen_bool(0.7) {
                    let (k, v) = (key(&mut rng), key(&mut rng));
                    bst.insert(k, v).map_err(|e| e.to_string())?;
                } else {
                    bst.delete(key(&mut rng)).map_err(|e| e.to_string())?;
                }
            }
            1 => match rng.gen_range(0..4) {
                0 => deque.push_front(vtx(&mut rng), vtx(&mut rng)).map_err(|e| e.to_string())?,
                1 => deque.push_back(vtx(&mut rng), vtx(&mut rng)).map_err(|e| e.to_string())?,
                2 => drop(deque.pop_front()),
                _ => drop(deque.pop_back()),
            },
            _ => {
                let pick = |rng: &mut ChaCha8Rng, live: &[Vertex]| live[rng.gen_range(0..live.len())];
                match rng.gen_range(0..6) {
                    _ if live.is_empty() => alloc(&mut rng, &mut raw, &mut live),
                    0 => alloc(&mut rng, &mut raw, &mut live),
                    1 => {
                        let i = rng.gen_range(0..live.len());
                        raw.free_vertex(live.swap_remove(i)).map_err(|e| e.to_string())?
                    }
                    2 => {
                        let (v, t) = (pick(&mut rng, &live), pick(&mut rng, &live));
                        raw.set_edge(v, rng.gen_range(0..2), t).map_err(|e| e.to_string())?
                    }
                    3 => {
                        let v = pick(&mut rng, &live);
                        raw.set_weight(v, rng.gen_range(0..2), rng.gen()).map_err(|e| e.to_string())?
                    }
                    4 => {
                        let v = pick(&mut rng, &live);
                        raw.set_key(v, rng.gen()).map_err(|e| e.to_string())?
                    }
                    _ => {
                        let v = pick(&mut rng, &live);
                        raw.set_data(v, rng.gen()).map_err(|e| e.to_string())?
                    }
                }
            }
        }
        let after = match which {
            0 => bst.store().zero_slots(),
            1 => deque.store().zero_slots(),
            _ => raw.zero_slots(),
        };
        ensure!(before == after && after == [0; 5], "call {call}: zero slots {before:?} -> {after:?}");
    }
    ensure!(bst.audit().is_empty(), "bst audit dirty");
    ensure!(deque.audit().is_empty(), "deque audit dirty");
    ensure!(raw.audit().is_empty(), "store audit dirty");
    Ok(format!(
        "100000 calls; live bst {} deque {} store {}",
        bst.len(),
        deque.len(),
        raw.vcount()
    ))
}

// ---------------------------------------------------------------------------
// 2, 3. differential equivalence

fn bst_workload() -> WorkloadConfig {
    WorkloadConfig {
        ops: DIFF_OPS,
        key_range: 10_000,
        capacity: 10_000,
        check_every: 1_000,
        ..Default::default()
    }
}

fn bst_differential() -> Outcome {
    let cfg = bst_workload();
    for seed in 0..SEEDS {
        let r = diff_run(Structure::Bst, seed, &cfg).map_err(|e| e.to_string())?;
        ensure!(r.passed() && r.ops_run == DIFF_OPS, "{}", r.to_string().trim_end());
    }
    Ok(format!("{SEEDS} seeds x {DIFF_OPS} ops, 0 divergences"))
}

fn deque_heap_differential() -> Outcome {
    let cfg = WorkloadConfig {
        ops: DIFF_OPS,
        key_range: 10_000,
        capacity: 65_535,
        check_every: 1_000,
        ..Default::default()
    };
    for structure in [Structure::Deque, Structure::Heap] {
        for seed in 0..SEEDS {
            let r = diff_run(structure, seed, &cfg).map_err(|e| e.to_string())?;
            ensure!(r.passed() && r.ops_run == DIFF_OPS, "{}", r.to_string().trim_end());
        }
    }
    Ok(format!("deque and heap: {SEEDS} seeds x {DIFF_OPS} ops each, 0 divergences"))
}

// ---------------------------------------------------------------------------
// 4, 5, 6. spanning trees on the random corpus

struct SpanCorpus {
    /// (seed, start, failure) for correctness checks
    correctness: Vec<String>,
    set_identity: Vec<String>,
    depth: Vec<String>,
    exhausted: usize,
    runs: usize,
    elapsed: Duration,
}

fn chain_len(tree: &BTreeMap<Vertex, Vertex>, mut v: Vertex, start: Vertex) -> Option<u32> {
    let mut len = 0u32;
    while v != start {
        v = *tree.get(&v)?;
        len += 1;
        if len as usize > tree.len() {
            return None;
        }
    }
    Some(len)
}

fn span_corpus() -> SpanCorpus {
    let t0 = Instant::now();
    let mut c = SpanCorpus {
        correctness: Vec::new(),
        set_identity: Vec::new(),
        depth: Vec::new(),
        exhausted: 0,
        runs: 0,
        elapsed: Duration::ZERO,
    };
    for seed in 0..100u64 {
        let g = generate(200, 4, seed).unwrap();
        let adj = abstract_graph(&g).unwrap();
        let live: Vec<Vertex> = g.live_vertices().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let starts: Vec<Vertex> = live.choose_multiple(&mut rng, 5).copied().collect();
        for &start in &starts {
            let reach = oracle_reach(&adj, start);
            let depth = oracle_bfs_depth(&adj, start);
            let mut sets = Vec::new();
            for mode in [Mode::Dfs, Mode::Bfs] {
                c.runs += 1;
                let r = match span_from(&g, start, 0, mode) {
                    Ok(r) => r,
                    Err(e) => {
                        c.correctness.push(format!("seed {seed} start {start} {mode:?}: {e}"));
                        continue;
                    }
                };
                if r.stats.exhausted() {
                    c.exhausted += 1;
                }
                let tree: BTreeMap<Vertex, Vertex> = r.edges().into_iter().collect();
                let keys: BTreeSet<Vertex> = tree.keys().copied().collect();
                let tag = format!("seed {seed} start {start} {mode:?}");
                if keys != reach {
                    c.correctness.push(format!("{tag}: reached set differs from oracle"));
                }
                if tree.get(&start) != Some(&start) {
                    c.correctness.push(format!("{tag}: root not self-mapped"));
                }
                for (&v, &p) in &tree {
                    if v != start && !adj.get(&p).is_some_and(|es| es.iter().any(|&(t, _)| t == v)) {
                        c.correctness.push(format!("{tag}: no edge {p} -> {v}"));
                    }
                    match chain_len(&tree, v, start) {
                        None => c.correctness.push(format!("{tag}: chain from {v} not rooted")),
                        Some(len) if mode == Mode::Bfs && depth.get(&v) != Some(&len) => {
                            c.depth.push(format!("{tag}: vertex {v} chain {len} oracle {:?}", depth.get(&v)))
                        }
                        _ => {}
                    }
                }
                sets.push(keys);
            }
            if sets.len() == 2 && sets[0] != sets[1] {
                c.set_identity.push(format!("seed {seed} start {start}"));
            }
        }
    }
    c.elapsed = t0.elapsed();
    c
}

fn first_failures(v: &[String]) -> String {
    format!("{} failure(s), first: {}", v.len(), v.first().map(String::as_str).unwrap_or(""))
}

// ---------------------------------------------------------------------------
// 7. Dijkstra

fn dijkstra_optimality() -> Outcome {
    let mut checked = 0usize;
    for seed in 0..100u64 {
        let n = 2 + seed % 49;
        let g = generate(n, 4, 10_000 + seed).unwrap();
        let fw = oracle_apsp(&abstract_graph(&g).unwrap());
        let ap = all_pairs(&g).map_err(|e| e.to_string())?;
        for (d, s) in ap.iter().zip(g.live_vertices()) {
            ensure!(d.source == s, "seed {seed}: source order");
            for t in g.live_vertices() {
                ensure!(
                    d.dist[t as usize] == fw.get(s, t),
                    "seed {seed} {s}->{t}: dijkstra {:?} oracle {:?}",
                    d.dist[t as usize],
                    fw.get(s, t)
                );
                checked += 1;
            }
        }
    }
    Ok(format!("100 graphs, {checked} pairs equal"))
}

// ---------------------------------------------------------------------------
// 8. count bounds

fn count_bounds(corpus: &SpanCorpus) -> Outcome {
    let cfg = bst_workload();
    let mut probes = 0u64;
    for seed in 0..SEEDS {
        let mut t = Bst::new(cfg.capacity).unwrap();
        for (step, op) in gen_bst_ops(seed, &cfg).into_iter().enumerate() {
            match op {
                BstOp::Insert(k, v) => t.insert(k, v).map_err(|e| e.to_string())?,
                BstOp::Delete(k) => drop(t.delete(k).map_err(|e| e.to_string())?),
                BstOp::Get(k) | BstOp::Exists(k) => {
                    probes += 1;
                    ensure!(t.probe(k) != Probe::Exhausted, "seed {seed} step {step}: descent for {k} exhausted");
                }
            }
            if (step + 1) % cfg.check_every == 0 {
                for (k, v) in t.inorder() {
                    probes += 1;
                    ensure!(t.probe(k) == Probe::Found(v), "seed {seed} step {step}: key {k} not found within count");
                }
            }
        }
    }
    ensure!(corpus.exhausted == 0, "{} of {} span runs exhausted their count", corpus.exhausted, corpus.runs);
    Ok(format!("{probes} descents and {} span runs, none exhausted", corpus.runs))
}

// ---------------------------------------------------------------------------
// 9. scale

fn scale_check() -> Outcome {
    let t0 = Instant::now();
    let report = cmd_bench(1_000_000, 4, 1, 1, 1, Mode::Dfs).map_err(|e| e.to_string())?;
    let wall = t0.elapsed();
    ensure!(report.graph_clean, "graph audit dirty");
    ensure!(report.capacities.0 == report.capacities.1, "graph arrays changed length");
    let rep = &report.reps[0];
    ensure!(rep.tree_clean, "spanning tree audit dirty");
    ensure!(!rep.exhausted, "span loop exhausted its count");
    ensure!(wall <= Duration::from_secs(60), "took {:.1} s", wall.as_secs_f64());
    Ok(format!(
        "1000000 vertices x 4: reached {}, span {:.2} s, total {:.2} s",
        rep.reached,
        rep.time.as_secs_f64(),
        wall.as_secs_f64()
    ))
}

// ---------------------------------------------------------------------------
// 10. goldens

fn cli_goldens() -> Outcome {
    let mut n = 0;
    for name in GRAPHS {
        for alg in ALGORITHMS {
            let graph = graph_path(name);
            let out = run_bin(&["run", alg, graph.to_str().unwrap(), "--start", "1"]);
            ensure!(out.status.success(), "{name} {alg}: exit {:?}", out.status.code());
            let golden = fs::read(golden_path(name, alg)).map_err(|e| e.to_string())?;
            ensure!(out.stdout == golden, "{name} {alg}: output differs from golden");
            ensure!(
                String::from_utf8_lossy(&golden) == oracle_output(name, alg),
                "{name} {alg}: golden differs from oracle"
            );
            n += 1;
        }
    }
    Ok(format!("{n} outputs byte-identical"))
}

// ---------------------------------------------------------------------------

fn timed(f: impl FnOnce() -> Outcome, budget: Option<Duration>) -> (Outcome, Duration) {
    let t0 = Instant::now();
    let r = f();
    let el = t0.elapsed();
    match (r, budget) {
        (Ok(_), Some(b)) if el > b => (Err(format!("exceeded {} s budget", b.as_secs())), el),
        (r, _) => (r, el),
    }
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let mut results: Vec<(u32, &str, Outcome, Duration)> = Vec::new();
    let mut record = |id: u32, name: &'static str, (r, d): (Outcome, Duration)| {
        let line = match &r {
            Ok(msg) => format!("criterion {id:>2} PASS {name} ({:.2} s): {msg}", d.as_secs_f64()),
            Err(msg) => format!("criterion {id:>2} FAIL {name} ({:.2} s): {msg}", d.as_secs_f64()),
        };
        println!("{line}");
        results.push((id, name, r, d));
    };

    record(1, "zero-slot immutability", timed(zero_slot_immutability, secs(30)));
    record(2, "bst differential equivalence", timed(bst_differential, secs(60)));
    record(3, "deque/heap differential equivalence", timed(deque_heap_differential, secs(60)));

    let corpus = span_corpus();
    let corpus_time = corpus.elapsed;
    let verdict = |v: &[String], ok: String| if v.is_empty() { Ok(ok) } else { Err(first_failures(v)) };
    let c4 = if corpus_time > Duration::from_secs(60) {
        Err(format!("corpus took {:.1} s", corpus_time.as_secs_f64()))
    } else {
        verdict(&corpus.correctness, format!("{} runs match oracle_reach, edges exist, chains rooted", corpus.runs))
    };
    record(4, "spanning-tree correctness", (c4, corpus_time));
    record(
        5,
        "dfs/bfs set identity",
        (verdict(&corpus.set_identity, "500 (graph, start) pairs equal".into()), Duration::ZERO),
    );
    record(
        6,
        "bfs depth optimality",
        (verdict(&corpus.depth, "every chain length equals oracle depth".into()), Duration::ZERO),
    );
    record(7, "dijkstra optimality", timed(dijkstra_optimality, secs(60)));
    record(8, "count-bound sufficiency", timed(|| count_bounds(&corpus), None));
    record(9, "scale check", timed(scale_check, secs(60)));
    record(10, "cli golden files", timed(cli_goldens, None));

    let failed = results.iter().filter(|r| r.2.is_err()).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
