mod common;

use std::fs;

use arraygraph::oracle::abstract_graph;
use arraygraph_cli::exit;
use arraygraph_cli::format::{load_graph, save_graph};
use arraygraph_cli::gen::generate;
use common::*;
use proptest::prelude::*;

fn code(out: &std::process::Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.graph");
    let b = dir.path().join("b.graph");
    for p in [&a, &b] {
        let out = run_bin(&["gen", "--nodes", "300", "--edges-per-vertex", "4", "--seed", "17", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&out), exit::OK);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let out = run_bin(&["gen", "--nodes", "1", "--edges-per-vertex", "1", "--seed", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph 1 1\nv 1 0\n"), "{text}");

    let audit = run_bin(&["audit", a.to_str().unwrap()]);
    assert_eq!(code(&audit), exit::OK);
    assert_eq!(audit.stdout, b"clean\n");
}

#[test]
fn run_outputs_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path.graph");
    fs::write(&path, "graph 3 2\nv 1 0\nv 2 0\nv 3 0\ne 1 0 2 1\ne 2 0 3 1\n").unwrap();
    let p = path.to_str().unwrap();

    let out = run_bin(&["run", "dfs", p, "--start", "1", "--target", "0"]);
    assert_eq!(code(&out), exit::OK);
    assert_eq!(out.stdout, b"1 1\n2 1\n3 2\n");

    let out = run_bin(&["run", "bfs", p, "--start", "1", "--target", "3"]);
    assert_eq!(code(&out), exit::OK);

    let out = run_bin(&["run", "dfs", p, "--start", "3", "--target", "1"]);
    assert_eq!(code(&out), exit::NOT_FOUND);
    assert_eq!(out.stdout, b"3 3\n");

    let out = run_bin(&["run", "dijkstra", p, "--start", "2", "--target", "1"]);
    assert_eq!(code(&out), exit::NOT_FOUND);
    assert_eq!(out.stdout, b"1 - -\n2 0 0\n3 1 2\n");

    let written = dir.path().join("out.txt");
    let out = run_bin(&["run", "apsp", p, "--out", written.to_str().unwrap(), "--threads", "2"]);
    assert_eq!(code(&out), exit::OK);
    let text = fs::read_to_string(&written).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("source ")).count(), 3);

    let out = run_bin(&["run", "astar", p]);
    assert_eq!(code(&out), exit::USAGE);
    let out = run_bin(&["run"]);
    assert_eq!(code(&out), exit::USAGE);

    let out = run_bin(&["run", "dfs", p, "--start", "7"]);
    assert_eq!(code(&out), exit::DATA);
    let out = run_bin(&["run", "dfs", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(code(&out), exit::DATA);
}

#[test]
fn malformed_files_report_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    fs::write(&bad, "graph 3 2\nv 1 0\ne 1 2 1 1\n").unwrap();
    let out = run_bin(&["audit", bad.to_str().unwrap()]);
    assert_eq!(code(&out), exit::DATA);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3") && err.contains("m_max 2"), "{err}");

    fs::write(&bad, "graph 3 2\nv 9 0\n").unwrap();
    let out = run_bin(&["run", "dfs", bad.to_str().unwrap()]);
    assert_eq!(code(&out), exit::DATA);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2") && err.contains("n_max"), "{err}");
}

#[test]
fn zero_weight_rejected_by_dijkstra() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.graph");
    fs::write(&g, "graph 2 1\nv 1 0\nv 2 0\ne 1 0 2 0\n").unwrap();
    let out = run_bin(&["run", "dijkstra", g.to_str().unwrap()]);
    assert_eq!(code(&out), exit::DATA);
    let out = run_bin(&["run", "bfs", g.to_str().unwrap()]);
    assert_eq!(code(&out), exit::OK);
}

#[test]
fn bench_prints_one_line_per_rep_and_a_median() {
    let out = run_bin(&["bench", "--nodes", "1000", "--edges-per-vertex", "4", "--seed", "2", "--reps", "3"]);
    assert_eq!(code(&out), exit::OK);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("rep ")).count(), 3, "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("median time_ms ")).count(), 1);

    let out = run_bin(&["bench", "--nodes", "0", "--edges-per-vertex", "4"]);
    assert_eq!(code(&out), exit::USAGE);
}

#[test]
fn round_trip_of_random_graph() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.graph");
    let g = generate(100, 4, 9).unwrap();
    save_graph(&g, &p).unwrap();
    let back = load_graph(&p).unwrap();
    assert_eq!(abstract_graph(&back).unwrap(), abstract_graph(&g).unwrap());
}

#[test]
fn million_vertex_graph_generates_and_loads() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("big.graph");
    let out = run_bin(&["gen", "--nodes", "1000000", "--edges-per-vertex", "4", "--seed", "1", "--out", p.to_str().unwrap()]);
    assert_eq!(code(&out), exit::OK);
    let g = load_graph(&p).unwrap();
    assert_eq!(g.vcount(), 1_000_000);
    assert!(g.audit().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn save_load_preserves_abstraction(
        n in 1u64..40,
        m in 1u64..5,
        seed in any::<u64>(),
        drop in prop::collection::vec(any::<bool>(), 40),
    ) {
        let mut g = generate(n, m, seed).unwrap();
        for v in 1..=n as u32 {
            if drop[v as usize - 1] {
                g.free_vertex(v).unwrap();
            }
        }
        // clear edges left dangling by the frees
        let live: Vec<_> = g.live_vertices().collect();
        for &v in &live {
            for slot in 0..m as u32 {
                let t = g.get_edge(v, slot).unwrap();
                if t != 0 && !g.is_live(t) {
                    g.set_edge(v, slot, 0).unwrap();
                }
            }
        }
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.graph");
        save_graph(&g, &p).unwrap();
        let back = load_graph(&p).unwrap();
        prop_assert_eq!(abstract_graph(&back).unwrap(), abstract_graph(&g).unwrap());
        prop_assert_eq!(back.config(), g.config());
    }
}
