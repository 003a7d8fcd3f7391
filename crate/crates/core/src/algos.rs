//! Spanning-tree search and shortest paths over a [`GraphStore`].
//!
//! The spanning search keeps a [`Bst`] from each reached vertex to its
//! predecessor, which doubles as the visited set, and a [`PairDeque`]
//! fringe of `(vertex, predecessor)` pairs. Depth-first and breadth-first
//! runs share one loop; they differ only in which end of the fringe
//! `explore` pushes to.

use crate::bst::Bst;
use crate::dlist::PairDeque;
use crate::error::{Error, Result};
use crate::pqueue::BoundedHeap;
use crate::store::{GraphStore, Vertex};

/// Fringe end that newly discovered pairs are pushed to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Push to the front: depth-first.
    Dfs,
    /// Push to the back: breadth-first.
    Bfs,
}

/// Why a spanning search stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    FringeEmpty,
    TargetFound,
    /// The target index exceeds the graph's vertex bound.
    TargetOutOfRange,
    /// The front pair had a null or out-of-range vertex.
    MalformedPair,
    /// The iteration budget hit zero with work left on the fringe.
    CountExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanStats {
    pub iterations: u64,
    pub count_left: u64,
    pub peak_fringe: u32,
    pub stop: StopReason,
}

impl SpanStats {
    pub fn exhausted(&self) -> bool {
        self.stop == StopReason::CountExhausted
    }
}

#[derive(Debug, Clone)]
pub struct SpanResult {
    /// Reached vertex -> predecessor. The start maps to itself.
    pub tree: Bst,
    pub found: bool,
    pub stats: SpanStats,
}

impl SpanResult {
    /// `(vertex, predecessor)` pairs in ascending vertex order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.tree
            .inorder()
            .into_iter()
            .map(|(k, v)| (k as Vertex, v as Vertex))
            .collect()
    }
}

/// Iteration budget for a spanning search on `g`: one per edge slot plus
/// one for the seed pair.
pub fn span_budget(g: &GraphStore) -> u64 {
    u64::from(g.n_max()) * u64::from(g.m_max()) + 1
}

fn explore_unchecked(
    g: &GraphStore,
    v: Vertex,
    tree: &Bst,
    fringe: &mut PairDeque,
    mode: Mode,
) -> Result<()> {
    for slot in 0..g.m_max() {
        let t = g.raw_child(v, slot);
        if t == 0 || tree.exists(u64::from(t)) {
            continue;
        }
        match mode {
            Mode::Dfs => fringe.push_front(t, v)?,
            Mode::Bfs => fringe.push_back(t, v)?,
        }
    }
    Ok(())
}

/// Pushes `(t, v)` for every out-neighbour `t` of `v` not yet in `tree`,
/// scanning slots in ascending order.
pub fn explore(g: &GraphStore, v: Vertex, tree: &Bst, fringe: &mut PairDeque, mode: Mode) -> Result<()> {
    g.get_edge(v, 0)?;
    explore_unchecked(g, v, tree, fringe, mode)
}

/// The spanning search loop. Runs until `count` iterations are spent, the
/// target is in the tree, or the fringe is empty. Each iteration pops one
/// pair; an unseen vertex is marked with its predecessor and explored.
pub fn span_search(
    mut count: u64,
    target: Vertex,
    g: &GraphStore,
    tree: &mut Bst,
    fringe: &mut PairDeque,
    mode: Mode,
) -> Result<SpanStats> {
    let n_max = g.n_max();
    let mut iterations = 0;
    let mut peak_fringe = fringe.len();
    let stop = loop {
        if count == 0 {
            break if tree.exists(u64::from(target)) {
                StopReason::TargetFound
            } else if fringe.is_empty() {
                StopReason::FringeEmpty
            } else {
                StopReason::CountExhausted
            };
        }
        if target > n_max {
            break StopReason::TargetOutOfRange;
        }
        if tree.exists(u64::from(target)) {
            break StopReason::TargetFound;
        }
        let Some((v, vpred)) = fringe.peek_front() else {
            break StopReason::FringeEmpty;
        };
        if v == 0 || v > n_max || vpred == 0 || vpred > n_max {
            break StopReason::MalformedPair;
        }
        fringe.pop_front();
        if !tree.exists(u64::from(v)) {
            tree.mark(v, vpred)?;
            explore_unchecked(g, v, tree, fringe, mode)?;
            peak_fringe = peak_fringe.max(fringe.len());
        }
        count -= 1;
        iterations += 1;
    };
    Ok(SpanStats {
        iterations,
        count_left: count,
        peak_fringe,
        stop,
    })
}

/// Depth-first spanning search.
pub fn dfs_span(count: u64, target: Vertex, g: &GraphStore, tree: &mut Bst, fringe: &mut PairDeque) -> Result<SpanStats> {
    span_search(count, target, g, tree, fringe, Mode::Dfs)
}

/// Breadth-first spanning search.
pub fn bfs_span(count: u64, target: Vertex, g: &GraphStore, tree: &mut Bst, fringe: &mut PairDeque) -> Result<SpanStats> {
    span_search(count, target, g, tree, fringe, Mode::Bfs)
}

/// Runs a full spanning search from `start`. Pass `target = 0` to span
/// everything reachable. Tree and fringe are sized up front so the search
/// itself never allocates.
pub fn span_from(g: &GraphStore, start: Vertex, target: Vertex, mode: Mode) -> Result<SpanResult> {
    if start == 0 {
        return Err(Error::NullVertex);
    }
    if !g.is_live(start) {
        return Err(Error::NotLive(start));
    }
    let budget = span_budget(g);
    let mut tree = Bst::new(u64::from(g.n_max()))?;
    let mut fringe = PairDeque::new(budget)?;
    fringe.push_back(start, start)?;
    let stats = span_search(budget, target, g, &mut tree, &mut fringe, mode)?;
    let found = tree.exists(u64::from(target));
    Ok(SpanResult { tree, found, stats })
}

/// Single-source shortest paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistResult {
    pub source: Vertex,
    /// Indexed by vertex; `None` when unreachable.
    pub dist: Vec<Option<u64>>,
    /// Indexed by vertex; 0 for the source and for unreachable vertices.
    pub pred: Vec<Vertex>,
}

fn check_weights(g: &GraphStore) -> Result<()> {
    for v in g.live_vertices() {
        for (slot, _, w) in g.out_edges(v)? {
            if w == 0 {
                return Err(Error::ZeroWeight { src: v, slot });
            }
        }
    }
    Ok(())
}

fn dijkstra_with(g: &GraphStore, src: Vertex, heap: &mut BoundedHeap) -> Result<DistResult> {
    let n = g.n_max() as usize;
    let mut dist: Vec<Option<u64>> = vec![None; n + 1];
    let mut pred = vec![0; n + 1];
    let mut settled = vec![false; n + 1];
    heap.clear();
    dist[src as usize] = Some(0);
    heap.push(0, src)?;
    while let Some(e) = heap.pop_min() {
        let v = e.vertex;
        if settled[v as usize] {
            continue;
        }
        settled[v as usize] = true;
        for (_, t, w) in g.out_edges(v)? {
            let nd = e.priority + w;
            if dist[t as usize].map_or(true, |d| nd < d) {
                dist[t as usize] = Some(nd);
                pred[t as usize] = v;
                heap.push(nd, t)?;
            }
        }
    }
    Ok(DistResult {
        source: src,
        dist,
        pred,
    })
}

fn heap_for(g: &GraphStore) -> BoundedHeap {
    BoundedHeap::new(span_budget(g) as usize)
}

/// Dijkstra from `src` with lazy deletion: every improving relaxation pushes
/// a fresh entry and stale entries are skipped when popped. All present
/// edges must have weight >= 1.
pub fn dijkstra(g: &GraphStore, src: Vertex) -> Result<DistResult> {
    if src == 0 {
        return Err(Error::NullVertex);
    }
    if !g.is_live(src) {
        return Err(Error::NotLive(src));
    }
    check_weights(g)?;
    dijkstra_with(g, src, &mut heap_for(g))
}

/// [`dijkstra`] from every live vertex, in ascending vertex order.
pub fn all_pairs(g: &GraphStore) -> Result<Vec<DistResult>> {
    check_weights(g)?;
    let mut heap = heap_for(g);
    g.live_vertices().map(|s| dijkstra_with(g, s, &mut heap)).collect()
}

/// [`all_pairs`] split across `threads` scoped threads. The graph is only
/// read.
pub fn all_pairs_parallel(g: &GraphStore, threads: usize) -> Result<Vec<DistResult>> {
    check_weights(g)?;
    let sources: Vec<Vertex> = g.live_vertices().collect();
    if sources.is_empty() {
        return Ok(Vec::new());
    }
    let chunk = sources.len().div_ceil(threads.max(1));
    let parts: Vec<Result<Vec<DistResult>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sources
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut heap = heap_for(g);
                    part.iter().map(|&s| dijkstra_with(g, s, &mut heap)).collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("all-pairs worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(sources.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}
