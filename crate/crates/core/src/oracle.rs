//! Reference models and differential testing.
//!
//! Every array-backed structure has an unbounded functional counterpart
//! built from std collections, and an abstraction function mapping a
//! well-formed store onto that counterpart. The harness here replays one
//! generated workload against both and reports the first step at which
//! any observation differs.
//!
//! The graph oracles (`oracle_*`) work on an [`Adjacency`] map only and
//! never touch store code.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algos::Mode;
use crate::bst::Bst;
use crate::dlist::{Pair, PairDeque};
use crate::error::{Error, Result};
use crate::pqueue::{BoundedHeap, Entry};
use crate::store::{GraphStore, Vertex};

/// Vertex -> outgoing `(target, weight)` list in slot order.
pub type Adjacency = BTreeMap<Vertex, Vec<(Vertex, u64)>>;

// ---------------------------------------------------------------------------
// abstraction functions

pub fn abstract_bst(t: &Bst) -> Result<BTreeMap<u64, u64>> {
    let violations = t.audit();
    if !violations.is_empty() {
        return Err(Error::Dirty(violations.len()));
    }
    Ok(t.inorder().into_iter().collect())
}

pub fn abstract_deque(d: &PairDeque) -> Result<VecDeque<Pair>> {
    let violations = d.audit();
    if !violations.is_empty() {
        return Err(Error::Dirty(violations.len()));
    }
    Ok(d.to_vec().into())
}

/// Live vertices with their non-null out-edges. Vertices with no edges map
/// to an empty list.
pub fn abstract_graph(g: &GraphStore) -> Result<Adjacency> {
    let violations = g.audit();
    if !violations.is_empty() {
        return Err(Error::Dirty(violations.len()));
    }
    let mut adj = Adjacency::new();
    for v in g.live_vertices() {
        adj.insert(v, g.out_edges(v)?.map(|(_, t, w)| (t, w)).collect());
    }
    Ok(adj)
}

// ---------------------------------------------------------------------------
// graph oracles

fn successors(adj: &Adjacency, v: Vertex) -> impl Iterator<Item = &(Vertex, u64)> {
    adj.get(&v).into_iter().flatten()
}

/// Vertices reachable from `start`, including `start`.
pub fn oracle_reach(adj: &Adjacency, start: Vertex) -> BTreeSet<Vertex> {
    let mut seen = BTreeSet::from([start]);
    let mut work = vec![start];
    while let Some(v) = work.pop() {
        for &(t, _) in successors(adj, v) {
            if seen.insert(t) {
                work.push(t);
            }
        }
    }
    seen
}

/// Hop distance from `start` to every reachable vertex.
pub fn oracle_bfs_depth(adj: &Adjacency, start: Vertex) -> BTreeMap<Vertex, u32> {
    let mut depth = BTreeMap::from([(start, 0)]);
    let mut frontier = BTreeSet::from([start]);
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = BTreeSet::new();
        for v in frontier {
            for &(t, _) in successors(adj, v) {
                if !depth.contains_key(&t) {
                    depth.insert(t, d);
                    next.insert(t);
                }
            }
        }
        frontier = next;
    }
    depth
}

/// Dense distance matrix indexed by vertex number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistMatrix {
    size: usize,
    cells: Vec<Option<u64>>,
}

impl DistMatrix {
    pub fn get(&self, from: Vertex, to: Vertex) -> Option<u64> {
        let (a, b) = (from as usize, to as usize);
        if a >= self.size || b >= self.size {
            return None;
        }
        self.cells[a * self.size + b]
    }
}

/// Floyd–Warshall over `adj`. Parallel edges keep the lighter weight.
pub fn oracle_apsp(adj: &Adjacency) -> DistMatrix {
    let size = adj
        .iter()
        .flat_map(|(&v, es)| std::iter::once(v).chain(es.iter().map(|&(t, _)| t)))
        .max()
        .map_or(0, |m| m as usize + 1);
    let mut cells = vec![None; size * size];
    for (&v, es) in adj {
        let v = v as usize;
        cells[v * size + v] = Some(0);
        for &(t, w) in es {
            let c = &mut cells[v * size + t as usize];
            if c.map_or(true, |old| w < old) {
                *c = Some(w);
            }
        }
    }
    for k in 0..size {
        for i in 0..size {
            let Some(ik) = cells[i * size + k] else { continue };
            for j in 0..size {
                if let Some(kj) = cells[k * size + j] {
                    let c = &mut cells[i * size + j];
                    if c.map_or(true, |old| ik + kj < old) {
                        *c = Some(ik + kj);
                    }
                }
            }
        }
    }
    DistMatrix { size, cells }
}

/// Functional model of the spanning search: a list fringe and a map tree,
/// following the same pop/mark/explore policy with no iteration bound.
pub fn oracle_span(adj: &Adjacency, start: Vertex, mode: Mode) -> BTreeMap<Vertex, Vertex> {
    let mut tree = BTreeMap::new();
    let mut fringe = VecDeque::from([(start, start)]);
    while let Some((v, p)) = fringe.pop_front() {
        if tree.contains_key(&v) {
            continue;
        }
        tree.insert(v, p);
        for &(t, _) in successors(adj, v) {
            if !tree.contains_key(&t) {
                match mode {
                    Mode::Dfs => fringe.push_front((t, v)),
                    Mode::Bfs => fringe.push_back((t, v)),
                }
            }
        }
    }
    tree
}

// ---------------------------------------------------------------------------
// structures under test

/// Keyed map interface the harness drives.
pub trait MapUnderTest {
    fn insert(&mut self, key: u64, val: u64) -> Result<()>;
    fn get(&self, key: u64) -> u64;
    fn exists(&self, key: u64) -> bool;
    fn delete(&mut self, key: u64) -> Result<bool>;
    /// Abstraction: `None` when the structure refuses (not well formed).
    fn abstraction(&self) -> Option<BTreeMap<u64, u64>>;
    /// In-order keys, for the sortedness check.
    fn keys(&self) -> Vec<u64>;
}

impl MapUnderTest for Bst {
    fn insert(&mut self, key: u64, val: u64) -> Result<()> {
        Bst::insert(self, key, val)
    }
    fn get(&self, key: u64) -> u64 {
        Bst::get(self, key)
    }
    fn exists(&self, key: u64) -> bool {
        Bst::exists(self, key)
    }
    fn delete(&mut self, key: u64) -> Result<bool> {
        Bst::delete(self, key)
    }
    fn abstraction(&self) -> Option<BTreeMap<u64, u64>> {
        abstract_bst(self).ok()
    }
    fn keys(&self) -> Vec<u64> {
        self.inorder().into_iter().map(|(k, _)| k).collect()
    }
}

pub trait DequeUnderTest {
    fn push_front(&mut self, v: Vertex, p: Vertex) -> Result<()>;
    fn push_back(&mut self, v: Vertex, p: Vertex) -> Result<()>;
    fn pop_front(&mut self) -> Option<Pair>;
    fn pop_back(&mut self) -> Option<Pair>;
    fn peek_front(&self) -> Option<Pair>;
    fn len(&self) -> u32;
    fn abstraction(&self) -> Option<VecDeque<Pair>>;
}

impl DequeUnderTest for PairDeque {
    fn push_front(&mut self, v: Vertex, p: Vertex) -> Result<()> {
        PairDeque::push_front(self, v, p)
    }
    fn push_back(&mut self, v: Vertex, p: Vertex) -> Result<()> {
        PairDeque::push_back(self, v, p)
    }
    fn pop_front(&mut self) -> Option<Pair> {
        PairDeque::pop_front(self)
    }
    fn pop_back(&mut self) -> Option<Pair> {
        PairDeque::pop_back(self)
    }
    fn peek_front(&self) -> Option<Pair> {
        PairDeque::peek_front(self)
    }
    fn len(&self) -> u32 {
        PairDeque::len(self)
    }
    fn abstraction(&self) -> Option<VecDeque<Pair>> {
        abstract_deque(self).ok()
    }
}

pub trait HeapUnderTest {
    fn push(&mut self, priority: u64, v: Vertex) -> Result<()>;
    fn pop_min(&mut self) -> Option<Entry>;
    fn len(&self) -> usize;
    fn well_formed(&self) -> bool;
}

impl HeapUnderTest for BoundedHeap {
    fn push(&mut self, priority: u64, v: Vertex) -> Result<()> {
        BoundedHeap::push(self, priority, v)
    }
    fn pop_min(&mut self) -> Option<Entry> {
        BoundedHeap::pop_min(self)
    }
    fn len(&self) -> usize {
        BoundedHeap::len(self)
    }
    fn well_formed(&self) -> bool {
        self.is_heap()
    }
}

// ---------------------------------------------------------------------------
// workloads

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BstOp {
    Insert(u64, u64),
    Get(u64),
    Exists(u64),
    Delete(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DequeOp {
    PushFront(Vertex, Vertex),
    PushBack(Vertex, Vertex),
    PopFront,
    PopBack,
    PeekFront,
    Len,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeapOp {
    Push(u64, Vertex),
    Pop,
}

impl fmt::Display for BstOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BstOp::Insert(k, v) => write!(f, "insert({k},{v})"),
            BstOp::Get(k) => write!(f, "get({k})"),
            BstOp::Exists(k) => write!(f, "exists({k})"),
            BstOp::Delete(k) => write!(f, "delete({k})"),
        }
    }
}

impl fmt::Display for DequeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DequeOp::PushFront(v, p) => write!(f, "push_front({v},{p})"),
            DequeOp::PushBack(v, p) => write!(f, "push_back({v},{p})"),
            DequeOp::PopFront => write!(f, "pop_front"),
            DequeOp::PopBack => write!(f, "pop_back"),
            DequeOp::PeekFront => write!(f, "peek_front"),
            DequeOp::Len => write!(f, "len"),
        }
    }
}

impl fmt::Display for HeapOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeapOp::Push(p, v) => write!(f, "push({p},{v})"),
            HeapOp::Pop => write!(f, "pop"),
        }
    }
}

/// Relative weights of the BST operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BstMix {
    pub insert: u32,
    pub get: u32,
    pub exists: u32,
    pub delete: u32,
}

impl Default for BstMix {
    fn default() -> Self {
        BstMix {
            insert: 40,
            get: 30,
            exists: 15,
            delete: 15,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkloadConfig {
    pub ops: usize,
    /// Keys, vertices and priorities are drawn from `1..=key_range`.
    pub key_range: u64,
    /// Capacity of the structure under test and of its model.
    pub capacity: u64,
    /// Compare abstractions (and audit) every this many steps; observers
    /// are compared on every step regardless.
    pub check_every: usize,
    pub bst_mix: BstMix,
}

impl Default for WorkloadConfig {
    fn default() -> Self {
        WorkloadConfig {
            ops: 10_000,
            key_range: 1_000,
            capacity: 1_000,
            check_every: 1,
            bst_mix: BstMix::default(),
        }
    }
}

pub fn gen_bst_ops(seed: u64, cfg: &WorkloadConfig) -> Vec<BstOp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = cfg.bst_mix;
    let total = m.insert + m.get + m.exists + m.delete;
    (0..cfg.ops)
        .map(|_| {
            let key = rng.gen_range(1..=cfg.key_range);
            let pick = rng.gen_range(0..total);
            if pick < m.insert {
                BstOp::Insert(key, rng.gen_range(1..=cfg.key_range))
            } else if pick < m.insert + m.get {
                BstOp::Get(key)
            } else if pick < m.insert + m.get + m.exists {
                BstOp::Exists(key)
            } else {
                BstOp::Delete(key)
            }
        })
        .collect()
}

pub fn gen_deque_ops(seed: u64, cfg: &WorkloadConfig) -> Vec<DequeOp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vr = cfg.key_range.min(u64::from(Vertex::MAX)) as Vertex;
    (0..cfg.ops)
        .map(|_| {
            let (v, p) = (rng.gen_range(1..=vr), rng.gen_range(1..=vr));
            match rng.gen_range(0..100) {
                0..=24 => DequeOp::PushFront(v, p),
                25..=49 => DequeOp::PushBack(v, p),
                50..=67 => DequeOp::PopFront,
                68..=84 => DequeOp::PopBack,
                85..=94 => DequeOp::PeekFront,
                _ => DequeOp::Len,
            }
        })
        .collect()
}

pub fn gen_heap_ops(seed: u64, cfg: &WorkloadConfig) -> Vec<HeapOp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vr = cfg.key_range.min(u64::from(Vertex::MAX)) as Vertex;
    (0..cfg.ops)
        .map(|_| {
            if rng.gen_range(0..100) < 55 {
                HeapOp::Push(rng.gen_range(0..=cfg.key_range), rng.gen_range(1..=vr))
            } else {
                HeapOp::Pop
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// harness

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub step: usize,
    pub op: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffReport {
    pub structure: &'static str,
    pub seed: u64,
    pub ops_run: usize,
    pub divergence: Option<Divergence>,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.divergence {
            None => writeln!(f, "{} seed {} ok {} ops", self.structure, self.seed, self.ops_run),
            Some(d) => writeln!(
                f,
                "{} seed {} step {} op {} expected {} actual {}",
                self.structure, self.seed, d.step, d.op, d.expected, d.actual
            ),
        }
    }
}

struct Run {
    structure: &'static str,
    seed: u64,
}

impl Run {
    fn ok(&self, ops_run: usize) -> DiffReport {
        DiffReport {
            structure: self.structure,
            seed: self.seed,
            ops_run,
            divergence: None,
        }
    }

    fn diverged(&self, step: usize, op: impl fmt::Display, expected: String, actual: String) -> DiffReport {
        DiffReport {
            structure: self.structure,
            seed: self.seed,
            ops_run: step,
            divergence: Some(Divergence {
                step,
                op: op.to_string(),
                expected,
                actual,
            }),
        }
    }
}

fn checkpoint(step: usize, cfg: &WorkloadConfig, last: bool) -> bool {
    last || (cfg.check_every > 0 && (step + 1) % cfg.check_every == 0)
}

/// Full-store outcome of an operation, comparable across model and structure.
fn outcome<T: fmt::Debug>(r: &Result<T>) -> String {
    match r {
        Ok(v) => format!("{v:?}"),
        Err(Error::StoreFull) => "full".into(),
        Err(Error::HeapOverflow { .. }) => "full".into(),
        Err(e) => format!("error {e}"),
    }
}

/// Replays `ops` against `sut` and a sorted-map model of the same capacity.
/// At each checkpoint the abstraction must equal the model and the in-order
/// keys must be strictly increasing.
pub fn diff_bst<M: MapUnderTest>(sut: &mut M, ops: &[BstOp], seed: u64, cfg: &WorkloadConfig) -> DiffReport {
    let run = Run { structure: "bst", seed };
    let mut model: BTreeMap<u64, u64> = BTreeMap::new();
    for (step, &op) in ops.iter().enumerate() {
        let (expected, actual) = match op {
            BstOp::Insert(k, v) => {
                let exp = if !model.contains_key(&k) && model.len() as u64 >= cfg.capacity {
                    "full".to_string()
                } else {
                    model.insert(k, v);
                    "()".to_string()
                };
                (exp, outcome(&sut.insert(k, v)))
            }
            BstOp::Get(k) => (
                model.get(&k).copied().unwrap_or(0).to_string(),
                sut.get(k).to_string(),
            ),
            BstOp::Exists(k) => (model.contains_key(&k).to_string(), sut.exists(k).to_string()),
            BstOp::Delete(k) => (
                format!("{:?}", model.remove(&k).is_some()),
                outcome(&sut.delete(k)),
            ),
        };
        if expected != actual {
            return run.diverged(step, op, expected, actual);
        }
        if checkpoint(step, cfg, step + 1 == ops.len()) {
            let keys = sut.keys();
            if keys.windows(2).any(|w| w[0] >= w[1]) {
                return run.diverged(step, op, "strictly increasing keys".into(), format!("{keys:?}"));
            }
            match sut.abstraction() {
                Some(a) if a == model => {}
                Some(a) => return run.diverged(step, op, format!("{model:?}"), format!("{a:?}")),
                None => return run.diverged(step, op, "clean audit".into(), "dirty audit".into()),
            }
        }
    }
    run.ok(ops.len())
}

pub fn diff_deque<D: DequeUnderTest>(sut: &mut D, ops: &[DequeOp], seed: u64, cfg: &WorkloadConfig) -> DiffReport {
    let run = Run { structure: "deque", seed };
    let mut model: VecDeque<Pair> = VecDeque::new();
    let full = |m: &VecDeque<Pair>| m.len() as u64 >= cfg.capacity;
    for (step, &op) in ops.iter().enumerate() {
        let (expected, actual) = match op {
            DequeOp::PushFront(v, p) => {
                let exp = if full(&model) {
                    "full".to_string()
                } else {
                    model.push_front((v, p));
                    "()".to_string()
                };
                (exp, outcome(&sut.push_front(v, p)))
            }
            DequeOp::PushBack(v, p) => {
                let exp = if full(&model) {
                    "full".to_string()
                } else {
                    model.push_back((v, p));
                    "()".to_string()
                };
                (exp, outcome(&sut.push_back(v, p)))
            }
            DequeOp::PopFront => (format!("{:?}", model.pop_front()), format!("{:?}", sut.pop_front())),
            DequeOp::PopBack => (format!("{:?}", model.pop_back()), format!("{:?}", sut.pop_back())),
            DequeOp::PeekFront => (format!("{:?}", model.front()), format!("{:?}", sut.peek_front())),
            DequeOp::Len => (model.len().to_string(), sut.len().to_string()),
        };
        if expected != actual {
            return run.diverged(step, op, expected, actual);
        }
        if checkpoint(step, cfg, step + 1 == ops.len()) {
            match sut.abstraction() {
                Some(a) if a == model => {}
                Some(a) => return run.diverged(step, op, format!("{model:?}"), format!("{a:?}")),
                None => return run.diverged(step, op, "clean audit".into(), "dirty audit".into()),
            }
        }
    }
    run.ok(ops.len())
}

/// Replays `ops` against `sut` and a sorted multiset of entries.
pub fn diff_heap<H: HeapUnderTest>(sut: &mut H, ops: &[HeapOp], seed: u64, cfg: &WorkloadConfig) -> DiffReport {
    let run = Run { structure: "heap", seed };
    let mut model: BTreeMap<Entry, usize> = BTreeMap::new();
    let mut model_len = 0usize;
    for (step, &op) in ops.iter().enumerate() {
        let (expected, actual) = match op {
            HeapOp::Push(p, v) => {
                let exp = if model_len as u64 >= cfg.capacity {
                    "full".to_string()
                } else {
                    *model.entry(Entry { priority: p, vertex: v }).or_default() += 1;
                    model_len += 1;
                    "()".to_string()
                };
                (exp, outcome(&sut.push(p, v)))
            }
            HeapOp::Pop => {
                let min = model.first_entry().map(|mut e| {
                    let k = *e.key();
                    *e.get_mut() -= 1;
                    if *e.get() == 0 {
                        e.remove();
                    }
                    model_len -= 1;
                    k
                });
                (format!("{min:?}"), format!("{:?}", sut.pop_min()))
            }
        };
        if expected != actual {
            return run.diverged(step, op, expected, actual);
        }
        if checkpoint(step, cfg, step + 1 == ops.len()) {
            if sut.len() != model_len {
                return run.diverged(step, op, format!("len {model_len}"), format!("len {}", sut.len()));
            }
            if !sut.well_formed() {
                return run.diverged(step, op, "heap order".into(), "violated".into());
            }
        }
    }
    run.ok(ops.len())
}

/// Which structure [`diff_run`] exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    Bst,
    Deque,
    Heap,
}

/// Generates a workload from `seed` and replays it against a fresh
/// structure of `cfg.capacity`.
pub fn diff_run(structure: Structure, seed: u64, cfg: &WorkloadConfig) -> Result<DiffReport> {
    Ok(match structure {
        Structure::Bst => diff_bst(&mut Bst::new(cfg.capacity)?, &gen_bst_ops(seed, cfg), seed, cfg),
        Structure::Deque => diff_deque(&mut PairDeque::new(cfg.capacity)?, &gen_deque_ops(seed, cfg), seed, cfg),
        Structure::Heap => diff_heap(
            &mut BoundedHeap::new(cfg.capacity as usize),
            &gen_heap_ops(seed, cfg),
            seed,
            cfg,
        ),
    })
}
