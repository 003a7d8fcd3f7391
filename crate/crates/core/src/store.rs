//! Array-based vertex/edge store.
//!
//! A store with at most `N` vertices and at most `M` outgoing edges per
//! vertex is the tuple `(V, D, E, W, Vhd, Vtl, Vcount)`:
//!
//! ```text
//!   vtx    : [u32; N+1]     V  - base of each live vertex's edge block, 0 when free
//!   data   : [u64; N+1]     D  - per-vertex payload
//!   key    : [u64; N+1]        - per-vertex key (keyed datatypes only)
//!   edge   : [u32; N*M+1]   E  - target vertex of each edge slot, 0 = no edge
//!   weight : [u64; N*M+1]   W  - per-edge label
//!   vhd, vtl, vcount
//! ```
//!
//! Index 0 of every array is reserved and never written: 0 is the null
//! vertex, the null edge and the null value. The edge block of vertex `v`
//! occupies `E[(v-1)*M + 1 ..= v*M]`.
//!
//! Free vertices are kept on a singly-linked chain threaded through the
//! first edge slot of each free vertex's block, headed by `free_hd`.
//! All arrays are allocated once in [`GraphStore::new`] and never resized.

use std::fmt;

use crate::error::{Error, Result};

/// Vertex index. 0 is the null vertex.
pub type Vertex = u32;

/// Index into the edge and weight arrays. 0 is the null edge.
pub type EdgeIndex = u32;

/// Vertex bounds of a store.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StoreConfig {
    n_max: u32,
    m_max: u32,
}

impl StoreConfig {
    pub fn new(n_max: u64, m_max: u64) -> Result<Self> {
        if n_max == 0 || m_max == 0 {
            return Err(Error::InvalidConfig { n_max, m_max });
        }
        match n_max.checked_mul(m_max) {
            Some(p) if p <= u64::from(EdgeIndex::MAX) - 1 => Ok(StoreConfig {
                n_max: n_max as u32,
                m_max: m_max as u32,
            }),
            _ => Err(Error::CapacityOverflow { n_max, m_max }),
        }
    }

    /// Maximum number of live vertices.
    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// Maximum number of outgoing edge slots per vertex.
    pub fn m_max(&self) -> u32 {
        self.m_max
    }

    /// `n_max * m_max`, the number of usable edge slots.
    pub fn edge_slots(&self) -> u32 {
        self.n_max * self.m_max
    }

    /// Base of `v`'s edge block.
    #[inline]
    pub fn block_base(&self, v: Vertex) -> EdgeIndex {
        (v - 1) * self.m_max + 1
    }
}

/// Lengths of the five arrays. These never change after construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capacities {
    pub vtx: usize,
    pub data: usize,
    pub key: usize,
    pub edge: usize,
    pub weight: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct GraphStore {
    cfg: StoreConfig,
    vtx: Box<[EdgeIndex]>,
    data: Box<[u64]>,
    key: Box<[u64]>,
    edge: Box<[Vertex]>,
    weight: Box<[u64]>,
    vhd: Vertex,
    vtl: Vertex,
    vcount: u32,
    free_hd: Vertex,
}

impl fmt::Debug for GraphStore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphStore")
            .field("cfg", &self.cfg)
            .field("vhd", &self.vhd)
            .field("vtl", &self.vtl)
            .field("vcount", &self.vcount)
            .field("free_hd", &self.free_hd)
            .finish_non_exhaustive()
    }
}

impl GraphStore {
    /// An empty store. The free chain links `1, 2, .., n_max` in order.
    pub fn new(cfg: StoreConfig) -> Self {
        let n = cfg.n_max as usize;
        let e = cfg.edge_slots() as usize;
        let mut s = GraphStore {
            cfg,
            vtx: vec![0; n + 1].into_boxed_slice(),
            data: vec![0; n + 1].into_boxed_slice(),
            key: vec![0; n + 1].into_boxed_slice(),
            edge: vec![0; e + 1].into_boxed_slice(),
            weight: vec![0; e + 1].into_boxed_slice(),
            vhd: 0,
            vtl: 0,
            vcount: 0,
            free_hd: 1,
        };
        for v in 1..cfg.n_max {
            s.edge[cfg.block_base(v) as usize] = v + 1;
        }
        s
    }

    pub fn with_bounds(n_max: u64, m_max: u64) -> Result<Self> {
        Ok(Self::new(StoreConfig::new(n_max, m_max)?))
    }

    pub fn config(&self) -> StoreConfig {
        self.cfg
    }

    pub fn n_max(&self) -> u32 {
        self.cfg.n_max
    }

    pub fn m_max(&self) -> u32 {
        self.cfg.m_max
    }

    pub fn vcount(&self) -> u32 {
        self.vcount
    }

    pub fn is_empty(&self) -> bool {
        self.vcount == 0
    }

    pub fn is_full(&self) -> bool {
        self.free_hd == 0
    }

    pub fn vhd(&self) -> Vertex {
        self.vhd
    }

    pub fn vtl(&self) -> Vertex {
        self.vtl
    }

    pub fn free_hd(&self) -> Vertex {
        self.free_hd
    }

    /// Sets the head vertex. `v` must be 0 or live.
    pub fn set_vhd(&mut self, v: Vertex) -> Result<()> {
        self.check_null_or_live(v)?;
        self.vhd = v;
        Ok(())
    }

    /// Sets the tail vertex. `v` must be 0 or live.
    pub fn set_vtl(&mut self, v: Vertex) -> Result<()> {
        self.check_null_or_live(v)?;
        self.vtl = v;
        Ok(())
    }

    pub fn capacities(&self) -> Capacities {
        Capacities {
            vtx: self.vtx.len(),
            data: self.data.len(),
            key: self.key.len(),
            edge: self.edge.len(),
            weight: self.weight.len(),
        }
    }

    /// Index 0 of `(vtx, data, key, edge, weight)`.
    pub fn zero_slots(&self) -> [u64; 5] {
        [
            u64::from(self.vtx[0]),
            self.data[0],
            self.key[0],
            u64::from(self.edge[0]),
            self.weight[0],
        ]
    }

    #[inline]
    pub fn is_live(&self, v: Vertex) -> bool {
        v != 0 && v <= self.cfg.n_max && self.vtx[v as usize] != 0
    }

    /// Live vertices in ascending order.
    pub fn live_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..=self.cfg.n_max).filter(move |&v| self.vtx[v as usize] != 0)
    }

    /// Takes a vertex off the free chain. Returns 0 when the store is full.
    pub fn alloc_vertex(&mut self, key: u64, payload: u64) -> Vertex {
        let v = self.free_hd;
        if v == 0 {
            return 0;
        }
        let base = self.cfg.block_base(v);
        let block = base as usize..(base + self.cfg.m_max) as usize;
        self.free_hd = self.edge[block.start];
        self.edge[block.clone()].fill(0);
        self.weight[block].fill(0);
        self.vtx[v as usize] = base;
        self.key[v as usize] = key;
        self.data[v as usize] = payload;
        self.vcount += 1;
        v
    }

    /// Clears `v` and pushes it on the free chain.
    pub fn free_vertex(&mut self, v: Vertex) -> Result<()> {
        self.check_live(v)?;
        let base = self.cfg.block_base(v);
        let block = base as usize..(base + self.cfg.m_max) as usize;
        self.edge[block.clone()].fill(0);
        self.weight[block.clone()].fill(0);
        self.edge[block.start] = self.free_hd;
        self.free_hd = v;
        self.key[v as usize] = 0;
        self.data[v as usize] = 0;
        self.vtx[v as usize] = 0;
        self.vcount -= 1;
        if self.vhd == v {
            self.vhd = 0;
        }
        if self.vtl == v {
            self.vtl = 0;
        }
        Ok(())
    }

    /// Edge array index of `(v, slot)`.
    pub fn edge_index(&self, v: Vertex, slot: u32) -> Result<EdgeIndex> {
        self.check_live(v)?;
        if slot >= self.cfg.m_max {
            return Err(Error::SlotOutOfRange {
                slot,
                m_max: self.cfg.m_max,
            });
        }
        Ok(self.vtx[v as usize] + slot)
    }

    pub fn get_edge(&self, v: Vertex, slot: u32) -> Result<Vertex> {
        Ok(self.edge[self.edge_index(v, slot)? as usize])
    }

    pub fn set_edge(&mut self, v: Vertex, slot: u32, target: Vertex) -> Result<()> {
        let i = self.edge_index(v, slot)?;
        if target != 0 && !self.is_live(target) {
            return Err(Error::BadTarget {
                target,
                n_max: self.cfg.n_max,
            });
        }
        self.edge[i as usize] = target;
        Ok(())
    }

    pub fn get_weight(&self, v: Vertex, slot: u32) -> Result<u64> {
        Ok(self.weight[self.edge_index(v, slot)? as usize])
    }

    pub fn set_weight(&mut self, v: Vertex, slot: u32, w: u64) -> Result<()> {
        let i = self.edge_index(v, slot)?;
        self.weight[i as usize] = w;
        Ok(())
    }

    pub fn get_key(&self, v: Vertex) -> Result<u64> {
        self.check_live(v)?;
        Ok(self.key[v as usize])
    }

    pub fn set_key(&mut self, v: Vertex, k: u64) -> Result<()> {
        self.check_live(v)?;
        self.key[v as usize] = k;
        Ok(())
    }

    pub fn get_data(&self, v: Vertex) -> Result<u64> {
        self.check_live(v)?;
        Ok(self.data[v as usize])
    }

    pub fn set_data(&mut self, v: Vertex, d: u64) -> Result<()> {
        self.check_live(v)?;
        self.data[v as usize] = d;
        Ok(())
    }

    /// `(target, weight)` of every non-null edge slot of `v`, in slot order.
    pub fn out_edges(&self, v: Vertex) -> Result<impl Iterator<Item = (u32, Vertex, u64)> + '_> {
        self.check_live(v)?;
        let base = self.vtx[v as usize] as usize;
        let m = self.cfg.m_max as usize;
        Ok((0..m).filter_map(move |s| {
            let t = self.edge[base + s];
            (t != 0).then(|| (s as u32, t, self.weight[base + s]))
        }))
    }

    // Unchecked reads for the hot paths of the keyed disciplines. Out of
    // range indices read as null instead of panicking.

    #[inline]
    pub(crate) fn raw_key(&self, v: Vertex) -> u64 {
        self.key.get(v as usize).copied().unwrap_or(0)
    }

    #[inline]
    pub(crate) fn raw_data(&self, v: Vertex) -> u64 {
        self.data.get(v as usize).copied().unwrap_or(0)
    }

    #[inline]
    pub(crate) fn raw_child(&self, v: Vertex, slot: u32) -> Vertex {
        match self.vtx.get(v as usize) {
            Some(&b) if b != 0 => self.edge.get((b + slot) as usize).copied().unwrap_or(0),
            _ => 0,
        }
    }

    #[inline]
    pub(crate) fn raw_set_child(&mut self, v: Vertex, slot: u32, target: Vertex) {
        debug_assert!(self.is_live(v) && slot < self.cfg.m_max);
        let b = self.vtx[v as usize];
        self.edge[(b + slot) as usize] = target;
    }

    /// Direct access to the arrays, bypassing every invariant. Used by tests
    /// that corrupt a store on purpose.
    #[doc(hidden)]
    pub fn raw_parts_mut(&mut self) -> RawPartsMut<'_> {
        RawPartsMut {
            vtx: &mut self.vtx,
            data: &mut self.data,
            key: &mut self.key,
            edge: &mut self.edge,
            weight: &mut self.weight,
            vhd: &mut self.vhd,
            vtl: &mut self.vtl,
            vcount: &mut self.vcount,
            free_hd: &mut self.free_hd,
        }
    }

    fn check_live(&self, v: Vertex) -> Result<()> {
        if v == 0 {
            Err(Error::NullVertex)
        } else if !self.is_live(v) {
            Err(Error::NotLive(v))
        } else {
            Ok(())
        }
    }

    fn check_null_or_live(&self, v: Vertex) -> Result<()> {
        if v == 0 || self.is_live(v) {
            Ok(())
        } else {
            Err(Error::NotLive(v))
        }
    }

    /// Every violated store invariant. Empty iff the store is well formed.
    pub fn audit(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let cfg = self.cfg;
        let zs = self.zero_slots();
        for (array, &value) in ["vtx", "data", "key", "edge", "weight"].iter().zip(zs.iter()) {
            if value != 0 {
                out.push(Violation::ZeroSlot { array, value });
            }
        }

        let mut live = 0u32;
        for v in 1..=cfg.n_max {
            let b = self.vtx[v as usize];
            if b == 0 {
                continue;
            }
            live += 1;
            // block bases are injective in v, so this also rules out overlap
            if b != cfg.block_base(v) {
                out.push(Violation::BlockBase {
                    vertex: v,
                    found: b,
                    expected: cfg.block_base(v),
                });
            }
        }
        if live != self.vcount {
            out.push(Violation::VertexCount {
                recorded: self.vcount,
                live,
            });
        }

        for (i, &t) in self.edge.iter().enumerate() {
            if t > cfg.n_max {
                out.push(Violation::EdgeRange { index: i, target: t });
            }
        }

        for (name, v) in [("vhd", self.vhd), ("vtl", self.vtl)] {
            if v != 0 && !self.is_live(v) {
                out.push(Violation::EndpointNotLive { field: name, vertex: v });
            }
        }

        // free chain: every non-live vertex exactly once, nothing else
        let mut on_chain = vec![false; cfg.n_max as usize + 1];
        let mut cur = self.free_hd;
        let mut steps = 0u32;
        while cur != 0 {
            if cur > cfg.n_max {
                out.push(Violation::FreeChain(format!("link to out-of-range vertex {cur}")));
                break;
            }
            if self.vtx[cur as usize] != 0 {
                out.push(Violation::FreeChain(format!("live vertex {cur} on free chain")));
                break;
            }
            if on_chain[cur as usize] {
                out.push(Violation::FreeChain(format!("vertex {cur} visited twice")));
                break;
            }
            on_chain[cur as usize] = true;
            steps += 1;
            cur = self.edge[cfg.block_base(cur) as usize];
        }
        if steps != cfg.n_max - live.min(cfg.n_max) {
            if let Some(v) = (1..=cfg.n_max).find(|&v| self.vtx[v as usize] == 0 && !on_chain[v as usize]) {
                out.push(Violation::FreeChain(format!("free vertex {v} missing from chain")));
            }
        }

        // free vertices carry no key, data or edges besides the chain link
        for v in 1..=cfg.n_max {
            if self.vtx[v as usize] != 0 {
                continue;
            }
            let base = cfg.block_base(v) as usize;
            let dirty_edges = self.edge[base + 1..base + cfg.m_max as usize].iter().any(|&t| t != 0)
                || self.weight[base..base + cfg.m_max as usize].iter().any(|&w| w != 0);
            if self.key[v as usize] != 0 || self.data[v as usize] != 0 || dirty_edges {
                out.push(Violation::FreeHygiene { vertex: v });
            }
        }
        out
    }
}

/// One broken store invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroSlot { array: &'static str, value: u64 },
    BlockBase { vertex: Vertex, found: EdgeIndex, expected: EdgeIndex },
    VertexCount { recorded: u32, live: u32 },
    EdgeRange { index: usize, target: Vertex },
    EndpointNotLive { field: &'static str, vertex: Vertex },
    FreeChain(String),
    FreeHygiene { vertex: Vertex },
    /// Violations of a discipline layered over the store (tree order, links).
    Structure(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroSlot { array, value } => {
                write!(f, "zero-slot: {array}[0] = {value}, expected 0")
            }
            Violation::BlockBase {
                vertex,
                found,
                expected,
            } => write!(f, "block-base: vtx[{vertex}] = {found}, expected {expected}"),
            Violation::VertexCount { recorded, live } => {
                write!(f, "vcount: recorded {recorded}, live vertices {live}")
            }
            Violation::EdgeRange { index, target } => {
                write!(f, "edge-range: edge[{index}] = {target} exceeds n_max")
            }
            Violation::EndpointNotLive { field, vertex } => {
                write!(f, "endpoint: {field} = {vertex} is not live")
            }
            Violation::FreeChain(msg) => write!(f, "free-chain: {msg}"),
            Violation::FreeHygiene { vertex } => {
                write!(f, "free-hygiene: free vertex {vertex} has residual key, data or edges")
            }
            Violation::Structure(msg) => write!(f, "structure: {msg}"),
        }
    }
}

/// Mutable views of the raw arrays. See [`GraphStore::raw_parts_mut`].
pub struct RawPartsMut<'a> {
    pub vtx: &'a mut [EdgeIndex],
    pub data: &'a mut [u64],
    pub key: &'a mut [u64],
    pub edge: &'a mut [Vertex],
    pub weight: &'a mut [u64],
    pub vhd: &'a mut Vertex,
    pub vtl: &'a mut Vertex,
    pub vcount: &'a mut u32,
    pub free_hd: &'a mut Vertex,
}
