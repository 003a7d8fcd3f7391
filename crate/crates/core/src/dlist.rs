//! Doubly-linked list of `(vertex, predecessor)` pairs over a [`GraphStore`].
//!
//! Node `n` holds its pair as `(key[n], data[n])`; edge slot 0 links to the
//! previous node and slot 1 to the next. `vhd` is the front, `vtl` the back.

use crate::error::{Error, Result};
use crate::store::{GraphStore, StoreConfig, Vertex, Violation};

const PREV: u32 = 0;
const NEXT: u32 = 1;

/// A `(vertex, predecessor)` pair.
pub type Pair = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDeque {
    store: GraphStore,
}

impl PairDeque {
    /// An empty deque holding at most `capacity` pairs.
    pub fn new(capacity: u64) -> Result<Self> {
        Ok(PairDeque {
            store: GraphStore::new(StoreConfig::new(capacity, 2)?),
        })
    }

    pub fn from_store(store: GraphStore) -> Result<Self> {
        if store.m_max() != 2 {
            return Err(Error::WrongShape {
                expected: 2,
                found: store.m_max(),
            });
        }
        Ok(PairDeque { store })
    }

    pub fn store(&self) -> &GraphStore {
        &self.store
    }

    #[doc(hidden)]
    pub fn store_mut(&mut self) -> &mut GraphStore {
        &mut self.store
    }

    pub fn len(&self) -> u32 {
        self.store.vcount()
    }

    pub fn is_empty(&self) -> bool {
        self.store.vcount() == 0
    }

    pub fn capacity(&self) -> u32 {
        self.store.n_max()
    }

    fn node(&mut self, v: Vertex, vpred: Vertex) -> Result<Vertex> {
        if v == 0 || vpred == 0 {
            return Err(Error::NullVertex);
        }
        match self.store.alloc_vertex(u64::from(v), u64::from(vpred)) {
            0 => Err(Error::StoreFull),
            n => Ok(n),
        }
    }

    fn pair_at(&self, n: Vertex) -> Pair {
        (self.store.raw_key(n) as Vertex, self.store.raw_data(n) as Vertex)
    }

    pub fn push_front(&mut self, v: Vertex, vpred: Vertex) -> Result<()> {
        let n = self.node(v, vpred)?;
        let old = self.store.vhd();
        if old == 0 {
            self.store.set_vtl(n)?;
        } else {
            self.store.raw_set_child(n, NEXT, old);
            self.store.raw_set_child(old, PREV, n);
        }
        self.store.set_vhd(n)
    }

    pub fn push_back(&mut self, v: Vertex, vpred: Vertex) -> Result<()> {
        let n = self.node(v, vpred)?;
        let old = self.store.vtl();
        if old == 0 {
            self.store.set_vhd(n)?;
        } else {
            self.store.raw_set_child(n, PREV, old);
            self.store.raw_set_child(old, NEXT, n);
        }
        self.store.set_vtl(n)
    }

    pub fn peek_front(&self) -> Option<Pair> {
        match self.store.vhd() {
            0 => None,
            n => Some(self.pair_at(n)),
        }
    }

    pub fn peek_back(&self) -> Option<Pair> {
        match self.store.vtl() {
            0 => None,
            n => Some(self.pair_at(n)),
        }
    }

    pub fn pop_front(&mut self) -> Option<Pair> {
        let n = self.store.vhd();
        if n == 0 {
            return None;
        }
        let pair = self.pair_at(n);
        let next = self.store.raw_child(n, NEXT);
        if next == 0 {
            self.store.set_vtl(0).ok()?;
        } else {
            self.store.raw_set_child(next, PREV, 0);
        }
        self.store.set_vhd(next).ok()?;
        self.store.free_vertex(n).ok()?;
        Some(pair)
    }

    pub fn pop_back(&mut self) -> Option<Pair> {
        let n = self.store.vtl();
        if n == 0 {
            return None;
        }
        let pair = self.pair_at(n);
        let prev = self.store.raw_child(n, PREV);
        if prev == 0 {
            self.store.set_vhd(0).ok()?;
        } else {
            self.store.raw_set_child(prev, NEXT, 0);
        }
        self.store.set_vtl(prev).ok()?;
        self.store.free_vertex(n).ok()?;
        Some(pair)
    }

    /// Pairs from front to back.
    pub fn to_vec(&self) -> Vec<Pair> {
        let mut out = Vec::with_capacity(self.len() as usize);
        let mut n = self.store.vhd();
        while n != 0 && out.len() < self.len() as usize {
            out.push(self.pair_at(n));
            n = self.store.raw_child(n, NEXT);
        }
        out
    }

    /// Store audit plus link structure.
    pub fn audit(&self) -> Vec<Violation> {
        let mut out = self.store.audit();
        let s = &self.store;
        if s.m_max() != 2 {
            out.push(Violation::Structure(format!("m_max = {}, expected 2", s.m_max())));
            return out;
        }
        let (hd, tl, count) = (s.vhd(), s.vtl(), s.vcount());
        if (hd == 0) != (count == 0) || (tl == 0) != (count == 0) {
            out.push(Violation::Structure(format!(
                "vhd = {hd}, vtl = {tl} inconsistent with vcount = {count}"
            )));
            return out;
        }
        if count == 0 {
            return out;
        }
        if s.raw_child(hd, PREV) != 0 {
            out.push(Violation::Structure(format!("front {hd} has a prev link")));
        }
        if s.raw_child(tl, NEXT) != 0 {
            out.push(Violation::Structure(format!("back {tl} has a next link")));
        }
        let mut n = hd;
        let mut prev = 0;
        let mut steps = 0u32;
        while n != 0 && steps <= count {
            if !s.is_live(n) {
                out.push(Violation::Structure(format!("link to non-live node {n}")));
                return out;
            }
            if s.raw_child(n, PREV) != prev {
                out.push(Violation::Structure(format!("node {n} prev link != {prev}")));
            }
            let (v, p) = self.pair_at(n);
            if v == 0 || p == 0 {
                out.push(Violation::Structure(format!("node {n} holds a null pair")));
            }
            steps += 1;
            prev = n;
            n = s.raw_child(n, NEXT);
        }
        if steps != count || prev != tl {
            out.push(Violation::Structure(format!(
                "forward chain has {steps} nodes ending at {prev}; vcount {count}, vtl {tl}"
            )));
        }
        out
    }
}

/// LIFO view of a [`PairDeque`].
#[derive(Debug, Clone)]
pub struct Stack(PairDeque);

impl Stack {
    pub fn new(capacity: u64) -> Result<Self> {
        PairDeque::new(capacity).map(Stack)
    }

    pub fn push(&mut self, v: Vertex, vpred: Vertex) -> Result<()> {
        self.0.push_front(v, vpred)
    }

    pub fn pop(&mut self) -> Option<Pair> {
        self.0.pop_front()
    }

    pub fn peek(&self) -> Option<Pair> {
        self.0.peek_front()
    }

    pub fn len(&self) -> u32 {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// FIFO view of a [`PairDeque`].
#[derive(Debug, Clone)]
pub struct Queue(PairDeque);

impl Queue {
    pub fn new(capacity: u64) -> Result<Self> {
        PairDeque::new(capacity).map(Queue)
    }

    pub fn enqueue(&mut self, v: Vertex, vpred: Vertex) -> Result<()> {
        self.0.push_back(v, vpred)
    }

    pub fn dequeue(&mut self) -> Option<Pair> {
        self.0.pop_front()
    }

    pub fn peek(&self) -> Option<Pair> {
        self.0.peek_front()
    }

    pub fn len(&self) -> u32 {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
