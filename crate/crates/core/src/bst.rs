//! Unbalanced binary search tree over a [`GraphStore`] with two edge slots
//! per vertex: slot 0 is the left child, slot 1 the right child, and `vhd`
//! is the root. Keys and values are positive; 0 means null.

use crate::error::{Error, Result};
use crate::store::{GraphStore, StoreConfig, Vertex, Violation};

const LEFT: u32 = 0;
const RIGHT: u32 = 1;

/// Outcome of a count-bounded descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    Found(u64),
    Absent,
    /// The step budget (seeded with `vcount`) ran out before the descent
    /// reached a null child or the key.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bst {
    store: GraphStore,
}

impl Bst {
    /// An empty tree that can hold up to `capacity` keys.
    pub fn new(capacity: u64) -> Result<Self> {
        Ok(Bst {
            store: GraphStore::new(StoreConfig::new(capacity, 2)?),
        })
    }

    /// Adopts an existing store. The store must have two slots per vertex;
    /// its contents are not checked (see [`Bst::audit`]).
    pub fn from_store(store: GraphStore) -> Result<Self> {
        if store.m_max() != 2 {
            return Err(Error::WrongShape {
                expected: 2,
                found: store.m_max(),
            });
        }
        Ok(Bst { store })
    }

    pub fn store(&self) -> &GraphStore {
        &self.store
    }

    pub fn into_store(self) -> GraphStore {
        self.store
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

    pub fn root(&self) -> Vertex {
        self.store.vhd()
    }

    /// Descends from the root with a step budget of `vcount`, returning the
    /// vertex holding `key`. Every malformed state (null key, out-of-range
    /// vertex, empty tree, null key at a vertex) ends the descent as absent.
    fn descend(&self, key: u64) -> (Option<Vertex>, bool) {
        let s = &self.store;
        let mut count = s.vcount();
        let mut v = s.vhd();
        loop {
            if count == 0 {
                return (None, v != 0 && key != 0);
            }
            if key == 0 || v == 0 || v > s.n_max() || s.vcount() == 0 {
                return (None, false);
            }
            let k = s.raw_key(v);
            if k == 0 {
                return (None, false);
            }
            if key < k {
                v = s.raw_child(v, LEFT);
            } else if key > k {
                v = s.raw_child(v, RIGHT);
            } else {
                return (Some(v), false);
            }
            count -= 1;
        }
    }

    /// Count-bounded lookup reporting why a miss happened.
    pub fn probe(&self, key: u64) -> Probe {
        match self.descend(key) {
            (Some(v), _) => Probe::Found(self.store.raw_data(v)),
            (None, true) => Probe::Exhausted,
            (None, false) => Probe::Absent,
        }
    }

    /// Value stored at `key`, or 0 when absent.
    pub fn get(&self, key: u64) -> u64 {
        match self.descend(key) {
            (Some(v), _) => self.store.raw_data(v),
            _ => 0,
        }
    }

    pub fn exists(&self, key: u64) -> bool {
        self.descend(key).0.is_some()
    }

    /// Maps `key` to `val`, overwriting an existing value in place. A new key
    /// on a full store returns [`Error::StoreFull`] and leaves the tree as it was.
    pub fn insert(&mut self, key: u64, val: u64) -> Result<()> {
        if key == 0 {
            return Err(Error::ZeroKey);
        }
        if val == 0 {
            return Err(Error::ZeroValue);
        }
        let mut parent = 0;
        let mut slot = LEFT;
        let mut v = self.store.vhd();
        while v != 0 {
            let k = self.store.raw_key(v);
            if key == k {
                self.store.set_data(v, val)?;
                return Ok(());
            }
            parent = v;
            slot = if key < k { LEFT } else { RIGHT };
            v = self.store.raw_child(v, slot);
        }
        let fresh = self.store.alloc_vertex(key, val);
        if fresh == 0 {
            return Err(Error::StoreFull);
        }
        if parent == 0 {
            self.store.set_vhd(fresh)?;
        } else {
            self.store.raw_set_child(parent, slot, fresh);
        }
        Ok(())
    }

    /// Records `v` as reached from `vpred`.
    pub fn mark(&mut self, v: Vertex, vpred: Vertex) -> Result<()> {
        self.insert(u64::from(v), u64::from(vpred))
    }

    /// Removes `key`. Returns whether it was present.
    pub fn delete(&mut self, key: u64) -> Result<bool> {
        let mut parent = 0;
        let mut slot = LEFT;
        let mut v = self.store.vhd();
        while v != 0 {
            let k = self.store.raw_key(v);
            if key == k {
                break;
            }
            parent = v;
            slot = if key < k { LEFT } else { RIGHT };
            v = self.store.raw_child(v, slot);
        }
        if v == 0 || key == 0 {
            return Ok(false);
        }

        let left = self.store.raw_child(v, LEFT);
        let right = self.store.raw_child(v, RIGHT);
        if left != 0 && right != 0 {
            // replace by the in-order successor, then unlink the successor
            let mut succ_parent = v;
            let mut succ = right;
            loop {
                let l = self.store.raw_child(succ, LEFT);
                if l == 0 {
                    break;
                }
                succ_parent = succ;
                succ = l;
            }
            let succ_right = self.store.raw_child(succ, RIGHT);
            let (sk, sd) = (self.store.raw_key(succ), self.store.raw_data(succ));
            self.store.set_key(v, sk)?;
            self.store.set_data(v, sd)?;
            let s_slot = if succ_parent == v { RIGHT } else { LEFT };
            self.store.raw_set_child(succ_parent, s_slot, succ_right);
            self.store.free_vertex(succ)?;
        } else {
            let child = if left != 0 { left } else { right };
            if parent == 0 {
                self.store.set_vhd(child)?;
            } else {
                self.store.raw_set_child(parent, slot, child);
            }
            self.store.free_vertex(v)?;
        }
        Ok(true)
    }

    /// `(key, value)` pairs in ascending key order.
    pub fn inorder(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::with_capacity(self.len() as usize);
        let mut stack = Vec::new();
        let mut v = self.store.vhd();
        let limit = self.len() as usize;
        while (v != 0 || !stack.is_empty()) && out.len() < limit {
            while v != 0 && stack.len() <= limit {
                stack.push(v);
                v = self.store.raw_child(v, LEFT);
            }
            let Some(top) = stack.pop() else { break };
            out.push((self.store.raw_key(top), self.store.raw_data(top)));
            v = self.store.raw_child(top, RIGHT);
        }
        out
    }

    /// Store audit plus tree shape: the vertices reachable from the root are
    /// exactly the live ones, none is reached twice, keys are positive and
    /// in search order.
    pub fn audit(&self) -> Vec<Violation> {
        let mut out = self.store.audit();
        let s = &self.store;
        if s.m_max() != 2 {
            out.push(Violation::Structure(format!("m_max = {}, expected 2", s.m_max())));
            return out;
        }
        let n = s.n_max() as usize;
        let mut seen = vec![false; n + 1];
        let mut reached = 0u32;
        // (vertex, exclusive lower bound, exclusive upper bound)
        let mut stack: Vec<(Vertex, u64, Option<u64>)> = Vec::new();
        if s.vhd() != 0 {
            stack.push((s.vhd(), 0, None));
        }
        while let Some((v, lo, hi)) = stack.pop() {
            if !s.is_live(v) {
                out.push(Violation::Structure(format!("child link to non-live vertex {v}")));
                continue;
            }
            if seen[v as usize] {
                out.push(Violation::Structure(format!("vertex {v} reached twice")));
                continue;
            }
            seen[v as usize] = true;
            reached += 1;
            let k = s.raw_key(v);
            if k == 0 {
                out.push(Violation::Structure(format!("vertex {v} has null key")));
            }
            if k <= lo || hi.is_some_and(|h| k >= h) {
                out.push(Violation::Structure(format!("vertex {v} key {k} breaks search order")));
            }
            let (l, r) = (s.raw_child(v, LEFT), s.raw_child(v, RIGHT));
            if r != 0 {
                stack.push((r, k, hi));
            }
            if l != 0 {
                stack.push((l, lo, Some(k)));
            }
        }
        if reached != s.vcount() {
            out.push(Violation::Structure(format!(
                "{reached} vertices reachable from root, {} live",
                s.vcount()
            )));
        }
        out
    }
}
