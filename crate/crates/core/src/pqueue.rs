use crate::error::{Error, Result};
use crate::store::Vertex;

/// Heap entry. Ordered by priority, then by vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Entry {
    pub priority: u64,
    pub vertex: Vertex,
}

/// Binary min-heap over a slot array fixed at construction.
#[derive(Debug, Clone)]
pub struct BoundedHeap {
    entries: Box<[Entry]>,
    len: usize,
}

impl BoundedHeap {
    pub fn new(cap: usize) -> Self {
        assert!(cap >= 1, "heap capacity must be positive");
        BoundedHeap {
            entries: vec![Entry::default(); cap].into_boxed_slice(),
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn capacity(&self) -> usize {
        self.entries.len()
    }

    pub fn clear(&mut self) {
        self.len = 0;
    }

    pub fn push(&mut self, priority: u64, vertex: Vertex) -> Result<()> {
        if self.len == self.entries.len() {
            return Err(Error::HeapOverflow {
                cap: self.entries.len(),
            });
        }
        let mut i = self.len;
        self.entries[i] = Entry { priority, vertex };
        self.len += 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.entries[parent] <= self.entries[i] {
                break;
            }
            self.entries.swap(parent, i);
            i = parent;
        }
        Ok(())
    }

    pub fn peek_min(&self) -> Option<Entry> {
        (self.len > 0).then(|| self.entries[0])
    }

    pub fn pop_min(&mut self) -> Option<Entry> {
        if self.len == 0 {
            return None;
        }
        let top = self.entries[0];
        self.len -= 1;
        self.entries[0] = self.entries[self.len];
        let mut i = 0;
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut m = i;
            if l < self.len && self.entries[l] < self.entries[m] {
                m = l;
            }
            if r < self.len && self.entries[r] < self.entries[m] {
                m = r;
            }
            if m == i {
                break;
            }
            self.entries.swap(i, m);
            i = m;
        }
        Some(top)
    }

    /// Whether every live entry is <= its children.
    pub fn is_heap(&self) -> bool {
        (1..self.len).all(|i| self.entries[(i - 1) / 2] <= self.entries[i])
    }
}
