//! Fixed-capacity graphs and algebraic datatypes laid out in flat arrays.
//!
//! Everything is built on [`GraphStore`]: a bounded vertex array, per-vertex
//! key and data arrays, and a per-vertex block of edge slots, with index 0
//! of every array reserved as null. A binary search tree ([`Bst`]) and a
//! pair deque ([`PairDeque`]) are disciplines over that store. The spanning
//! search and Dijkstra in [`algos`] use them, plus a [`BoundedHeap`], and
//! claim all their memory before the search starts.
//!
//! [`oracle`] holds unbounded reference models and the differential harness
//! that checks each structure against its model.

pub mod algos;
pub mod bst;
pub mod dlist;
mod error;
pub mod oracle;
pub mod pqueue;
pub mod store;

pub use algos::{all_pairs, dijkstra, span_from, DistResult, Mode, SpanResult, SpanStats, StopReason};
pub use bst::{Bst, Probe};
pub use dlist::{Pair, PairDeque, Queue, Stack};
pub use error::{Error, Result};
pub use pqueue::{BoundedHeap, Entry};
pub use store::{Capacities, GraphStore, StoreConfig, Vertex, Violation};
