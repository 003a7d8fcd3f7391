use crate::store::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid store configuration: n_max={n_max}, m_max={m_max} (both must be >= 1)")]
    InvalidConfig { n_max: u64, m_max: u64 },
    #[error("capacity overflow: n_max * m_max = {n_max} * {m_max} does not fit the edge index type")]
    CapacityOverflow { n_max: u64, m_max: u64 },
    #[error("vertex 0 is the null vertex")]
    NullVertex,
    #[error("vertex {0} is out of range or not live")]
    NotLive(Vertex),
    #[error("edge slot {slot} out of range (m_max = {m_max})")]
    SlotOutOfRange { slot: u32, m_max: u32 },
    #[error("edge target {target} is not 0 or a live vertex (n_max = {n_max})")]
    BadTarget { target: Vertex, n_max: u32 },
    #[error("key must be positive")]
    ZeroKey,
    #[error("value must be positive")]
    ZeroValue,
    #[error("store is full")]
    StoreFull,
    #[error("store has m_max = {found}, expected {expected}")]
    WrongShape { expected: u32, found: u32 },
    #[error("heap overflow: capacity {cap} exhausted")]
    HeapOverflow { cap: usize },
    #[error("edge {src}:{slot} has weight 0; shortest paths need weights >= 1")]
    ZeroWeight { src: Vertex, slot: u32 },
    #[error("store failed audit with {0} violation(s)")]
    Dirty(usize),
}
