use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pair #{index}: vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        n: usize,
    },

    #[error("pair #{index}: self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },

    #[error("{{{s},{t}}} is not an edge of the graph")]
    NotAnEdge { s: usize, t: usize },

    #[error("graph6: invalid byte {byte:#04x} at offset {offset}")]
    Graph6Malformed { offset: usize, byte: u8 },

    #[error("graph6: expected {expected} data bytes, found {found}")]
    Graph6Truncated { expected: usize, found: usize },

    #[error("Pruefer code position {index}: label {label} is outside 1..={n}")]
    PrueferLabel {
        index: usize,
        label: usize,
        n: usize,
    },

    #[error("invalid family parameters: {0}")]
    Family(String),

    #[error("arrangement has {got} positions but the graph has {expected} vertices")]
    ArrangementSize { expected: usize, got: usize },

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("not an element of Q: {0}")]
    NotIndependentPair(String),

    #[error("brute-force classification refused: |Q| = {q} gives |Q|^2 = {q_squared} products, limit is |Q| <= {limit}")]
    BudgetExceeded { q: u64, q_squared: u128, limit: u64 },

    #[error("exhaustive enumeration refused: n = {n} exceeds the limit {limit} ({n}! = {factorial} arrangements)")]
    ExhaustiveLimit {
        n: usize,
        limit: usize,
        factorial: u128,
    },

    #[error("variance is zero, C is constant over all arrangements")]
    ZeroVariance,

    #[error("invalid layout constants: {0}")]
    InvalidConstants(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
