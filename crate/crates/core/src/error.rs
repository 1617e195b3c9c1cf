use crate::bigraph::Part;
use crate::constructions::PropertyReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex set {0} must be nonempty")]
    EmptyVertexSet(&'static str),

    #[error("vertex {part}{index} out of range (n = {n})")]
    VertexOutOfRange { part: Part, index: usize, n: usize },

    #[error("vertex set mixes U and V vertices")]
    MixedParts,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no Sidon set of size {p} in Z_{m}")]
    NoSidonSet { m: usize, p: usize },

    #[error("degree floor {floor} violated: best achievable minimum degree is {achieved}")]
    FloorViolation { floor: usize, achieved: usize },

    #[error("{family}: {what} is {actual}, expected {expected}")]
    IdentityViolation {
        family: &'static str,
        what: String,
        expected: i64,
        actual: i64,
    },

    #[error("capacity: need {needed} private neighbours, only {available} available")]
    Capacity { needed: usize, available: usize },

    #[error("random construction failed its property checks after {attempts} attempts")]
    RetryExhausted {
        attempts: usize,
        last: Box<PropertyReport>,
    },

    #[error("malformed block partition: {0}")]
    MalformedBlocks(String),

    #[error("claim item {item} violated: {detail}")]
    ClaimViolation { item: u8, detail: String },

    #[error("movable-vertex invariant violated: {0}")]
    MovableInvariant(String),

    #[error("balancing failed: {0}")]
    BalanceFailure(String),

    #[error("absorbing exceptional vertices failed: {0}")]
    AbsorptionFailure(String),

    #[error("tiling a dense block failed: {0}")]
    BlockTiling(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
