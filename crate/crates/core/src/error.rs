use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("order {order} out of range 1..={max}")]
    RankOutOfRange { order: usize, max: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("leading block is singular")]
    SingularLeadingBlock,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("pair (A, c) is not observable: rank of observability matrix is {rank} < {n}")]
    NotObservable { rank: usize, n: usize },
    #[error("bad index tuple: {0}")]
    BadIndices(String),
    #[error("eigenvalue computation failed: {0}")]
    EigenSolveFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}
