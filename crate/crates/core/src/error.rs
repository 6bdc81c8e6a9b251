use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{what} = {value} exceeds the guard of {limit}")]
    Guard { what: &'static str, value: u128, limit: u128 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("rank {rank} is below the requested {requested}")]
    RankDeficient { rank: usize, requested: usize },
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("graph files cannot be resolved here: {0}")]
    FileUnsupported(String),
    #[error("{0}")]
    Unsupported(String),
}
