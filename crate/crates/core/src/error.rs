use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic element is not rational (order {order})")]
    Irrational { order: u64 },

    #[error("table lookup ({n}, {k}) is outside the computed table")]
    OutOfTable { n: u64, k: u64 },

    #[error("enumeration of partitions of {n} refused (limit {limit})")]
    TooLarge { n: u64, limit: u64 },

    #[error("linear system is singular (rank {rank} < {size})")]
    SingularSystem { rank: usize, size: usize },

    #[error("{method} produced a non-integer value {value} at n={n}, k={k}")]
    NonIntegerResult {
        method: &'static str,
        n: u64,
        k: u64,
        value: String,
    },

    #[error("no catalogued convention matches the oracle:\n{table}")]
    ConventionUnresolved { table: String },

    #[error("window N={got} too small, need at least {needed}")]
    WindowTooSmall { needed: u64, got: u64 },

    #[error("{0}")]
    Domain(String),
}
