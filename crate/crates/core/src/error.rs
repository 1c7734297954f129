use std::path::PathBuf;

/// Everything that can go wrong in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse root system spec {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid parameter for {family}: {reason}")]
    InvalidParameter { family: String, reason: String },

    #[error("reflection through the zero vector is undefined")]
    ZeroVector,

    #[error("{label} has no matrix model; count it with the closed-form path")]
    MatrixFree { label: String },

    #[error(
        "group of {label} has order {order}, above the budget of {budget} \
         (W(E8) at 696729600 elements is the known case out of reach)"
    )]
    BudgetExceeded { label: String, order: u128, budget: u128 },

    #[error("group of {label} has order {order}; enumerating it requires the heavy flag")]
    HeavyRequired { label: String, order: u128 },

    #[error("{label} has {roots} roots; at most 256 are supported by the group engine")]
    TooManyRoots { label: String, roots: usize },

    #[error("{what} is not a unit quaternion")]
    NonUnitQuaternion { what: &'static str },

    #[error("count overflows 128 bits: {0}")]
    Overflow(String),

    #[error("enumeration size n = {n} exceeds the limit {limit}")]
    EnumerationBudget { n: usize, limit: usize },

    #[error("malformed cache file {path}: {reason}")]
    CacheFormat { path: PathBuf, reason: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
