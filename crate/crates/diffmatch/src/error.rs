use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Bad scenario or file configuration (dimensions, quotas, value ranges).
    #[error("configuration error: {0}")]
    Config(String),

    /// Config-file parse or validation failure, with 1-based line number.
    #[error("config parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An operation was called outside its contract (e.g. infeasible matching).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Channel submatrix is rank deficient or too ill-conditioned for ZF.
    /// Callers are expected to resample the channel.
    #[error("degenerate channel: {0}")]
    DegenerateChannel(String),

    /// Non-finite values encountered during training.
    #[error("training error: {0}")]
    Training(String),

    /// Search-space guard refused an enumeration.
    #[error("search space too large: {0}")]
    SearchSpace(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
