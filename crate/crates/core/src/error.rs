use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pattern element is empty")]
    EmptyElement,

    #[error("pattern has no elements")]
    EmptyPattern,

    #[error("data sequence {0:?} has no transactions")]
    EmptySequence(String),

    #[error("duplicate sequence id {0:?}")]
    DuplicateSequence(String),

    #[error("database is empty")]
    EmptyDatabase,

    #[error("{name} must be in {range}, got {value}")]
    InvalidThreshold {
        name: &'static str,
        range: &'static str,
        value: f64,
    },

    #[error("invalid constraints: {0}")]
    InvalidConstraints(String),

    #[error("candidate input mixes itemset sizes {0} and {1}")]
    MixedSizes(usize, usize),

    #[error("support of subset {0} is missing")]
    MissingSubsetSupport(String),

    #[error("batch must hold {expected} sequences, got {got}")]
    BadBatchSize { expected: String, got: usize },

    #[error("stream already flushed a partial batch")]
    StreamFinished,

    #[error("alphabet has {size} items, oracle cap is {cap}")]
    AlphabetTooLarge { size: usize, cap: usize },

    #[error("instance too large for exhaustive search: {0}")]
    InstanceTooLarge(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("line {line}: time {value:?} is not an integer")]
    NonIntegerTime { line: usize, value: String },

    #[error("duplicate record for year {year}, subject {subject}")]
    DuplicateKey { year: i32, subject: String },

    #[error("line {line}: pass percentage {value} outside [0, 100]")]
    OutOfRange { line: usize, value: String },

    #[error("subject {0} needs at least two years of history")]
    InsufficientHistory(String),

    #[error("invalid band scheme: {0}")]
    InvalidBands(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
