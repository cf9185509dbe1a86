use thiserror::Error;

/// Everything that can go wrong in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2 <= p < 2^31")]
    NotPrime(u64),

    #[error("operands live in different rings")]
    AmbientMismatch,

    #[error("exponent overflow: {0}")]
    Overflow(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },

    #[error("generator {index} vanishes modulo {prime}")]
    VanishingGenerator { index: usize, prime: u64 },

    #[error("prime {prime} is bad for this ideal (coefficients have prime factors up to {bound})")]
    BadPrime { prime: u64, bound: u64 },

    #[error("resource budget exceeded: {what} (limit {limit})")]
    Resource { what: &'static str, limit: usize },

    #[error("the ideal is not proper")]
    ImproperIdeal,

    #[error("the ideal is zero")]
    ZeroIdeal,

    #[error("the ideal is not contained in the maximal ideal")]
    NotInMaximalIdeal,

    #[error("height {height} exceeds the generator count {generators}")]
    DegenerateHeight { height: usize, generators: usize },

    #[error("the ring has no variables")]
    EmptyRing,

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
