use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    Alphabet(String),
    #[error("symbol {symbol:?} is not in the alphabet")]
    ForeignSymbol { symbol: char },
    #[error("expected {expected} tape(s), got {found}")]
    Arity { expected: usize, found: usize },
    #[error("operands use different alphabets")]
    AlphabetMismatch,
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("unknown tape {0:?}")]
    UnknownTape(String),
    #[error("ill-formed padding on track {track}, column {column}")]
    Padding { track: usize, column: usize },
    #[error("machine is not one-way")]
    NotOneWay,
    #[error("machine is not deterministic")]
    NotDeterministic,
    #[error("machine is not synchronous: {0}")]
    NotSynchronous(String),
    #[error("invalid machine: {0}")]
    Invalid(String),
    #[error("bound exceeded: {0}")]
    Bound(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownFixture(String),
    #[error("bad parameter: {0}")]
    Param(String),
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
