use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("universe size {0} is outside the supported range 1..=128")]
    UniverseSize(usize),

    #[error("element {element} is outside [{n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },

    #[error("compression index ({i}, {j}) is invalid for n = {n}")]
    BadIndex { i: usize, j: usize, n: usize },

    #[error("family is not uniform")]
    NonUniform,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("guard exceeded: {what} is {size}, limit {limit}")]
    Guard {
        what: String,
        size: u128,
        limit: u128,
    },

    #[error("grid: {0}")]
    Grid(String),
}
