use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no recurrence found for orders {orders:?}")]
    NotFound { orders: Vec<usize> },

    #[error("unsupported potential: {0}")]
    IncompatiblePotential(String),
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }
}
