use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// A Künneth or Bockstein extension whose ends are both nonzero and for
    /// which no splitting stipulation was supplied.
    #[error(
        "ambiguous extension in {layer}: sub = {sub}, quotient = {quotient}; \
         pass a splitting stipulation (admissible: {})",
        .options.join(", ")
    )]
    Ambiguity { layer: String, sub: String, quotient: String, options: Vec<String> },

    #[error("construction failed: {identity} (witness: {witness})")]
    Construction { identity: String, witness: String },

    #[error("resource limit exceeded: {what} > {limit}")]
    Resource { what: String, limit: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
