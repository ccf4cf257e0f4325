use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative depth h = {0}")]
    NegativeDepth(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("strip depth chi = {chi} exceeds the upper bound {chi_bar}; no positive depth solves the jump relations")]
    EmptyFeasible { chi: f64, chi_bar: f64 },

    #[error("no entropic connection exists for h0 = {h0}, u0 = {u0}")]
    NoEntropicConnection { h0: f64, u0: f64 },

    #[error("unsupported case: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
