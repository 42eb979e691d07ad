use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or vertex id lies outside the accepted range.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("graph is disconnected: vertex {unreached} is unreachable from vertex {from}")]
    Disconnected { from: usize, unreached: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An exact search gave up before finishing; the answer is unknown, not wrong.
    #[error("search budget exceeded after examining {examined} subsets")]
    BudgetExceeded { examined: u64 },

    /// Two independent solvers returned different optima for the same instance.
    #[error("oracle disagreement on {what}: {left_name} = {left}, {right_name} = {right}")]
    OracleDisagreement {
        what: String,
        left_name: &'static str,
        left: usize,
        right_name: &'static str,
        right: usize,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
