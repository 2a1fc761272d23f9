use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A search would enumerate more states than its configured cap allows.
    #[error("search budget exceeded: {what} needs {needed} but the cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        cap: u64,
    },

    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The brute-force Steiner oracle found no subset up to `max_h` points.
    #[error("no feasible Steiner set with at most {max_h} points")]
    CapExceeded { max_h: usize },

    /// The reduction loop ran past its covering bound.
    #[error("reduction exceeded its iteration bound of {bound}")]
    IterationCapExceeded { bound: u64 },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }

    /// True for every error that signals a search cap rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::CapExceeded { .. }
                | Error::IterationCapExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
