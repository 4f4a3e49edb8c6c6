use crate::sample::LabelVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A point does not belong to the hypothesis class's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The oracle itself failed (e.g. the simplex hit its pivot cap).
    /// Distinct from "no zero-loss hypothesis exists".
    #[error("oracle failure: {0}")]
    Oracle(String),

    /// An oracle failure raised while checking one labeling of a point set.
    #[error("oracle failed on labeling {labeling}: {source}")]
    OracleAt {
        labeling: LabelVector,
        #[source]
        source: Box<Error>,
    },

    /// Estimation stopped on an error; the completed per-d rows are kept.
    #[error("estimation aborted at d = {d}: {source}")]
    EstimationAborted {
        d: usize,
        completed: Vec<crate::estimator::DRecord>,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
