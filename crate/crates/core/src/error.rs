use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An enumeration or representation bound was exceeded.
    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity { what: String, needed: u128, limit: u128 },

    #[error("invalid value: {0}")]
    Validation(String),

    /// Options elements over different tag sets were combined without transport.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),

    /// A precondition that requires a law to hold was not met.
    #[error("law violated: {law} ({subject})")]
    LawViolation { subject: String, law: String },

    #[error("no model: the formalism cannot reason about the given constraints")]
    NoModel,

    #[error("selection contract violated: {0}")]
    Contract(String),

    #[error("cannot lift model: {0}")]
    Lift(String),

    #[error("unknown formalism `{0}`")]
    UnknownFormalism(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("properties element is inconsistent")]
    Inconsistent,

    #[error("enumeration budget exceeded: {needed} systems, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, needed: u128, limit: u128) -> Self {
        Error::Capacity {
            what: what.into(),
            needed,
            limit,
        }
    }
}
