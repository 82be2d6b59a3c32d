use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("permutation has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("subgroup count exceeds the cap of {cap}")]
    SubgroupCapExceeded { cap: usize },
    #[error("isomorphism search exceeds the cap of {cap}")]
    SearchCapExceeded { cap: usize },
    #[error("subgroup does not belong to this group")]
    ForeignSubgroup,
    #[error("subgroups belong to different groups")]
    ParentMismatch,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not contained in the expected overgroup")]
    NotContained,
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("unknown group class `{0}`")]
    UnknownClass(String),
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
}

impl GroupError {
    /// True for the errors that signal a configured size limit was hit.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            GroupError::OrderCapExceeded { .. }
                | GroupError::SubgroupCapExceeded { .. }
                | GroupError::SearchCapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, GroupError>;
