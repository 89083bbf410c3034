use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("element cap exceeded: closure reached {reached} elements (cap {cap})")]
    CapExceeded { reached: usize, cap: usize },

    #[error("generator degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("image array of length {degree} is not a bijection")]
    NotBijective { degree: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("action image for element {index} is not an automorphism")]
    ActionNotAutomorphism { index: usize },

    #[error("action is not a homomorphism into the automorphism group")]
    ActionNotHomomorphism,

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: usize },

    #[error("group is not solvable")]
    NotSolvable,

    #[error("subgroup is not abelian")]
    NotAbelian,

    #[error("subgroup is not a 2-group")]
    Not2Group,

    #[error("direct factor must have odd order, got {order}")]
    EvenOrderH { order: usize },

    #[error("acting group must have odd order, got {order}")]
    EvenOrderY { order: usize },

    #[error("no normal subgroup of index 3 found (group order {order})")]
    NoIndex3NormalSubgroup { order: usize },

    #[error("invalid complement order {got}: expected 3 or 15")]
    InvalidAOrder { got: usize },

    #[error("reference data `{name}` unreadable: {detail}")]
    ReferenceDataMissing { name: String, detail: String },

    #[error("reference `{name}` failed validation check: {check}")]
    ValidationFailed { name: String, check: String },

    #[error("malformed group file: {0}")]
    MalformedFile(String),

    #[error("unsupported action: {0}")]
    UnsupportedAction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
