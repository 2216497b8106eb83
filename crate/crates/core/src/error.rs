use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("image is not contained in the kernel (composite is nonzero)")]
    ImageNotInKernel,

    #[error("vector is not contained in the lattice")]
    NotInLattice,

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid simplicial complex: {0}")]
    InvalidSpace(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("resolution too short: degree {requested} needs length > {requested}, have {length}")]
    ResolutionTooShort { requested: usize, length: usize },

    #[error("resource limit exceeded: {what} needs rank {size}, limit is {limit}")]
    ResourceLimit { what: String, size: usize, limit: usize },

    #[error("irregular action: {0}")]
    IrregularAction(String),

    #[error("degree {k} is beyond the certified range of an {n_max}-skeleton")]
    DegreeBeyondSkeleton { k: usize, n_max: usize },

    #[error("bisimplex is not covered: {0}")]
    NotCovered(String),
}
