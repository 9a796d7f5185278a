use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime greater than 2")]
    NotPrime(u64),

    #[error("invalid residue vector: {0}")]
    InvalidResidue(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate lattice basis (zero determinant)")]
    DegenerateBasis,

    #[error("poset has {size} elements, brute force is limited to {limit}")]
    PosetTooLarge { size: usize, limit: usize },

    #[error("grid of {size} cells exceeds the limit of {limit}")]
    GridTooLarge { size: u64, limit: u64 },

    #[error("no multiple of the residue vector lies in the {0} region")]
    NoInteriorPoint(&'static str),

    #[error("facet does not meet the edge from the origin to the characteristic vertex")]
    FacetMissesEdge,

    /// A computed certificate failed its own check. `tag` names the
    /// property that broke.
    #[error("[{tag}] {detail}")]
    Invariant { tag: &'static str, detail: String },
}

impl Error {
    pub(crate) fn invariant(tag: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            tag,
            detail: detail.into(),
        }
    }

    /// True for failures of a computed certificate, as opposed to bad input.
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant { .. })
    }
}
