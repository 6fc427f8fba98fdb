use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into precondition failures (bad input, caps, meshes that
/// need refining) and invariant breaches, where two independent computations
/// of the same quantity disagreed.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("inadmissible Lie type {family}{rank}")]
    InadmissibleType { family: char, rank: usize },
    #[error("cannot parse Lie type `{0}`")]
    UnknownType(String),
    #[error("face index {0:?} is not a proper subset of the extended diagram")]
    ImproperFace(Vec<usize>),
    #[error("Weyl group needs {required} elements, cap is {cap}")]
    ElementCap { required: u128, cap: usize },
    #[error("Weyl group enumeration incomplete ({have} of {expected} elements)")]
    PartialEnumeration { have: usize, expected: u128 },
    #[error("alcove reduction did not terminate after {0} reflections")]
    ReductionCap(usize),
    #[error("point is outside the alcove: {0}")]
    OutsideAlcove(String),
    #[error("{0}")]
    Precondition(String),
    #[error("boundary maps do not compose to zero at degree {0}")]
    NotAComplex(usize),
    #[error("involution action is not regular: {0}; subdivide further")]
    IrregularAction(String),
    #[error("mesh too coarse: {0}")]
    RefineMesh(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
}

impl Error {
    /// True when the error reports a failed cross-check rather than bad input.
    pub fn is_invariant_breach(&self) -> bool {
        matches!(self, Error::InvariantBreach(_) | Error::NotAComplex(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
