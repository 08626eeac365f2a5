use thiserror::Error;

/// Failures raised by the library. Each variant names the invariant that
/// did not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("surface parameter d must be a positive integer, got {0}")]
    InvalidSurface(String),
    #[error("the zero vector has no primitive decomposition")]
    ZeroVector,
    #[error("class {0} is not spherical (square {1}, expected -2)")]
    NotSpherical(String, String),
    #[error("vectors are proportional; they do not span a rank-two lattice")]
    NotRankTwo,
    #[error("lattice is not hyperbolic (Gram determinant {0} >= 0)")]
    NotHyperbolic(String),
    #[error("Gram matrix is degenerate")]
    DegenerateLattice,
    #[error("class {0} does not lie in the wall lattice")]
    VectorNotInLattice(String),
    #[error("Re Z(u)/Z(v) vanishes at the reference point of the wall")]
    AmbiguousSign,
    #[error("search bound {0} exceeds the allowed maximum {1}")]
    BoundTooLarge(u64, u64),
    #[error("{0} is not of O'Grady type")]
    NotOGradyType(String),
    #[error("wall lattice has no representative curve in the (s,t) slice")]
    Unrepresented,
    #[error("wall curve does not belong to the given lattice")]
    WallMismatch,
    #[error("class {0} is proportional to v; v-perp and s-perp do not meet transversally")]
    NotTransverse(String),
    #[error("{0} cannot be twisted to the normal form (2,0,-2)")]
    UnsupportedVector(String),
    #[error("central charge of v vanishes at the given slice point")]
    CentralChargeVanishes,
    #[error("slice point must have t > 0")]
    InvalidSlicePoint,
    #[error("window is empty (need u_min < u_max and t_max > 0)")]
    WindowEmpty,
    #[error("classification invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, used as a stable diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidSurface(_) => "InvalidSurface",
            Error::ZeroVector => "ZeroVector",
            Error::NotSpherical(..) => "NotSpherical",
            Error::NotRankTwo => "NotRankTwo",
            Error::NotHyperbolic(_) => "NotHyperbolic",
            Error::DegenerateLattice => "DegenerateLattice",
            Error::VectorNotInLattice(_) => "VectorNotInLattice",
            Error::AmbiguousSign => "AmbiguousSign",
            Error::BoundTooLarge(..) => "BoundTooLarge",
            Error::NotOGradyType(_) => "NotOGradyType",
            Error::Unrepresented => "Unrepresented",
            Error::WallMismatch => "WallMismatch",
            Error::NotTransverse(_) => "NotTransverse",
            Error::UnsupportedVector(_) => "UnsupportedVector",
            Error::CentralChargeVanishes => "CentralChargeVanishes",
            Error::InvalidSlicePoint => "InvalidSlicePoint",
            Error::WindowEmpty => "WindowEmpty",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}
