use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The characteristic polynomial of a matrix does not split over its field.
    #[error("characteristic polynomial does not split: irreducible factor {factor}")]
    NonSplit { factor: String },

    /// The category has no Grothendieck group of type B (it is not abelian).
    #[error("category {category} is not abelian and has no type B group")]
    NoBGroup { category: String },

    /// A generator of the sublattice is not contained in the ambient lattice.
    #[error("generator {index} of the sublattice is not contained in the lattice")]
    Containment { index: usize },

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    /// Composition or comparison of incompatible values.
    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("malformed interval: {0}")]
    MalformedInterval(String),

    #[error("interleaving is not aligned with the modules: {0}")]
    GridMisalignment(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: face {face} of simplex {simplex} is missing")]
    FaceMissing {
        line: usize,
        simplex: String,
        face: String,
    },

    #[error(
        "line {line}: simplex {simplex} has value {value} below its face {face} ({face_value})"
    )]
    ValueInversion {
        line: usize,
        simplex: String,
        value: String,
        face: String,
        face_value: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
