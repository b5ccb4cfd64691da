use thiserror::Error;

/// Errors shared by every algebraic operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    Permutation(String),
    #[error("differential does not square to zero: {0}")]
    NotComplex(String),
    #[error("map is not homogeneous of degree {degree}: entry ({row}, {col}) links degree {from} to {to}")]
    Inhomogeneous {
        degree: i64,
        row: usize,
        col: usize,
        from: i64,
        to: i64,
    },
    #[error("axiom '{axiom}' fails on {witness}")]
    Axiom { axiom: String, witness: String },
    #[error("not a chain map")]
    NotChainMap,
    #[error("not a morphism: {0}")]
    NotMorphism(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
