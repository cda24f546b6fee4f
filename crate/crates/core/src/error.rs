use thiserror::Error;

use crate::quiver::{IndecId, Shape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid dimension vector: {0}")]
    InvalidDimVector(String),

    #[error("indecomposable {id:?} does not belong to shape {shape}")]
    ForeignId { id: IndecId, shape: Shape },

    #[error("the zero object I(0,inf) cannot be a summand")]
    FakeSummand,

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: Shape, right: Shape },

    #[error("dimension vectors differ: {left} vs {right}")]
    DimMismatch { left: String, right: String },

    #[error("not a rank vector of any object: {0}")]
    NotARankVector(String),

    #[error("region {kind} is not minimal admissible for the object")]
    NotMinimalAdmissible { kind: String },

    #[error("operation requires a type D shape")]
    RequiresTypeD,

    #[error("objects are not rank comparable")]
    NotComparable,

    #[error("no dominant move found from {from} towards {to}")]
    NoDominantMove { from: String, to: String },

    #[error("relation is not antisymmetric (cycle through nodes {0} and {1})")]
    Cyclic(usize, usize),

    #[error("unsupported curve: perturbation would use e_inf for region {0}")]
    UnsupportedCurve(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
