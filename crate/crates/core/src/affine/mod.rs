//! Affine relations over Q(x): the semantic universe of circuit diagrams.

pub mod linalg;
mod relation;

pub use linalg::Vector;
pub use relation::{
    canonicalize, compose, contains, converse, from_constraints, functionality, tensor, unit,
    zeros, AffineError, AffineRelation, Functionality,
};
