//! Tensor calculus on a single coordinate chart and on its tangent bundle.

mod calculus;
mod chart;
mod connection;
mod tensor;

pub use calculus::{
    coboundary_1form, coboundary_2form, exterior_derivative_1form, exterior_derivative_2form,
    lie_bracket, lie_derivative, nijenhuis, nijenhuis_on,
};
pub use chart::{determinant as determinant_of, ChartedManifold};
pub use connection::{apply_curvature, apply_pair, christoffel, Connection};
pub use tensor::{Coords, TensorField};

use crate::symcore::SymError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ManifoldError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("unsupported operation: {0}")]
    Capability(String),
    #[error("degenerate structure: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}
