//! Sparse mixed-integer linear program container, independent of any
//! application semantics.
//!
//! A [`MilpModel`] is built row by row through [`MilpModel::add_variable`],
//! [`MilpModel::add_constraint`] and the objective setters, then sealed for
//! solving or export. Variables carry bounds and an integrality mark
//! (continuous or binary); constraints are sparse coefficient rows with a
//! sense and a right-hand side.
//!
//! Two text formats are supported: fixed-layout MPS (write and parse, see
//! [`mps`]) and CPLEX-style LP (write only, see [`lp_format`]). Re-parsing an
//! exported MPS document reproduces the model exactly in coefficients,
//! bounds, senses and integrality.
//!
//! The container is generic over the scalar type through [`Scalar`]
//! (`f32`/`f64`); the crate root exposes `f64` aliases for everyday use.

mod model;
mod scalar;

pub mod lp_format;
pub mod mps;

pub use model::{Integrality, MilpModel, ModelError, RowId, RowSense, VarId};
pub use scalar::Scalar;

/// Model with the default `f64` scalar.
pub type Model = MilpModel<f64>;
