//! Exact scalars and dense matrices.
//!
//! Two kinds of coefficients are supported: arbitrary-precision rationals
//! and prime fields `F_p` with `2 <= p < 2^31`.  All matrices taking part
//! in one computation share a single [`FieldSpec`]; arithmetic is exact and
//! fully deterministic, with no tolerances anywhere.

mod linalg;
mod matrix;
mod scalar;

pub use matrix::Matrix;
pub use scalar::{FieldSpec, Scalar};
