//! Resolvent averages and weighted A♯H-means of positive-definite and accretive
//! complex matrices, with a randomized verification registry for their
//! identities and inequalities.

// `!(x > 0)` guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ensemble;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod means;
pub mod scalar;
pub mod theorems;

pub use error::{Error, Result};
pub use linalg::{Matrix, SectorialCert, ToleranceConfig};
pub use means::{MuParam, WeightVector};
pub use scalar::Real;

/// Double-precision complex matrix.
pub type CMatrix = Matrix<f64>;
/// Single-precision complex matrix.
pub type CMatrix32 = Matrix<f32>;
