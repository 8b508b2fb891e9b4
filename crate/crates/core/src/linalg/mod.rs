//! Exact linear algebra over ℚ.

pub mod matrix;
pub mod sample;
pub mod scalar;
pub mod tensor;

pub use matrix::{Matrix, Vector};
pub use sample::{sample_rational, RationalSampler};
pub use scalar::{ParseScalarError, Scalar};
pub use tensor::Tensor3;
