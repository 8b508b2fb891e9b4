//! Exact computation with pre-Lie algebras: bimodules, cochains and the
//! Matsushima-Nijenhuis bracket, Nijenhuis and O-operators, ON-structures,
//! twilled algebras and Maurer-Cartan elements, s-matrices with the
//! KVN/HN/KVB layer, and brute-force search oracles.

pub mod algebra;
pub mod cochain;
pub mod corpus_algebras;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod operators;
pub mod report;
pub mod scenario;
pub mod search;
pub mod structures;
pub mod twilled;

pub use algebra::{Algebra, Bimodule, LinearMap, Space};
pub use error::{Error, Result};
pub use linalg::{Matrix, Scalar, Tensor3, Vector};
pub use report::Report;
