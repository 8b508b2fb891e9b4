//! Nijenhuis operators, O-operators, Nijenhuis structures, ON-structures,
//! compatibility and hierarchies.

mod nijenhuis;
mod o_operator;
mod on;
mod structure;

pub use nijenhuis::{
    check_nijenhuis, deformed_product, deformed_product_unchecked, homomorphism_report, nijenhuis_tower,
};
pub use o_operator::{check_o_operator, check_rota_baxter, induced_pre_lie, induced_product};
pub use on::{
    check_compatible, check_on_structure, hierarchy, on_from_compatible, s_deformed_product, star_product, Hierarchy,
    OnStructure,
};
pub use structure::{
    check_deformation_pair, check_nijenhuis_structure, check_trivial_deformation, deformed_bimodule,
    deformed_bimodule_unchecked, trivial_deformation_from, DeformationTriple,
};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Tensor3};
use crate::report::Report;

pub fn expect_shape(m: &Matrix, rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::dims(format!(
            "{what} should be {rows}×{cols}, found {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

/// Entry-by-entry comparison of two multiplication tensors.
pub fn compare_products(name: &str, a: &Tensor3, b: &Tensor3) -> Report {
    assert_eq!(a.dim(), b.dim());
    let d = a.sub(b);
    Report::scan(name, pairs(a.dim()).map(|(i, j)| (vec![i, j], d.fiber(i, j))))
}

/// Comparison of two matrices, reported per column.
pub fn compare_matrices(name: &str, a: &Matrix, b: &Matrix) -> Report {
    let d = a.sub(b);
    Report::scan(name, (0..d.cols()).map(|j| (vec![j], d.column(j))))
}

/// Block-diagonal `A ⊕ B`.
pub fn direct_sum(a: &Matrix, b: &Matrix) -> Matrix {
    let (r, c) = (a.rows() + b.rows(), a.cols() + b.cols());
    Matrix::from_fn(r, c, |i, j| {
        if i < a.rows() && j < a.cols() {
            a[(i, j)].clone()
        } else if i >= a.rows() && j >= a.cols() {
            b[(i - a.rows(), j - a.cols())].clone()
        } else {
            crate::linalg::Scalar::zero()
        }
    })
}
