use super::{expect_shape, pairs};
use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::matrix::{unit_vector, vec_add, vec_sub};
use crate::linalg::Matrix;
use crate::report::Report;

/// `u ·^T v = 𝓛_{T(u)} v + 𝓡_{T(v)} u` on `V`, without checking `T`.
pub fn induced_product(b: &Bimodule, t: &Matrix) -> Algebra {
    let m = b.module_dim();
    Algebra::from_bilinear(m, |i, j| {
        let (u, v) = (unit_vector(m, i), unit_vector(m, j));
        vec_add(
            &b.left_of(&t.column(i)).apply(&v),
            &b.right_of(&t.column(j)).apply(&u),
        )
    })
}

/// `T(u)·T(v) = T(𝓛_{T(u)} v + 𝓡_{T(v)} u)` on basis pairs of `V`.
pub fn check_o_operator(b: &Bimodule, t: &Matrix) -> Result<Report> {
    let (n, m) = (b.base().dim(), b.module_dim());
    expect_shape(t, n, m, "O-operator candidate")?;
    let alg = b.base();
    let vt = induced_product(b, t);
    Ok(Report::scan(
        "O-operator",
        pairs(m).map(|(i, j)| {
            let lhs = alg.mul(&t.column(i), &t.column(j));
            let rhs = t.apply(&vt.basis_product(i, j));
            (vec![i, j], vec_sub(&lhs, &rhs))
        }),
    ))
}

/// The pre-Lie algebra `V_T = (V, ·^T)`.
pub fn induced_pre_lie(b: &Bimodule, t: &Matrix) -> Result<Algebra> {
    if !check_o_operator(b, t)?.holds {
        return Err(Error::NotOOperator);
    }
    Ok(induced_product(b, t))
}

/// O-operator on the regular bimodule.
pub fn check_rota_baxter(alg: &Algebra, r: &Matrix) -> Result<Report> {
    let mut rep = check_o_operator(&Bimodule::regular(alg), r)?;
    rep.check = "Rota-Baxter".into();
    Ok(rep)
}
