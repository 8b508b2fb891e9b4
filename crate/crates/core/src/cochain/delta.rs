use super::{Arg, Cochain};
use crate::algebra::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::matrix::{add_scaled, unit_vector};
use crate::linalg::{Matrix, Scalar};

/// The coboundary of a `V`-valued cochain on `g` with coefficients in `b`.
pub fn delta(b: &Bimodule, phi: &Cochain) -> Result<Cochain> {
    let alg = b.base();
    let (ng, m) = (alg.dim(), b.module_dim());
    if phi.dim() != ng || phi.target() != m {
        return Err(Error::SpaceMismatch(format!(
            "cochain on dim {} with values in dim {}, bimodule is dim {ng} over dim {m}",
            phi.dim(),
            phi.target()
        )));
    }
    let n = phi.degree();
    Ok(Cochain::from_fn(ng, m, n + 1, |x| {
        let mut out = vec![Scalar::zero(); m];
        let last = x[n];
        let without = |skip: &[usize]| -> Vec<usize> {
            (0..n + 1).filter(|i| !skip.contains(i)).map(|i| x[i]).collect()
        };
        for i in 0..n {
            let s = Scalar::sign(i);
            let t1 = phi.eval_basis(&without(&[i]));
            add_scaled(&mut out, &s, &b.left(x[i]).apply(&t1));

            let mut args2: Vec<usize> = (0..n).filter(|&k| k != i).map(|k| x[k]).collect();
            args2.push(x[i]);
            let t2 = phi.eval_basis(&args2);
            add_scaled(&mut out, &s, &b.right(last).apply(&t2));

            let prod = alg.basis_product(x[i], last);
            let mut a3: Vec<Arg<'_>> = (0..n).filter(|&k| k != i).map(|k| Arg::Basis(x[k])).collect();
            a3.push(Arg::Vector(&prod));
            add_scaled(&mut out, &-s, &phi.eval(&a3));
        }
        for i in 0..n {
            for j in i + 1..n {
                let br = alg.bracket(&unit_vector(ng, x[i]), &unit_vector(ng, x[j]));
                if br.iter().all(Scalar::is_zero) {
                    continue;
                }
                let mut a: Vec<Arg<'_>> = vec![Arg::Vector(&br)];
                a.extend(without(&[i, j]).into_iter().map(Arg::Basis));
                add_scaled(&mut out, &Scalar::sign(i + j), &phi.eval(&a));
            }
        }
        out
    }))
}

/// Matrix of `δ : C^n → C^{n+1}` in the coordinates of [`Cochain::to_coords`].
pub fn delta_matrix(b: &Bimodule, n: usize) -> Matrix {
    let (ng, m) = (b.base().dim(), b.module_dim());
    let cols = Cochain::space_dim(ng, m, n);
    let columns: Vec<_> = (0..cols)
        .map(|c| {
            let phi = Cochain::from_coords(ng, m, n, &unit_vector(cols, c));
            delta(b, &phi).expect("shapes agree").to_coords()
        })
        .collect();
    Matrix::from_columns(Cochain::space_dim(ng, m, n + 1), &columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_algebras::*;
    use crate::linalg::RationalSampler;

    #[test]
    fn identity_cochain_gives_product() {
        let alg = a2();
        let b = Bimodule::regular(&alg);
        let id = Cochain::from_matrix(&Matrix::identity(2));
        assert_eq!(delta(&b, &id).unwrap(), Cochain::from_tensor(alg.products()));
    }

    #[test]
    fn delta_squares_to_zero_on_random_cochains() {
        let b = Bimodule::regular(&a3a()).dual().unwrap();
        let mut s = RationalSampler::new(5, 7);
        for n in 1..=2 {
            let phi = Cochain::random(3, 3, n, &mut s, 70);
            let dd = delta(&b, &delta(&b, &phi).unwrap()).unwrap();
            assert!(dd.is_zero());
        }
    }
}
