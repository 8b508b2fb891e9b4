use super::{compare_products, expect_shape, pairs};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::matrix::{unit_vector, vec_add, vec_sub};
use crate::linalg::{Matrix, RationalSampler, Tensor3};
use crate::report::Report;

/// `N(x)·N(y) = N(N(x)·y + x·N(y) − N(x·y))` on basis pairs.
pub fn check_nijenhuis(alg: &Algebra, n: &Matrix) -> Result<Report> {
    let d = alg.dim();
    expect_shape(n, d, d, "Nijenhuis candidate")?;
    let deformed = deformed_product_unchecked(alg, n);
    Ok(Report::scan(
        "Nijenhuis",
        pairs(d).map(|(i, j)| {
            let (nx, ny) = (n.column(i), n.column(j));
            let lhs = alg.mul(&nx, &ny);
            let rhs = n.apply(&deformed.basis_product(i, j));
            (vec![i, j], vec_sub(&lhs, &rhs))
        }),
    ))
}

/// `x ·_N y = N(x)·y + x·N(y) − N(x·y)`, without checking `N`.
pub fn deformed_product_unchecked(alg: &Algebra, n: &Matrix) -> Algebra {
    let d = alg.dim();
    Algebra::from_bilinear(d, |i, j| {
        let (x, y) = (unit_vector(d, i), unit_vector(d, j));
        let a = vec_add(&alg.mul(&n.column(i), &y), &alg.mul(&x, &n.column(j)));
        vec_sub(&a, &n.apply(&alg.basis_product(i, j)))
    })
}

pub fn deformed_product(alg: &Algebra, n: &Matrix) -> Result<Algebra> {
    if !check_nijenhuis(alg, n)?.holds {
        return Err(Error::NotNijenhuis);
    }
    Ok(deformed_product_unchecked(alg, n))
}

/// `N` as an algebra map `(g, ·_src) → (g, ·_dst)`.
pub fn homomorphism_report(name: &str, n: &Matrix, src: &Algebra, dst: &Algebra) -> Report {
    let d = src.dim();
    Report::scan(
        name,
        pairs(d).map(|(i, j)| {
            let lhs = n.apply(&src.basis_product(i, j));
            let rhs = dst.mul(&n.column(i), &n.column(j));
            (vec![i, j], vec_sub(&lhs, &rhs))
        }),
    )
}

/// The five tower properties of the deformed products `·_{N^k}` for `k, l ≤ kmax`.
pub fn nijenhuis_tower(alg: &Algebra, n: &Matrix, kmax: usize) -> Result<Report> {
    if kmax > 4 {
        return Err(Error::Validation("kmax is capped at 4".into()));
    }
    if !check_nijenhuis(alg, n)?.holds {
        return Err(Error::NotNijenhuis);
    }
    let d = alg.dim();
    let powers: Vec<Matrix> = (0..=2 * kmax).map(|k| n.pow(k)).collect();
    let prods: Vec<Algebra> = powers.iter().map(|p| deformed_product_unchecked(alg, p)).collect();
    let mut sampler = RationalSampler::new(0x5eed, 50);
    let mut r = Report::pass("Nijenhuis tower");
    for k in 0..=kmax {
        r.add(format!("·_N^{k} pre-Lie"), &prods[k].check_pre_lie());
        for l in 0..=kmax {
            let tag = format!("k={k}, l={l}");
            r.add(format!("N^{l} Nijenhuis on ·_N^{k} ({tag})"), &check_nijenhuis(&prods[k], &powers[l])?);
            let twice = deformed_product_unchecked(&prods[k], &powers[l]);
            r.add(
                format!("(·_N^{k})_N^{l} = ·_N^{} ({tag})", k + l),
                &compare_products("iterated deformation", twice.products(), prods[k + l].products()),
            );
            let (s1, s2) = (sampler.next_scalar(), sampler.next_scalar());
            let combo = Tensor3::from_fn(d, |i, j, c| {
                &(&s1 * &prods[k].products()[(i, j, c)]) + &(&s2 * &prods[l].products()[(i, j, c)])
            });
            r.add(format!("linear combination pre-Lie ({tag})"), &Algebra::new(combo).check_pre_lie());
            r.add(
                format!("N^{l} homomorphism ·_N^{} → ·_N^{k} ({tag})", k + l),
                &homomorphism_report("homomorphism", &powers[l], &prods[k + l], &prods[k]),
            );
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_algebras::*;

    #[test]
    fn corpus_family_member() {
        let n = Matrix::from_ints(&[&[3, 4], &[0, 3]]);
        assert!(check_nijenhuis(&a2(), &n).unwrap().holds);
        let def = deformed_product(&a2(), &n).unwrap();
        assert!(def.is_pre_lie());
        assert!(homomorphism_report("hom", &n, &def, &a2()).holds);
        assert!(nijenhuis_tower(&a2(), &n, 3).unwrap().holds);
    }

    #[test]
    fn identity_and_zero() {
        for alg in [a2(), a3a(), a3h(), a3n()] {
            let d = alg.dim();
            let id = Matrix::identity(d);
            assert!(check_nijenhuis(&alg, &id).unwrap().holds);
            assert_eq!(deformed_product(&alg, &id).unwrap(), alg);
            assert!(deformed_product(&alg, &Matrix::zeros(d, d)).unwrap().products().is_zero());
            assert!(nijenhuis_tower(&alg, &id, 2).unwrap().holds);
            assert!(nijenhuis_tower(&alg, &Matrix::zeros(d, d), 2).unwrap().holds);
        }
    }

    #[test]
    fn shape_is_checked() {
        assert!(matches!(
            check_nijenhuis(&a2(), &Matrix::identity(3)),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
