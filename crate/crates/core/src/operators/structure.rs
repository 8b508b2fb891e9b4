use super::nijenhuis::{check_nijenhuis, deformed_product_unchecked};
use super::{compare_products, direct_sum, expect_shape, pairs};
use crate::algebra::{Algebra, Bimodule};
use crate::cochain::{
    partial_via_components, partial_via_mn, Block, BlockMap, BlockShape, BimoduleCochain,
};
use crate::error::{Error, Result};
use crate::linalg::matrix::vec_sub;
use crate::linalg::{Matrix, Scalar, Tensor3};
use crate::report::Report;

fn check_shapes(b: &Bimodule, n: &Matrix, s: &Matrix) -> Result<()> {
    let (d, m) = (b.base().dim(), b.module_dim());
    expect_shape(n, d, d, "N")?;
    expect_shape(s, m, m, "S")
}

/// Per-basis residual of a family of matrix identities `lhs(i) = rhs(i)`.
fn scan_matrices(name: &str, d: usize, mut f: impl FnMut(usize) -> (Matrix, Matrix)) -> Report {
    Report::scan(
        name,
        (0..d).map(|i| {
            let (l, r) = f(i);
            (vec![i], l.sub(&r).entries().to_vec())
        }),
    )
}

/// `L_{N(x)}S = S L_{N(x)} + L_x S² − S L_x S`, and the same for `R`, with `N` Nijenhuis.
/// The second route asks for `N + S*` to be Nijenhuis on `g ⋉ V*`.
pub fn check_nijenhuis_structure(b: &Bimodule, n: &Matrix, s: &Matrix) -> Result<Report> {
    check_shapes(b, n, s)?;
    let alg = b.base();
    let s2 = s.mul(s);
    let side = |act: &dyn Fn(&[Scalar]) -> Matrix, x: usize| {
        let lnx = act(&n.column(x));
        let lx = act(&crate::linalg::matrix::unit_vector(alg.dim(), x));
        let lhs = lnx.mul(s);
        let rhs = s.mul(&lnx).add(&lx.mul(&s2)).sub(&s.mul(&lx).mul(s));
        (lhs, rhs)
    };
    let mut r = Report::pass("Nijenhuis structure");
    r.add("N Nijenhuis", &check_nijenhuis(alg, n)?);
    r.add(
        "left condition",
        &scan_matrices("left", alg.dim(), |x| side(&|v| b.left_of(v), x)),
    );
    r.add(
        "right condition",
        &scan_matrices("right", alg.dim(), |x| side(&|v| b.right_of(v), x)),
    );
    let big = b.dual_unchecked().semidirect_unchecked();
    let other = check_nijenhuis(&big, &direct_sum(n, &s.transpose()))?;
    Ok(r.cross_check(other.holds))
}

/// `L_{N(x)}S = S(L_{N(x)} + L_x S − S L_x)`, and the same for `R`, with `N` Nijenhuis.
/// The second route asks for `N + S` to be Nijenhuis on `g ⋉ V`.
pub fn check_deformation_pair(b: &Bimodule, n: &Matrix, s: &Matrix) -> Result<Report> {
    check_shapes(b, n, s)?;
    let alg = b.base();
    let side = |act: &dyn Fn(&[Scalar]) -> Matrix, x: usize| {
        let lnx = act(&n.column(x));
        let lx = act(&crate::linalg::matrix::unit_vector(alg.dim(), x));
        (lnx.mul(s), s.mul(&lnx.add(&lx.mul(s)).sub(&s.mul(&lx))))
    };
    let mut r = Report::pass("deformation pair");
    r.add("N Nijenhuis", &check_nijenhuis(alg, n)?);
    r.add(
        "left condition",
        &scan_matrices("left", alg.dim(), |x| side(&|v| b.left_of(v), x)),
    );
    r.add(
        "right condition",
        &scan_matrices("right", alg.dim(), |x| side(&|v| b.right_of(v), x)),
    );
    let big = b.semidirect_unchecked();
    let other = check_nijenhuis(&big, &direct_sum(n, s))?;
    Ok(r.cross_check(other.holds))
}

/// The infinitesimal deformation `(ω, σ, τ)` generated by `(N, S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationTriple {
    pub omega: Tensor3,
    pub sigma: Vec<Matrix>,
    pub tau: Vec<Matrix>,
}

impl DeformationTriple {
    /// `ω̂ + σ̂ + τ̂` as a 2-cochain with `φ₂(v, x) = τ(x)v` and `φ₃(x, v) = σ(x)v`.
    pub fn as_cochain(&self) -> BimoduleCochain {
        let d = self.omega.dim();
        let m = self.sigma.first().map_or(0, Matrix::rows);
        let phi1 = BlockMap::from_fn(d, m, BimoduleCochain::phi1_shape(2), |xs, _, last| {
            self.omega.fiber(xs[0], last)
        });
        let phi2 = BlockMap::from_fn(d, m, BimoduleCochain::phi2_shape(2).unwrap(), |_, vs, last| {
            self.tau[last].column(vs[0])
        });
        let phi3 = BlockMap::from_fn(d, m, BimoduleCochain::phi3_shape(2), |xs, _, last| {
            self.sigma[xs[0]].column(last)
        });
        BimoduleCochain::from_components(&phi1, Some(&phi2), &phi3).expect("shapes are fixed")
    }

    /// `(g, · + tω)` with `(V; 𝓛 + tσ, 𝓡 + tτ)`.
    pub fn at(&self, b: &Bimodule, t: &Scalar) -> Result<Bimodule> {
        let prod = b.base().products().add(&self.omega.scale(t));
        let left = b.lefts().iter().zip(&self.sigma).map(|(l, s)| l.add(&s.scale(t))).collect();
        let right = b.rights().iter().zip(&self.tau).map(|(r, s)| r.add(&s.scale(t))).collect();
        Bimodule::new(Algebra::new(prod), b.module_dim(), left, right)
    }
}

fn triple_unchecked(b: &Bimodule, n: &Matrix, s: &Matrix) -> DeformationTriple {
    let alg = b.base();
    let d = alg.dim();
    let omega = deformed_product_unchecked(alg, n).products().clone();
    let gen = |act: &dyn Fn(&[Scalar]) -> Matrix, x: usize| {
        let lx = act(&crate::linalg::matrix::unit_vector(d, x));
        act(&n.column(x)).add(&lx.mul(s)).sub(&s.mul(&lx))
    };
    DeformationTriple {
        omega,
        sigma: (0..d).map(|x| gen(&|v| b.left_of(v), x)).collect(),
        tau: (0..d).map(|x| gen(&|v| b.right_of(v), x)).collect(),
    }
}

pub fn trivial_deformation_from(b: &Bimodule, n: &Matrix, s: &Matrix) -> Result<DeformationTriple> {
    if !check_deformation_pair(b, n, s)?.holds {
        return Err(Error::NotDeformationPair);
    }
    Ok(triple_unchecked(b, n, s))
}

/// Everything the trivial-deformation theorem promises for `(N, S)`:
/// the six defining identities, `∂`-closedness, exactness `∂(N̂ + Ŝ)`, and
/// that `t ↦ (· + tω, 𝓛 + tσ, 𝓡 + tτ)` stays a pre-Lie algebra with a bimodule.
pub fn check_trivial_deformation(b: &Bimodule, n: &Matrix, s: &Matrix) -> Result<Report> {
    let tri = trivial_deformation_from(b, n, s)?;
    let alg = b.base();
    let (d, m) = (alg.dim(), b.module_dim());
    let mut r = Report::pass("trivial deformation");
    r.add(
        "N ω(x,y) = N(x)·N(y)",
        &Report::scan(
            "N omega",
            pairs(d).map(|(i, j)| {
                let lhs = n.apply(&tri.omega.fiber(i, j));
                (vec![i, j], vec_sub(&lhs, &alg.mul(&n.column(i), &n.column(j))))
            }),
        ),
    );
    r.add(
        "L_N(x) S = S σ(x)",
        &scan_matrices("sigma", d, |x| (b.left_of(&n.column(x)).mul(s), s.mul(&tri.sigma[x]))),
    );
    r.add(
        "R_N(x) S = S τ(x)",
        &scan_matrices("tau", d, |x| (b.right_of(&n.column(x)).mul(s), s.mul(&tri.tau[x]))),
    );
    let c = tri.as_cochain();
    let closed = partial_via_components(b, &c)?;
    r.push_bool("closed", closed.lifted().is_zero());
    let closed_mn = partial_via_mn(b, &c)?;
    r.push_bool("closed (bracket route)", closed_mn.lifted().is_zero());
    let gen = BimoduleCochain::from_components(
        &BlockMap::from_fn(d, m, BlockShape::new(0, 0, Block::G1, Block::G1), |_, _, i| n.column(i)),
        None,
        &BlockMap::from_fn(d, m, BlockShape::new(0, 0, Block::G2, Block::G2), |_, _, a| s.column(a)),
    )?;
    let exact = partial_via_components(b, &gen)?;
    r.push_bool("equals ∂(N + S)", exact == c);
    // The pre-Lie and bimodule identities are quadratic in t with zero constant term.
    for t in 1..=3 {
        let ts = Scalar::from_int(t);
        let bt = tri.at(b, &ts)?;
        r.add(format!("t = {t}: pre-Lie"), &bt.base().check_pre_lie());
        r.add(format!("t = {t}: bimodule"), &bt.check());
    }
    Ok(r)
}

/// `𝓛̃_x = 𝓛_{N(x)} − [𝓛_x, S]`, `𝓡̃_x = 𝓡_{N(x)} − [𝓡_x, S]` over `(g, ·_N)`, unchecked.
pub fn deformed_bimodule_unchecked(b: &Bimodule, n: &Matrix, s: &Matrix) -> Bimodule {
    let alg = b.base();
    let d = alg.dim();
    let tw = |act: &dyn Fn(&[Scalar]) -> Matrix, x: usize| {
        let lx = act(&crate::linalg::matrix::unit_vector(d, x));
        act(&n.column(x)).sub(&lx.commutator(s))
    };
    let left = (0..d).map(|x| tw(&|v| b.left_of(v), x)).collect();
    let right = (0..d).map(|x| tw(&|v| b.right_of(v), x)).collect();
    let base = deformed_product_unchecked(alg, n);
    Bimodule::new(base, b.module_dim(), left, right).unwrap_or_else(|_| unreachable!("shapes are fixed"))
}

pub fn deformed_bimodule(b: &Bimodule, n: &Matrix, s: &Matrix) -> Result<Bimodule> {
    if !check_nijenhuis_structure(b, n, s)?.holds {
        return Err(Error::NotNijenhuisStructure);
    }
    Ok(deformed_bimodule_unchecked(b, n, s))
}

/// Multiplication-tensor comparison exposed for the ON layer.
pub(crate) fn same_products(name: &str, a: &Algebra, b: &Algebra) -> Report {
    compare_products(name, a.products(), b.products())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_algebras::*;

    fn n_a2() -> Matrix {
        Matrix::from_ints(&[&[3, 4], &[0, 3]])
    }

    #[test]
    fn example_dual_regular_pair() {
        let b = Bimodule::regular(&a2()).dual().unwrap();
        let n = n_a2();
        let r = check_nijenhuis_structure(&b, &n, &n.transpose()).unwrap();
        assert!(r.holds);
        assert_eq!(r.routes_agree, Some(true));
        let tb = deformed_bimodule(&b, &n, &n.transpose()).unwrap();
        assert!(tb.check().holds);
    }

    #[test]
    fn identity_and_zero_pairs() {
        for b in [Bimodule::regular(&a3a()), Bimodule::regular(&a3h()).dual().unwrap()] {
            let (d, m) = (b.base().dim(), b.module_dim());
            for (n, s) in [
                (Matrix::identity(d), Matrix::identity(m)),
                (Matrix::zeros(d, d), Matrix::zeros(m, m)),
            ] {
                assert!(check_nijenhuis_structure(&b, &n, &s).unwrap().holds);
                assert!(check_deformation_pair(&b, &n, &s).unwrap().holds);
                assert!(deformed_bimodule(&b, &n, &s).unwrap().check().holds);
            }
            let tb = deformed_bimodule(&b, &Matrix::identity(d), &Matrix::identity(m)).unwrap();
            assert_eq!(tb.lefts(), b.lefts());
            assert_eq!(tb.rights(), b.rights());
        }
    }

    #[test]
    fn routes_agree_on_failures() {
        let b = Bimodule::regular(&a2());
        let n = n_a2();
        let s = Matrix::from_ints(&[&[1, 0], &[2, 0]]);
        let r1 = check_nijenhuis_structure(&b, &n, &s).unwrap();
        let r2 = check_deformation_pair(&b, &n, &s).unwrap();
        assert_eq!(r1.routes_agree, Some(true));
        assert_eq!(r2.routes_agree, Some(true));
    }

    #[test]
    fn trivial_deformation_identity() {
        let b = Bimodule::regular(&a2());
        let tri = trivial_deformation_from(&b, &Matrix::identity(2), &Matrix::identity(2)).unwrap();
        assert_eq!(&tri.omega, a2().products());
        assert_eq!(tri.sigma, b.lefts());
        assert_eq!(tri.tau, b.rights());
        let zero = trivial_deformation_from(&b, &Matrix::zeros(2, 2), &Matrix::zeros(2, 2)).unwrap();
        assert!(zero.omega.is_zero() && zero.sigma.iter().all(Matrix::is_zero));
    }

    #[test]
    fn trivial_deformation_is_exact() {
        let b = Bimodule::regular(&a2());
        let n = n_a2();
        let r = check_trivial_deformation(&b, &n, &n).unwrap();
        assert!(r.holds, "{r}");
        let bd = Bimodule::regular(&a2()).dual().unwrap();
        let r = check_trivial_deformation(&bd, &n, &n.transpose());
        // (N, N*) is a Nijenhuis structure, not necessarily a deformation pair.
        if let Ok(r) = r {
            assert!(r.holds, "{r}");
        }
    }
}
