//! Pre-Lie algebras, bimodules, duals and semidirect products.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::{vec_sub, zero_vector};
use crate::linalg::{Matrix, Scalar, Tensor3, Vector};
use crate::report::Report;

/// A finite-dimensional algebra given by structure constants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    products: Tensor3,
    labels: Option<Vec<String>>,
}

impl Algebra {
    pub fn new(products: Tensor3) -> Self {
        Algebra {
            products,
            labels: None,
        }
    }

    pub fn abelian(n: usize) -> Self {
        Algebra::new(Tensor3::zeros(n))
    }

    /// From 1-based `(i, j, k, c)` entries meaning `e_i·e_j ∋ c e_k`.
    pub fn from_entries(n: usize, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let mut t = Tensor3::zeros(n);
        for (i, j, k, c) in entries {
            if [*i, *j, *k].iter().any(|&x| x == 0 || x > n) {
                return Err(Error::dims(format!("product index ({i},{j},{k}) outside 1..={n}")));
            }
            t[(i - 1, j - 1, k - 1)] += c;
        }
        Ok(Algebra::new(t))
    }

    /// Integer-coefficient shorthand for tests and examples.
    pub fn from_int_entries(n: usize, entries: &[(usize, usize, usize, i64)]) -> Self {
        let e: Vec<_> = entries
            .iter()
            .map(|&(i, j, k, c)| (i, j, k, Scalar::from_int(c)))
            .collect();
        Algebra::from_entries(n, &e).expect("index out of range")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.products.dim()
    }

    pub fn products(&self) -> &Tensor3 {
        &self.products
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        self.products.fiber(i, j)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        for ((i, j, k), c) in self.products.nonzero() {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            out[k] += &(c * &x[i]) * &y[j];
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        vec_sub(&self.mul(x, y), &self.mul(y, x))
    }

    /// Left multiplication `L_x`.
    pub fn left_of(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        Matrix::from_columns(
            n,
            &(0..n)
                .map(|j| self.mul(x, &crate::linalg::matrix::unit_vector(n, j)))
                .collect::<Vec<_>>(),
        )
    }

    pub fn right_of(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        Matrix::from_columns(
            n,
            &(0..n)
                .map(|j| self.mul(&crate::linalg::matrix::unit_vector(n, j), x))
                .collect::<Vec<_>>(),
        )
    }

    /// `L_{e_i}` with entries `(L_i)_{kj} = c[i][j][k]`.
    pub fn left(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| self.products[(i, j, k)].clone())
    }

    pub fn right(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| self.products[(j, i, k)].clone())
    }

    /// `(x·y)·z − x·(y·z) − (y·x)·z + y·(x·z)` on basis vectors.
    pub fn associator_defect(&self, i: usize, j: usize, k: usize) -> Vector {
        let n = self.dim();
        let e = |a| crate::linalg::matrix::unit_vector(n, a);
        let ij = self.basis_product(i, j);
        let ji = self.basis_product(j, i);
        let lhs = vec_sub(&self.mul(&ij, &e(k)), &self.mul(&e(i), &self.basis_product(j, k)));
        let rhs = vec_sub(&self.mul(&ji, &e(k)), &self.mul(&e(j), &self.basis_product(i, k)));
        vec_sub(&lhs, &rhs)
    }

    pub fn check_pre_lie(&self) -> Report {
        check_pre_lie(&self.products)
    }

    pub fn is_pre_lie(&self) -> bool {
        self.check_pre_lie().holds
    }

    /// Structure constants of the sub-adjacent Lie algebra `[x,y] = x·y − y·x`.
    pub fn sub_adjacent(&self) -> Result<Tensor3> {
        let r = self.check_pre_lie();
        if let Some(v) = r.violation {
            return Err(Error::NotPreLie(v.at));
        }
        let c = &self.products;
        let bracket = Tensor3::from_fn(self.dim(), |i, j, k| &c[(i, j, k)] - &c[(j, i, k)]);
        debug_assert!(jacobi_holds(&bracket));
        Ok(bracket)
    }

    /// Direct sum `A ⊕ B` with `A·B = 0`.
    pub fn direct_sum(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim(), other.dim());
        let mut t = Tensor3::zeros(n + m);
        for ((i, j, k), c) in self.products.nonzero() {
            t[(i, j, k)] = c.clone();
        }
        for ((i, j, k), c) in other.products.nonzero() {
            t[(n + i, n + j, n + k)] = c.clone();
        }
        Algebra::new(t)
    }

    /// Algebra with the same space and product `x ∘ y` computed on basis vectors.
    pub fn from_bilinear(n: usize, f: impl Fn(usize, usize) -> Vector) -> Algebra {
        let mut t = Tensor3::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                for (k, c) in v.into_iter().enumerate() {
                    t[(i, j, k)] = c;
                }
            }
        }
        Algebra::new(t)
    }
}

pub fn check_pre_lie(products: &Tensor3) -> Report {
    let alg = Algebra::new(products.clone());
    let n = alg.dim();
    let triples = (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));
    Report::scan(
        "pre-Lie",
        triples.map(|(i, j, k)| (vec![i, j, k], alg.associator_defect(i, j, k))),
    )
}

/// Jacobi identity for an antisymmetric bracket tensor.
pub fn jacobi_holds(bracket: &Tensor3) -> bool {
    let lie = Algebra::new(bracket.clone());
    let n = lie.dim();
    let e = |a| crate::linalg::matrix::unit_vector(n, a);
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let a = lie.mul(&lie.basis_product(i, j), &e(k));
                let b = lie.mul(&lie.basis_product(j, k), &e(i));
                let c = lie.mul(&lie.basis_product(k, i), &e(j));
                a.iter().zip(&b).zip(&c).all(|((x, y), z)| (x + y + z).is_zero())
            })
        })
    })
}

/// Pair of actions `(𝓛, 𝓡)` of an algebra on a module space `V`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bimodule {
    base: Algebra,
    module_dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(base: Algebra, module_dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Self> {
        let n = base.dim();
        if left.len() != n || right.len() != n {
            return Err(Error::dims(format!(
                "expected {n} action matrices, got {} left and {} right",
                left.len(),
                right.len()
            )));
        }
        if left
            .iter()
            .chain(&right)
            .any(|m| m.rows() != module_dim || m.cols() != module_dim)
        {
            return Err(Error::dims(format!("action matrices must be {module_dim}×{module_dim}")));
        }
        Ok(Bimodule {
            base,
            module_dim,
            left,
            right,
        })
    }

    pub fn regular(alg: &Algebra) -> Self {
        let n = alg.dim();
        Bimodule {
            base: alg.clone(),
            module_dim: n,
            left: (0..n).map(|i| alg.left(i)).collect(),
            right: (0..n).map(|i| alg.right(i)).collect(),
        }
    }

    pub fn trivial(alg: &Algebra, m: usize) -> Self {
        let n = alg.dim();
        Bimodule {
            base: alg.clone(),
            module_dim: m,
            left: vec![Matrix::zeros(m, m); n],
            right: vec![Matrix::zeros(m, m); n],
        }
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn left(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    pub fn lefts(&self) -> &[Matrix] {
        &self.left
    }

    pub fn rights(&self) -> &[Matrix] {
        &self.right
    }

    pub fn left_of(&self, x: &[Scalar]) -> Matrix {
        combine(&self.left, x, self.module_dim)
    }

    pub fn right_of(&self, x: &[Scalar]) -> Matrix {
        combine(&self.right, x, self.module_dim)
    }

    /// Same actions over a different product on the same space.
    pub fn rebase(&self, base: Algebra) -> Result<Self> {
        Bimodule::new(base, self.module_dim, self.left.clone(), self.right.clone())
    }

    pub fn check(&self) -> Report {
        let n = self.base.dim();
        let alg = &self.base;
        let pairs = (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
        let residuals = pairs.flat_map(|(i, j)| {
            let lij = self.left_of(&alg.basis_product(i, j));
            let lji = self.left_of(&alg.basis_product(j, i));
            let e23 = self.left[i]
                .mul(&self.left[j])
                .sub(&lij)
                .sub(&self.left[j].mul(&self.left[i]))
                .add(&lji);
            let rij = self.right_of(&alg.basis_product(i, j));
            let e24 = self.left[i]
                .mul(&self.right[j])
                .sub(&self.right[j].mul(&self.left[i]))
                .sub(&rij)
                .add(&self.right[j].mul(&self.right[i]));
            [
                (vec![i, j], e23.entries().to_vec()),
                (vec![i, j], e24.entries().to_vec()),
            ]
        });
        Report::scan("bimodule", residuals)
    }

    /// `(V*; 𝓛* − 𝓡*, −𝓡*)`.
    pub fn dual(&self) -> Result<Self> {
        if !self.check().holds {
            return Err(Error::InvalidBimodule("dual of an invalid bimodule".into()));
        }
        Ok(self.dual_unchecked())
    }

    pub fn dual_unchecked(&self) -> Self {
        Bimodule {
            base: self.base.clone(),
            module_dim: self.module_dim,
            left: self
                .left
                .iter()
                .zip(&self.right)
                .map(|(l, r)| r.sub(l).transpose())
                .collect(),
            right: self.right.iter().map(Matrix::transpose).collect(),
        }
    }

    /// `g ⋉ V` with `(x₁+v₁)·(x₂+v₂) = x₁·x₂ + 𝓛_{x₁}v₂ + 𝓡_{x₂}v₁`.
    pub fn semidirect_product(&self) -> Result<Algebra> {
        if !self.check().holds {
            return Err(Error::InvalidBimodule("semidirect product of an invalid bimodule".into()));
        }
        Ok(self.semidirect_unchecked())
    }

    pub fn semidirect_unchecked(&self) -> Algebra {
        let (n, m) = (self.base.dim(), self.module_dim);
        let mut t = Tensor3::zeros(n + m);
        for ((i, j, k), c) in self.base.products().nonzero() {
            t[(i, j, k)] = c.clone();
        }
        for i in 0..n {
            for a in 0..m {
                for b in 0..m {
                    t[(i, n + a, n + b)] = self.left[i][(b, a)].clone();
                    t[(n + a, i, n + b)] = self.right[i][(b, a)].clone();
                }
            }
        }
        Algebra::new(t)
    }
}

fn combine(ms: &[Matrix], x: &[Scalar], m: usize) -> Matrix {
    let mut acc = Matrix::zeros(m, m);
    for (c, mat) in x.iter().zip(ms) {
        if !c.is_zero() {
            acc = acc.add(&mat.scale(c));
        }
    }
    acc
}


/// Name of the space a linear map reads from or writes to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    #[serde(rename = "g")]
    G,
    #[serde(rename = "g*")]
    GStar,
    #[serde(rename = "V")]
    V,
    #[serde(rename = "V*")]
    VStar,
    #[serde(rename = "g+V")]
    GPlusV,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::G => "g",
            Space::GStar => "g*",
            Space::V => "V",
            Space::VStar => "V*",
            Space::GPlusV => "g+V",
        })
    }
}

/// A matrix tagged with the spaces it maps between.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearMap {
    pub domain: Space,
    pub codomain: Space,
    pub matrix: Matrix,
}

impl LinearMap {
    pub fn new(domain: Space, codomain: Space, matrix: Matrix) -> Self {
        LinearMap {
            domain,
            codomain,
            matrix,
        }
    }

    /// Checks the matrix against the dimensions of its tagged spaces.
    pub fn validate(&self, dim_of: impl Fn(Space) -> usize) -> Result<()> {
        let (r, c) = (dim_of(self.codomain), dim_of(self.domain));
        if self.matrix.rows() != r || self.matrix.cols() != c {
            return Err(Error::dims(format!(
                "map {}→{} should be {r}×{c}, found {}×{}",
                self.domain,
                self.codomain,
                self.matrix.rows(),
                self.matrix.cols()
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ProductEntry {
    i: usize,
    j: usize,
    k: usize,
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    products: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Serialize for Algebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraJson {
            dim: self.dim(),
            products: self
                .products
                .nonzero()
                .map(|((i, j, k), c)| ProductEntry {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    c: c.clone(),
                })
                .collect(),
            labels: self.labels.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Algebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = AlgebraJson::deserialize(d)?;
        let entries: Vec<_> = j.products.into_iter().map(|p| (p.i, p.j, p.k, p.c)).collect();
        let mut a = Algebra::from_entries(j.dim, &entries).map_err(serde::de::Error::custom)?;
        a.labels = j.labels;
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_algebras::*;

    #[test]
    fn a2_is_pre_lie() {
        assert!(a2().is_pre_lie());
        assert!(Algebra::abelian(3).is_pre_lie());
    }

    #[test]
    fn single_product_fails_at_first_triple() {
        let alg = Algebra::from_int_entries(2, &[(1, 2, 1, 1)]);
        let r = alg.check_pre_lie();
        assert!(!r.holds);
        assert_eq!(r.violation.unwrap().at, vec![1, 2, 2]);
    }

    #[test]
    fn sub_adjacent_brackets() {
        let b = a2().sub_adjacent().unwrap();
        assert_eq!(b[(1, 0, 0)], Scalar::from_int(-1));
        assert_eq!(b[(0, 1, 0)], Scalar::from_int(1));
        assert_eq!(b.nonzero().count(), 2);
        let h = a3h().sub_adjacent().unwrap();
        assert_eq!(h[(0, 1, 2)], Scalar::one());
        assert_eq!(h.nonzero().count(), 2);
        assert!(Algebra::abelian(2).sub_adjacent().unwrap().is_zero());
    }

    #[test]
    fn regular_trivial_and_dual_bimodules() {
        for alg in [a2(), a3a(), a3h(), a3n()] {
            let reg = Bimodule::regular(&alg);
            assert!(reg.check().holds);
            let dual = reg.dual().unwrap();
            assert!(dual.check().holds);
            assert!(dual.semidirect_product().unwrap().is_pre_lie());
        }
        let t = Bimodule::trivial(&a2(), 1);
        assert!(t.check().holds);
        assert_eq!(t.dual().unwrap(), t);
    }

    #[test]
    fn mismatched_actions_fail() {
        let reg2 = Bimodule::regular(&a3h());
        let reg3 = Bimodule::regular(&a3a());
        let mixed = Bimodule::new(a3a(), 3, reg3.lefts().to_vec(), reg2.rights().to_vec()).unwrap();
        assert!(!mixed.check().holds);
        assert!(mixed.dual().is_err());
    }

    #[test]
    fn semidirect_products() {
        let s = Bimodule::regular(&a2()).semidirect_product().unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.is_pre_lie());
        let t = Bimodule::trivial(&a2(), 1).semidirect_product().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(&t.basis_product(i, j)[..2], &a2().basis_product(i, j)[..]);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let a = a3h();
        let s = serde_json::to_string(&a).unwrap();
        let b: Algebra = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
