//! s-matrices, pseudo-Hessian forms and the KVN / HN / KVB layer.
//!
//! A symmetric `r ∈ Sym²(g)` is stored as the matrix `r_ij = r(e_i*, e_j*)`,
//! which is also the matrix of `r♯: g* → g`. A form `B ∈ Sym²(g*)` is stored as
//! `B_ij = B(e_i, e_j)`, the matrix of `B♮: g → g*`. The dual bimodule is
//! `(g*; ad*, −R*)` and `N*` has matrix `Nᵀ`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Bimodule, LinearMap, Space};
use crate::error::{Error, Result};
use crate::linalg::matrix::{dot, unit_vector};
use crate::linalg::{Matrix, Scalar, Tensor3};
use crate::operators::{
    check_nijenhuis, check_o_operator, check_on_structure, compare_matrices, compare_products,
    deformed_product_unchecked, expect_shape, OnStructure,
};
use crate::report::Report;
use crate::twilled::{check_strong_mc, twilled_from_o_operator};

fn symmetric(m: Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::dims(format!("symmetric tensor must be square, found {}×{}", m.rows(), m.cols())));
    }
    for i in 0..m.rows() {
        for j in i + 1..m.cols() {
            if m[(i, j)] != m[(j, i)] {
                return Err(Error::NotSymmetric((i + 1, j + 1)));
            }
        }
    }
    Ok(m)
}

#[derive(Serialize, Deserialize)]
struct SymEntry {
    i: usize,
    j: usize,
    c: Scalar,
}

/// Upper triangle, 1-based.
#[derive(Serialize, Deserialize)]
pub struct SymJson {
    dim: usize,
    entries: Vec<SymEntry>,
}

impl SymJson {
    fn from_matrix(m: &Matrix) -> Self {
        let mut entries = Vec::new();
        for i in 0..m.rows() {
            for j in i..m.cols() {
                if !m[(i, j)].is_zero() {
                    entries.push(SymEntry { i: i + 1, j: j + 1, c: m[(i, j)].clone() });
                }
            }
        }
        SymJson { dim: m.rows(), entries }
    }

    fn into_matrix(self) -> Result<Matrix> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for e in self.entries {
            if e.i == 0 || e.j == 0 || e.i > self.dim || e.j > self.dim {
                return Err(Error::Validation(format!("entry ({}, {}) outside dimension {}", e.i, e.j, self.dim)));
            }
            let (a, b) = (e.i - 1, e.j - 1);
            m[(a, b)] = e.c.clone();
            m[(b, a)] = e.c;
        }
        Ok(m)
    }
}

macro_rules! sym_type {
    ($name:ident) => {
        impl $name {
            pub fn new(m: Matrix) -> Result<Self> {
                Ok($name(symmetric(m)?))
            }

            pub fn zero(n: usize) -> Self {
                $name(Matrix::zeros(n, n))
            }

            /// From 1-based upper-triangle entries.
            pub fn from_entries(n: usize, entries: &[(usize, usize, Scalar)]) -> Result<Self> {
                let json = SymJson {
                    dim: n,
                    entries: entries.iter().map(|(i, j, c)| SymEntry { i: *i, j: *j, c: c.clone() }).collect(),
                };
                Ok($name(json.into_matrix()?))
            }

            pub fn dim(&self) -> usize {
                self.0.rows()
            }

            pub fn matrix(&self) -> &Matrix {
                &self.0
            }
        }

        impl Serialize for $name {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                SymJson::from_matrix(&self.0).serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let m = SymJson::deserialize(d)?.into_matrix().map_err(serde::de::Error::custom)?;
                Ok($name(m))
            }
        }
    };
}

/// `r ∈ Sym²(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor2(Matrix);
sym_type!(SymTensor2);

impl SymTensor2 {
    /// `r♯: g* → g`, `⟨r♯(ξ), η⟩ = r(ξ, η)`.
    pub fn sharp(&self) -> LinearMap {
        LinearMap::new(Space::GStar, Space::G, self.0.clone())
    }
}

/// `B ∈ Sym²(g*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymForm2(Matrix);
sym_type!(SymForm2);

impl SymForm2 {
    /// `B♮: g → g*`, `⟨B♮(x), y⟩ = B(x, y)`.
    pub fn flat(&self) -> LinearMap {
        LinearMap::new(Space::G, Space::GStar, self.0.clone())
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.0.apply(y))
    }

    /// `B_N(x, y) = B(N(x), y)` as a (not necessarily symmetric) matrix.
    pub fn twisted(&self, n: &Matrix) -> Matrix {
        n.transpose().mul(&self.0)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.0.determinant().map(|d| !d.is_zero()).unwrap_or(false)
    }
}

fn same_dim(alg: &Algebra, m: &Matrix, what: &str) -> Result<()> {
    expect_shape(m, alg.dim(), alg.dim(), what)
}

/// `F(x·y, z) − F(x, y·z) − F(y·x, z) + F(y, x·z)` for a bilinear form with matrix `F`.
fn cocycle_residual(alg: &Algebra, f: &Matrix, i: usize, j: usize, k: usize) -> Scalar {
    let pair = |v: &[Scalar], w: usize| dot(v, &f.column(w));
    let pair_r = |w: usize, v: &[Scalar]| dot(f.row(w), v);
    pair(&alg.basis_product(i, j), k) - pair_r(i, &alg.basis_product(j, k)) - pair(&alg.basis_product(j, i), k)
        + pair_r(j, &alg.basis_product(i, k))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

/// The cocycle identity for an arbitrary bilinear form.
pub fn check_form_closed(alg: &Algebra, f: &Matrix) -> Result<Report> {
    same_dim(alg, f, "form")?;
    Ok(Report::scan(
        "δ-closed form",
        triples(alg.dim()).map(|(i, j, k)| (vec![i, j, k], vec![cocycle_residual(alg, f, i, j, k)])),
    ))
}

/// `⟦r, r⟧(e_i*, e_j*, e_k*)`.
fn s_bracket(alg: &Algebra, r: &Matrix, i: usize, j: usize, k: usize) -> Scalar {
    let (xi, xj, xk) = (r.column(i), r.column(j), r.column(k));
    -alg.mul(&xj, &xk)[i].clone() + alg.mul(&xi, &xk)[j].clone() + alg.bracket(&xi, &xj)[k].clone()
}

pub fn check_s_matrix(alg: &Algebra, r: &SymTensor2) -> Result<Report> {
    same_dim(alg, r.matrix(), "r")?;
    let rep = Report::scan(
        "s-matrix",
        triples(alg.dim()).map(|(i, j, k)| (vec![i, j, k], vec![s_bracket(alg, r.matrix(), i, j, k)])),
    );
    let dual = Bimodule::regular(alg).dual()?;
    let other = check_o_operator(&dual, r.matrix())?.holds;
    Ok(rep.cross_check(other))
}

pub fn check_pseudo_hessian(alg: &Algebra, b: &SymForm2) -> Result<Report> {
    same_dim(alg, b.matrix(), "B")?;
    let mut r = Report::pass("pseudo-Hessian");
    r.push_bool("nondegenerate", b.is_nondegenerate());
    r.add("2-cocycle", &check_form_closed(alg, b.matrix())?);
    Ok(r)
}

/// `ξ ·^T η` on `g*` from the pairings
/// `⟨ξ ·^T η, z⟩ = −⟨η, [T(ξ), z]⟩ + ⟨ξ, z·T(η)⟩`.
fn dual_induced(alg: &Algebra, t: &Matrix) -> Algebra {
    let n = alg.dim();
    let basis = |k: usize| unit_vector(n, k);
    Algebra::new(Tensor3::from_fn(n, |a, b, k| {
        -alg.bracket(&t.column(a), &basis(k))[b].clone() + alg.mul(&basis(k), &t.column(b))[a].clone()
    }))
}

fn on_verdict(os: OnStructure) -> Result<bool> {
    match check_on_structure(&os) {
        Ok(r) => Ok(r.holds),
        Err(Error::ComponentCheckFailed(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn require(rep: Report, what: &str) -> Result<()> {
    if rep.holds {
        Ok(())
    } else {
        Err(Error::ComponentCheckFailed(format!("{what} fails")))
    }
}

pub fn check_kvn(alg: &Algebra, r: &SymTensor2, n: &Matrix) -> Result<Report> {
    same_dim(alg, n, "N")?;
    require(check_s_matrix(alg, r)?, "s-matrix")?;
    require(check_nijenhuis(alg, n)?, "Nijenhuis")?;
    let (rm, nt) = (r.matrix(), n.transpose());
    let mut rep = Report::pass("KVN-structure");
    rep.add("N r♯ = r♯ N*", &compare_matrices("N r♯ − r♯ N*", &n.mul(rm), &rm.mul(&nt)));
    let lhs = dual_induced(alg, &n.mul(rm));
    let rhs = deformed_product_unchecked(&dual_induced(alg, rm), &nt);
    rep.add("·^(N r♯) = ·^(r♯)_(N*)", &compare_products("products", lhs.products(), rhs.products()));
    let dual = Bimodule::regular(alg).dual()?;
    let other = on_verdict(OnStructure::new(dual, rm.clone(), n.clone(), nt)?)?;
    Ok(rep.cross_check(other))
}

pub fn check_hn(alg: &Algebra, b: &SymForm2, n: &Matrix) -> Result<Report> {
    same_dim(alg, n, "N")?;
    require(check_pseudo_hessian(alg, b)?, "pseudo-Hessian")?;
    require(check_nijenhuis(alg, n)?, "Nijenhuis")?;
    let bm = b.matrix();
    let mut rep = Report::pass("HN-structure");
    rep.add("B(Nx, y) = B(x, Ny)", &compare_matrices("B(Nx,y) − B(x,Ny)", &b.twisted(n), &bm.mul(n)));
    rep.add("B(·, N·) 2-cocycle", &check_form_closed(alg, &bm.mul(n))?);
    let dual = Bimodule::regular(alg).dual()?;
    let other = on_verdict(OnStructure::new(dual, bm.invert()?, n.clone(), n.transpose())?)?;
    Ok(rep.cross_check(other))
}

/// `r♯ = (B♮)⁻¹`.
pub fn kvn_from_hn(alg: &Algebra, b: &SymForm2, n: &Matrix) -> Result<(SymTensor2, Matrix)> {
    let inv = b.matrix().invert()?;
    require(check_hn(alg, b, n)?, "HN-structure")?;
    Ok((SymTensor2::new(inv)?, n.clone()))
}

/// `r♯ = N∘(B♮)⁻¹` makes `(r, B)` a KVB-structure.
pub fn kvb_from_hn(alg: &Algebra, b: &SymForm2, n: &Matrix) -> Result<SymTensor2> {
    let inv = b.matrix().invert()?;
    require(check_hn(alg, b, n)?, "HN-structure")?;
    SymTensor2::new(n.mul(&inv))
}

pub fn check_kvb(alg: &Algebra, r: &SymTensor2, b: &SymForm2) -> Result<Report> {
    same_dim(alg, b.matrix(), "B")?;
    require(check_s_matrix(alg, r)?, "s-matrix")?;
    require(check_form_closed(alg, b.matrix())?, "δ-closed B")?;
    let n = r.matrix().mul(b.matrix());
    let mut rep = Report::pass("KVB-structure");
    rep.add("B_N δ-closed", &check_form_closed(alg, &b.twisted(&n))?);
    let tw = twilled_from_o_operator(&Bimodule::regular(alg).dual()?, r.matrix())?;
    let other = check_strong_mc(&tw, b.matrix())?.holds;
    Ok(rep.cross_check(other))
}

/// `(r, N = r♯∘B♮)`.
pub fn kvn_from_kvb(alg: &Algebra, r: &SymTensor2, b: &SymForm2) -> Result<(SymTensor2, Matrix)> {
    require(check_kvb(alg, r, b)?, "KVB-structure")?;
    Ok((r.clone(), r.matrix().mul(b.matrix())))
}

/// `(B, N = r♯∘B♮)` for nondegenerate `B`.
pub fn hn_from_kvb(alg: &Algebra, r: &SymTensor2, b: &SymForm2) -> Result<(SymForm2, Matrix)> {
    require(check_kvb(alg, r, b)?, "KVB-structure")?;
    if !b.is_nondegenerate() {
        return Err(Error::SingularMatrix);
    }
    Ok((b.clone(), r.matrix().mul(b.matrix())))
}

/// `B♮ = (r♯)⁻¹∘N` for a KVN-structure with nondegenerate `r`.
pub fn kvb_from_kvn(alg: &Algebra, r: &SymTensor2, n: &Matrix) -> Result<SymForm2> {
    let inv = r.matrix().invert()?;
    require(check_kvn(alg, r, n)?, "KVN-structure")?;
    SymForm2::new(inv.mul(n))
}

#[derive(Clone, Debug, Serialize)]
pub struct RHierarchy {
    /// `r_k♯ = N^k∘r♯` for `k = 0..=kmax`.
    pub tensors: Vec<Matrix>,
    pub report: Report,
}

pub fn r_hierarchy(alg: &Algebra, r: &SymTensor2, n: &Matrix, kmax: usize) -> Result<RHierarchy> {
    if kmax > 4 {
        return Err(Error::Validation("kmax is capped at 4".into()));
    }
    require(check_kvn(alg, r, n)?, "KVN-structure")?;
    let rs: Vec<Matrix> = (0..=kmax).map(|k| n.pow(k).mul(r.matrix())).collect();
    let mut rep = Report::pass("s-matrix hierarchy");
    let s_matrix = |m: &Matrix| -> Result<Report> {
        match SymTensor2::new(m.clone()) {
            Ok(t) => check_s_matrix(alg, &t),
            Err(Error::NotSymmetric(_)) => {
                let mut f = Report::pass("s-matrix");
                f.push_bool("symmetric", false);
                Ok(f)
            }
            Err(e) => Err(e),
        }
    };
    for (k, rk) in rs.iter().enumerate() {
        rep.push_bool(format!("r_{k} symmetric"), rk.is_symmetric());
        rep.add(format!("r_{k} s-matrix"), &s_matrix(rk)?);
    }
    for k in 0..=kmax {
        for l in k + 1..=kmax {
            rep.add(format!("r_{k} + r_{l} s-matrix"), &s_matrix(&rs[k].add(&rs[l]))?);
        }
    }
    Ok(RHierarchy { tensors: rs, report: rep })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_algebras::*;
    use crate::linalg::RationalSampler;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sym(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(rows)
    }

    fn a2_b(a: i64, b: i64) -> SymForm2 {
        SymForm2::new(sym(&[&[0, a], &[a, b]])).unwrap()
    }

    fn a2_n(c: i64, d: i64) -> Matrix {
        sym(&[&[c, d], &[0, c]])
    }

    fn a3a_b(a: i64, b: i64, c: i64) -> SymForm2 {
        SymForm2::new(sym(&[&[a, 0, 0], &[0, 0, b], &[0, b, c]])).unwrap()
    }

    fn a3a_n(d: i64, e: i64, f: i64) -> Matrix {
        sym(&[&[d, 0, 0], &[0, e, f], &[0, 0, e]])
    }

    fn a3a_r(r11: i64, r22: i64, r23: i64) -> SymTensor2 {
        SymTensor2::new(sym(&[&[r11, 0, 0], &[0, r22, r23], &[0, r23, 0]])).unwrap()
    }

    fn a3n_r(r11: i64, r12: i64, r13: i64) -> SymTensor2 {
        SymTensor2::new(sym(&[&[r11, r12, r13], &[r12, 0, 0], &[r13, 0, 0]])).unwrap()
    }

    fn a3n_b(a: i64, b: i64, c: i64) -> SymForm2 {
        SymForm2::new(sym(&[&[0, 0, 0], &[0, a, b], &[0, b, c]])).unwrap()
    }

    #[test]
    fn symmetry_is_enforced() {
        let e = SymTensor2::new(sym(&[&[1, 2], &[3, 4]])).unwrap_err();
        assert_eq!(e, Error::NotSymmetric((1, 2)));
        let r = a3a_r(1, 2, 3);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<SymTensor2>(&json).unwrap(), r);
    }

    #[test]
    fn s_matrices() {
        assert!(check_s_matrix(&a3a(), &SymTensor2::zero(3)).unwrap().holds);
        let r = check_s_matrix(&a3a(), &a3a_r(1, 2, 3)).unwrap();
        assert!(r.holds && r.routes_agree == Some(true));
        let r = check_s_matrix(&a3n(), &a3n_r(1, 2, 3)).unwrap();
        assert!(r.holds && r.routes_agree == Some(true));
        let r = check_s_matrix(&a2(), &SymTensor2::new(Matrix::identity(2)).unwrap()).unwrap();
        assert!(!r.holds && r.routes_agree == Some(true));
    }

    #[test]
    fn s_matrix_routes_agree_on_random_tensors() {
        let mut s = RationalSampler::new(11, 2);
        for alg in [a2(), a3a(), a3h(), a3n()] {
            let n = alg.dim();
            for _ in 0..15 {
                let mut m = Matrix::zeros(n, n);
                for i in 0..n {
                    for j in i..n {
                        let v = if s.next_index(2) == 0 { Scalar::zero() } else { s.next_scalar() };
                        m[(i, j)] = v.clone();
                        m[(j, i)] = v;
                    }
                }
                let r = check_s_matrix(&alg, &SymTensor2::new(m).unwrap()).unwrap();
                assert_eq!(r.routes_agree, Some(true), "{r}");
            }
        }
    }

    #[test]
    fn pseudo_hessian() {
        assert!(check_pseudo_hessian(&a2(), &a2_b(1, 2)).unwrap().holds);
        let id = SymForm2::new(Matrix::identity(3)).unwrap();
        assert!(check_pseudo_hessian(&Algebra::abelian(3), &id).unwrap().holds);
        let r = check_pseudo_hessian(&a2(), &a2_b(0, 2)).unwrap();
        assert!(!r.holds && !r.clause("nondegenerate").unwrap().holds);
    }

    #[test]
    fn kvn_and_hn_on_a2() {
        let (b, n) = (a2_b(1, 2), a2_n(3, 4));
        let h = check_hn(&a2(), &b, &n).unwrap();
        assert!(h.holds && h.routes_agree == Some(true), "{h}");
        let (r, n2) = kvn_from_hn(&a2(), &b, &n).unwrap();
        assert_eq!(r.matrix(), &sym(&[&[-2, 1], &[1, 0]]));
        let k = check_kvn(&a2(), &r, &n2).unwrap();
        assert!(k.holds && k.routes_agree == Some(true), "{k}");
        let id = Matrix::identity(2);
        assert!(check_hn(&a2(), &b, &id).unwrap().holds);
        assert!(check_kvn(&a2(), &SymTensor2::zero(2), &n).unwrap().holds);
    }

    #[test]
    fn hn_on_a3a_and_its_inverse() {
        let (b, n) = (a3a_b(1, 2, 3), a3a_n(4, 5, 6));
        let h = check_hn(&a3a(), &b, &n).unwrap();
        assert!(h.holds && h.routes_agree == Some(true), "{h}");
        let (r, _) = kvn_from_hn(&a3a(), &b, &n).unwrap();
        // (B♮)⁻¹ has 1/b in the (2,3) slot and −c/b² in (2,2).
        let expect = Matrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) => q(1),
            (1, 1) => Scalar::ratio(-3, 4),
            (1, 2) | (2, 1) => Scalar::ratio(1, 2),
            _ => Scalar::zero(),
        });
        assert_eq!(r.matrix(), &expect);
        assert!(check_kvn(&a3a(), &r, &n).unwrap().holds);
    }

    #[test]
    fn broken_components_are_named() {
        let bad = SymTensor2::new(Matrix::identity(2)).unwrap();
        assert!(matches!(check_kvn(&a2(), &bad, &a2_n(1, 0)), Err(Error::ComponentCheckFailed(_))));
        let singular = a2_b(0, 1);
        assert!(matches!(check_hn(&a2(), &singular, &a2_n(1, 0)), Err(Error::ComponentCheckFailed(_))));
    }

    #[test]
    fn hn_and_kvn_routes_agree_on_a_grid() {
        let b = a2_b(1, 2);
        let r = SymTensor2::new(b.matrix().invert().unwrap()).unwrap();
        let vals = [-1, 0, 1];
        let mut negatives = 0;
        for e in itertools::iproduct!(vals, vals, vals, vals) {
            let n = sym(&[&[e.0, e.1], &[e.2, e.3]]);
            let (Ok(h), Ok(k)) = (check_hn(&a2(), &b, &n), check_kvn(&a2(), &r, &n)) else {
                continue;
            };
            assert_eq!(h.routes_agree, Some(true), "{h}");
            assert_eq!(k.routes_agree, Some(true), "{k}");
            assert_eq!(h.holds, k.holds);
            negatives += usize::from(!h.holds);
        }
        assert!(negatives > 0);
    }

    #[test]
    fn kvb_examples() {
        let (r, b) = (a3a_r(1, 2, 3), a3a_b(1, 2, 3));
        let k = check_kvb(&a3a(), &r, &b).unwrap();
        assert!(k.holds && k.routes_agree == Some(true), "{k}");
        let (_, n) = kvn_from_kvb(&a3a(), &r, &b).unwrap();
        // N = [[a r11, 0, 0], [0, b r23, b r22 + c r23], [0, 0, b r23]].
        assert_eq!(n, sym(&[&[1, 0, 0], &[0, 6, 13], &[0, 0, 6]]));
        assert!(check_kvn(&a3a(), &r, &n).unwrap().holds);
        let (b2, n2) = hn_from_kvb(&a3a(), &r, &b).unwrap();
        assert!(check_hn(&a3a(), &b2, &n2).unwrap().holds);

        let (r, b) = (a3n_r(1, 2, 3), a3n_b(1, 2, 3));
        let k = check_kvb(&a3n(), &r, &b).unwrap();
        assert!(k.holds && k.routes_agree == Some(true), "{k}");
        let (_, n) = kvn_from_kvb(&a3n(), &r, &b).unwrap();
        // First row (0, a r12 + b r13, b r12 + c r13).
        assert_eq!(n, sym(&[&[0, 8, 13], &[0, 0, 0], &[0, 0, 0]]));
        assert!(check_kvn(&a3n(), &r, &n).unwrap().holds);
        assert_eq!(hn_from_kvb(&a3n(), &r, &b).unwrap_err(), Error::SingularMatrix);

        let (_, n0) = kvn_from_kvb(&a3a(), &a3a_r(1, 2, 3), &SymForm2::zero(3)).unwrap();
        assert!(n0.is_zero());
    }

    #[test]
    fn kvb_and_hn_interconvert() {
        let (b, n) = (a2_b(1, 2), a2_n(3, 4));
        let r = kvb_from_hn(&a2(), &b, &n).unwrap();
        assert!(check_kvb(&a2(), &r, &b).unwrap().holds);
        let (r0, _) = kvn_from_hn(&a2(), &b, &n).unwrap();
        assert_eq!(kvb_from_kvn(&a2(), &r0, &n).unwrap().matrix(), &b.matrix().mul(&n));
    }

    #[test]
    fn hierarchies() {
        let r = SymTensor2::new(sym(&[&[-2, 1], &[1, 0]])).unwrap();
        let h = r_hierarchy(&a2(), &r, &a2_n(3, 4), 3).unwrap();
        assert!(h.report.holds, "{}", h.report);
        let h = r_hierarchy(&a2(), &r, &Matrix::identity(2), 3).unwrap();
        assert!(h.tensors.iter().all(|t| t == r.matrix()));
        let (r, b) = (a3a_r(1, 2, 3), a3a_b(1, 2, 3));
        let (_, n) = kvn_from_kvb(&a3a(), &r, &b).unwrap();
        assert!(r_hierarchy(&a3a(), &r, &n, 3).unwrap().report.holds);
    }
}
