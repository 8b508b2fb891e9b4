//! Twilled pre-Lie algebras, the construction `g ⋈ V_T`, the differential
//! graded Lie algebra on `C*(g₁, g₂)` and (strong) Maurer-Cartan elements.

mod bridge;
mod mc;

pub use bridge::{hierarchy_from_mc, mc_from_on, omega_twist, on_from_mc, OmegaTwist};
pub use mc::{bracket_mu2, check_mc, check_rb_strong_mc, check_strong_mc, d_mu1, lift_to_big, project_from_big};

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Bimodule};
use crate::error::{Error, Result};
use crate::linalg::matrix::{unit_vector, vec_sub};
use crate::linalg::{Matrix, Tensor3};
use crate::operators::{check_o_operator, induced_product};

/// A pre-Lie algebra on `g₁ ⊕ g₂` in which both blocks are subalgebras,
/// together with the actions read off from the mixed products:
/// `x ⋄ u = 𝓛¹_x u + 𝓡²_u x` and `u ⋄ x = 𝓛²_u x + 𝓡¹_x u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwilledAlgebra {
    big: Algebra,
    n1: usize,
    diamond1: Algebra,
    diamond2: Algebra,
    l1: Vec<Matrix>,
    r1: Vec<Matrix>,
    l2: Vec<Matrix>,
    r2: Vec<Matrix>,
}

/// JSON form `{"algebra": ..., "split": n1}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwilledJson {
    pub algebra: Algebra,
    pub split: usize,
}

/// Validates the splitting of `big` at `n1` and extracts the actions.
pub fn make_twilled(big: Algebra, n1: usize) -> Result<TwilledAlgebra> {
    let n = big.dim();
    if n1 > n {
        return Err(Error::dims(format!("split {n1} exceeds dimension {n}")));
    }
    if let Some(v) = big.check_pre_lie().violation {
        return Err(Error::NotPreLie(v.at));
    }
    let n2 = n - n1;
    let c = big.products();
    for (block, range, other) in [(1, 0..n1, n1..n), (2, n1..n, 0..n1)] {
        for i in range.clone() {
            for j in range.clone() {
                if other.clone().any(|k| !c[(i, j, k)].is_zero()) {
                    return Err(Error::NotSubalgebra {
                        block,
                        pair: (i + 1, j + 1),
                    });
                }
            }
        }
    }
    let diamond1 = Algebra::new(Tensor3::from_fn(n1, |i, j, k| c[(i, j, k)].clone()));
    let diamond2 = Algebra::new(Tensor3::from_fn(n2, |a, b, d| c[(n1 + a, n1 + b, n1 + d)].clone()));
    let l1 = (0..n1).map(|i| Matrix::from_fn(n2, n2, |b, a| c[(i, n1 + a, n1 + b)].clone())).collect();
    let r1 = (0..n1).map(|i| Matrix::from_fn(n2, n2, |b, a| c[(n1 + a, i, n1 + b)].clone())).collect();
    let l2 = (0..n2).map(|a| Matrix::from_fn(n1, n1, |k, i| c[(n1 + a, i, k)].clone())).collect();
    let r2 = (0..n2).map(|a| Matrix::from_fn(n1, n1, |k, i| c[(i, n1 + a, k)].clone())).collect();
    let tw = TwilledAlgebra {
        big,
        n1,
        diamond1,
        diamond2,
        l1,
        r1,
        l2,
        r2,
    };
    for (name, b) in [("g2 over g1", tw.g2_over_g1()?), ("g1 over g2", tw.g1_over_g2()?)] {
        if !b.check().holds {
            return Err(Error::InvalidBimodule(format!("{name} fails the bimodule identities")));
        }
    }
    Ok(tw)
}

/// Assembles `g₁ ⊕ g₂` from the two products and the four actions.
pub(crate) fn assemble(
    d1: &Algebra,
    d2: &Algebra,
    l1: &[Matrix],
    r1: &[Matrix],
    l2: &[Matrix],
    r2: &[Matrix],
) -> Algebra {
    let (n1, n2) = (d1.dim(), d2.dim());
    let mut t = Tensor3::zeros(n1 + n2);
    for ((i, j, k), c) in d1.products().nonzero() {
        t[(i, j, k)] = c.clone();
    }
    for ((a, b, d), c) in d2.products().nonzero() {
        t[(n1 + a, n1 + b, n1 + d)] = c.clone();
    }
    for i in 0..n1 {
        for a in 0..n2 {
            for b in 0..n2 {
                t[(i, n1 + a, n1 + b)] = l1[i][(b, a)].clone();
                t[(n1 + a, i, n1 + b)] = r1[i][(b, a)].clone();
            }
            for k in 0..n1 {
                t[(i, n1 + a, k)] = r2[a][(k, i)].clone();
                t[(n1 + a, i, k)] = l2[a][(k, i)].clone();
            }
        }
    }
    Algebra::new(t)
}

impl TwilledAlgebra {
    pub fn big(&self) -> &Algebra {
        &self.big
    }

    pub fn split(&self) -> usize {
        self.n1
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n1, self.big.dim() - self.n1)
    }

    pub fn diamond1(&self) -> &Algebra {
        &self.diamond1
    }

    pub fn diamond2(&self) -> &Algebra {
        &self.diamond2
    }

    pub fn l1(&self) -> &[Matrix] {
        &self.l1
    }

    pub fn r1(&self) -> &[Matrix] {
        &self.r1
    }

    pub fn l2(&self) -> &[Matrix] {
        &self.l2
    }

    pub fn r2(&self) -> &[Matrix] {
        &self.r2
    }

    /// `(g₂; 𝓛¹, 𝓡¹)` over `(g₁, ⋄₁)`.
    pub fn g2_over_g1(&self) -> Result<Bimodule> {
        Bimodule::new(self.diamond1.clone(), self.dims().1, self.l1.clone(), self.r1.clone())
    }

    /// `(g₁; 𝓛², 𝓡²)` over `(g₂, ⋄₂)`.
    pub fn g1_over_g2(&self) -> Result<Bimodule> {
        Bimodule::new(self.diamond2.clone(), self.n1, self.l2.clone(), self.r2.clone())
    }

    /// `μ₁`: the semidirect product `g₁ ⋉ g₂`, written on `g₁ ⊕ g₂`.
    pub fn mu1(&self) -> Algebra {
        let empty = Algebra::abelian(self.dims().1);
        let zero1: Vec<Matrix> = (0..self.dims().1).map(|_| Matrix::zeros(self.n1, self.n1)).collect();
        assemble(&self.diamond1, &empty, &self.l1, &self.r1, &zero1, &zero1)
    }

    /// `μ₂`: the semidirect product `g₂ ⋉ g₁`, written on `g₁ ⊕ g₂`.
    pub fn mu2(&self) -> Algebra {
        let (n1, n2) = self.dims();
        let empty = Algebra::abelian(n1);
        let zero2: Vec<Matrix> = (0..n1).map(|_| Matrix::zeros(n2, n2)).collect();
        assemble(&empty, &self.diamond2, &zero2, &zero2, &self.l2, &self.r2)
    }

    /// The same algebra with the blocks exchanged, so that `g₂` comes first.
    pub fn swap(&self) -> TwilledAlgebra {
        let n2 = self.dims().1;
        TwilledAlgebra {
            big: assemble(&self.diamond2, &self.diamond1, &self.l2, &self.r2, &self.l1, &self.r1),
            n1: n2,
            diamond1: self.diamond2.clone(),
            diamond2: self.diamond1.clone(),
            l1: self.l2.clone(),
            r1: self.r2.clone(),
            l2: self.l1.clone(),
            r2: self.r1.clone(),
        }
    }

    pub fn to_json(&self) -> TwilledJson {
        TwilledJson {
            algebra: self.big.clone(),
            split: self.n1,
        }
    }
}

/// `𝔏^T_u x = T(u)·x − T(𝓡_x u)` and `𝔎^T_u x = x·T(u) − T(𝓛_x u)`:
/// the bimodule `(g; 𝔏^T, 𝔎^T)` over `V_T`, without checking `T`.
pub fn frak_bimodule(b: &Bimodule, t: &Matrix) -> Bimodule {
    let alg = b.base();
    let (n, m) = (alg.dim(), b.module_dim());
    let frak = |u: usize, left: bool| {
        let tu = t.column(u);
        let uvec = unit_vector(m, u);
        let cols: Vec<_> = (0..n)
            .map(|i| {
                let x = unit_vector(n, i);
                if left {
                    vec_sub(&alg.mul(&tu, &x), &t.apply(&b.right(i).apply(&uvec)))
                } else {
                    vec_sub(&alg.mul(&x, &tu), &t.apply(&b.left(i).apply(&uvec)))
                }
            })
            .collect();
        Matrix::from_columns(n, &cols)
    };
    let left = (0..m).map(|u| frak(u, true)).collect();
    let right = (0..m).map(|u| frak(u, false)).collect();
    Bimodule::new(induced_product(b, t), n, left, right).expect("shapes are fixed")
}

/// `g ⋈ V_T` with `g₁ = g` and `g₂ = V_T`.
pub fn twilled_from_o_operator(b: &Bimodule, t: &Matrix) -> Result<TwilledAlgebra> {
    if !check_o_operator(b, t)?.holds {
        return Err(Error::NotOOperator);
    }
    let fb = frak_bimodule(b, t);
    let big = assemble(b.base(), fb.base(), b.lefts(), b.rights(), fb.lefts(), fb.rights());
    make_twilled(big, b.base().dim())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_algebras::*;

    pub(crate) fn case1_r() -> Matrix {
        Matrix::from_ints(&[&[0, 0, 0], &[1, 2, 0], &[3, 5, 0]])
    }

    #[test]
    fn semidirect_product_is_twilled() {
        let b = Bimodule::regular(&a2());
        let tw = make_twilled(b.semidirect_product().unwrap(), 2).unwrap();
        assert!(tw.diamond2().products().is_zero());
        assert_eq!(tw.g2_over_g1().unwrap(), b);
    }

    #[test]
    fn direct_sum_has_no_cross_actions() {
        let tw = make_twilled(a2().direct_sum(&a2()), 2).unwrap();
        assert!(tw.l1().iter().chain(tw.r1()).chain(tw.l2()).chain(tw.r2()).all(Matrix::is_zero));
    }

    #[test]
    fn non_subalgebra_is_named() {
        // e1·e1 = e2 with the split {e1} | {e2}
        let alg = Algebra::from_int_entries(2, &[(1, 1, 2, 1)]);
        assert!(alg.is_pre_lie());
        assert_eq!(
            make_twilled(alg, 1),
            Err(Error::NotSubalgebra {
                block: 1,
                pair: (1, 1)
            })
        );
    }

    #[test]
    fn construction_round_trip() {
        let b = Bimodule::regular(&a3h());
        let tw = twilled_from_o_operator(&b, &case1_r()).unwrap();
        assert_eq!(tw.dims(), (3, 3));
        let again = make_twilled(tw.big().clone(), 3).unwrap();
        assert_eq!(again, tw);
        assert_eq!(tw.mu1().products().add(tw.mu2().products()), *tw.big().products());
        assert_eq!(tw.swap().swap(), tw);
        assert!(tw.swap().big().is_pre_lie());
    }

    #[test]
    fn zero_operator_gives_semidirect_product() {
        let b = Bimodule::regular(&a3a()).dual().unwrap();
        let tw = twilled_from_o_operator(&b, &Matrix::zeros(3, 3)).unwrap();
        assert_eq!(tw.big(), &b.semidirect_product().unwrap());
    }
}
