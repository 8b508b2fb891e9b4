use serde::Serialize;

use super::mixed::keys_with_type;
use super::{bidegree_of, delta, horizontal_lift, mn_bracket, Arg, Bidegree, Block, BlockMap, BlockShape, Cochain, MixedCochain};
use crate::algebra::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::matrix::{add_scaled, unit_vector, zero_vector};
use crate::linalg::{Matrix, Scalar, Vector};

/// An `n`-cochain `(φ₁, φ₂, φ₃)` of a pre-Lie algebra with coefficients in a
/// bimodule, held as its lift on `g ⊕ V` (bidegree `n−1|0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleCochain {
    ng: usize,
    m: usize,
    lifted: Cochain,
}

impl BimoduleCochain {
    pub fn phi1_shape(n: usize) -> BlockShape {
        BlockShape::new(n - 1, 0, Block::G1, Block::G1)
    }

    pub fn phi2_shape(n: usize) -> Option<BlockShape> {
        (n >= 2).then(|| BlockShape::new(n - 2, 1, Block::G1, Block::G2))
    }

    pub fn phi3_shape(n: usize) -> BlockShape {
        BlockShape::new(n - 1, 0, Block::G2, Block::G2)
    }

    /// `φ₂` must be `None` exactly when `n = 1`.
    pub fn from_components(phi1: &BlockMap, phi2: Option<&BlockMap>, phi3: &BlockMap) -> Result<Self> {
        let n = phi1.shape().degree();
        let (ng, m) = phi1.dims();
        let shape_ok = phi1.shape() == Self::phi1_shape(n)
            && phi3.shape() == Self::phi3_shape(n)
            && phi3.dims() == (ng, m)
            && match (phi2, Self::phi2_shape(n)) {
                (None, None) => true,
                (Some(p), Some(s)) => p.shape() == s && p.dims() == (ng, m),
                _ => false,
            };
        if !shape_ok {
            return Err(Error::ShapeMismatch(format!("components do not form a {n}-cochain")));
        }
        let mut acc = horizontal_lift(phi1).add(&horizontal_lift(phi3))?;
        if let Some(p) = phi2 {
            acc = acc.add(&horizontal_lift(p))?;
        }
        Ok(BimoduleCochain {
            ng,
            m,
            lifted: acc.cochain,
        })
    }

    /// Accepts a cochain on `g ⊕ V` of bidegree `n−1|0`.
    pub fn from_lifted(c: Cochain, ng: usize) -> Result<Self> {
        let n = c.degree();
        let expect = Bidegree::new(n as i32 - 1, 0);
        let mixed = MixedCochain::new(c, ng, Some(expect));
        if bidegree_of(&mixed) != Some(expect) {
            return Err(Error::ShapeMismatch(format!("cochain is not of bidegree {expect}")));
        }
        let m = mixed.n2();
        Ok(BimoduleCochain {
            ng,
            m,
            lifted: mixed.cochain,
        })
    }

    pub fn zero(ng: usize, m: usize, n: usize) -> Self {
        BimoduleCochain {
            ng,
            m,
            lifted: Cochain::zero(ng + m, ng + m, n),
        }
    }

    pub fn degree(&self) -> usize {
        self.lifted.degree()
    }

    pub fn lifted(&self) -> &Cochain {
        &self.lifted
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.ng, self.m)
    }

    pub fn phi1(&self) -> BlockMap {
        BlockMap::restrict(&self.lifted, self.ng, Self::phi1_shape(self.degree())).expect("shape fits")
    }

    pub fn phi2(&self) -> Option<BlockMap> {
        Self::phi2_shape(self.degree()).map(|s| BlockMap::restrict(&self.lifted, self.ng, s).expect("shape fits"))
    }

    pub fn phi3(&self) -> BlockMap {
        BlockMap::restrict(&self.lifted, self.ng, Self::phi3_shape(self.degree())).expect("shape fits")
    }

    /// `φ₁` as a `g`-valued cochain on `g`.
    pub fn phi1_cochain(&self) -> Cochain {
        let ng = self.ng;
        Cochain::from_fn(ng, ng, self.degree(), |k| self.lifted.eval_basis(k)[..ng].to_vec())
    }

    /// Basis coordinates (keys in lexicographic order, then output index).
    pub fn to_coords(&self) -> Vector {
        let (ng, n) = (self.ng, self.ng + self.m);
        let d = self.degree() as i32;
        keys_with_type(ng, n, self.degree())
            .flat_map(|(k, t)| {
                let v = self.lifted.eval_basis(&k);
                if t == (d, 0) {
                    v[..ng].to_vec()
                } else if t == (d - 1, 1) {
                    v[ng..].to_vec()
                } else {
                    Vec::new()
                }
            })
            .collect()
    }

    pub fn from_coords(ng: usize, m: usize, n: usize, coords: &[Scalar]) -> Self {
        let big = ng + m;
        let d = n as i32;
        let mut pos = 0;
        let mut c = Cochain::zero(big, big, n);
        for (k, t) in keys_with_type(ng, big, n) {
            let (off, len) = if t == (d, 0) {
                (0, ng)
            } else if t == (d - 1, 1) {
                (ng, m)
            } else {
                continue;
            };
            let mut v = zero_vector(big);
            v[off..off + len].clone_from_slice(&coords[pos..pos + len]);
            pos += len;
            c.set(&k, v).expect("canonical key");
        }
        assert_eq!(pos, coords.len(), "coordinate vector has the wrong length");
        BimoduleCochain { ng, m, lifted: c }
    }

    pub fn space_dim(ng: usize, m: usize, n: usize) -> usize {
        let big = ng + m;
        let d = n as i32;
        keys_with_type(ng, big, n)
            .map(|(_, t)| {
                if t == (d, 0) {
                    ng
                } else if t == (d - 1, 1) {
                    m
                } else {
                    0
                }
            })
            .sum()
    }
}

fn check_dims(b: &Bimodule, phi: &BimoduleCochain) -> Result<()> {
    if phi.dims() != (b.base().dim(), b.module_dim()) {
        return Err(Error::ShapeMismatch("cochain and bimodule dimensions differ".into()));
    }
    Ok(())
}

/// `∂φ = (−1)^{n−1}[μ̂, φ̂]` with `μ̂` the lifted semidirect product.
pub fn partial_via_mn(b: &Bimodule, phi: &BimoduleCochain) -> Result<BimoduleCochain> {
    check_dims(b, phi)?;
    let mu = Cochain::from_tensor(b.semidirect_unchecked().products());
    let n = phi.degree();
    let br = mn_bracket(&mu, phi.lifted())?.scale(&Scalar::sign(n - 1));
    BimoduleCochain::from_lifted(br, phi.ng)
}

/// `∂φ` from the three component formulas.
pub fn partial_via_components(b: &Bimodule, phi: &BimoduleCochain) -> Result<BimoduleCochain> {
    components(b, phi, true)
}

/// The component formulas exactly as printed, without the
/// `φ₂(…, [x_i, v], x_n)` terms that the bracket route produces for `n ≥ 2`.
pub fn partial_components_as_printed(b: &Bimodule, phi: &BimoduleCochain) -> Result<BimoduleCochain> {
    components(b, phi, false)
}

fn components(b: &Bimodule, phi: &BimoduleCochain, module_bracket_terms: bool) -> Result<BimoduleCochain> {
    check_dims(b, phi)?;
    let alg = b.base();
    let (ng, m) = phi.dims();
    let big = ng + m;
    let n = phi.degree();
    let f = phi.lifted();
    let regular = Bimodule::regular(alg);
    let d1 = delta(&regular, &phi.phi1_cochain())?;

    let v_part = |w: Vector| -> Vector { w[ng..].to_vec() };
    let g_part = |w: &Vector| -> Vector { w[..ng].to_vec() };
    let embed_v = |v: &[Scalar]| -> Vector {
        let mut w = zero_vector(big);
        w[ng..].clone_from_slice(v);
        w
    };
    let embed_g = |x: &[Scalar]| -> Vector {
        let mut w = zero_vector(big);
        w[..ng].clone_from_slice(x);
        w
    };
    let bracket = |i: usize, j: usize| alg.bracket(&unit_vector(ng, i), &unit_vector(ng, j));

    let d = (n + 1) as i32;
    let out = Cochain::from_fn(big, big, n + 1, |key| {
        let (prefix, last) = key.split_at(n);
        let last = last[0];
        let a = prefix.iter().filter(|&&i| i < ng).count();
        let t = if last < ng { (a as i32 + 1, (n - a) as i32) } else { (a as i32, (n - a) as i32 + 1) };
        let mut out = zero_vector(big);
        if t == (d, 0) {
            // all arguments in g
            let v = d1.eval_basis(key);
            out[..ng].clone_from_slice(&v);
        } else if t == (d - 1, 1) && last < ng {
            // (x₁, …, x_{n−1}, v, x_n)
            let xs = &prefix[..n - 1];
            let v = prefix[n - 1] - ng;
            let xn = last;
            let ev = unit_vector(m, v);
            let mut acc = zero_vector(m);
            let drop = |skip: &[usize]| -> Vec<usize> {
                (0..n - 1).filter(|i| !skip.contains(i)).map(|i| xs[i]).collect()
            };
            for i in 0..n - 1 {
                let s = Scalar::sign(i);
                let mut k1 = drop(&[i]);
                k1.push(v + ng);
                let mut k2 = k1.clone();
                k1.push(xn);
                add_scaled(&mut acc, &s, &b.left(xs[i]).apply(&v_part(f.eval_basis(&k1))));
                k2.push(xs[i]);
                add_scaled(&mut acc, &s, &b.right(xn).apply(&v_part(f.eval_basis(&k2))));
                let prod = embed_g(&alg.basis_product(xs[i], xn));
                let mut a3: Vec<Arg<'_>> = drop(&[i]).into_iter().map(Arg::Basis).collect();
                a3.push(Arg::Basis(v + ng));
                a3.push(Arg::Vector(&prod));
                add_scaled(&mut acc, &-s, &v_part(f.eval(&a3)));
                if module_bracket_terms {
                    let u = embed_v(&b.left(xs[i]).sub(b.right(xs[i])).apply(&ev));
                    let mut a4: Vec<Arg<'_>> = drop(&[i]).into_iter().map(Arg::Basis).collect();
                    a4.push(Arg::Vector(&u));
                    a4.push(Arg::Basis(xn));
                    add_scaled(&mut acc, &Scalar::sign(i + 1), &v_part(f.eval(&a4)));
                }
            }
            let sn1 = Scalar::sign(n + 1);
            let mut all_x: Vec<usize> = xs.to_vec();
            all_x.push(xn);
            let phi1_val = g_part(&f.eval_basis(&all_x));
            add_scaled(&mut acc, &sn1, &b.right_of(&phi1_val).apply(&ev));
            let mut k3: Vec<usize> = xs.to_vec();
            k3.push(v + ng);
            add_scaled(&mut acc, &sn1, &b.right(xn).apply(&v_part(f.eval_basis(&k3))));
            let rv = embed_v(&b.right(xn).apply(&ev));
            let mut a5: Vec<Arg<'_>> = xs.iter().map(|&x| Arg::Basis(x)).collect();
            a5.push(Arg::Vector(&rv));
            add_scaled(&mut acc, &Scalar::sign(n), &v_part(f.eval(&a5)));
            for i in 0..n - 1 {
                for j in i + 1..n - 1 {
                    let br = embed_g(&bracket(xs[i], xs[j]));
                    let mut a6: Vec<Arg<'_>> = vec![Arg::Vector(&br)];
                    a6.extend(drop(&[i, j]).into_iter().map(Arg::Basis));
                    a6.push(Arg::Basis(v + ng));
                    a6.push(Arg::Basis(xn));
                    add_scaled(&mut acc, &Scalar::sign(i + j), &v_part(f.eval(&a6)));
                }
            }
            out[ng..].clone_from_slice(&acc);
        } else if t == (d - 1, 1) {
            // (x₁, …, x_n, v)
            let xs = prefix;
            let v = last - ng;
            let ev = unit_vector(m, v);
            let mut acc = zero_vector(m);
            let drop = |skip: &[usize]| -> Vec<usize> {
                (0..n).filter(|i| !skip.contains(i)).map(|i| xs[i]).collect()
            };
            for i in 0..n {
                let s = Scalar::sign(i);
                let mut k1 = drop(&[i]);
                k1.push(xs[i]);
                let phi1_val = g_part(&f.eval_basis(&k1));
                add_scaled(&mut acc, &s, &b.left_of(&phi1_val).apply(&ev));
                let mut k2 = drop(&[i]);
                k2.push(v + ng);
                add_scaled(&mut acc, &s, &b.left(xs[i]).apply(&v_part(f.eval_basis(&k2))));
                let lv = embed_v(&b.left(xs[i]).apply(&ev));
                let mut a3: Vec<Arg<'_>> = drop(&[i]).into_iter().map(Arg::Basis).collect();
                a3.push(Arg::Vector(&lv));
                add_scaled(&mut acc, &-s, &v_part(f.eval(&a3)));
            }
            for i in 0..n {
                for j in i + 1..n {
                    let br = embed_g(&bracket(xs[i], xs[j]));
                    let mut a4: Vec<Arg<'_>> = vec![Arg::Vector(&br)];
                    a4.extend(drop(&[i, j]).into_iter().map(Arg::Basis));
                    a4.push(Arg::Basis(v + ng));
                    add_scaled(&mut acc, &Scalar::sign(i + j), &v_part(f.eval(&a4)));
                }
            }
            out[ng..].clone_from_slice(&acc);
        }
        out
    });
    BimoduleCochain::from_lifted(out, ng)
}

/// Matrix of `∂ : 𝒞^n → 𝒞^{n+1}` in [`BimoduleCochain::to_coords`] coordinates.
pub fn partial_matrix(b: &Bimodule, n: usize) -> Matrix {
    let (ng, m) = (b.base().dim(), b.module_dim());
    let cols = BimoduleCochain::space_dim(ng, m, n);
    let columns: Vec<Vector> = cochain_basis(ng, m, n)
        .iter()
        .map(|phi| partial_via_components(b, phi).expect("dims agree").to_coords())
        .collect();
    debug_assert_eq!(columns.len(), cols);
    Matrix::from_columns(BimoduleCochain::space_dim(ng, m, n + 1), &columns)
}

pub fn cochain_basis(ng: usize, m: usize, n: usize) -> Vec<BimoduleCochain> {
    let cols = BimoduleCochain::space_dim(ng, m, n);
    (0..cols)
        .map(|c| BimoduleCochain::from_coords(ng, m, n, &unit_vector(cols, c)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub n: usize,
    pub cochains: usize,
    /// Rank of `∂ : 𝒞^n → 𝒞^{n+1}`.
    pub rank_out: usize,
    /// Rank of `∂ : 𝒞^{n−1} → 𝒞^n` (zero for `n = 1`).
    pub rank_in: usize,
    pub dim: usize,
}

/// `dim H^n = dim ker ∂_n − rank ∂_{n−1}` for `n = 1..=nmax`.
pub fn cohomology_dims(b: &Bimodule, nmax: usize) -> Vec<CohomologyRow> {
    let (ng, m) = (b.base().dim(), b.module_dim());
    let mut rank_in = 0;
    (1..=nmax)
        .map(|n| {
            let cochains = BimoduleCochain::space_dim(ng, m, n);
            let rank_out = partial_matrix(b, n).rank();
            let row = CohomologyRow {
                n,
                cochains,
                rank_out,
                rank_in,
                dim: cochains - rank_out - rank_in,
            };
            rank_in = rank_out;
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_algebras::*;
    use crate::linalg::RationalSampler;

    fn random(ng: usize, m: usize, n: usize, seed: u64) -> BimoduleCochain {
        let mut s = RationalSampler::new(seed, 7);
        let dim = BimoduleCochain::space_dim(ng, m, n);
        let coords: Vec<Scalar> = (0..dim).map(|_| s.next_scalar()).collect();
        BimoduleCochain::from_coords(ng, m, n, &coords)
    }

    #[test]
    fn routes_agree() {
        for (b, seed) in [
            (Bimodule::regular(&a2()), 1),
            (Bimodule::regular(&a3a()).dual().unwrap(), 2),
            (Bimodule::regular(&a3h()), 3),
        ] {
            let (ng, m) = (b.base().dim(), b.module_dim());
            for n in 1..=3 {
                let phi = random(ng, m, n, seed * 10 + n as u64);
                assert_eq!(
                    partial_via_components(&b, &phi).unwrap(),
                    partial_via_mn(&b, &phi).unwrap(),
                    "n = {n}"
                );
            }
        }
    }

    #[test]
    fn printed_components_miss_module_bracket_terms() {
        let b = Bimodule::regular(&a2());
        let phi = random(2, 2, 2, 77);
        assert_ne!(partial_components_as_printed(&b, &phi).unwrap(), partial_via_mn(&b, &phi).unwrap());
        let phi1 = random(2, 2, 1, 78);
        assert_eq!(partial_components_as_printed(&b, &phi1).unwrap(), partial_via_mn(&b, &phi1).unwrap());
    }

    #[test]
    fn first_component_is_delta() {
        let b = Bimodule::regular(&a3a());
        let phi = random(3, 3, 2, 5);
        let d = partial_via_components(&b, &phi).unwrap();
        let want = delta(&Bimodule::regular(&a3a()), &phi.phi1_cochain()).unwrap();
        assert_eq!(d.phi1_cochain(), want);
    }

    #[test]
    fn coords_round_trip() {
        let phi = random(2, 3, 2, 9);
        assert_eq!(BimoduleCochain::from_coords(2, 3, 2, &phi.to_coords()), phi);
    }

    #[test]
    fn abelian_trivial_cohomology() {
        let alg = crate::Algebra::abelian(1);
        let rows = cohomology_dims(&Bimodule::trivial(&alg, 1), 2);
        assert_eq!(rows[0].rank_out, 0);
        assert_eq!(rows[0].dim, rows[0].cochains);
        assert_eq!(rows[1].dim, rows[1].cochains);
    }
}
