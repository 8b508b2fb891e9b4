//! Cochains `Hom(∧^{p−1}g ⊗ g, W)`, the Matsushima-Nijenhuis bracket, the
//! coboundary operators and the block calculus on `g₁ ⊕ g₂`.

mod delta;
mod mixed;
mod mn;
mod partial;

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::{add_scaled, is_zero_vector, zero_vector};
use crate::linalg::{Matrix, RationalSampler, Scalar, Vector};

pub use delta::{delta, delta_matrix};
pub use mixed::{bidegree_of, horizontal_lift, lift_by_unshuffles, Bidegree, Block, BlockMap, BlockShape, MixedCochain};
pub use mn::{diamond, mn_bracket};
pub use partial::{
    cochain_basis, cohomology_dims, partial_components_as_printed, partial_matrix, partial_via_components,
    partial_via_mn, BimoduleCochain,
    CohomologyRow,
};

/// A multilinear map `W`-valued in `p` arguments, antisymmetric in the first `p − 1`.
///
/// Only keys with a strictly increasing prefix are stored, and zero values are dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    dim: usize,
    target: usize,
    degree: usize,
    values: BTreeMap<Vec<usize>, Vector>,
}

/// One argument of a cochain evaluation.
#[derive(Clone, Copy, Debug)]
pub enum Arg<'a> {
    Basis(usize),
    Vector(&'a [Scalar]),
}

impl Cochain {
    pub fn zero(dim: usize, target: usize, degree: usize) -> Self {
        assert!(degree >= 1, "cochains have degree at least 1");
        Cochain {
            dim,
            target,
            degree,
            values: BTreeMap::new(),
        }
    }

    /// Evaluates `f` on every canonical key.
    pub fn from_fn(dim: usize, target: usize, degree: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Self {
        let mut c = Cochain::zero(dim, target, degree);
        for key in canonical_keys(dim, degree) {
            let v = f(&key);
            debug_assert_eq!(v.len(), target);
            c.insert_canonical(key, v);
        }
        c
    }

    /// A linear map as a 1-cochain.
    pub fn from_matrix(m: &Matrix) -> Self {
        Cochain::from_fn(m.cols(), m.rows(), 1, |k| m.column(k[0]))
    }

    /// A bilinear map `(x, y) ↦ Σ c[i][j][k] e_k` as a 2-cochain.
    pub fn from_tensor(t: &crate::linalg::Tensor3) -> Self {
        Cochain::from_fn(t.dim(), t.dim(), 2, |k| t.fiber(k[0], k[1]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero canonical entries.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.values.iter()
    }

    /// Sets the value at an arbitrary key, rewriting it into canonical form.
    pub fn set(&mut self, key: &[usize], value: Vector) -> Result<()> {
        self.check_key(key)?;
        if value.len() != self.target {
            return Err(Error::dims("cochain value has the wrong length"));
        }
        let (prefix, last) = key.split_at(key.len() - 1);
        let Some((sorted, sign)) = sort_with_sign(prefix) else {
            return if is_zero_vector(&value) {
                Ok(())
            } else {
                Err(Error::Validation("repeated antisymmetric argument with nonzero value".into()))
            };
        };
        let mut k = sorted;
        k.push(last[0]);
        let v = if sign { value.iter().map(|x| -x).collect() } else { value };
        self.insert_canonical(k, v);
        Ok(())
    }

    fn insert_canonical(&mut self, key: Vec<usize>, value: Vector) {
        if is_zero_vector(&value) {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
    }

    fn check_key(&self, key: &[usize]) -> Result<()> {
        if key.len() != self.degree || key.iter().any(|&i| i >= self.dim) {
            return Err(Error::dims(format!(
                "key {key:?} does not fit a degree-{} cochain on dimension {}",
                self.degree, self.dim
            )));
        }
        Ok(())
    }

    /// Value on basis vectors, antisymmetrizing the leading slots.
    pub fn eval_basis(&self, args: &[usize]) -> Vector {
        debug_assert_eq!(args.len(), self.degree);
        let (prefix, last) = args.split_at(args.len() - 1);
        let Some((mut sorted, negate)) = sort_with_sign(prefix) else {
            return zero_vector(self.target);
        };
        sorted.push(last[0]);
        match self.values.get(&sorted) {
            None => zero_vector(self.target),
            Some(v) if negate => v.iter().map(|x| -x).collect(),
            Some(v) => v.clone(),
        }
    }

    /// Multilinear evaluation on a mix of basis and general vectors.
    pub fn eval(&self, args: &[Arg<'_>]) -> Vector {
        assert_eq!(args.len(), self.degree, "wrong number of cochain arguments");
        let mut out = zero_vector(self.target);
        let mut idx = Vec::with_capacity(args.len());
        self.eval_rec(args, &mut idx, &Scalar::one(), &mut out);
        out
    }

    fn eval_rec(&self, args: &[Arg<'_>], idx: &mut Vec<usize>, coeff: &Scalar, out: &mut [Scalar]) {
        if idx.len() == args.len() {
            add_scaled(out, coeff, &self.eval_basis(idx));
            return;
        }
        match args[idx.len()] {
            Arg::Basis(i) => {
                idx.push(i);
                self.eval_rec(args, idx, coeff, out);
                idx.pop();
            }
            Arg::Vector(v) => {
                for (i, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    idx.push(i);
                    self.eval_rec(args, idx, &(coeff * c), out);
                    idx.pop();
                }
            }
        }
    }

    /// Evaluation on general vectors.
    pub fn eval_vectors(&self, args: &[Vector]) -> Vector {
        let a: Vec<Arg<'_>> = args.iter().map(|v| Arg::Vector(v)).collect();
        self.eval(&a)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (k, v) in &other.values {
            let mut acc = out.values.remove(k).unwrap_or_else(|| zero_vector(self.target));
            add_scaled(&mut acc, &Scalar::one(), v);
            out.insert_canonical(k.clone(), acc);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        let mut out = Cochain::zero(self.dim, self.target, self.degree);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.values {
            out.values.insert(k.clone(), v.iter().map(|x| c * x).collect());
        }
        out
    }

    fn same_shape(&self, other: &Cochain) -> Result<()> {
        if (self.dim, self.target, self.degree) != (other.dim, other.target, other.degree) {
            return Err(Error::SpaceMismatch(format!(
                "cochain shapes differ: (dim {}, target {}, degree {}) vs (dim {}, target {}, degree {})",
                self.dim, self.target, self.degree, other.dim, other.target, other.degree
            )));
        }
        Ok(())
    }

    /// Coordinates against the basis `(canonical key, output index)` in lexicographic order.
    pub fn to_coords(&self) -> Vector {
        canonical_keys(self.dim, self.degree)
            .flat_map(|k| self.values.get(&k).cloned().unwrap_or_else(|| zero_vector(self.target)))
            .collect()
    }

    pub fn from_coords(dim: usize, target: usize, degree: usize, coords: &[Scalar]) -> Self {
        let mut it = coords.chunks(target.max(1));
        Cochain::from_fn(dim, target, degree, |_| {
            if target == 0 {
                Vec::new()
            } else {
                it.next().expect("coordinate vector too short").to_vec()
            }
        })
    }

    pub fn space_dim(dim: usize, target: usize, degree: usize) -> usize {
        binomial(dim, degree - 1) * dim * target
    }

    /// Random cochain with entries from `sampler`; roughly `density` percent nonzero.
    pub fn random(dim: usize, target: usize, degree: usize, sampler: &mut RationalSampler, density: u64) -> Self {
        Cochain::from_fn(dim, target, degree, |_| {
            (0..target)
                .map(|_| {
                    if sampler.next_u64() % 100 < density {
                        sampler.next_scalar()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
    }
}

/// All keys `(i₁ < … < i_{p−1}, last)` in lexicographic order.
pub fn canonical_keys(dim: usize, degree: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..dim).combinations(degree - 1).flat_map(move |prefix| {
        (0..dim).map(move |last| {
            let mut k = prefix.clone();
            k.push(last);
            k
        })
    })
}

/// Sorts distinct indices; returns `None` on a repeat, else whether the permutation is odd.
pub fn sort_with_sign(xs: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = xs.to_vec();
    let mut odd = false;
    // insertion sort counts transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((v, odd))
}

/// Sign of a sequence of distinct integers viewed as a permutation of its sorted order.
pub fn sequence_sign(xs: &[usize]) -> Scalar {
    let inversions = (0..xs.len())
        .flat_map(|i| (i + 1..xs.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| xs[i] > xs[j])
        .count();
    Scalar::sign(inversions)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct EntryJson {
    args: Vec<usize>,
    value: Vec<Scalar>,
}

/// Wire form; `dim` and `target` are supplied by the surrounding scenario.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CochainJson {
    pub degree: usize,
    entries: Vec<EntryJson>,
}

impl CochainJson {
    pub fn from_cochain(c: &Cochain) -> Self {
        CochainJson {
            degree: c.degree,
            entries: c
                .values
                .iter()
                .map(|(k, v)| EntryJson {
                    args: k.iter().map(|i| i + 1).collect(),
                    value: v.clone(),
                })
                .collect(),
        }
    }

    pub fn into_cochain(self, dim: usize, target: usize) -> Result<Cochain> {
        if self.degree == 0 {
            return Err(Error::Validation("cochain degree must be at least 1".into()));
        }
        let mut c = Cochain::zero(dim, target, self.degree);
        for e in self.entries {
            if e.args.iter().any(|&a| a == 0) {
                return Err(Error::Validation("cochain arguments are 1-based".into()));
            }
            let key: Vec<usize> = e.args.iter().map(|a| a - 1).collect();
            let mut acc = c.eval_basis_checked(&key)?;
            if e.value.len() != target {
                return Err(Error::dims("cochain value has the wrong length"));
            }
            add_scaled(&mut acc, &Scalar::one(), &e.value);
            c.set(&key, acc)?;
        }
        Ok(c)
    }
}

impl Cochain {
    fn eval_basis_checked(&self, key: &[usize]) -> Result<Vector> {
        self.check_key(key)?;
        Ok(self.eval_basis(key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetric_storage() {
        let mut c = Cochain::zero(3, 1, 3);
        c.set(&[2, 0, 1], vec![Scalar::from_int(5)]).unwrap();
        assert_eq!(c.eval_basis(&[0, 2, 1]), vec![Scalar::from_int(-5)]);
        assert_eq!(c.eval_basis(&[2, 0, 1]), vec![Scalar::from_int(5)]);
        assert!(is_zero_vector(&c.eval_basis(&[1, 1, 0])));
        assert_eq!(c.entries().count(), 1);
    }

    #[test]
    fn coordinates_round_trip() {
        let mut s = RationalSampler::new(3, 9);
        let c = Cochain::random(3, 2, 3, &mut s, 60);
        let back = Cochain::from_coords(3, 2, 3, &c.to_coords());
        assert_eq!(c, back);
        assert_eq!(c.to_coords().len(), Cochain::space_dim(3, 2, 3));
    }

    #[test]
    fn multilinear_evaluation() {
        let m = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let c = Cochain::from_matrix(&m);
        let v = vec![Scalar::from_int(1), Scalar::from_int(-1)];
        assert_eq!(c.eval(&[Arg::Vector(&v)]), m.apply(&v));
    }

    #[test]
    fn sign_helpers() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], false)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], true)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
        assert_eq!(sequence_sign(&[1, 0, 2]), -Scalar::one());
        assert_eq!(binomial(5, 2), 10);
    }
}
