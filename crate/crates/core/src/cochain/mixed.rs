use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{canonical_keys, mn_bracket, sort_with_sign, Cochain};
use crate::error::{Error, Result};
use crate::linalg::matrix::{is_zero_vector, zero_vector};
use crate::linalg::{Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Block {
    G1,
    G2,
}

/// `∧^a g₁ ⊗ ∧^b g₂ ⊗ g_last → g_target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockShape {
    pub g1_args: usize,
    pub g2_args: usize,
    pub last: Block,
    pub target: Block,
}

impl BlockShape {
    pub fn new(g1_args: usize, g2_args: usize, last: Block, target: Block) -> Self {
        BlockShape {
            g1_args,
            g2_args,
            last,
            target,
        }
    }

    pub fn degree(&self) -> usize {
        self.g1_args + self.g2_args + 1
    }

    /// Bidegree the lift of a map of this shape carries.
    pub fn bidegree(&self) -> Bidegree {
        let (big_k, big_l) = self.key_type();
        match self.target {
            Block::G1 => Bidegree::new(big_k - 1, big_l),
            Block::G2 => Bidegree::new(big_k, big_l - 1),
        }
    }

    /// The `(K, L)` with inputs of this shape lying in `𝒢^{K,L}`.
    pub fn key_type(&self) -> (i32, i32) {
        let (a, b) = (self.g1_args as i32, self.g2_args as i32);
        match self.last {
            Block::G1 => (a + 1, b),
            Block::G2 => (a, b + 1),
        }
    }
}

/// `k|l`; `l` (or `k`) may be `−1` for maps between the two blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Bidegree {
    pub k: i32,
    pub l: i32,
}

impl Bidegree {
    pub fn new(k: i32, l: i32) -> Self {
        Bidegree { k, l }
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.k + o.k, self.l + o.l)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.k, self.l)
    }
}

/// A block-shaped multilinear map, antisymmetric within the `g₁` and `g₂` groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    n1: usize,
    n2: usize,
    shape: BlockShape,
    values: BTreeMap<(Vec<usize>, Vec<usize>, usize), Vector>,
}

impl BlockMap {
    pub fn zero(n1: usize, n2: usize, shape: BlockShape) -> Self {
        BlockMap {
            n1,
            n2,
            shape,
            values: BTreeMap::new(),
        }
    }

    fn block_dim(&self, b: Block) -> usize {
        match b {
            Block::G1 => self.n1,
            Block::G2 => self.n2,
        }
    }

    /// Builds the map from its values on increasing local indices.
    pub fn from_fn(
        n1: usize,
        n2: usize,
        shape: BlockShape,
        mut f: impl FnMut(&[usize], &[usize], usize) -> Vector,
    ) -> Self {
        use itertools::Itertools;
        let mut m = BlockMap::zero(n1, n2, shape);
        let last_dim = m.block_dim(shape.last);
        for xs in (0..n1).combinations(shape.g1_args) {
            for vs in (0..n2).combinations(shape.g2_args) {
                for last in 0..last_dim {
                    let v = f(&xs, &vs, last);
                    debug_assert_eq!(v.len(), m.block_dim(shape.target));
                    if !is_zero_vector(&v) {
                        m.values.insert((xs.clone(), vs.clone(), last), v);
                    }
                }
            }
        }
        m
    }

    pub fn shape(&self) -> BlockShape {
        self.shape
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at local indices in any order, with the sign of both group sorts.
    pub fn eval_local(&self, xs: &[usize], vs: &[usize], last: usize) -> Vector {
        let zero = || zero_vector(self.block_dim(self.shape.target));
        let (Some((sx, ox)), Some((sv, ov))) = (sort_with_sign(xs), sort_with_sign(vs)) else {
            return zero();
        };
        match self.values.get(&(sx, sv, last)) {
            None => zero(),
            Some(v) if ox != ov => v.iter().map(|x| -x).collect(),
            Some(v) => v.clone(),
        }
    }

    /// Reads the component of a cochain on `g₁ ⊕ g₂` with this shape.
    pub fn restrict(c: &Cochain, n1: usize, shape: BlockShape) -> Result<Self> {
        let n2 = c.dim().checked_sub(n1).ok_or_else(|| Error::dims("split exceeds dimension"))?;
        if c.degree() != shape.degree() || c.target() != c.dim() {
            return Err(Error::ShapeMismatch(format!(
                "degree-{} cochain cannot restrict to a degree-{} block",
                c.degree(),
                shape.degree()
            )));
        }
        let off = |b: Block| if b == Block::G1 { 0 } else { n1 };
        Ok(BlockMap::from_fn(n1, n2, shape, |xs, vs, last| {
            let key: Vec<usize> = xs
                .iter()
                .copied()
                .chain(vs.iter().map(|v| v + n1))
                .chain([last + off(shape.last)])
                .collect();
            let full = c.eval_basis(&key);
            match shape.target {
                Block::G1 => full[..n1].to_vec(),
                Block::G2 => full[n1..].to_vec(),
            }
        }))
    }
}

/// A cochain on `g₁ ⊕ g₂` with its splitting and a declared bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCochain {
    pub cochain: Cochain,
    pub n1: usize,
    pub declared: Option<Bidegree>,
}

impl MixedCochain {
    pub fn new(cochain: Cochain, n1: usize, declared: Option<Bidegree>) -> Self {
        MixedCochain {
            cochain,
            n1,
            declared,
        }
    }

    pub fn n2(&self) -> usize {
        self.cochain.dim() - self.n1
    }

    pub fn bracket(&self, other: &MixedCochain) -> Result<MixedCochain> {
        if self.n1 != other.n1 {
            return Err(Error::SpaceMismatch("different splittings".into()));
        }
        let declared = match (self.declared, other.declared) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(MixedCochain::new(mn_bracket(&self.cochain, &other.cochain)?, self.n1, declared))
    }

    pub fn add(&self, other: &MixedCochain) -> Result<MixedCochain> {
        let declared = if self.declared == other.declared { self.declared } else { None };
        Ok(MixedCochain::new(self.cochain.add(&other.cochain)?, self.n1, declared))
    }
}

/// Embeds a block map into the cochains on `g₁ ⊕ g₂`.
pub fn horizontal_lift(f: &BlockMap) -> MixedCochain {
    let (n1, n2) = f.dims();
    let shape = f.shape();
    let n = n1 + n2;
    let c = Cochain::from_fn(n, n, shape.degree(), |key| {
        let mut out = zero_vector(n);
        let (prefix, last) = key.split_at(key.len() - 1);
        let xs: Vec<usize> = prefix.iter().copied().filter(|&i| i < n1).collect();
        let vs: Vec<usize> = prefix.iter().filter(|&&i| i >= n1).map(|i| i - n1).collect();
        let last_block = if last[0] < n1 { Block::G1 } else { Block::G2 };
        if xs.len() != shape.g1_args || vs.len() != shape.g2_args || last_block != shape.last {
            return out;
        }
        let l = if last_block == Block::G1 { last[0] } else { last[0] - n1 };
        // a canonical key already lists g₁ entries before g₂ entries
        let v = f.eval_local(&xs, &vs, l);
        let off = if shape.target == Block::G1 { 0 } else { n1 };
        for (i, x) in v.into_iter().enumerate() {
            out[off + i] = x;
        }
        out
    });
    MixedCochain::new(c, n1, Some(shape.bidegree()))
}

/// The bidegree in the sense of the four-condition definition, or `None`.
/// A zero cochain reports its declared bidegree.
pub fn bidegree_of(f: &MixedCochain) -> Option<Bidegree> {
    let n1 = f.n1;
    let mut found: Option<Bidegree> = None;
    for (key, value) in f.cochain.entries() {
        let (prefix, last) = key.split_at(key.len() - 1);
        let a = prefix.iter().filter(|&&i| i < n1).count() as i32;
        let b = prefix.len() as i32 - a;
        let (big_k, big_l) = if last[0] < n1 { (a + 1, b) } else { (a, b + 1) };
        let g1_part = value[..n1].iter().any(|x| !x.is_zero());
        let g2_part = value[n1..].iter().any(|x| !x.is_zero());
        let candidates = [
            g1_part.then(|| Bidegree::new(big_k - 1, big_l)),
            g2_part.then(|| Bidegree::new(big_k, big_l - 1)),
        ];
        for c in candidates.into_iter().flatten() {
            match found {
                None => found = Some(c),
                Some(prev) if prev != c => return None,
                _ => {}
            }
        }
    }
    found.or(f.declared)
}

/// Independent evaluation of the lift formula on vectors `X_i = x_i + v_i`.
pub fn lift_by_unshuffles(f: &BlockMap, args: &[Vector]) -> Vector {
    use itertools::Itertools;
    let (n1, n2) = f.dims();
    let shape = f.shape();
    let n = n1 + n2;
    assert_eq!(args.len(), shape.degree());
    let m = args.len() - 1;
    let mut out = zero_vector(n);
    let off = if shape.target == Block::G1 { 0 } else { n1 };
    for a in (0..m).combinations(shape.g1_args) {
        let b: Vec<usize> = (0..m).filter(|i| !a.contains(i)).collect();
        if b.len() != shape.g2_args {
            continue;
        }
        let order: Vec<usize> = a.iter().chain(&b).copied().collect();
        let sign = super::sequence_sign(&order);
        // expand each argument in the block it is read from
        let mut slots: Vec<Vec<(usize, Scalar)>> = Vec::new();
        for &i in &a {
            slots.push((0..n1).map(|j| (j, args[i][j].clone())).collect());
        }
        for &i in &b {
            slots.push((0..n2).map(|j| (j, args[i][n1 + j].clone())).collect());
        }
        let last = &args[m];
        slots.push(match shape.last {
            Block::G1 => (0..n1).map(|j| (j, last[j].clone())).collect(),
            Block::G2 => (0..n2).map(|j| (j, last[n1 + j].clone())).collect(),
        });
        for choice in slots.iter().map(|s| s.iter()).multi_cartesian_product() {
            let coeff: Scalar = choice.iter().map(|(_, c)| c.clone()).product();
            if coeff.is_zero() {
                continue;
            }
            let idx: Vec<usize> = choice.iter().map(|(j, _)| *j).collect();
            let (xs, rest) = idx.split_at(shape.g1_args);
            let (vs, l) = rest.split_at(shape.g2_args);
            let v = f.eval_local(xs, vs, l[0]);
            for (t, x) in v.iter().enumerate() {
                out[off + t] += &(&sign * &coeff) * x;
            }
        }
    }
    out
}

/// Canonical keys of `g₁ ⊕ g₂` with their `(K, L)` type.
pub fn keys_with_type(n1: usize, n: usize, degree: usize) -> impl Iterator<Item = (Vec<usize>, (i32, i32))> {
    canonical_keys(n, degree).map(move |k| {
        let (prefix, last) = k.split_at(k.len() - 1);
        let a = prefix.iter().filter(|&&i| i < n1).count() as i32;
        let b = prefix.len() as i32 - a;
        let t = if last[0] < n1 { (a + 1, b) } else { (a, b + 1) };
        (k, t)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus_algebras::a2;
    use crate::linalg::RationalSampler;

    fn random_block(n1: usize, n2: usize, shape: BlockShape, seed: u64) -> BlockMap {
        let mut s = RationalSampler::new(seed, 6);
        let t = if shape.target == Block::G1 { n1 } else { n2 };
        BlockMap::from_fn(n1, n2, shape, |_, _, _| (0..t).map(|_| s.next_scalar()).collect())
    }

    #[test]
    fn alpha_lift_ignores_module_components() {
        let alg = a2();
        let alpha = BlockMap::from_fn(2, 2, BlockShape::new(1, 0, Block::G1, Block::G1), |xs, _, l| {
            alg.basis_product(xs[0], l)
        });
        let lifted = horizontal_lift(&alpha);
        let mut s = RationalSampler::new(1, 9);
        let xv: Vec<Vector> = (0..2).map(|_| (0..4).map(|_| s.next_scalar()).collect()).collect();
        let got = lifted.cochain.eval_vectors(&xv);
        let mut want = alg.mul(&xv[0][..2], &xv[1][..2]);
        want.extend([Scalar::zero(), Scalar::zero()]);
        assert_eq!(got, want);
        assert_eq!(bidegree_of(&lifted), Some(Bidegree::new(1, 0)));
    }

    #[test]
    fn lift_matches_unshuffle_sum() {
        let shapes = [
            BlockShape::new(1, 1, Block::G1, Block::G2),
            BlockShape::new(1, 1, Block::G2, Block::G1),
            BlockShape::new(2, 0, Block::G1, Block::G1),
            BlockShape::new(0, 2, Block::G1, Block::G2),
        ];
        let mut s = RationalSampler::new(2, 5);
        for (i, shape) in shapes.into_iter().enumerate() {
            let f = random_block(2, 2, shape, 40 + i as u64);
            let lifted = horizontal_lift(&f);
            for _ in 0..3 {
                let args: Vec<Vector> = (0..shape.degree()).map(|_| (0..4).map(|_| s.next_scalar()).collect()).collect();
                assert_eq!(lifted.cochain.eval_vectors(&args), lift_by_unshuffles(&f, &args));
            }
            assert_eq!(BlockMap::restrict(&lifted.cochain, 2, shape).unwrap(), f);
        }
    }

    #[test]
    fn zero_lift_reports_declared_bidegree() {
        let f = BlockMap::zero(2, 1, BlockShape::new(0, 0, Block::G1, Block::G2));
        let l = horizontal_lift(&f);
        assert!(l.cochain.is_zero());
        assert_eq!(bidegree_of(&l), Some(Bidegree::new(1, -1)));
    }

    #[test]
    fn bracket_adds_bidegrees() {
        let a = horizontal_lift(&random_block(2, 2, BlockShape::new(1, 0, Block::G1, Block::G1), 7));
        let b = horizontal_lift(&random_block(2, 2, BlockShape::new(1, 0, Block::G2, Block::G2), 8));
        let c = a.bracket(&b).unwrap();
        assert_eq!(bidegree_of(&c), Some(Bidegree::new(2, 0)));
    }
}
