use std::ops::{Index, IndexMut};

use super::scalar::Scalar;

/// Cube tensor `c[i][j][k]`; for structure constants `e_i·e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 {
            n,
            data: vec![Scalar::zero(); n * n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut t = Tensor3::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t[(i, j, k)] = f(i, j, k);
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries in lexicographic `(i, j, k)` order.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize, usize), &Scalar)> {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| ((idx / (n * n), (idx / n) % n, idx % n), c))
    }

    /// The vector `Σ_k c[i][j][k] e_k`.
    pub fn fiber(&self, i: usize, j: usize) -> Vec<Scalar> {
        let start = (i * self.n + j) * self.n;
        self.data[start..start + self.n].to_vec()
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.n, other.n);
        Tensor3 {
            n: self.n,
            data: super::matrix::vec_sub(&self.data, &other.data),
        }
    }

    pub fn add(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.n, other.n);
        Tensor3 {
            n: self.n,
            data: super::matrix::vec_add(&self.data, &other.data),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Tensor3 {
        Tensor3 {
            n: self.n,
            data: super::matrix::vec_scale(c, &self.data),
        }
    }
}

impl Index<(usize, usize, usize)> for Tensor3 {
    type Output = Scalar;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &Scalar {
        &self.data[(i * self.n + j) * self.n + k]
    }
}

impl IndexMut<(usize, usize, usize)> for Tensor3 {
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut Scalar {
        &mut self.data[(i * self.n + j) * self.n + k]
    }
}
