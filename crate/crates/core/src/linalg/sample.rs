use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::scalar::Scalar;

/// Deterministic stream of bounded rationals.
#[derive(Clone, Debug)]
pub struct RationalSampler {
    rng: ChaCha8Rng,
    bound: u64,
}

impl RationalSampler {
    pub fn new(seed: u64, bound: u64) -> Self {
        RationalSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound,
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `p/q` with `|p| <= bound` and `1 <= q <= bound`. A zero bound yields 0.
    pub fn next_scalar(&mut self) -> Scalar {
        if self.bound == 0 {
            return Scalar::zero();
        }
        let b = self.bound as i64;
        let p = self.rng.gen_range(-b..=b);
        let q = self.rng.gen_range(1..=b);
        Scalar::ratio(p, q)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }

    pub fn next_index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

pub fn sample_rational(seed: u64, bound: u64) -> Scalar {
    RationalSampler::new(seed, bound).next_scalar()
}
