//! Seeded random draws standing in for "generic" choices.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;

pub const DEFAULT_SEED: u64 = 0x1d5_5eed;
pub const DEFAULT_BOUND: u64 = 32;
pub const DEFAULT_DRAWS: usize = 2;
pub const DEFAULT_RETRIES: usize = 5;

/// What a draw is used for; keeps streams of different invariants apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Purpose {
    /// Linear projection for the polar multiplicity `m_i`.
    Polar(u32),
    /// Smoothing direction and linear form for `m_d`.
    TopPolar,
    /// Linear form for the relative polar variety of a family.
    RelativePolar,
    /// Hyperplane section used by the Milnor-number cross-check.
    Section,
}

impl Purpose {
    fn code(self) -> u64 {
        match self {
            Self::Polar(i) => 0x100 + i as u64,
            Self::TopPolar => 1,
            Self::RelativePolar => 2,
            Self::Section => 3,
        }
    }
}

/// Seed, coefficient bound and stability policy for random draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityContext {
    pub seed: u64,
    /// Numerators and denominators are drawn from `1..=bound`.
    pub bound: u64,
    /// Number of independent draws that must agree.
    pub draws: usize,
    /// Number of rounds of draws before giving up.
    pub retries: usize,
}

impl Default for GenericityContext {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            bound: DEFAULT_BOUND,
            draws: DEFAULT_DRAWS,
            retries: DEFAULT_RETRIES,
        }
    }
}

impl GenericityContext {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    /// Independent generator for draw number `index` of `purpose`.
    pub fn stream(&self, purpose: Purpose, index: u64) -> DrawStream {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(purpose.code() << 32 | index);
        DrawStream {
            rng,
            bound: self.bound.max(1),
        }
    }
}

pub struct DrawStream {
    rng: ChaCha8Rng,
    bound: u64,
}

impl DrawStream {
    /// Nonzero rational `±p/q` with `1 <= p, q <= bound`.
    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(1..=self.bound);
        let q = self.rng.gen_range(1..=self.bound);
        let sign = if self.rng.gen::<bool>() { 1 } else { -1 };
        Rational::new(BigInt::from(p) * sign, BigInt::from(q))
    }

    pub fn vector(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.rational()).collect()
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
        (0..rows).map(|_| self.vector(cols)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};

    #[test]
    fn same_seed_same_draws() {
        let c = GenericityContext::with_seed(7);
        let a = c.stream(Purpose::TopPolar, 0).matrix(3, 3);
        let b = c.stream(Purpose::TopPolar, 0).matrix(3, 3);
        assert_eq!(a, b);
        let other = c.stream(Purpose::TopPolar, 1).matrix(3, 3);
        assert_ne!(a, other);
    }

    #[test]
    fn draws_are_bounded_and_nonzero() {
        let c = GenericityContext {
            bound: 5,
            ..GenericityContext::with_seed(1)
        };
        let mut s = c.stream(Purpose::Polar(1), 0);
        for _ in 0..200 {
            let r = s.rational();
            assert!(!r.is_zero());
            assert!(r.numer().abs() <= BigInt::from(5));
            assert!(r.denom() <= &BigInt::from(5));
        }
    }
}
