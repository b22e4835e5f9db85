//! Seeded random source for coefficients and system generation.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Scalar;
use crate::ring::Ring;

/// ChaCha8 stream seeded from a `u64`; the same seed yields the same
/// scalars on every platform.
#[derive(Clone, Debug)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> SeededRng {
        SeededRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform integer in `[0, bound)` by rejection sampling.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.inner.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Uniform in `[0, p)`.
    pub fn scalar(&mut self, ring: &Ring) -> Scalar {
        ring.field().from_u64(self.below(ring.prime() as u64))
    }

    /// Uniform in `[1, p)`.
    pub fn nonzero_scalar(&mut self, ring: &Ring) -> Scalar {
        ring.field().from_u64(1 + self.below(ring.prime() as u64 - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_in_range() {
        let r = Ring::new(7, ["x"], crate::MonomialOrder::DegRevLex).unwrap();
        let mut a = SeededRng::new(42);
        let mut b = SeededRng::new(42);
        for _ in 0..200 {
            let x = a.nonzero_scalar(&r);
            assert_eq!(x, b.nonzero_scalar(&r));
            assert!(x.value() >= 1 && x.value() < 7);
        }
    }
}
