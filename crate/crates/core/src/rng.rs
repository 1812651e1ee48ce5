//! Deterministic pseudo-randomness.
//!
//! All randomness in the crate flows from explicit `u64` seeds through the
//! SplitMix64 mixer, so identical invocations are byte-identical across
//! platforms and releases. Rolling our own keeps the output stable in a way
//! a third-party RNG's major-version bumps would not.

/// One step of the SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Keyed hash of a (seed, set, element) triple, used as the membership
/// predicate of implicit random set families.
#[inline]
pub fn keyed_hash(seed: u64, set: u64, element: u64) -> u64 {
    mix64(mix64(mix64(seed) ^ set) ^ element)
}

/// Small sequential generator for simulations and sampled tests.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, bound)` by rejection; `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    pub fn coin(&mut self, p: f64) -> bool {
        (self.next_u64() as f64) / (u64::MAX as f64) < p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mix_is_deterministic() {
        assert_eq!(mix64(42), mix64(42));
        assert_eq!(keyed_hash(1, 2, 3), keyed_hash(1, 2, 3));
        assert_ne!(keyed_hash(1, 2, 3), keyed_hash(1, 2, 4));
        assert_ne!(keyed_hash(1, 2, 3), keyed_hash(2, 2, 3));
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            assert!(rng.below(13) < 13);
        }
    }
}
