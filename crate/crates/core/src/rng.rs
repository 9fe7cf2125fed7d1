/// 64-bit linear congruential generator.
///
/// `state ← state · 6364136223846793005 + 1442695040888963407 (mod 2^64)`;
/// each draw returns the high 32 bits of the new state. The constants are
/// Knuth's MMIX parameters, so other implementations can reproduce every
/// sequence generated from a given seed.
#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform draw from `0..bound` by rejection. `bound` must be nonzero.
    pub fn below(&mut self, bound: u32) -> u32 {
        assert!(bound > 0, "empty range");
        let zone = u32::MAX - (u32::MAX - bound + 1) % bound;
        loop {
            let x = self.next_u32();
            if x <= zone {
                return x % bound;
            }
        }
    }

    /// Uniform draw from the inclusive range `lo..=hi`.
    pub fn range_inclusive(&mut self, lo: u32, hi: u32) -> u32 {
        lo + self.below(hi - lo + 1)
    }

    pub fn coin(&mut self) -> bool {
        self.below(2) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_draws_are_pinned() {
        // state_1 = 1442695040888963407, state_2 = state_1 * a + c.
        let mut rng = Lcg64::new(0);
        assert_eq!(rng.next_u32(), (1_442_695_040_888_963_407u64 >> 32) as u32);
        let s2 = 1_442_695_040_888_963_407u64
            .wrapping_mul(Lcg64::MULTIPLIER)
            .wrapping_add(Lcg64::INCREMENT);
        assert_eq!(rng.next_u32(), (s2 >> 32) as u32);
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = Lcg64::new(7);
        for bound in 1..40 {
            for _ in 0..50 {
                assert!(rng.below(bound) < bound);
            }
        }
    }
}
