//! Seed derivation and a pinned instance-generation PRNG.
//!
//! Random instances must be portable: the same parameters and seed have to
//! produce the same instance everywhere, forever. [`SplitMix64`] spells
//! out the exact algorithm (the splitmix64 sequence: state advances by the
//! 64-bit golden ratio, output is the three-step xor-multiply finalizer;
//! bounded draws are plain `next() % n`). One master seed also fans out
//! into per-run seeds through the same finalizer, so multi-restart
//! experiments replay from a single number.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Splitmix64 finalizer applied to one value: a cheap, well-scrambled
/// 64-bit mixing function.
pub fn mix(z: u64) -> u64 {
    finalize(z.wrapping_add(GOLDEN))
}

/// Seed for restart number `r` (0-based) of the experiment with the given
/// master seed.
pub fn restart_seed(master: u64, r: u64) -> u64 {
    mix(master ^ (r + 1).wrapping_mul(GOLDEN))
}

/// The splitmix64 generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        finalize(self.state)
    }

    /// Draw in `0..n` as `next_u64() % n`; the slight modulo bias is
    /// irrelevant here and the definition stays portable.
    pub fn next_below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn seeds_are_deterministic_and_spread() {
        assert_eq!(restart_seed(42, 0), restart_seed(42, 0));
        let seeds: HashSet<u64> = (0..1000).map(|r| restart_seed(42, r)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_ne!(restart_seed(42, 0), restart_seed(43, 0));
    }

    #[test]
    fn stream_replays_and_reference_value_is_pinned() {
        let mut a = SplitMix64::new(1234567);
        let mut b = SplitMix64::new(1234567);
        let xs: Vec<u64> = (0..10).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..10).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        // Known first output of splitmix64 from seed 0.
        assert_eq!(SplitMix64::new(0).next_u64(), 0xE220_A839_7B1D_CDAF);
    }

    #[test]
    fn bounded_draws_stay_in_range() {
        let mut rng = SplitMix64::new(9);
        for _ in 0..100 {
            assert!(rng.next_below(7) < 7);
        }
    }
}
