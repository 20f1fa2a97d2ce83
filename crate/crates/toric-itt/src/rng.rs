//! Deterministic pseudo-random stream for coefficient generation.
//!
//! SplitMix64 with a fixed update formula so that seeded runs replay
//! identically on every platform and toolchain. Not cryptographic.

/// SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish nonzero integer in [-bound, bound]. The modulo bias is
    /// irrelevant here; only determinism and nonzero-ness matter.
    pub fn nonzero_in(&mut self, bound: u64) -> i64 {
        assert!(bound >= 1);
        let r = self.next_u64() % (2 * bound);
        let v = r as i64 - bound as i64;
        if v >= 0 {
            v + 1
        } else {
            v
        }
    }
}
