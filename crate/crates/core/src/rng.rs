//! Seeded random source for reproducible instance generation.
//!
//! This is splitmix64 (Steele, Lea, Flood; the constants below are the
//! published ones). It is tiny, stateless beyond one word, and trivially
//! reimplementable in any language, which is the point: generated instances
//! must be bit-identical across runs, platforms, and bindings. Bounded draws
//! use plain modulo, which is part of the reproducibility contract.

#[derive(Clone, Debug)]
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

    /// Uniform draw in [0, bound); bound must be positive.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Bernoulli draw with probability num/den.
    pub fn next_ratio(&mut self, num: u64, den: u64) -> bool {
        debug_assert!(den > 0 && num <= den);
        self.next_below(den) < num
    }

    /// Uniform draw in [lo, hi], inclusive.
    pub fn next_range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + self.next_below(span) as i64
    }

    pub fn next_sign_is_negative(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}
