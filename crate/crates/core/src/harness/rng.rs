//! Seeded instance generation.
//!
//! The generator is SplitMix64: the state advances by `0x9E3779B97F4A7C15`
//! and each output is the state passed through
//!
//! ```text
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z =  z ^ (z >> 31)
//! ```
//!
//! with wrapping 64-bit multiplication. Bounded draws use rejection sampling
//! over 64-bit words (two words, high first, when the range exceeds 2^64),
//! so streams are identical on every platform.

use crate::kronmul::MatrixNat;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MIX1: u64 = 0xBF58_476D_1CE4_E5B9;
const MIX2: u64 = 0x94D0_49BB_1331_11EB;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngState {
    state: u64,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(MIX1);
        z = (z ^ (z >> 27)).wrapping_mul(MIX2);
        z ^ (z >> 31)
    }

    /// An independent stream seeded from this one's next output.
    pub fn fork(&mut self) -> RngState {
        RngState::new(self.next_u64())
    }

    /// Uniform draw from `0..=max`.
    pub fn uniform(&mut self, max: u128) -> u128 {
        if max <= u64::MAX as u128 {
            let span = max + 1;
            if span == 1 << 64 {
                return self.next_u64() as u128;
            }
            let limit = ((1u128 << 64) / span) * span;
            loop {
                let x = self.next_u64() as u128;
                if x < limit {
                    return x % span;
                }
            }
        }
        if max == u128::MAX {
            return self.next_u128();
        }
        let span = max + 1;
        let limit = u128::MAX - (u128::MAX % span + 1) % span;
        loop {
            let x = self.next_u128();
            if x <= limit {
                return x % span;
            }
        }
    }

    fn next_u128(&mut self) -> u128 {
        let hi = self.next_u64() as u128;
        (hi << 64) | self.next_u64() as u128
    }

    /// Uniform index in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.uniform((hi - lo) as u128) as usize
    }
}

/// `n x n` matrix with entries uniform in `0..=max_entry`, drawn row-major.
pub fn random_matrix(n: usize, max_entry: u128, rng: &mut RngState) -> MatrixNat {
    let entries = (0..n * n).map(|_| rng.uniform(max_entry)).collect();
    MatrixNat::new(n, entries).expect("n*n entries")
}
