//! Reproducible random numbers and seed derivation.
//!
//! The generator is SplitMix64 (Steele, Lea and Flood), chosen because it is
//! a few lines long and trivially re-implementable elsewhere:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! All arithmetic wraps modulo 2^64. Uniform doubles take the top 53 bits.

use std::f64::consts::PI;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Finalizer shared by the generator and [`derive_seed`].
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[low, high)`.
    pub fn uniform(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.next_f64()
    }

    /// Uniform index in `0..n` by 128-bit multiply-shift. `n` must be nonzero.
    pub fn below(&mut self, n: usize) -> usize {
        ((u128::from(self.next_u64()) * n as u128) >> 64) as usize
    }

    /// `dim` angles uniform in `[-pi, pi)`.
    pub fn angles(&mut self, dim: usize) -> Vec<f64> {
        (0..dim).map(|_| self.uniform(-PI, PI)).collect()
    }
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(mut h: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Seed for one run: `mix64(FNV-1a-64(master_le ‖ city_utf8 ‖ 0xFF ‖ instance_le ‖ run_le))`.
///
/// All integers are encoded as 8 little-endian bytes. The 0xFF separator
/// cannot occur inside UTF-8 text.
pub fn derive_seed(master_seed: u64, city: &str, instance: u64, run: u64) -> u64 {
    let mut h = fnv1a(FNV_OFFSET, &master_seed.to_le_bytes());
    h = fnv1a(h, city.as_bytes());
    h = fnv1a(h, &[0xFF]);
    h = fnv1a(h, &instance.to_le_bytes());
    h = fnv1a(h, &run.to_le_bytes());
    mix64(h)
}
