//! Deterministic random number generation.
//!
//! All randomized routines in this crate derive their draws from a `u64`
//! seed through ChaCha8, so results are reproducible across platforms and
//! independent of scheduling.

use rand_core::{RngCore, SeedableRng};

/// Deterministic stream of floats derived from a seed.
pub struct SeededRng(rand_chacha::ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(rand_chacha::ChaCha8Rng::seed_from_u64(seed))
    }

    /// Derives an independent stream for a sub-task; `index` separates
    /// parallelizable units (e.g. trials) deterministically.
    pub fn derive(seed: u64, index: u64) -> Self {
        // mix with splitmix64-style constants to decorrelate streams
        let mixed = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        SeededRng::new(mixed.wrapping_add(0xBF58_476D_1CE4_E5B9))
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[-1, 1)`.
    pub fn symmetric(&mut self) -> f64 {
        2.0 * self.uniform() - 1.0
    }

    /// Standard complex Gaussian (unit variance per component).
    pub fn complex_gaussian(&mut self) -> crate::C64 {
        // Box-Muller
        let u1 = self.uniform().max(1e-300);
        let u2 = self.uniform();
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let th = 2.0 * core::f64::consts::PI * u2;
        crate::C64::new(r * libm::cos(th), r * libm::sin(th))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
}
