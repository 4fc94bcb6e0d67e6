//! Seeded standard-normal deviates.
//!
//! The generator is pinned so that a seed reproduces the same mixer and the
//! same channel noise on every platform:
//!
//! * uniform source: xoshiro256++ seeded through SplitMix64
//!   (`Xoshiro256PlusPlus::seed_from_u64`);
//! * uniforms: the top 53 bits of `next_u64`, giving `u1 ∈ (0, 1]` and
//!   `u2 ∈ [0, 1)`;
//! * normals: Box–Muller, `r = √(-2 ln u1)`, emitting `r·cos(2πu2)` then
//!   `r·sin(2πu2)`.

use core::f64::consts::PI;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

const INV_2_53: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Debug, Clone)]
pub struct NormalStream {
    rng: Xoshiro256PlusPlus,
    spare: Option<f64>,
}

impl NormalStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
            spare: None,
        }
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = ((self.rng.next_u64() >> 11) + 1) as f64 * INV_2_53;
        let u2 = (self.rng.next_u64() >> 11) as f64 * INV_2_53;
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let theta = 2.0 * PI * u2;
        self.spare = Some(r * libm::sin(theta));
        r * libm::cos(theta)
    }
}

impl Iterator for NormalStream {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        Some(self.next_normal())
    }
}
