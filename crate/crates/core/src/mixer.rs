//! Seeded orthogonal mixer `B_s`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{qr_positive, RMatrix};
use crate::rng::NormalStream;

/// `K×K` real orthogonal matrix reproducible from its seed.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixer {
    matrix: RMatrix,
    seed: u64,
}

impl Mixer {
    /// Fills a `K×K` matrix row-major with standard normals from
    /// [`NormalStream`] seeded with `seed` and keeps the orthogonal factor of
    /// its QR decomposition, with `R` normalized to a positive diagonal.
    pub fn new(seed: u64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyCode);
        }
        let data: Vec<f64> = NormalStream::new(seed).take(k * k).collect();
        let (q, _) = qr_positive(&RMatrix::from_row_major(k, k, data));
        Ok(Self { matrix: q, seed })
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `B_s·h`.
    pub fn mix(&self, h: &[f64]) -> Vec<f64> {
        self.matrix.mul_vec(h)
    }

    /// `B_sᵀ·y`.
    pub fn unmix(&self, y: &[f64]) -> Vec<f64> {
        self.matrix.transpose_mul_vec(y)
    }
}
