//! Orthonormal bases for the null space of the discrete Gram matrix.
//!
//! The analytic basis is exact: the DFT of a unit impulse placed in a padding
//! slot synthesizes nothing in the retained slots. The eigen basis reaches the
//! same subspace through the Gram matrix's near-zero eigenvectors; its column
//! order and phases are canonicalized so encoder and decoder agree.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::dft::twiddle;
use crate::error::{Error, Result};
use crate::frame::FrameConfig;
use crate::gram;
use crate::linalg::{hermitian_eigen, CMatrix};

/// Components below this modulus are skipped when picking the phase anchor.
const ANCHOR_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisProvenance {
    Analytic,
    Eigen,
}

/// `M×K` matrix with orthonormal columns inside the null space.
#[derive(Debug, Clone, PartialEq)]
pub struct NullBasis {
    columns: CMatrix,
    provenance: BasisProvenance,
}

impl NullBasis {
    pub fn columns(&self) -> &CMatrix {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[Complex64] {
        self.columns.column(j)
    }

    pub fn provenance(&self) -> BasisProvenance {
        self.provenance
    }

    /// Number of columns `K`.
    pub fn dim(&self) -> usize {
        self.columns.cols()
    }

    /// Coefficient length `M`.
    pub fn coeff_len(&self) -> usize {
        self.columns.rows()
    }

    /// The first `k` columns in canonical order.
    pub fn truncated(mut self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyCode);
        }
        if k > self.dim() {
            return Err(Error::CapacityExceeded {
                k,
                capacity: self.dim(),
            });
        }
        self.columns.truncate_cols(k);
        Ok(self)
    }

    /// `U·y`.
    pub fn expand(&self, y: &[Complex64]) -> Vec<Complex64> {
        self.columns.mul_vec(y)
    }

    /// `U*·d`.
    pub fn coordinates(&self, d: &[Complex64]) -> Vec<Complex64> {
        self.columns.adjoint_mul_vec(d)
    }

    /// `U·U*·d`.
    pub fn project(&self, d: &[Complex64]) -> Vec<Complex64> {
        self.expand(&self.coordinates(d))
    }
}

/// Padding-slot indices in ascending order.
fn padding_slots(cfg: &FrameConfig) -> impl Iterator<Item = usize> {
    let (p, n, m) = (cfg.pad(), cfg.signal_len(), cfg.coeff_len());
    (0..p).chain(p + n..m)
}

pub(crate) fn analytic(cfg: &FrameConfig) -> Result<NullBasis> {
    if cfg.capacity() == 0 {
        return Err(Error::NoCapacity);
    }
    let m = cfg.coeff_len();
    let scale = 1.0 / libm::sqrt(m as f64);
    let columns: Vec<Vec<Complex64>> = padding_slots(cfg)
        .map(|j| {
            (0..m)
                .map(|k| twiddle(j as u64 * k as u64, m as u64) * scale)
                .collect()
        })
        .collect();
    Ok(NullBasis {
        columns: CMatrix::from_columns(m, &columns),
        provenance: BasisProvenance::Analytic,
    })
}

fn anchor_index(col: &[Complex64]) -> usize {
    col.iter()
        .position(|z| z.norm() > ANCHOR_THRESHOLD)
        .unwrap_or(col.len())
}

pub(crate) fn eigen(cfg: &FrameConfig) -> Result<NullBasis> {
    if cfg.capacity() == 0 {
        return Err(Error::NoCapacity);
    }
    let g = gram::discrete(cfg);
    let eig = hermitian_eigen(&g.entries);
    let tol = cfg.tolerance();

    let mut selected: Vec<(f64, usize, Vec<Complex64>)> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &lambda)| lambda < tol)
        .map(|(j, &lambda)| {
            let col = eig.vectors.column(j).to_vec();
            (lambda, anchor_index(&col), col)
        })
        .collect();
    if selected.is_empty() {
        return Err(Error::NoCapacityAtTolerance);
    }
    selected.sort_by(|a, b| match a.0.total_cmp(&b.0) {
        Ordering::Equal => a.1.cmp(&b.1),
        other => other,
    });

    let m = cfg.coeff_len();
    let columns: Vec<Vec<Complex64>> = selected
        .into_iter()
        .map(|(_, anchor, mut col)| {
            if let Some(z) = col.get(anchor) {
                let rot = z.conj() / z.norm();
                col.iter_mut().for_each(|c| *c *= rot);
                col[anchor] = Complex64::new(col[anchor].norm(), 0.0);
            }
            col
        })
        .collect();
    Ok(NullBasis {
        columns: CMatrix::from_columns(m, &columns),
        provenance: BasisProvenance::Eigen,
    })
}
