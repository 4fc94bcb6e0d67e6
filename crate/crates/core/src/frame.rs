//! Oversampled DFT frame: geometry, analysis and synthesis.
//!
//! A signal of `N` samples is embedded in `M` slots as `[0_p, x, 0_p]` with
//! `p = (M - N) / 2` and transformed with the unitary DFT of length `M`. The
//! resulting coefficients have minimum 2-norm among all coefficient vectors
//! that synthesize `x`. Synthesis inverts the DFT and keeps the middle `N`
//! samples, so anything that only lives in the padding slots is invisible.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dft::UnitaryDft;
use crate::error::{Error, Result};
use crate::gram::{self, GramMatrix};
use crate::null_space::{self, NullBasis};

/// Default eigenvalue threshold for [`BasisMode::Eigen`].
pub const DEFAULT_EIGEN_TOLERANCE: f64 = 1e-8;

/// How the null-space basis is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BasisMode {
    /// DFTs of the unit impulses sitting in the padding slots.
    #[default]
    Analytic,
    /// Eigenvectors of the discrete Gram matrix below the tolerance.
    Eigen,
}

/// Frame geometry shared by the encoder and the decoder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameConfig {
    n: usize,
    m: usize,
    pad: usize,
    basis_mode: BasisMode,
    tolerance: f64,
}

impl FrameConfig {
    /// Validates `(N, M)` and derives `a = N/M` and `p = (M-N)/2`.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySignal);
        }
        if m < n {
            return Err(Error::TooFewCoefficients { n, m });
        }
        let excess = m - n;
        if excess % 2 != 0 {
            return Err(Error::OddPadding { excess });
        }
        Ok(Self {
            n,
            m,
            pad: excess / 2,
            basis_mode: BasisMode::Analytic,
            tolerance: DEFAULT_EIGEN_TOLERANCE,
        })
    }

    pub fn with_basis_mode(mut self, mode: BasisMode) -> Self {
        self.basis_mode = mode;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0) || !tolerance.is_finite() {
            return Err(Error::InvalidTolerance(tolerance));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    /// Signal length `N`.
    pub fn signal_len(&self) -> usize {
        self.n
    }

    /// Coefficient length `M`.
    pub fn coeff_len(&self) -> usize {
        self.m
    }

    /// Zeros added on each side of the signal.
    pub fn pad(&self) -> usize {
        self.pad
    }

    /// Oversampling parameter `a = N/M`.
    pub fn oversampling(&self) -> f64 {
        self.n as f64 / self.m as f64
    }

    /// Dimension of the null space, `M - N`.
    pub fn capacity(&self) -> usize {
        self.m - self.n
    }

    pub fn basis_mode(&self) -> BasisMode {
        self.basis_mode
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

fn check_finite<T: Copy>(values: &[T], is_finite: impl Fn(T) -> bool) -> Result<()> {
    match values.iter().position(|&v| !is_finite(v)) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// Real samples of a cover signal.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSignal(Vec<f64>);

impl TimeSignal {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        check_finite(&samples, f64::is_finite)?;
        Ok(Self(samples))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    pub fn samples(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Largest absolute per-sample difference.
    pub fn max_abs_diff(&self, other: &TimeSignal) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| libm::fabs(a - b))
            .fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.0.iter().map(|v| v * v).sum())
    }
}

/// Frame coefficients in standard DFT order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector(Vec<Complex64>);

impl CoefficientVector {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        check_finite(&coeffs, |z: Complex64| z.re.is_finite() && z.im.is_finite())?;
        Ok(Self(coeffs))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![Complex64::new(0.0, 0.0); len])
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex64>) -> Self {
        Self(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum()
    }

    /// Componentwise sum. Panics on length mismatch.
    pub fn add(&self, other: &CoefficientVector) -> CoefficientVector {
        assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference. Panics on length mismatch.
    pub fn sub(&self, other: &CoefficientVector) -> CoefficientVector {
        assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Magnitudes `|c_n|`.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.norm()).collect()
    }
}

/// Output of [`Frame::synthesis`].
#[derive(Debug, Clone, PartialEq)]
pub struct Synthesis {
    pub signal: TimeSignal,
    /// Largest `|Im|` over the retained samples; roundoff unless the
    /// coefficients were perturbed.
    pub max_imag: f64,
}

/// A frame geometry together with its DFT plan.
#[derive(Debug, Clone)]
pub struct Frame {
    cfg: FrameConfig,
    dft: UnitaryDft,
}

impl Frame {
    pub fn new(cfg: FrameConfig) -> Self {
        Self {
            dft: UnitaryDft::new(cfg.m),
            cfg,
        }
    }

    pub fn config(&self) -> &FrameConfig {
        &self.cfg
    }

    fn check_len(expected: usize, actual: usize) -> Result<()> {
        if expected != actual {
            return Err(Error::LengthMismatch { expected, actual });
        }
        Ok(())
    }

    /// Minimum-norm frame coefficients of `x`.
    pub fn analysis(&self, x: &TimeSignal) -> Result<CoefficientVector> {
        Self::check_len(self.cfg.n, x.len())?;
        let retained: Vec<Complex64> = x.samples().iter().map(|&v| v.into()).collect();
        Ok(CoefficientVector(self.analyze_complex(&retained)))
    }

    /// Signal synthesized by `c`. The imaginary residual is dropped and
    /// reported in [`Synthesis::max_imag`].
    pub fn synthesis(&self, c: &CoefficientVector) -> Result<Synthesis> {
        Self::check_len(self.cfg.m, c.len())?;
        let retained = self.synthesize_complex(c.coeffs());
        let max_imag = retained.iter().map(|z| libm::fabs(z.im)).fold(0.0, f64::max);
        let signal = TimeSignal(retained.iter().map(|z| z.re).collect());
        Ok(Synthesis { signal, max_imag })
    }

    /// Orthogonal projection onto the range of [`Frame::analysis`].
    ///
    /// This is analysis∘synthesis taken over the complex retained samples, so
    /// it is complex-linear and its complement is exactly the null space.
    pub fn range_project(&self, c: &CoefficientVector) -> Result<CoefficientVector> {
        Self::check_len(self.cfg.m, c.len())?;
        let retained = self.synthesize_complex(c.coeffs());
        Ok(CoefficientVector(self.analyze_complex(&retained)))
    }

    /// `(I - P)·c`: the component of `c` lying in the null space.
    pub fn null_component(&self, c: &CoefficientVector) -> Result<CoefficientVector> {
        Ok(c.sub(&self.range_project(c)?))
    }

    pub fn gram_continuous(&self) -> GramMatrix {
        gram::continuous(&self.cfg)
    }

    pub fn gram_discrete(&self) -> GramMatrix {
        gram::discrete(&self.cfg)
    }

    pub fn null_basis_analytic(&self) -> Result<NullBasis> {
        null_space::analytic(&self.cfg)
    }

    pub fn null_basis_eigen(&self) -> Result<NullBasis> {
        null_space::eigen(&self.cfg)
    }

    /// Null basis for the configured [`BasisMode`].
    pub fn null_basis(&self) -> Result<NullBasis> {
        match self.cfg.basis_mode {
            BasisMode::Analytic => self.null_basis_analytic(),
            BasisMode::Eigen => self.null_basis_eigen(),
        }
    }

    fn analyze_complex(&self, retained: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(retained.len(), self.cfg.n);
        let mut buf = vec![Complex64::new(0.0, 0.0); self.dft.len()];
        buf[self.cfg.pad..self.cfg.pad + self.cfg.n].copy_from_slice(retained);
        self.dft.forward(&mut buf);
        buf
    }

    fn synthesize_complex(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let mut buf = coeffs.to_vec();
        self.dft.inverse(&mut buf);
        buf.truncate(self.cfg.pad + self.cfg.n);
        buf.drain(..self.cfg.pad);
        buf
    }
}
