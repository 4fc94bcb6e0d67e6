//! Embedding a real code into the null space and getting it back.
//!
//! Encoding adds `c′ = α·U·B_s·h` to the minimum-norm coefficients of the
//! cover signal. Because `c′` lies in the null space, the transmitted vector
//! synthesizes exactly the same samples. The receiver re-synthesizes, strips
//! the range component, and reads `h` off the null-space coordinates.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::{CoefficientVector, Frame, FrameConfig, TimeSignal};
use crate::mixer::Mixer;
use crate::null_space::NullBasis;

/// The code carried in the null space.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenCode(Vec<f64>);

impl HiddenCode {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyCode);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.0.iter().map(|v| v * v).sum())
    }
}

/// Everything the receiver must share with the sender.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecretParameters {
    cfg: FrameConfig,
    seed: u64,
    k: usize,
    alpha: f64,
}

impl SecretParameters {
    pub fn new(cfg: FrameConfig, seed: u64, k: usize, alpha: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyCode);
        }
        if k > cfg.capacity() {
            return Err(Error::CapacityExceeded {
                k,
                capacity: cfg.capacity(),
            });
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::NotPositive {
                name: "alpha",
                value: alpha,
            });
        }
        Ok(Self { cfg, seed, k, alpha })
    }

    pub fn config(&self) -> &FrameConfig {
        &self.cfg
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn code_len(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self::new(self.cfg, self.seed, self.k, alpha)
    }
}

/// `c′ = α·U·(B_s·h)`.
pub fn embed(h: &HiddenCode, basis: &NullBasis, mixer: &Mixer, alpha: f64) -> Result<CoefficientVector> {
    let k = h.len();
    for actual in [basis.dim(), mixer.dim()] {
        if actual != k {
            return Err(Error::LengthMismatch { expected: k, actual });
        }
    }
    let mixed: Vec<Complex64> = mixer
        .mix(h.values())
        .into_iter()
        .map(|v| Complex64::new(alpha * v, 0.0))
        .collect();
    Ok(CoefficientVector::from_vec_unchecked(basis.expand(&mixed)))
}

/// Side information produced while decoding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecodeDiagnostics {
    /// Largest `|Im|` of the re-synthesized samples.
    pub synthesis_max_imag: f64,
    /// `‖Im(U*·d)‖∞`; roundoff on a clean channel, noise otherwise.
    pub coordinate_max_imag: f64,
    /// `‖d - U·U*·d‖₂`: null-space energy outside the code subspace.
    pub outside_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub signal: TimeSignal,
    pub code: HiddenCode,
    pub diagnostics: DecodeDiagnostics,
}

/// Encoder/decoder with the frame plan, basis and mixer built once.
#[derive(Debug, Clone)]
pub struct StegoCodec {
    secret: SecretParameters,
    frame: Frame,
    basis: NullBasis,
    mixer: Mixer,
}

impl StegoCodec {
    pub fn new(secret: SecretParameters) -> Result<Self> {
        let frame = Frame::new(secret.cfg);
        let basis = frame.null_basis()?.truncated(secret.k)?;
        let mixer = Mixer::new(secret.seed, secret.k)?;
        Ok(Self {
            secret,
            frame,
            basis,
            mixer,
        })
    }

    pub fn secret(&self) -> &SecretParameters {
        &self.secret
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn basis(&self) -> &NullBasis {
        &self.basis
    }

    pub fn mixer(&self) -> &Mixer {
        &self.mixer
    }

    /// Hidden-code coefficients `c′` for this secret.
    pub fn embed(&self, h: &HiddenCode) -> Result<CoefficientVector> {
        embed(h, &self.basis, &self.mixer, self.secret.alpha)
    }

    /// `c″ = analysis(x) + c′`.
    pub fn encode(&self, x: &TimeSignal, h: &HiddenCode) -> Result<CoefficientVector> {
        let c = self.frame.analysis(x)?;
        let c_prime = self.embed(h)?;
        Ok(c.add(&c_prime))
    }

    /// Recovers the signal and the code from received coefficients.
    pub fn decode(&self, received: &CoefficientVector) -> Result<Decoded> {
        let synth = self.frame.synthesis(received)?;
        // Separation uses the complex synthesis so that d = (I - P)·c_rx
        // holds even when the channel puts energy in Im.
        let d = self.frame.null_component(received)?;
        let y = self.basis.coordinates(d.coeffs());

        let coordinate_max_imag = y.iter().map(|z| libm::fabs(z.im)).fold(0.0, f64::max);
        let inside = self.basis.expand(&y);
        let outside_residual = libm::sqrt(
            d.coeffs()
                .iter()
                .zip(&inside)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum(),
        );

        let real: Vec<f64> = y.iter().map(|z| z.re).collect();
        let code = self
            .mixer
            .unmix(&real)
            .into_iter()
            .map(|v| v / self.secret.alpha)
            .collect();

        Ok(Decoded {
            signal: synth.signal,
            code: HiddenCode(code),
            diagnostics: DecodeDiagnostics {
                synthesis_max_imag: synth.max_imag,
                coordinate_max_imag,
                outside_residual,
            },
        })
    }

    /// `d` as computed inside [`StegoCodec::decode`].
    pub fn separate(&self, received: &CoefficientVector) -> Result<CoefficientVector> {
        self.frame.null_component(received)
    }
}

/// One-shot encode; builds a [`StegoCodec`] for `secret`.
pub fn encode(x: &TimeSignal, h: &HiddenCode, secret: &SecretParameters) -> Result<CoefficientVector> {
    if h.len() != secret.k {
        return Err(Error::LengthMismatch {
            expected: secret.k,
            actual: h.len(),
        });
    }
    StegoCodec::new(*secret)?.encode(x, h)
}

/// One-shot decode; builds a [`StegoCodec`] for `secret`.
pub fn decode(received: &CoefficientVector, secret: &SecretParameters) -> Result<Decoded> {
    StegoCodec::new(*secret)?.decode(received)
}

/// Estimates `K` by counting null-space coordinates above `rel_threshold`
/// times the largest one.
///
/// Heuristic: channel noise spreads over every coordinate, so under noise this
/// over-counts. A shared [`SecretParameters`] is authoritative.
pub fn infer_code_length(d: &CoefficientVector, full_basis: &NullBasis, rel_threshold: f64) -> Result<usize> {
    if d.len() != full_basis.coeff_len() {
        return Err(Error::LengthMismatch {
            expected: full_basis.coeff_len(),
            actual: d.len(),
        });
    }
    if !(rel_threshold > 0.0 && rel_threshold < 1.0) {
        return Err(Error::NotPositive {
            name: "relative threshold in (0, 1)",
            value: rel_threshold,
        });
    }
    let mags: Vec<f64> = full_basis
        .coordinates(d.coeffs())
        .iter()
        .map(|z| z.norm())
        .collect();
    let peak = mags.iter().copied().fold(0.0, f64::max);
    if peak < 1e-300 {
        return Err(Error::NoEmbeddedEnergy);
    }
    Ok(mags.iter().filter(|&&v| v > rel_threshold * peak).count())
}
