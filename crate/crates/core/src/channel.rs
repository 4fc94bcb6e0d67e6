//! Additive Gaussian channel, noise bookkeeping and code-accuracy metrics.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::codec::HiddenCode;
use crate::error::{Error, Result};
use crate::frame::{CoefficientVector, FrameConfig};
use crate::rng::NormalStream;

/// Digit counts are clamped to this many.
pub const MAX_DIGITS: u32 = 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    /// Total complex variance per coefficient.
    pub sigma2: f64,
    pub noise_seed: u64,
}

impl ChannelSpec {
    pub fn new(sigma2: f64, noise_seed: u64) -> Result<Self> {
        if !(sigma2 >= 0.0) || !sigma2.is_finite() {
            return Err(Error::NotPositive {
                name: "sigma2",
                value: sigma2,
            });
        }
        Ok(Self { sigma2, noise_seed })
    }

    /// Adds circular complex Gaussian noise: real and imaginary parts are
    /// independent `N(0, σ²/2)`, drawn real-then-imaginary per coefficient.
    pub fn apply(&self, c: &CoefficientVector) -> CoefficientVector {
        if self.sigma2 == 0.0 {
            return c.clone();
        }
        let sd = libm::sqrt(self.sigma2 / 2.0);
        let mut noise = NormalStream::new(self.noise_seed);
        let out = c
            .coeffs()
            .iter()
            .map(|z| {
                let re = noise.next_normal();
                let im = noise.next_normal();
                z + Complex64::new(sd * re, sd * im)
            })
            .collect();
        CoefficientVector::from_vec_unchecked(out)
    }
}

pub fn apply_awgn(c: &CoefficientVector, ch: &ChannelSpec) -> CoefficientVector {
    ch.apply(c)
}

/// Noise variance that puts the mean coefficient power `‖c‖²/M` at `snr_db`
/// above the noise.
pub fn sigma_for_snr(c: &CoefficientVector, snr_db: f64) -> Result<f64> {
    let power = c.norm_sqr() / c.len() as f64;
    if !(power > 0.0) {
        return Err(Error::ZeroSignal);
    }
    Ok(power / libm::pow(10.0, snr_db / 10.0))
}

/// How the hidden-coefficient term of the variance ratio is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RatioReading {
    /// `ρ = σ² / (‖c′‖₂ / M)`.
    #[default]
    Literal,
    /// `ρ = σ² / (‖c′‖₂² / M)`.
    Power,
}

impl RatioReading {
    /// The ratio realized by hidden coefficients `c_prime` at noise `sigma2`.
    pub fn ratio(self, sigma2: f64, c_prime: &CoefficientVector) -> f64 {
        let m = c_prime.len() as f64;
        let denom = match self {
            RatioReading::Literal => c_prime.norm() / m,
            RatioReading::Power => c_prime.norm_sqr() / m,
        };
        sigma2 / denom
    }
}

/// Scale `α` that makes `α·U·B_s·h` realize variance ratio `rho` against
/// noise `sigma2`. Uses `‖c′‖₂ = α‖h‖₂`.
pub fn alpha_for_variance_ratio(
    sigma2: f64,
    rho: f64,
    h: &HiddenCode,
    cfg: &FrameConfig,
    reading: RatioReading,
) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::NotPositive {
            name: "rho",
            value: rho,
        });
    }
    if !(sigma2 > 0.0) {
        return Err(Error::NotPositive {
            name: "sigma2",
            value: sigma2,
        });
    }
    let h_norm = h.norm();
    if h_norm == 0.0 {
        return Err(Error::ZeroCode);
    }
    let m = cfg.coeff_len() as f64;
    Ok(match reading {
        RatioReading::Literal => sigma2 * m / (rho * h_norm),
        RatioReading::Power => libm::sqrt(sigma2 * m / rho) / h_norm,
    })
}

/// Per-component agreement between a true and a recovered code.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyReport {
    pub per_component_abs_err: Vec<f64>,
    /// `None` where the true component is zero and relative digits are
    /// undefined.
    pub matching_digits: Vec<Option<u32>>,
    /// Minimum over the defined components.
    pub min_matching_digits: Option<u32>,
}

impl AccuracyReport {
    pub fn max_abs_err(&self) -> f64 {
        self.per_component_abs_err.iter().copied().fold(0.0, f64::max)
    }
}

/// `floor(-log10(|est - true| / |true|))`, clamped to `[0, 15]`.
pub fn matching_digits(truth: f64, estimate: f64) -> Option<u32> {
    if truth == 0.0 {
        return None;
    }
    let rel = libm::fabs(estimate - truth) / libm::fabs(truth);
    if rel == 0.0 {
        return Some(MAX_DIGITS);
    }
    let digits = libm::floor(-libm::log10(rel));
    if digits.is_nan() || digits <= 0.0 {
        Some(0)
    } else {
        Some((digits as u32).min(MAX_DIGITS))
    }
}

pub fn digit_accuracy(truth: &HiddenCode, estimate: &HiddenCode) -> Result<AccuracyReport> {
    if truth.len() != estimate.len() {
        return Err(Error::LengthMismatch {
            expected: truth.len(),
            actual: estimate.len(),
        });
    }
    let pairs = truth.values().iter().zip(estimate.values());
    let per_component_abs_err = pairs.clone().map(|(t, e)| libm::fabs(e - t)).collect();
    let matching_digits: Vec<Option<u32>> = pairs.map(|(&t, &e)| matching_digits(t, e)).collect();
    let min_matching_digits = matching_digits.iter().flatten().copied().min();
    Ok(AccuracyReport {
        per_component_abs_err,
        matching_digits,
        min_matching_digits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(v: &[f64]) -> HiddenCode {
        HiddenCode::new(v.to_vec()).unwrap()
    }

    #[test]
    fn zero_variance_is_identity() {
        let c = CoefficientVector::new(vec![Complex64::new(-0.0, 1.5), Complex64::new(2.0, -0.0)]).unwrap();
        let out = ChannelSpec::new(0.0, 9).unwrap().apply(&c);
        for (a, b) in out.coeffs().iter().zip(c.coeffs()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn noise_variance_and_determinism() {
        let m = 100_000;
        let c = CoefficientVector::zeros(m);
        let ch = ChannelSpec::new(0.3, 2024).unwrap();
        let out = ch.apply(&c);
        let var = out.norm_sqr() / m as f64;
        assert!((var / 0.3 - 1.0).abs() < 0.03, "var={var}");
        let re_var: f64 = out.coeffs().iter().map(|z| z.re * z.re).sum::<f64>() / m as f64;
        assert!((re_var / 0.15 - 1.0).abs() < 0.03);
        assert_eq!(out, ch.apply(&c));
        assert_ne!(out, ChannelSpec::new(0.3, 2025).unwrap().apply(&c));
    }

    #[test]
    fn negative_variance_rejected() {
        assert!(ChannelSpec::new(-1.0, 0).is_err());
    }

    #[test]
    fn snr_examples() {
        let c = CoefficientVector::new(vec![Complex64::new(3.0, 4.0), Complex64::new(0.0, 0.0)]).unwrap();
        assert_eq!(sigma_for_snr(&c, 0.0).unwrap(), 12.5);
        assert!((sigma_for_snr(&c, 40.0).unwrap() - 12.5e-4).abs() < 1e-18);
        let c2 = CoefficientVector::new(c.coeffs().iter().map(|z| z * 2.0).collect()).unwrap();
        assert_eq!(sigma_for_snr(&c2, 40.0).unwrap(), 4.0 * sigma_for_snr(&c, 40.0).unwrap());
        assert_eq!(sigma_for_snr(&CoefficientVector::zeros(3), 10.0), Err(Error::ZeroSignal));
    }

    #[test]
    fn alpha_fixed_points() {
        let cfg = FrameConfig::new(4, 8).unwrap();
        let h = code(&[3.0, 4.0]);
        let sigma2 = 0.5;
        // Power: ρ = σ²M/‖h‖² ⇒ α = 1.
        let rho = sigma2 * 8.0 / 25.0;
        let a = alpha_for_variance_ratio(sigma2, rho, &h, &cfg, RatioReading::Power).unwrap();
        assert!((a - 1.0).abs() < 1e-15);
        let half = alpha_for_variance_ratio(sigma2, rho / 2.0, &h, &cfg, RatioReading::Power).unwrap();
        assert!((half / a - 2f64.sqrt()).abs() < 1e-15);
        // Literal: ρ = σ²M/‖h‖ ⇒ α = 1; halving ρ doubles α.
        let rho = sigma2 * 8.0 / 5.0;
        let a = alpha_for_variance_ratio(sigma2, rho, &h, &cfg, RatioReading::Literal).unwrap();
        assert!((a - 1.0).abs() < 1e-15);
        let half = alpha_for_variance_ratio(sigma2, rho / 2.0, &h, &cfg, RatioReading::Literal).unwrap();
        assert!((half - 2.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_errors() {
        let cfg = FrameConfig::new(4, 8).unwrap();
        let h = code(&[1.0]);
        let r = RatioReading::default();
        assert_eq!(
            alpha_for_variance_ratio(1.0, 1.0, &code(&[0.0]), &cfg, r),
            Err(Error::ZeroCode)
        );
        assert!(alpha_for_variance_ratio(1.0, 0.0, &h, &cfg, r).is_err());
        assert!(alpha_for_variance_ratio(0.0, 1.0, &h, &cfg, r).is_err());
    }

    #[test]
    fn digits_match_published_rows() {
        let r = digit_accuracy(&code(&[3.1492]), &code(&[3.1496])).unwrap();
        assert!((r.per_component_abs_err[0] - 4e-4).abs() < 1e-12);
        assert_eq!(r.matching_digits, vec![Some(3)]);

        let r = digit_accuracy(&code(&[3.1492]), &code(&[3.2286])).unwrap();
        assert!((r.per_component_abs_err[0] - 0.0794).abs() < 1e-12);
        assert_eq!(r.min_matching_digits, Some(1));

        let r = digit_accuracy(&code(&[3.1492]), &code(&[3.1492])).unwrap();
        assert_eq!(r.min_matching_digits, Some(15));
    }

    #[test]
    fn zero_truth_is_excluded_from_min() {
        let r = digit_accuracy(&code(&[0.0, 2.0]), &code(&[0.1, 2.01])).unwrap();
        assert_eq!(r.matching_digits, vec![None, Some(2)]);
        assert_eq!(r.min_matching_digits, Some(2));
        assert!(digit_accuracy(&code(&[1.0]), &code(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn gross_errors_give_zero_digits() {
        assert_eq!(matching_digits(1.0, 5.0), Some(0));
    }
}
