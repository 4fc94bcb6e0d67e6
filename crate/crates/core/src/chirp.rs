//! Linear chirp cover signals.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::frame::TimeSignal;

/// Linear sweep from `f0` to `f1` cycles per record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpSpec {
    pub n: usize,
    pub f0: f64,
    pub f1: f64,
    pub amplitude: f64,
}

impl Default for ChirpSpec {
    /// The reference cover signal: 200 samples sweeping 2 → 40 cycles.
    fn default() -> Self {
        Self {
            n: 200,
            f0: 2.0,
            f1: 40.0,
            amplitude: 1.0,
        }
    }
}

impl ChirpSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidChirp("n must be at least 1"));
        }
        if !(self.f0 >= 0.0) {
            return Err(Error::InvalidChirp("f0 must be nonnegative"));
        }
        if !(self.f1 > self.f0) {
            return Err(Error::InvalidChirp("f1 must exceed f0"));
        }
        if !(self.f1 < self.n as f64 / 2.0) {
            return Err(Error::InvalidChirp("f1 must be below n/2"));
        }
        if !(self.amplitude > 0.0) || !self.amplitude.is_finite() {
            return Err(Error::InvalidChirp("amplitude must be positive"));
        }
        Ok(())
    }

    /// `x[j] = A·sin(2π(f0·u + (f1-f0)·u²/2))`, `u = j/N`.
    pub fn generate(&self) -> Result<TimeSignal> {
        self.validate()?;
        let n = self.n as f64;
        let sweep = self.f1 - self.f0;
        let samples: Vec<f64> = (0..self.n)
            .map(|j| {
                let u = j as f64 / n;
                self.amplitude * libm::sin(2.0 * PI * (self.f0 * u + sweep * u * u / 2.0))
            })
            .collect();
        TimeSignal::new(samples)
    }
}

pub fn gen_chirp(spec: &ChirpSpec) -> Result<TimeSignal> {
    spec.generate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointwise_formula() {
        let spec = ChirpSpec {
            n: 4,
            f0: 0.0,
            f1: 0.5,
            amplitude: 1.5,
        };
        let x = spec.generate().unwrap();
        for (j, v) in x.samples().iter().enumerate() {
            let u = j as f64 / 4.0;
            let want = 1.5 * (2.0 * PI * 0.25 * u * u).sin();
            assert!((v - want).abs() < 1e-15);
        }
    }

    #[test]
    fn amplitude_is_linear() {
        let base = ChirpSpec::default();
        let doubled = ChirpSpec {
            amplitude: 2.0,
            ..base
        };
        let a = base.generate().unwrap();
        let b = doubled.generate().unwrap();
        for (x, y) in a.samples().iter().zip(b.samples()) {
            assert_eq!(2.0 * x, *y);
        }
    }

    #[test]
    fn invalid_specs() {
        let base = ChirpSpec::default();
        for bad in [
            ChirpSpec { n: 0, ..base },
            ChirpSpec { f1: base.f0, ..base },
            ChirpSpec { f0: -1.0, ..base },
            ChirpSpec { f1: 100.0, ..base },
            ChirpSpec {
                amplitude: 0.0,
                ..base
            },
        ] {
            assert!(bad.generate().is_err(), "{bad:?}");
        }
    }
}
