//! Unitary DFT of arbitrary length.
//!
//! Power-of-two lengths use an iterative radix-2 FFT; every other length goes
//! through Bluestein's chirp-z algorithm on a power-of-two convolution.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

/// `exp(-i 2π num / den)`, with `num` reduced modulo `den` first so that large
/// index products do not lose phase accuracy.
pub(crate) fn twiddle(num: u64, den: u64) -> Complex64 {
    let r = (num % den) as f64 / den as f64;
    let theta = -2.0 * PI * r;
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

#[derive(Debug, Clone)]
struct Radix2 {
    len: usize,
    // twiddles[k] = exp(-i2πk/len), k < len/2
    twiddles: Vec<Complex64>,
}

impl Radix2 {
    fn new(len: usize) -> Self {
        debug_assert!(len.is_power_of_two());
        let twiddles = (0..len / 2)
            .map(|k| twiddle(k as u64, len as u64))
            .collect();
        Self { len, twiddles }
    }

    /// Unnormalized forward transform in place.
    fn forward(&self, buf: &mut [Complex64]) {
        let n = self.len;
        debug_assert_eq!(buf.len(), n);
        if n <= 1 {
            return;
        }
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if i < j {
                buf.swap(i, j);
            }
        }
        let mut half = 1;
        while half < n {
            let stride = n / (2 * half);
            for start in (0..n).step_by(2 * half) {
                for k in 0..half {
                    let w = self.twiddles[k * stride];
                    let t = buf[start + k + half] * w;
                    let u = buf[start + k];
                    buf[start + k] = u + t;
                    buf[start + k + half] = u - t;
                }
            }
            half *= 2;
        }
    }

    /// Unnormalized inverse transform in place.
    fn inverse(&self, buf: &mut [Complex64]) {
        buf.iter_mut().for_each(|z| *z = z.conj());
        self.forward(buf);
        buf.iter_mut().for_each(|z| *z = z.conj());
    }
}

#[derive(Debug, Clone)]
struct Bluestein {
    len: usize,
    inner: Radix2,
    // chirp[k] = exp(-iπk²/len)
    chirp: Vec<Complex64>,
    // FFT of the conjugate chirp, wrapped onto the inner length and prescaled
    // by 1/inner_len so the inner inverse needs no extra pass.
    kernel: Vec<Complex64>,
}

impl Bluestein {
    fn new(len: usize) -> Self {
        let inner_len = (2 * len - 1).next_power_of_two();
        let inner = Radix2::new(inner_len);
        let two_n = 2 * len as u64;
        let chirp: Vec<Complex64> = (0..len as u64)
            .map(|k| twiddle((k * k) % two_n, two_n))
            .collect();
        let mut kernel = vec![Complex64::new(0.0, 0.0); inner_len];
        kernel[0] = chirp[0].conj();
        for k in 1..len {
            let c = chirp[k].conj();
            kernel[k] = c;
            kernel[inner_len - k] = c;
        }
        inner.forward(&mut kernel);
        let scale = 1.0 / inner_len as f64;
        kernel.iter_mut().for_each(|z| *z *= scale);
        Self {
            len,
            inner,
            chirp,
            kernel,
        }
    }

    fn forward(&self, buf: &mut [Complex64]) {
        let mut work = vec![Complex64::new(0.0, 0.0); self.inner.len];
        for ((w, x), c) in work.iter_mut().zip(buf.iter()).zip(&self.chirp) {
            *w = x * c;
        }
        self.inner.forward(&mut work);
        for (w, k) in work.iter_mut().zip(&self.kernel) {
            *w *= k;
        }
        self.inner.inverse(&mut work);
        for ((x, w), c) in buf.iter_mut().zip(&work).zip(&self.chirp) {
            *x = w * c;
        }
    }

    fn inverse(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.len);
        buf.iter_mut().for_each(|z| *z = z.conj());
        self.forward(buf);
        buf.iter_mut().for_each(|z| *z = z.conj());
    }
}

#[derive(Debug, Clone)]
enum Plan {
    Radix2(Radix2),
    Bluestein(Bluestein),
}

/// Unitary DFT with kernel `(1/√n)·exp(-i2πjk/n)`.
#[derive(Debug, Clone)]
pub(crate) struct UnitaryDft {
    len: usize,
    scale: f64,
    plan: Plan,
}

impl UnitaryDft {
    pub(crate) fn new(len: usize) -> Self {
        assert!(len > 0, "DFT length must be positive");
        let plan = if len.is_power_of_two() {
            Plan::Radix2(Radix2::new(len))
        } else {
            Plan::Bluestein(Bluestein::new(len))
        };
        Self {
            len,
            scale: 1.0 / libm::sqrt(len as f64),
            plan,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    pub(crate) fn forward(&self, buf: &mut [Complex64]) {
        assert_eq!(buf.len(), self.len);
        match &self.plan {
            Plan::Radix2(p) => p.forward(buf),
            Plan::Bluestein(p) => p.forward(buf),
        }
        buf.iter_mut().for_each(|z| *z *= self.scale);
    }

    pub(crate) fn inverse(&self, buf: &mut [Complex64]) {
        assert_eq!(buf.len(), self.len);
        match &self.plan {
            Plan::Radix2(p) => p.inverse(buf),
            Plan::Bluestein(p) => p.inverse(buf),
        }
        buf.iter_mut().for_each(|z| *z *= self.scale);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len() as u64;
        let s = 1.0 / (n as f64).sqrt();
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(j, v)| v * twiddle(j as u64 * k, n))
                    .sum::<Complex64>()
                    * s
            })
            .collect()
    }

    fn sample(n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|j| {
                let t = j as f64;
                Complex64::new((0.37 * t).sin() + 0.1 * t, (1.3 * t).cos() - 0.5)
            })
            .collect()
    }

    #[test]
    fn matches_direct_sum() {
        for n in [1, 2, 3, 4, 5, 7, 8, 12, 30, 64, 100, 400] {
            let x = sample(n);
            let want = naive(&x);
            let mut got = x.clone();
            UnitaryDft::new(n).forward(&mut got);
            let err = got
                .iter()
                .zip(&want)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-12, "n={n} err={err}");
        }
    }

    #[test]
    fn inverse_undoes_forward() {
        for n in [6, 16, 400] {
            let x = sample(n);
            let dft = UnitaryDft::new(n);
            let mut y = x.clone();
            dft.forward(&mut y);
            dft.inverse(&mut y);
            for (a, b) in x.iter().zip(&y) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
