//! Gram matrices of the restricted exponentials.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::dft::twiddle;
use crate::frame::FrameConfig;
use crate::linalg::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramKind {
    /// Continuous-time inner products: `sin(aπ(m-n)) / (aπ(m-n))`.
    ContinuousSinc,
    /// Inner products of the sampled exponentials on the retained slots.
    DiscreteDirichlet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub entries: CMatrix,
    pub kind: GramKind,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.rows()
    }
}

/// `sin(aπd) / (aπd)` with the `d = 0` limit.
fn sinc_kernel(a: f64, d: i64) -> f64 {
    if d == 0 {
        1.0
    } else {
        let x = a * PI * d as f64;
        libm::sin(x) / x
    }
}

pub(crate) fn continuous(cfg: &FrameConfig) -> GramMatrix {
    let a = cfg.oversampling();
    let m = cfg.coeff_len();
    let entries = CMatrix::from_fn(m, m, |i, j| sinc_kernel(a, i as i64 - j as i64).into());
    GramMatrix {
        entries,
        kind: GramKind::ContinuousSinc,
    }
}

pub(crate) fn discrete(cfg: &FrameConfig) -> GramMatrix {
    let m = cfg.coeff_len();
    let (p, n) = (cfg.pad(), cfg.signal_len());
    let mu = m as u64;
    // Toeplitz: g[row][col] depends only on δ = col - row ∈ (-M, M).
    // g(δ) = (1/M) Σ_{k=p}^{p+N-1} exp(+i2πkδ/M); store by δ mod M.
    let by_shift: Vec<Complex64> = (0..mu)
        .map(|delta| {
            (p..p + n)
                .map(|k| twiddle(k as u64 * delta, mu).conj())
                .sum::<Complex64>()
                / m as f64
        })
        .collect();
    let entries = CMatrix::from_fn(m, m, |row, col| {
        let delta = (col + m - row) % m;
        if delta == 0 {
            Complex64::new(cfg.oversampling(), 0.0)
        } else {
            by_shift[delta]
        }
    });
    GramMatrix {
        entries,
        kind: GramKind::DiscreteDirichlet,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continuous_entries() {
        let cfg = FrameConfig::new(200, 400).unwrap();
        let g = continuous(&cfg);
        assert_eq!(g.kind, GramKind::ContinuousSinc);
        assert_eq!(g.entries[(5, 5)].re, 1.0);
        assert!((g.entries[(6, 5)].re - 2.0 / PI).abs() < 1e-15);
        assert!((g.entries[(4, 5)].re - 0.636_619_8).abs() < 1e-7);
        assert!(g.entries[(7, 5)].re.abs() < 1e-15);
        assert_eq!(g.entries.hermitian_defect(), 0.0);
    }

    #[test]
    fn discrete_two_term_entry() {
        // N=2, M=4, p=1: k ∈ {1, 2}, δ = 1 → (i + (-1)) / 4
        let cfg = FrameConfig::new(2, 4).unwrap();
        let g = discrete(&cfg);
        let want = Complex64::new(-0.25, 0.25);
        assert!((g.entries[(0, 1)] - want).norm() < 1e-15);
        assert!((g.entries[(1, 2)] - want).norm() < 1e-15);
    }

    #[test]
    fn discrete_matches_closed_form() {
        let cfg = FrameConfig::new(6, 16).unwrap();
        let g = discrete(&cfg);
        let (m, n, p) = (16.0, 6.0, 5.0);
        for row in 0..16usize {
            for col in 0..16usize {
                let d = col as f64 - row as f64;
                let want = if row == col {
                    Complex64::new(n / m, 0.0)
                } else {
                    Complex64::from_polar(1.0 / m, PI * d * (2.0 * p + n - 1.0) / m)
                        * ((PI * d * n / m).sin() / (PI * d / m).sin())
                };
                assert!((g.entries[(row, col)] - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn discrete_is_hermitian_with_diagonal_a() {
        for (n, m) in [(4, 8), (3, 9), (10, 10), (16, 32)] {
            let cfg = FrameConfig::new(n, m).unwrap();
            let g = discrete(&cfg);
            assert!(g.entries.hermitian_defect() <= 1e-14);
            for i in 0..m {
                assert_eq!(g.entries[(i, i)], Complex64::new(cfg.oversampling(), 0.0));
            }
        }
    }
}
