//! Checks against brute-force constructions that do not go through the DFT
//! plan or the eigensolver.

use std::f64::consts::PI;

use nullframe_core::linalg::{hermitian_eigen, CMatrix};
use nullframe_core::{
    ChannelSpec, CoefficientVector, Complex64, Frame, FrameConfig, HiddenCode, SecretParameters,
    StegoCodec, TimeSignal,
};

/// Dense analysis operator `A` (M×N): `A[k][j] = exp(-i2πk(j+p)/M)/√M`.
fn analysis_matrix(cfg: &FrameConfig) -> CMatrix {
    let (m, p) = (cfg.coeff_len(), cfg.pad());
    CMatrix::from_fn(m, cfg.signal_len(), |k, j| {
        Complex64::from_polar(1.0 / (m as f64).sqrt(), -2.0 * PI * (k * (j + p)) as f64 / m as f64)
    })
}

/// `P = A·A*`.
fn brute_projector(cfg: &FrameConfig) -> CMatrix {
    let a = analysis_matrix(cfg);
    a.mul(&a.adjoint())
}

fn projector_of(u: &CMatrix) -> CMatrix {
    u.mul(&u.adjoint())
}

fn lcg(seed: u64) -> impl FnMut() -> f64 {
    let mut s = seed;
    move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }
}

fn random_coeffs(m: usize, seed: u64) -> CoefficientVector {
    let mut r = lcg(seed);
    CoefficientVector::new((0..m).map(|_| Complex64::new(r(), r())).collect()).unwrap()
}

#[test]
fn range_projection_matches_dense_projector() {
    for (n, m) in [(4, 8), (5, 9), (16, 32), (20, 64)] {
        let cfg = FrameConfig::new(n, m).unwrap();
        let frame = Frame::new(cfg);
        let p = brute_projector(&cfg);
        let c = random_coeffs(m, n as u64);
        let want = p.mul_vec(c.coeffs());
        let got = frame.range_project(&c).unwrap();
        for (g, w) in got.coeffs().iter().zip(&want) {
            assert!((g - w).norm() < 1e-12);
        }
    }
}

#[test]
fn decoder_separation_is_complement_projection() {
    for (n, m, k) in [(4, 8, 3), (16, 32, 16), (30, 64, 10)] {
        let cfg = FrameConfig::new(n, m).unwrap();
        let codec = StegoCodec::new(SecretParameters::new(cfg, 9, k, 1.0).unwrap()).unwrap();
        let p = brute_projector(&cfg);
        let c_rx = random_coeffs(m, 77);
        let pc = p.mul_vec(c_rx.coeffs());
        let d = codec.separate(&c_rx).unwrap();
        for ((di, ci), pi) in d.coeffs().iter().zip(c_rx.coeffs()).zip(&pc) {
            assert!((di - (ci - pi)).norm() <= 1e-10);
        }
    }
}

#[test]
fn noise_splits_orthogonally() {
    let cfg = FrameConfig::new(24, 64).unwrap();
    let codec = StegoCodec::new(SecretParameters::new(cfg, 4, 12, 0.3).unwrap()).unwrap();
    let x = TimeSignal::new((0..24).map(|i| (i as f64 * 0.4).cos()).collect()).unwrap();
    let h = HiddenCode::new((0..12).map(|i| 1.0 + i as f64).collect()).unwrap();
    let sent = codec.encode(&x, &h).unwrap();
    let received = ChannelSpec::new(0.01, 5).unwrap().apply(&sent);
    let noise = received.sub(&sent);

    let p = brute_projector(&cfg);
    let c_prime = codec.embed(&h).unwrap();
    let pn = p.mul_vec(noise.coeffs());
    let d = codec.separate(&received).unwrap();
    for i in 0..64 {
        let want = c_prime.coeffs()[i] + noise.coeffs()[i] - pn[i];
        assert!((d.coeffs()[i] - want).norm() <= 1e-10);
    }
}

#[test]
fn gram_rank_equals_signal_length() {
    for (n, m) in [(4, 8), (6, 10), (16, 32), (20, 64), (31, 33)] {
        let cfg = FrameConfig::new(n, m).unwrap();
        let g = Frame::new(cfg).gram_discrete();
        let eig = hermitian_eigen(&g.entries);
        let null = eig.values.iter().filter(|&&v| v < 1e-8).count();
        assert_eq!(null, m - n, "(N, M) = ({n}, {m})");
        // Nonzero eigenvalues of A·A* are those of A*·A = I_N.
        for v in &eig.values[m - n..] {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn gram_is_the_dense_projector() {
    // G_discrete is the range projector A·A*.
    let cfg = FrameConfig::new(6, 14).unwrap();
    let g = Frame::new(cfg).gram_discrete();
    let p = brute_projector(&cfg);
    for i in 0..14 {
        for j in 0..14 {
            assert!((g.entries[(i, j)] - p[(i, j)]).norm() < 1e-14);
        }
    }
}

#[test]
fn eigen_and_analytic_bases_span_the_same_space() {
    for (n, m) in [(4, 8), (10, 16), (16, 32), (30, 64), (2, 64)] {
        let cfg = FrameConfig::new(n, m).unwrap();
        let frame = Frame::new(cfg);
        let ua = frame.null_basis_analytic().unwrap();
        let ue = frame.null_basis_eigen().unwrap();
        assert_eq!(ue.dim(), m - n);
        let diff = projector_of(ua.columns()).sub(&projector_of(ue.columns())).frobenius();
        assert!(diff <= 1e-7, "(N, M) = ({n}, {m}) diff={diff}");

        // ‖(I - U_a U_a*) U_e‖_F
        let mut leak = 0.0;
        for j in 0..ue.dim() {
            let col = ue.column(j);
            let proj = ua.project(col);
            leak += col.iter().zip(&proj).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>();
        }
        assert!(leak.sqrt() <= 1e-8);
    }
}

#[test]
fn bases_are_orthonormal_and_annihilated() {
    for (n, m) in [(4, 8), (16, 32), (200, 400)] {
        let cfg = FrameConfig::new(n, m).unwrap();
        let frame = Frame::new(cfg);
        let g = frame.gram_discrete();
        let mut bases = vec![frame.null_basis_analytic().unwrap()];
        if m <= 64 {
            bases.push(frame.null_basis_eigen().unwrap());
        }
        for u in bases {
            let gram = u.columns().adjoint().mul(u.columns());
            let k = u.dim();
            let defect = gram.sub(&CMatrix::identity(k));
            for i in 0..k {
                for j in 0..k {
                    assert!(defect[(i, j)].norm() <= 1e-12);
                }
            }
            for j in 0..k {
                let gu = g.entries.mul_vec(u.column(j));
                assert!(gu.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() <= 1e-10);
            }
        }
    }
}

#[test]
fn eigen_basis_is_deterministic() {
    let cfg = FrameConfig::new(12, 40).unwrap();
    let a = Frame::new(cfg).null_basis_eigen().unwrap();
    let b = Frame::new(cfg).null_basis_eigen().unwrap();
    assert_eq!(a, b);
}

#[test]
fn discrete_gram_approaches_sinc_kernel() {
    let cfg = FrameConfig::new(128, 256).unwrap();
    let frame = Frame::new(cfg);
    let disc = frame.gram_discrete();
    let cont = frame.gram_continuous();
    let a = cfg.oversampling();
    let (m, n, p) = (256.0, 128.0, 64.0);
    for row in 100..110 {
        for d in 0..=4usize {
            let col = row + d;
            // Remove the linear phase of the off-center retained window.
            let phase = Complex64::from_polar(1.0, -PI * d as f64 * (2.0 * p + n - 1.0) / m);
            let g_disc = disc.entries[(row, col)] * phase / a;
            let g_cont = cont.entries[(row, col)];
            assert!(g_disc.im.abs() < 1e-12);
            let (g_disc, g_cont) = (g_disc.re, g_cont.re);
            assert!((g_disc - g_cont).abs() <= 0.05, "d={d}: {g_disc} vs {g_cont}");
        }
    }
}
