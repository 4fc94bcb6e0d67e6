use nullframe::io::{self, decode_coeffs, encode_coeffs, parse_secret};
use nullframe::{Error, FormatError};
use nullframe_core::{BasisMode, CoefficientVector, Complex64, FrameConfig, HiddenCode, SecretParameters, TimeSignal};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO
}

proptest! {
    #[test]
    fn signal_round_trip_is_bit_exact(v in prop::collection::vec(finite(), 1..64)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.txt");
        let x = TimeSignal::new(v.clone()).unwrap();
        io::write_signal(&path, &x).unwrap();
        let back = io::read_signal(&path).unwrap();
        for (a, b) in back.samples().iter().zip(&v) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn coeff_round_trip_is_bit_exact(v in prop::collection::vec((finite(), finite()), 0..64)) {
        let c = CoefficientVector::new(v.iter().map(|&(re, im)| Complex64::new(re, im)).collect()).unwrap();
        let bytes = encode_coeffs(&c);
        prop_assert_eq!(bytes.len(), 9 + 16 * v.len());
        let back = decode_coeffs(&bytes).unwrap();
        for (a, b) in back.coeffs().iter().zip(c.coeffs()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn secret_round_trip(seed in any::<u64>(), k in 1usize..=8, alpha in 1e-12f64..1e12, eigen in any::<bool>()) {
        let mode = if eigen { BasisMode::Eigen } else { BasisMode::Analytic };
        let cfg = FrameConfig::new(8, 16).unwrap().with_basis_mode(mode);
        let sp = SecretParameters::new(cfg, seed, k, alpha).unwrap();
        let back = parse_secret(&io::format_secret(&sp)).unwrap();
        prop_assert_eq!(back, sp);
    }

    #[test]
    fn coeff_reader_never_panics(bytes in prop::collection::vec(any::<u8>(), 0..80)) {
        let _ = decode_coeffs(&bytes);
    }
}

#[test]
fn coeff_layout_is_fixed() {
    let c = CoefficientVector::new(vec![Complex64::new(1.0, -2.0)]).unwrap();
    let bytes = encode_coeffs(&c);
    assert_eq!(&bytes[..5], b"FCOF\x01");
    assert_eq!(&bytes[5..9], &1u32.to_le_bytes());
    assert_eq!(&bytes[9..17], &1.0f64.to_le_bytes());
    assert_eq!(&bytes[17..25], &(-2.0f64).to_le_bytes());
}

#[test]
fn malformed_coefficient_files() {
    let c = CoefficientVector::new(vec![Complex64::new(1.0, 2.0); 3]).unwrap();
    let good = encode_coeffs(&c);

    let err = decode_coeffs(&good[..good.len() - 1]).unwrap_err();
    assert!(err.to_string().starts_with("truncated"), "{err}");

    let mut bad = good.clone();
    bad[0] = b'X';
    assert_eq!(decode_coeffs(&bad).unwrap_err().to_string(), "not a coefficient file");

    let mut bad = good.clone();
    bad[4] = 2;
    assert_eq!(decode_coeffs(&bad).unwrap_err(), FormatError::BadVersion(2));

    let mut long = good;
    long.extend_from_slice(&[0; 16]);
    assert!(matches!(decode_coeffs(&long).unwrap_err(), FormatError::TrailingBytes { .. }));
}

#[test]
fn malformed_signal_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.txt");

    std::fs::write(&path, "1.0\n2.0\nabc\n").unwrap();
    let err = io::read_signal(&path).unwrap_err();
    assert!(matches!(err, Error::Format { kind: FormatError::BadNumber { line: 3, .. }, .. }), "{err}");
    assert!(err.to_string().contains("line 3"));

    std::fs::write(&path, "").unwrap();
    let err = io::read_signal(&path).unwrap_err();
    assert!(err.to_string().ends_with("empty signal"), "{err}");

    let err = io::read_signal(dir.path().join("missing.txt")).unwrap_err();
    assert_eq!(err.class(), "io");
}

#[test]
fn malformed_secret_files() {
    let cfg = FrameConfig::new(200, 400).unwrap();
    let text = io::format_secret(&SecretParameters::new(cfg, 7, 12, 0.5).unwrap());

    let no_seed: String = text.lines().filter(|l| !l.starts_with("seed=")).map(|l| format!("{l}\n")).collect();
    let err = parse_secret(&no_seed).unwrap_err();
    assert_eq!(err, FormatError::MissingKey("seed"));
    assert!(err.to_string().contains("seed"));

    let err = parse_secret(&format!("{text}colour=blue\n")).unwrap_err();
    assert!(matches!(err, FormatError::UnknownKey { .. }));

    let over = text.replace("K=12", "K=201");
    match parse_secret(&over).unwrap_err() {
        FormatError::InvalidSecret(nullframe_core::Error::CapacityExceeded { k: 201, capacity: 200 }) => {}
        other => panic!("{other}"),
    }

    let bad = text.replace("alpha=", "alpha=x");
    assert!(matches!(parse_secret(&bad).unwrap_err(), FormatError::BadValue { key: "alpha", .. }));
}

#[test]
fn code_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.txt");
    let h = HiddenCode::new(vec![0.1, -1e-300, 3.0e200]).unwrap();
    io::write_code(&path, &h).unwrap();
    assert_eq!(io::read_code(&path).unwrap(), h);
}
