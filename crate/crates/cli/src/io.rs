//! File formats.
//!
//! * Signals and codes: text, one value per line, 17 significant digits.
//! * Coefficients (`FCOF`): `b"FCOF"`, version byte `0x01`, `u32` LE count
//!   `M`, then `M` pairs of LE binary64 `(re, im)`.
//! * Secrets: `key=value` lines with keys `N`, `M`, `basis_mode`,
//!   `tolerance`, `seed`, `K`, `alpha`. Blank lines and `#` comments are
//!   ignored.
//! * Series: CSV with an `index,value` header.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nullframe_core::{BasisMode, CoefficientVector, Complex64, FrameConfig, HiddenCode, SecretParameters, TimeSignal};

use crate::error::{Error, FormatError, Result};

pub const COEFF_MAGIC: &[u8; 4] = b"FCOF";
pub const COEFF_VERSION: u8 = 0x01;
const COEFF_HEADER_LEN: usize = 9;

/// Shortest exponent form carrying 17 significant digits.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn format_reals(values: &[f64]) -> String {
    let mut out = String::with_capacity(values.len() * 24);
    for v in values {
        out.push_str(&format_f64(*v));
        out.push('\n');
    }
    out
}

/// Parses one value per line. Blank lines are skipped.
pub fn parse_reals(text: &str) -> std::result::Result<Vec<f64>, FormatError> {
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let v: f64 = trimmed.parse().map_err(|_| FormatError::BadNumber {
            line,
            text: trimmed.to_string(),
        })?;
        if !v.is_finite() {
            return Err(FormatError::NonFinite { line });
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(FormatError::EmptySignal);
    }
    Ok(values)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub fn read_signal(path: impl AsRef<Path>) -> Result<TimeSignal> {
    let path = path.as_ref();
    let values = parse_reals(&read_text(path)?).map_err(|k| Error::format(path, k))?;
    Ok(TimeSignal::new(values)?)
}

pub fn write_signal(path: impl AsRef<Path>, x: &TimeSignal) -> Result<()> {
    write_bytes(path.as_ref(), format_reals(x.samples()).as_bytes())
}

pub fn read_code(path: impl AsRef<Path>) -> Result<HiddenCode> {
    let path = path.as_ref();
    let values = parse_reals(&read_text(path)?).map_err(|k| Error::format(path, k))?;
    Ok(HiddenCode::new(values)?)
}

pub fn write_code(path: impl AsRef<Path>, h: &HiddenCode) -> Result<()> {
    write_bytes(path.as_ref(), format_reals(h.values()).as_bytes())
}

pub fn encode_coeffs(c: &CoefficientVector) -> Vec<u8> {
    let m = u32::try_from(c.len()).expect("coefficient count exceeds u32");
    let mut out = Vec::with_capacity(COEFF_HEADER_LEN + 16 * c.len());
    out.extend_from_slice(COEFF_MAGIC);
    out.push(COEFF_VERSION);
    out.extend_from_slice(&m.to_le_bytes());
    for z in c.coeffs() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn decode_coeffs(bytes: &[u8]) -> std::result::Result<CoefficientVector, FormatError> {
    if bytes.len() < 4 || &bytes[..4] != COEFF_MAGIC {
        return Err(FormatError::BadMagic);
    }
    if bytes.len() < COEFF_HEADER_LEN {
        return Err(FormatError::Truncated {
            expected: COEFF_HEADER_LEN,
            found: bytes.len(),
        });
    }
    if bytes[4] != COEFF_VERSION {
        return Err(FormatError::BadVersion(bytes[4]));
    }
    let m = u32::from_le_bytes(bytes[5..9].try_into().unwrap());
    let expected = COEFF_HEADER_LEN + 16 * m as usize;
    if bytes.len() < expected {
        return Err(FormatError::Truncated {
            expected,
            found: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(FormatError::TrailingBytes {
            declared: m,
            extra: bytes.len() - expected,
        });
    }
    let mut coeffs = Vec::with_capacity(m as usize);
    for (i, chunk) in bytes[COEFF_HEADER_LEN..].chunks_exact(16).enumerate() {
        let re = f64::from_le_bytes(chunk[..8].try_into().unwrap());
        let im = f64::from_le_bytes(chunk[8..].try_into().unwrap());
        if !re.is_finite() || !im.is_finite() {
            return Err(FormatError::NonFiniteCoefficient {
                offset: COEFF_HEADER_LEN + 16 * i,
            });
        }
        coeffs.push(Complex64::new(re, im));
    }
    Ok(CoefficientVector::new(coeffs).expect("finite by construction"))
}

pub fn read_coeffs(path: impl AsRef<Path>) -> Result<CoefficientVector> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_coeffs(&bytes).map_err(|k| Error::format(path, k))
}

pub fn write_coeffs(path: impl AsRef<Path>, c: &CoefficientVector) -> Result<()> {
    write_bytes(path.as_ref(), &encode_coeffs(c))
}

const SECRET_KEYS: [&str; 7] = ["N", "M", "basis_mode", "tolerance", "seed", "K", "alpha"];

pub fn basis_mode_name(mode: BasisMode) -> &'static str {
    match mode {
        BasisMode::Analytic => "analytic",
        BasisMode::Eigen => "eigen",
    }
}

pub fn format_secret(sp: &SecretParameters) -> String {
    let cfg = sp.config();
    let mut out = String::new();
    writeln!(out, "N={}", cfg.signal_len()).unwrap();
    writeln!(out, "M={}", cfg.coeff_len()).unwrap();
    writeln!(out, "basis_mode={}", basis_mode_name(cfg.basis_mode())).unwrap();
    writeln!(out, "tolerance={}", format_f64(cfg.tolerance())).unwrap();
    writeln!(out, "seed={}", sp.seed()).unwrap();
    writeln!(out, "K={}", sp.code_len()).unwrap();
    writeln!(out, "alpha={}", format_f64(sp.alpha())).unwrap();
    out
}

fn parse_field<T: std::str::FromStr>(key: &'static str, value: &str) -> std::result::Result<T, FormatError> {
    value.parse().map_err(|_| FormatError::BadValue {
        key,
        value: value.to_string(),
    })
}

pub fn parse_secret(text: &str) -> std::result::Result<SecretParameters, FormatError> {
    let mut values: [Option<String>; 7] = Default::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or(FormatError::NotKeyValue { line })?;
        let key = key.trim();
        let slot = SECRET_KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| FormatError::UnknownKey {
                line,
                key: key.to_string(),
            })?;
        if values[slot].is_some() {
            return Err(FormatError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
        values[slot] = Some(value.trim().to_string());
    }
    let mut get = |i: usize| values[i].take().ok_or(FormatError::MissingKey(SECRET_KEYS[i]));
    let n: usize = parse_field("N", &get(0)?)?;
    let m: usize = parse_field("M", &get(1)?)?;
    let mode = match get(2)?.as_str() {
        "analytic" => BasisMode::Analytic,
        "eigen" => BasisMode::Eigen,
        other => {
            return Err(FormatError::BadValue {
                key: "basis_mode",
                value: other.to_string(),
            })
        }
    };
    let tolerance: f64 = parse_field("tolerance", &get(3)?)?;
    let seed: u64 = parse_field("seed", &get(4)?)?;
    let k: usize = parse_field("K", &get(5)?)?;
    let alpha: f64 = parse_field("alpha", &get(6)?)?;

    let cfg = FrameConfig::new(n, m)
        .and_then(|c| c.with_basis_mode(mode).with_tolerance(tolerance))
        .map_err(FormatError::InvalidSecret)?;
    SecretParameters::new(cfg, seed, k, alpha).map_err(FormatError::InvalidSecret)
}

pub fn read_secret(path: impl AsRef<Path>) -> Result<SecretParameters> {
    let path = path.as_ref();
    parse_secret(&read_text(path)?).map_err(|k| Error::format(path, k))
}

pub fn write_secret(path: impl AsRef<Path>, sp: &SecretParameters) -> Result<()> {
    write_bytes(path.as_ref(), format_secret(sp).as_bytes())
}

/// Writes `index,value` rows with a header.
pub fn write_series(path: impl AsRef<Path>, values: &[f64]) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["index", "value"])?;
    for (i, v) in values.iter().enumerate() {
        w.write_record([i.to_string(), format_f64(*v)])?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}
