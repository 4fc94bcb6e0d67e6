//! Monte Carlo harness for the three reference scenarios and ρ sweeps.
//!
//! Every run uses the reference chirp (`N = 200`), `M = 400`, the twelve-value
//! reference code and mixer seed [`MIXER_SEED`]. Noisy scenarios fix σ² from
//! the signal-coefficient SNR and choose α from the requested variance ratio.

use std::path::{Path, PathBuf};

use nullframe_core::channel::{alpha_for_variance_ratio, digit_accuracy, sigma_for_snr};
use nullframe_core::{
    AccuracyReport, ChannelSpec, ChirpSpec, FrameConfig, HiddenCode, RatioReading,
    SecretParameters, StegoCodec,
};

use crate::error::{Error, Result};
use crate::io::{format_f64, write_series};

/// The hidden code used in every reference scenario.
pub const REFERENCE_CODE: [f64; 12] = [
    3.1492, 2.1271, 5.1312, 1.2835, 7.7976, 3.7160, 8.4139, 1.9791, 0.5863, 5.8321, 8.1032, 6.4908,
];
pub const REFERENCE_N: usize = 200;
pub const REFERENCE_M: usize = 400;
pub const MIXER_SEED: u64 = 1;
/// Hidden-coefficient scale on the noise-free channel.
pub const NOISE_FREE_ALPHA: f64 = 0.01;
pub const DEFAULT_SNR_DB: f64 = 40.0;
pub const CASE2_RHO: f64 = 1e-5;
pub const CASE3_RHO: f64 = 2e-3;

pub fn reference_code() -> HiddenCode {
    HiddenCode::new(REFERENCE_CODE.to_vec()).expect("reference code is finite")
}

pub fn reference_config() -> FrameConfig {
    FrameConfig::new(REFERENCE_N, REFERENCE_M).expect("reference geometry is valid")
}

/// What to simulate.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub label: String,
    /// `None` is the noise-free channel.
    pub rho: Option<f64>,
    pub snr_db: f64,
    pub reading: RatioReading,
    /// α for the noise-free channel.
    pub alpha: f64,
}

impl Scenario {
    pub fn case(id: u8) -> Result<Self> {
        let rho = match id {
            1 => None,
            2 => Some(CASE2_RHO),
            3 => Some(CASE3_RHO),
            other => return Err(Error::Usage(format!("invalid case id {other}; expected 1, 2 or 3"))),
        };
        Ok(Self {
            label: id.to_string(),
            rho,
            snr_db: DEFAULT_SNR_DB,
            reading: RatioReading::default(),
            alpha: NOISE_FREE_ALPHA,
        })
    }

    pub fn with_rho(rho: f64, snr_db: f64) -> Self {
        Self {
            label: format!("rho={}", format_f64(rho)),
            rho: Some(rho),
            snr_db,
            reading: RatioReading::default(),
            alpha: NOISE_FREE_ALPHA,
        }
    }
}

/// One seed's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub case_id: String,
    pub seed: u64,
    pub rho: f64,
    pub sigma2: f64,
    pub alpha: f64,
    pub recovered: HiddenCode,
    pub accuracy: AccuracyReport,
    /// Largest per-sample error of the recovered signal.
    pub signal_err: f64,
}

impl CaseResult {
    pub fn min_digits(&self) -> u32 {
        self.accuracy.min_matching_digits.unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub seeds: usize,
    pub median_min_digits: f64,
    pub p10_min_digits: f64,
    pub p90_min_digits: f64,
    pub median_max_abs_err: f64,
    pub median_signal_err: f64,
    /// Median matched digits per code component.
    pub median_digits: Vec<f64>,
    /// Median recovered value per code component.
    pub median_recovered: Vec<f64>,
}

/// `|c|`, `|c′|`, `|c″|` and the cover signal for one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub signal: Vec<f64>,
    pub abs_c: Vec<f64>,
    pub abs_c_prime: Vec<f64>,
    pub abs_c_dprime: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub scenario: Scenario,
    pub results: Vec<CaseResult>,
    pub summary: Summary,
    pub series: Series,
}

pub fn median(values: &[f64]) -> f64 {
    percentile(values, 0.5)
}

/// Linear-interpolated percentile, `q ∈ [0, 1]`. NaN for an empty slice.
pub fn percentile(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn summarize(results: &[CaseResult]) -> Summary {
    let min_digits: Vec<f64> = results.iter().map(|r| r.min_digits() as f64).collect();
    let max_err: Vec<f64> = results.iter().map(|r| r.accuracy.max_abs_err()).collect();
    let sig_err: Vec<f64> = results.iter().map(|r| r.signal_err).collect();
    let k = results.first().map_or(0, |r| r.recovered.len());
    let per_component = |f: &dyn Fn(&CaseResult, usize) -> f64| -> Vec<f64> {
        (0..k)
            .map(|i| median(&results.iter().map(|r| f(r, i)).collect::<Vec<_>>()))
            .collect()
    };
    Summary {
        seeds: results.len(),
        median_min_digits: median(&min_digits),
        p10_min_digits: percentile(&min_digits, 0.1),
        p90_min_digits: percentile(&min_digits, 0.9),
        median_max_abs_err: median(&max_err),
        median_signal_err: median(&sig_err),
        median_digits: per_component(&|r, i| r.accuracy.matching_digits[i].unwrap_or(0) as f64),
        median_recovered: per_component(&|r, i| r.recovered.values()[i]),
    }
}

/// Runs `scenario` once per noise seed. Seeds are processed in the given
/// order and results keep that order.
pub fn simulate(scenario: &Scenario, seeds: &[u64]) -> Result<Simulation> {
    if seeds.is_empty() {
        return Err(Error::Usage("seed list is empty".into()));
    }
    let cfg = reference_config();
    let x = ChirpSpec::default().generate()?;
    let h = reference_code();

    let probe = StegoCodec::new(SecretParameters::new(cfg, MIXER_SEED, h.len(), 1.0)?)?;
    let c = probe.frame().analysis(&x)?;
    let (sigma2, alpha, rho) = match scenario.rho {
        None => (0.0, scenario.alpha, 0.0),
        Some(rho) => {
            let sigma2 = sigma_for_snr(&c, scenario.snr_db)?;
            let alpha = alpha_for_variance_ratio(sigma2, rho, &h, &cfg, scenario.reading)?;
            (sigma2, alpha, rho)
        }
    };
    let codec = StegoCodec::new(SecretParameters::new(cfg, MIXER_SEED, h.len(), alpha)?)?;
    let c_prime = codec.embed(&h)?;
    let sent = c.add(&c_prime);

    let mut results = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let received = ChannelSpec::new(sigma2, seed)?.apply(&sent);
        let out = codec.decode(&received)?;
        results.push(CaseResult {
            case_id: scenario.label.clone(),
            seed,
            rho,
            sigma2,
            alpha,
            accuracy: digit_accuracy(&h, &out.code)?,
            signal_err: out.signal.max_abs_diff(&x),
            recovered: out.code,
        });
    }
    let summary = summarize(&results);
    let series = Series {
        signal: x.samples().to_vec(),
        abs_c: c.magnitudes(),
        abs_c_prime: c_prime.magnitudes(),
        abs_c_dprime: sent.magnitudes(),
    };
    Ok(Simulation {
        scenario: scenario.clone(),
        results,
        summary,
        series,
    })
}

fn header(k: usize) -> Vec<String> {
    let mut h: Vec<String> = [
        "case", "seed", "rho", "sigma2", "alpha", "min_matching_digits", "max_abs_err", "signal_max_err",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    h.extend((0..k).map(|i| format!("h{i}")));
    h.extend((0..k).map(|i| format!("digits{i}")));
    h
}

/// Per-seed rows followed by a `median` summary row.
pub fn write_simulation_csv(path: impl AsRef<Path>, sim: &Simulation) -> Result<()> {
    let path = path.as_ref();
    let k = REFERENCE_CODE.len();
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header(k))?;
    for r in &sim.results {
        let mut row = vec![
            r.case_id.clone(),
            r.seed.to_string(),
            format_f64(r.rho),
            format_f64(r.sigma2),
            format_f64(r.alpha),
            r.min_digits().to_string(),
            format_f64(r.accuracy.max_abs_err()),
            format_f64(r.signal_err),
        ];
        row.extend(r.recovered.values().iter().map(|v| format_f64(*v)));
        row.extend(
            r.accuracy
                .matching_digits
                .iter()
                .map(|d| d.map_or_else(String::new, |d| d.to_string())),
        );
        w.write_record(&row)?;
    }
    let s = &sim.summary;
    let first = &sim.results[0];
    let mut row = vec![
        first.case_id.clone(),
        "median".to_string(),
        format_f64(first.rho),
        format_f64(first.sigma2),
        format_f64(first.alpha),
        s.median_min_digits.to_string(),
        format_f64(s.median_max_abs_err),
        format_f64(s.median_signal_err),
    ];
    row.extend(s.median_recovered.iter().map(|v| format_f64(*v)));
    row.extend(s.median_digits.iter().map(|v| v.to_string()));
    w.write_record(&row)?;
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Paths of the series written next to `csv_path`.
pub fn series_paths(csv_path: &Path) -> [PathBuf; 4] {
    let stem = csv_path.file_stem().and_then(|s| s.to_str()).unwrap_or("simulate");
    let dir = csv_path.parent().unwrap_or(Path::new(""));
    ["signal", "abs_c", "abs_c_prime", "abs_c_dprime"].map(|name| dir.join(format!("{stem}_{name}.csv")))
}

pub fn write_series_files(csv_path: &Path, series: &Series) -> Result<[PathBuf; 4]> {
    let paths = series_paths(csv_path);
    let data = [&series.signal, &series.abs_c, &series.abs_c_prime, &series.abs_c_dprime];
    for (p, d) in paths.iter().zip(data) {
        write_series(p, d)?;
    }
    Ok(paths)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub rho: f64,
    pub summary: Summary,
}

pub fn sweep(rhos: &[f64], snr_db: f64, reading: RatioReading, seeds: &[u64]) -> Result<Vec<SweepPoint>> {
    if rhos.is_empty() {
        return Err(Error::Usage("rho grid is empty".into()));
    }
    rhos.iter()
        .map(|&rho| {
            let scenario = Scenario {
                reading,
                ..Scenario::with_rho(rho, snr_db)
            };
            Ok(SweepPoint {
                rho,
                summary: simulate(&scenario, seeds)?.summary,
            })
        })
        .collect()
}

pub fn write_sweep_csv(path: impl AsRef<Path>, points: &[SweepPoint]) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "rho",
        "seeds",
        "median_min_digits",
        "p10_min_digits",
        "p90_min_digits",
        "median_max_abs_err",
        "median_signal_err",
    ])?;
    for p in points {
        let s = &p.summary;
        w.write_record([
            format_f64(p.rho),
            s.seeds.to_string(),
            s.median_min_digits.to_string(),
            s.p10_min_digits.to_string(),
            s.p90_min_digits.to_string(),
            format_f64(s.median_max_abs_err),
            format_f64(s.median_signal_err),
        ])?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Parses `"0..50"`, `"1,2,3"` or a mix such as `"0..10,42"`. Ranges are
/// half-open.
pub fn parse_seed_list(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::Usage(format!("invalid seed list {text:?}"));
    let mut seeds = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            seeds.extend(a..b);
        } else {
            seeds.push(part.parse().map_err(|_| bad())?);
        }
    }
    if seeds.is_empty() {
        return Err(Error::Usage("seed list is empty".into()));
    }
    Ok(seeds)
}

pub fn parse_rho_grid(text: &str) -> Result<Vec<f64>> {
    let rhos = text
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<f64>()
                .ok()
                .filter(|v| *v > 0.0 && v.is_finite())
                .ok_or_else(|| Error::Usage(format!("invalid rho {p:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if rhos.is_empty() {
        return Err(Error::Usage("rho grid is empty".into()));
    }
    Ok(rhos)
}
