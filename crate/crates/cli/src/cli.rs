use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nullframe_core::channel::{digit_accuracy, sigma_for_snr};
use nullframe_core::{BasisMode, ChannelSpec, ChirpSpec, FrameConfig, RatioReading, SecretParameters, StegoCodec};

use crate::error::{Error, Result};
use crate::io::{self, format_f64};
use crate::sim::{self, Scenario};

#[derive(Parser, Debug)]
#[command(name = "nullframe", version, about = "Hide a numeric code in the null space of an oversampled DFT frame")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a linear chirp cover signal.
    GenSignal(GenSignal),
    /// Write a secret-parameters file.
    MakeSecret(MakeSecret),
    /// Embed a code into a signal and write the transmitted coefficients.
    Encode(Encode),
    /// Pass coefficients through an additive Gaussian channel.
    Channel(ChannelCmd),
    /// Recover the signal and the code from received coefficients.
    Decode(Decode),
    /// Run one reference scenario over a list of noise seeds.
    Simulate(Simulate),
    /// Sweep the variance ratio.
    Sweep(Sweep),
}

#[derive(Args, Debug)]
pub struct GenSignal {
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    /// Start frequency, cycles per record.
    #[arg(long, default_value_t = 2.0)]
    pub f0: f64,
    /// End frequency, cycles per record.
    #[arg(long, default_value_t = 40.0)]
    pub f1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub amp: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum BasisArg {
    Analytic,
    Eigen,
}

impl From<BasisArg> for BasisMode {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Analytic => BasisMode::Analytic,
            BasisArg::Eigen => BasisMode::Eigen,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
pub enum ReadingArg {
    /// σ² / (‖c′‖₂ / M)
    #[default]
    Literal,
    /// σ² / (‖c′‖₂² / M)
    Power,
}

impl From<ReadingArg> for RatioReading {
    fn from(r: ReadingArg) -> Self {
        match r {
            ReadingArg::Literal => RatioReading::Literal,
            ReadingArg::Power => RatioReading::Power,
        }
    }
}

#[derive(Args, Debug)]
pub struct MakeSecret {
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, default_value_t = 400)]
    pub m: usize,
    #[arg(long, default_value_t = 12)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.01)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = BasisArg::Analytic)]
    pub basis_mode: BasisArg,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct Encode {
    #[arg(long)]
    pub signal: PathBuf,
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long)]
    pub secret: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ChannelCmd {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub snr_db: Option<f64>,
    #[arg(long)]
    pub sigma2: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub noise_seed: u64,
}

#[derive(Args, Debug)]
pub struct Decode {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub secret: PathBuf,
    #[arg(long)]
    pub signal_out: PathBuf,
    #[arg(long)]
    pub code_out: PathBuf,
    #[arg(long)]
    pub report: PathBuf,
    /// True code, one value per line; adds per-component accuracy to the report.
    #[arg(long)]
    pub truth: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Simulate {
    /// Reference scenario: 1 noise-free, 2 ρ = 1e-5, 3 ρ = 2e-3.
    #[arg(long, conflicts_with = "rho")]
    pub case: Option<u8>,
    /// Custom variance ratio at the given SNR.
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long, default_value_t = sim::DEFAULT_SNR_DB, allow_negative_numbers = true)]
    pub snr_db: f64,
    /// Noise seeds: "0..64", "1,2,3" or a mix.
    #[arg(long, default_value = "0..64")]
    pub seeds: String,
    #[arg(long, value_enum, default_value_t = ReadingArg::Literal)]
    pub ratio_reading: ReadingArg,
    /// Hidden-coefficient scale on the noise-free channel.
    #[arg(long, default_value_t = sim::NOISE_FREE_ALPHA)]
    pub alpha: f64,
    #[arg(long)]
    pub out_csv: PathBuf,
}

#[derive(Args, Debug)]
pub struct Sweep {
    /// Comma-separated variance ratios.
    #[arg(long)]
    pub rho_grid: String,
    #[arg(long, default_value_t = sim::DEFAULT_SNR_DB, allow_negative_numbers = true)]
    pub snr_db: f64,
    #[arg(long, default_value = "0..64")]
    pub seeds: String,
    #[arg(long, value_enum, default_value_t = ReadingArg::Literal)]
    pub ratio_reading: ReadingArg,
    #[arg(long)]
    pub out_csv: PathBuf,
}

fn chirp_error(e: nullframe_core::Error) -> Error {
    match e {
        nullframe_core::Error::InvalidChirp(msg) => {
            let (field, rest) = msg.split_once(' ').unwrap_or((msg, ""));
            let flag = match field {
                "amplitude" => "amp",
                other => other,
            };
            Error::Usage(format!("--{flag} {rest}"))
        }
        other => other.into(),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::GenSignal(a) => gen_signal(a, out),
        Command::MakeSecret(a) => make_secret(a, out),
        Command::Encode(a) => encode(a, out),
        Command::Channel(a) => channel(a, out),
        Command::Decode(a) => decode(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Sweep(a) => sweep(a, out),
    }
}

fn say(out: &mut dyn Write, key: &str, value: impl std::fmt::Display) {
    // stdout failures are not worth aborting a finished computation over.
    let _ = writeln!(out, "{key}={value}");
}

fn gen_signal(a: GenSignal, out: &mut dyn Write) -> Result<()> {
    let spec = ChirpSpec {
        n: a.n,
        f0: a.f0,
        f1: a.f1,
        amplitude: a.amp,
    };
    let x = spec.generate().map_err(chirp_error)?;
    io::write_signal(&a.out, &x)?;
    say(out, "samples", x.len());
    Ok(())
}

fn make_secret(a: MakeSecret, out: &mut dyn Write) -> Result<()> {
    let cfg = FrameConfig::new(a.n, a.m)?
        .with_basis_mode(a.basis_mode.into())
        .with_tolerance(a.tolerance)?;
    let sp = SecretParameters::new(cfg, a.seed, a.k, a.alpha)?;
    io::write_secret(&a.out, &sp)?;
    say(out, "capacity", cfg.capacity());
    Ok(())
}

fn encode(a: Encode, out: &mut dyn Write) -> Result<()> {
    let sp = io::read_secret(&a.secret)?;
    let x = io::read_signal(&a.signal)?;
    let h = io::read_code(&a.code)?;
    if h.len() != sp.code_len() {
        return Err(nullframe_core::Error::LengthMismatch {
            expected: sp.code_len(),
            actual: h.len(),
        }
        .into());
    }
    let codec = StegoCodec::new(sp)?;
    let c = codec.frame().analysis(&x)?;
    let c_prime = codec.embed(&h)?;
    let sent = c.add(&c_prime);
    io::write_coeffs(&a.out, &sent)?;
    say(out, "norm_c", format_f64(c.norm()));
    say(out, "norm_c_prime", format_f64(c_prime.norm()));
    say(out, "alpha", format_f64(sp.alpha()));
    Ok(())
}

fn channel(a: ChannelCmd, out: &mut dyn Write) -> Result<()> {
    let c = io::read_coeffs(&a.input)?;
    let sigma2 = match (a.snr_db, a.sigma2) {
        (Some(snr), None) => sigma_for_snr(&c, snr)?,
        (None, Some(s)) => s,
        (Some(_), Some(_)) => return Err(Error::Usage("give exactly one of --snr-db and --sigma2, not both".into())),
        (None, None) => return Err(Error::Usage("one of --snr-db or --sigma2 is required".into())),
    };
    let received = ChannelSpec::new(sigma2, a.noise_seed)?.apply(&c);
    io::write_coeffs(&a.out, &received)?;
    say(out, "sigma2", format_f64(sigma2));
    Ok(())
}

fn decode(a: Decode, out: &mut dyn Write) -> Result<()> {
    let sp = io::read_secret(&a.secret)?;
    let received = io::read_coeffs(&a.input)?;
    let truth = a.truth.as_ref().map(io::read_code).transpose()?;
    if let Some(t) = &truth {
        if t.len() != sp.code_len() {
            return Err(nullframe_core::Error::LengthMismatch {
                expected: sp.code_len(),
                actual: t.len(),
            }
            .into());
        }
    }
    let decoded = StegoCodec::new(sp)?.decode(&received)?;
    io::write_signal(&a.signal_out, &decoded.signal)?;
    io::write_code(&a.code_out, &decoded.code)?;

    let d = decoded.diagnostics;
    let mut report = String::new();
    let mut line = |k: &str, v: String| {
        report.push_str(k);
        report.push('=');
        report.push_str(&v);
        report.push('\n');
    };
    line("K", sp.code_len().to_string());
    line("synthesis_max_imag", format_f64(d.synthesis_max_imag));
    line("coordinate_max_imag", format_f64(d.coordinate_max_imag));
    line("outside_residual", format_f64(d.outside_residual));
    if let Some(t) = &truth {
        let acc = digit_accuracy(t, &decoded.code)?;
        let join = |v: Vec<String>| v.join(",");
        line(
            "abs_err",
            join(acc.per_component_abs_err.iter().map(|v| format_f64(*v)).collect()),
        );
        line(
            "matching_digits",
            join(
                acc.matching_digits
                    .iter()
                    .map(|d| d.map_or_else(|| "-".to_string(), |d| d.to_string()))
                    .collect(),
            ),
        );
        line(
            "min_matching_digits",
            acc.min_matching_digits
                .map_or_else(|| "-".to_string(), |d| d.to_string()),
        );
        line("max_abs_err", format_f64(acc.max_abs_err()));
    }
    std::fs::write(&a.report, &report).map_err(|e| Error::io(&a.report, e))?;
    let _ = out.write_all(report.as_bytes());
    Ok(())
}

fn simulate(a: Simulate, out: &mut dyn Write) -> Result<()> {
    let mut scenario = match (a.case, a.rho) {
        (Some(id), None) => Scenario::case(id)?,
        (None, Some(rho)) if rho > 0.0 && rho.is_finite() => Scenario::with_rho(rho, a.snr_db),
        (None, Some(rho)) => return Err(Error::Usage(format!("invalid --rho {rho}"))),
        _ => return Err(Error::Usage("one of --case or --rho is required".into())),
    };
    scenario.snr_db = a.snr_db;
    scenario.reading = a.ratio_reading.into();
    scenario.alpha = a.alpha;
    let seeds = sim::parse_seed_list(&a.seeds)?;
    let result = sim::simulate(&scenario, &seeds)?;
    sim::write_simulation_csv(&a.out_csv, &result)?;
    sim::write_series_files(&a.out_csv, &result.series)?;
    let s = &result.summary;
    say(out, "case", &scenario.label);
    say(out, "seeds", s.seeds);
    say(out, "median_min_digits", s.median_min_digits);
    say(out, "median_max_abs_err", format_f64(s.median_max_abs_err));
    say(out, "median_signal_err", format_f64(s.median_signal_err));
    Ok(())
}

fn sweep(a: Sweep, out: &mut dyn Write) -> Result<()> {
    let rhos = sim::parse_rho_grid(&a.rho_grid)?;
    let seeds = sim::parse_seed_list(&a.seeds)?;
    let points = sim::sweep(&rhos, a.snr_db, a.ratio_reading.into(), &seeds)?;
    sim::write_sweep_csv(&a.out_csv, &points)?;
    for p in &points {
        let _ = writeln!(
            out,
            "rho={} median_min_digits={}",
            format_f64(p.rho),
            p.summary.median_min_digits
        );
    }
    Ok(())
}
