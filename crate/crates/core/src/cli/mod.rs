//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or contract violation, 3 data
//! insufficiency. All randomness comes from `--seed`.

pub mod format;
mod input;
mod manifest;
mod plot;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

pub use format::{sig9, Cell, Table};
pub use input::{parse_horizons, parse_probe, parse_series};
pub use manifest::RunManifest;

use crate::analytic::{simulate, GaussianProcessSpec, ProcessKind, DEFAULT_BURN_IN};
use crate::diagnostics::{decompose_loss, FloorBounds};
use crate::embed::effective_len;
use crate::error::Error;
use crate::estimators::{estimate_profile, EstimatorConfig};
use crate::series::InformationSetSpec;
use crate::significance::permutation_test;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INSUFFICIENT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Insufficient(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Insufficient(_) | CliError::Core(Error::InsufficientData { .. }) => {
                EXIT_INSUFFICIENT
            }
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "forecastability",
    version,
    about = "Forecastability profiles: how much log loss a lag window can remove"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate F(h) from a series with the KSG estimator.
    Profile {
        input: PathBuf,
        #[command(flatten)]
        estimation: EstimationArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact Gaussian profile of an AR(1) or seasonal AR model.
    Analytic {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1)]
        lags: usize,
        #[arg(long, default_value = "1..12")]
        horizons: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Permutation p-values for estimated F(h).
    Significance {
        input: PathBuf,
        #[command(flatten)]
        estimation: EstimationArgs,
        #[arg(long, default_value_t = 99)]
        replicates: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Split a probe forecaster's log loss into exploited and unexploited parts.
    Decompose {
        input: PathBuf,
        /// CSV with columns t_index,horizon,log_density (nats, original units).
        #[arg(long)]
        probe: PathBuf,
        #[arg(long, default_value_t = 1)]
        lags: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        jitter: f64,
        #[arg(long)]
        no_standardize: bool,
        /// Alphabet size for the Fano bound on discrete outcomes.
        #[arg(long)]
        alphabet: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Simulate a Gaussian model to CSV.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BURN_IN)]
        burn_in: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct EstimationArgs {
    #[arg(long, default_value_t = 1)]
    pub lags: usize,
    #[arg(long, default_value = "1..10")]
    pub horizons: String,
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tie-breaking jitter relative to the sample standard deviation.
    #[arg(long, default_value_t = 1e-10)]
    pub jitter: f64,
    #[arg(long)]
    pub no_standardize: bool,
}

impl EstimationArgs {
    fn config(&self) -> EstimatorConfig {
        config_from(self.k, self.seed, self.jitter, self.no_standardize)
    }
}

fn config_from(k: usize, seed: u64, jitter: f64, no_standardize: bool) -> EstimatorConfig {
    EstimatorConfig {
        k,
        jitter_scale: jitter,
        standardize: !no_standardize,
        seed,
        ..EstimatorConfig::default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    fn convert(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / std::f64::consts::LN_2,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Units::Nats)]
    pub units: Units,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file; stdout when omitted. CSV files get a `.manifest.json` sidecar.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write an SVG plot of the profile here.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Ar1,
    Seasonal,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelName,
    #[arg(long, allow_negative_numbers = true)]
    pub phi: f64,
    /// Seasonal coefficient.
    #[arg(long = "Phi", default_value_t = 0.0, allow_negative_numbers = true)]
    pub seasonal_phi: f64,
    /// Seasonal period.
    #[arg(long, default_value_t = 12)]
    pub s: usize,
    #[arg(long, default_value_t = 1.0)]
    pub sigma2: f64,
}

impl ModelArgs {
    fn spec(&self) -> Result<GaussianProcessSpec, CliError> {
        let kind = match self.model {
            ModelName::Ar1 => ProcessKind::Ar1 { phi: self.phi },
            ModelName::Seasonal => ProcessKind::SeasonalAr {
                phi: self.phi,
                seasonal_phi: self.seasonal_phi,
                period: self.s,
            },
        };
        Ok(GaussianProcessSpec::new(kind, self.sigma2)?)
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Profile {
            input,
            estimation,
            output,
        } => cmd_profile(input, estimation, output),
        Command::Analytic {
            model,
            lags,
            horizons,
            output,
        } => cmd_analytic(model, *lags, horizons, output),
        Command::Significance {
            input,
            estimation,
            replicates,
            output,
        } => cmd_significance(input, estimation, *replicates, output),
        Command::Decompose {
            input,
            probe,
            lags,
            k,
            seed,
            jitter,
            no_standardize,
            alphabet,
            output,
        } => {
            let config = config_from(*k, *seed, *jitter, *no_standardize);
            cmd_decompose(input, probe, *lags, config, *alphabet, output)
        }
        Command::Simulate {
            model,
            n,
            seed,
            burn_in,
            out,
        } => cmd_simulate(model, *n, *seed, *burn_in, out.as_deref()),
    }
}

fn cmd_profile(input: &Path, est: &EstimationArgs, output: &OutputArgs) -> Result<(), CliError> {
    let (series, raw) = input::read_series(input)?;
    let spec = InformationSetSpec::new(est.lags, parse_horizons(&est.horizons)?)?;
    let config = est.config();
    let profile = estimate_profile(&series, &spec, &config)?;

    let value_col = format!("forecastability_{}", output.units.suffix());
    let mut table = Table::new(["horizon", value_col.as_str(), "n_effective", "gap"]);
    let meta = profile.estimator_meta().expect("estimated profile");
    for ((h, v), m) in profile
        .horizons()
        .iter()
        .zip(profile.values_nats())
        .zip(&meta.n_effective)
    {
        table.push(vec![
            Cell::Int(*h as u64),
            v.map_or(Cell::Empty, |x| Cell::Num(output.units.convert(x))),
            Cell::Int(*m as u64),
            Cell::Flag(v.is_none()),
        ]);
    }
    for h in profile.gap_horizons() {
        eprintln!(
            "warning: horizon {h} has too few pairs for k = {}; left as a gap",
            config.k
        );
    }

    let manifest = RunManifest::new(
        "profile",
        json!({ "lags": est.lags, "horizons": spec.horizons(), "estimator": config, "units": output.units.suffix() }),
        config.seed,
    )
    .with_input(input, raw.as_bytes());
    emit(
        &table,
        &manifest,
        output,
        &value_col,
        "Estimated forecastability profile",
    )?;

    if profile.all_gaps() {
        return Err(CliError::Insufficient(
            "no horizon has enough pairs for estimation".into(),
        ));
    }
    Ok(())
}

fn cmd_analytic(
    model: &ModelArgs,
    lags: usize,
    horizons: &str,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let spec = model.spec()?;
    let horizons = parse_horizons(horizons)?;
    let profile = spec.profile(lags, &horizons)?;
    let value_col = format!("forecastability_{}", output.units.suffix());
    let mut table = Table::new(["horizon", value_col.as_str()]);
    for (h, v) in profile.horizons().iter().zip(profile.dense_values()) {
        table.push(vec![
            Cell::Int(*h as u64),
            Cell::Num(output.units.convert(v)),
        ]);
    }
    let manifest = RunManifest::new(
        "analytic",
        json!({ "process": spec, "lags": lags, "horizons": horizons, "units": output.units.suffix() }),
        0,
    );
    emit(
        &table,
        &manifest,
        output,
        &value_col,
        "Analytic forecastability profile",
    )
}

fn cmd_significance(
    input: &Path,
    est: &EstimationArgs,
    replicates: usize,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let (series, raw) = input::read_series(input)?;
    let config = est.config();
    config.validate()?;
    let requested = parse_horizons(&est.horizons)?;
    let usable: Vec<usize> = requested
        .iter()
        .copied()
        .filter(|&h| {
            effective_len(series.len(), est.lags, h).is_some_and(|m| m >= config.min_pairs())
        })
        .collect();
    for h in requested.iter().filter(|h| !usable.contains(h)) {
        eprintln!(
            "warning: horizon {h} has too few pairs for k = {}; skipped",
            config.k
        );
    }
    if usable.is_empty() {
        return Err(CliError::Insufficient(
            "no horizon has enough pairs for estimation".into(),
        ));
    }
    let spec = InformationSetSpec::new(est.lags, usable)?;
    let results = permutation_test(&series, &spec, &config, replicates, est.seed)?;

    let value_col = format!("forecastability_{}", output.units.suffix());
    let mut table = Table::new([
        "horizon",
        value_col.as_str(),
        "p_value",
        "null_q05",
        "null_q50",
        "null_q95",
        "replicates",
    ]);
    for r in &results {
        table.push(vec![
            Cell::Int(r.horizon as u64),
            Cell::Num(output.units.convert(r.observed_nats)),
            Cell::Num(r.p_value),
            Cell::Num(output.units.convert(r.null_quantile(0.05))),
            Cell::Num(output.units.convert(r.null_quantile(0.5))),
            Cell::Num(output.units.convert(r.null_quantile(0.95))),
            Cell::Int(r.replicates as u64),
        ]);
    }
    let manifest = RunManifest::new(
        "significance",
        json!({ "lags": est.lags, "horizons": spec.horizons(), "estimator": config, "replicates": replicates, "units": output.units.suffix() }),
        est.seed,
    )
    .with_input(input, raw.as_bytes());
    emit(
        &table,
        &manifest,
        output,
        &value_col,
        "Forecastability with permutation null",
    )
}

fn cmd_decompose(
    input: &Path,
    probe_path: &Path,
    lags: usize,
    config: EstimatorConfig,
    alphabet: Option<usize>,
    output: &OutputArgs,
) -> Result<(), CliError> {
    let (series, raw) = input::read_series(input)?;
    let probe_raw = std::fs::read_to_string(probe_path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", probe_path.display())))?;
    let probes = parse_probe(&probe_raw, series.len())?;
    let horizons: Vec<usize> = probes.iter().map(|p| p.horizon).collect();
    let spec = InformationSetSpec::new(lags, horizons.clone())?;
    let fhat = estimate_profile(&series, &spec, &config)?;
    if let Some(h) = fhat.gap_horizons().first() {
        return Err(CliError::Insufficient(format!(
            "horizon {h} has too few pairs to estimate forecastability"
        )));
    }

    let u = output.units;
    let mut columns: Vec<String> = [
        "horizon",
        "n_eval",
        "expected_loss",
        "marginal_entropy",
        "forecastability",
        "exploitability",
        "exploitation_ratio",
        "approximation_gap",
        "low_forecastability",
        "pinsker_tv_bound",
    ]
    .iter()
    .map(|c| c.to_string())
    .collect();
    for c in columns.iter_mut().take(8).skip(2) {
        if c != "exploitation_ratio" {
            c.push('_');
            c.push_str(u.suffix());
        }
    }
    if alphabet.is_some() {
        columns.push("fano_min_error".into());
        columns.push("fano_vacuous".into());
    }
    let value_col = format!("forecastability_{}", u.suffix());
    let mut table = Table::new(columns);
    for probe in &probes {
        let d = decompose_loss(probe, &series, &fhat, &config)?;
        let floors = FloorBounds::new(d.forecastability_nats, d.marginal_entropy_nats, alphabet)?;
        let mut row = vec![
            Cell::Int(d.horizon as u64),
            Cell::Int(d.n_eval as u64),
            Cell::Num(u.convert(d.expected_loss_nats)),
            Cell::Num(u.convert(d.marginal_entropy_nats)),
            Cell::Num(u.convert(d.forecastability_nats)),
            Cell::Num(u.convert(d.exploitability_nats)),
            Cell::Num(d.exploitation_ratio),
            Cell::Num(u.convert(d.approximation_gap_nats)),
            Cell::Flag(d.low_forecastability),
            Cell::Num(floors.pinsker_tv_bound),
        ];
        if let Some(f) = floors.fano {
            row.push(Cell::Num(f.min_error));
            row.push(Cell::Flag(f.vacuous));
        }
        table.push(row);
    }
    let manifest = RunManifest::new(
        "decompose",
        json!({ "lags": lags, "horizons": horizons, "estimator": config, "alphabet": alphabet, "units": u.suffix() }),
        config.seed,
    )
    .with_input(input, raw.as_bytes())
    .with_input(probe_path, probe_raw.as_bytes());
    emit(
        &table,
        &manifest,
        output,
        &value_col,
        "Forecastability and probe exploitability",
    )
}

fn cmd_simulate(
    model: &ModelArgs,
    n: usize,
    seed: u64,
    burn_in: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let spec = model.spec()?;
    let series = simulate(&spec, n, seed, burn_in)?;
    // shortest round-trip representation so re-reading is lossless
    let mut text = String::from("index,value\n");
    for (i, v) in series.values().iter().enumerate() {
        text.push_str(&format!("{i},{v:?}\n"));
    }
    let manifest = RunManifest::new(
        "simulate",
        json!({ "process": spec, "n": n, "burn_in": burn_in }),
        seed,
    );
    write_output(out, text.as_bytes())?;
    if let Some(path) = out {
        manifest.write_sidecar(path)?;
    }
    Ok(())
}

fn emit(
    table: &Table,
    manifest: &RunManifest,
    output: &OutputArgs,
    value_col: &str,
    title: &str,
) -> Result<(), CliError> {
    let body = match output.format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => {
            let doc = json!({ "manifest": manifest, "records": table.to_json_records() });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    };
    write_output(output.out.as_deref(), body.as_bytes())?;
    if let (Some(path), OutputFormat::Csv) = (&output.out, output.format) {
        manifest.write_sidecar(path)?;
    }
    if let Some(plot_path) = &output.plot {
        let y_label = format!("forecastability ({})", output.units.suffix());
        let svg = plot::render_svg(table, "horizon", &[value_col], title, &y_label);
        std::fs::write(plot_path, svg)?;
    }
    Ok(())
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}
