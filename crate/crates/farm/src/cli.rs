//! Command-line surface: configuration resolution and the six subcommands
//! (`gen`, `align`, `relevance`, `rank`, `compare`, `crossover`).
//!
//! Precedence for every knob is command-line flag over config-file value
//! over built-in default; the output directory additionally falls back to
//! the `FARM_OUT_DIR` environment variable. Exit codes: 0 success,
//! 2 invalid input, 3 parse error, 4 i/o error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::align::{apply_steps, apply_warp, path_to_matrix_trace};
use crate::baselines::{amss_align, compare_paths, ddtw, dtw, truth_deviation_samples};
use crate::distance::{transfer_crossover_scan, DistanceParams};
use crate::error::{invalid, FarmError, Result};
use crate::io;
use crate::relevance::{farm_relevance, rank_exogenous, GlobalForm, RelevanceParams};
use crate::synth::{apply_warp_spec, gen_base_signal, gen_sec4_pair, random_warp_spec};
use crate::{align as fwd, relevance};

/// Artifact serialization preference where both forms exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GlobalFormArg {
    #[value(alias = "rms_ratio")]
    Rms,
    #[value(alias = "mean_ratio")]
    Mean,
}

impl From<GlobalFormArg> for GlobalForm {
    fn from(v: GlobalFormArg) -> Self {
        match v {
            GlobalFormArg::Rms => GlobalForm::RmsRatio,
            GlobalFormArg::Mean => GlobalForm::MeanRatio,
        }
    }
}

/// Resolved run configuration after flag/config/default merging.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub window: usize,
    pub exp_scale: f64,
    pub global_form: GlobalForm,
    pub denom_epsilon: f64,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            window: relevance::WINDOW_DEFAULT,
            exp_scale: crate::distance::EXP_SCALE_DEFAULT,
            global_form: GlobalForm::RmsRatio,
            denom_epsilon: relevance::DENOM_EPSILON_DEFAULT,
            output_dir: PathBuf::from("."),
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    /// Parse a flat `key = value` config file; `#` starts a comment and
    /// unknown keys are rejected.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| FarmError::Parse {
                file: path.display().to_string(),
                row: Some(lineno as u64 + 1),
                message: msg,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "window" => {
                    self.window = value
                        .parse()
                        .map_err(|_| err(format!("bad window {value:?}")))?
                }
                "exp_scale" => {
                    self.exp_scale = value
                        .parse()
                        .map_err(|_| err(format!("bad exp_scale {value:?}")))?
                }
                "global_form" => {
                    self.global_form = value.parse().map_err(|e: FarmError| err(e.to_string()))?
                }
                "denom_epsilon" => {
                    self.denom_epsilon = value
                        .parse()
                        .map_err(|_| err(format!("bad denom_epsilon {value:?}")))?
                }
                "output_dir" => self.output_dir = PathBuf::from(value),
                "format" => {
                    self.format = match value {
                        "json" => OutputFormat::Json,
                        "csv" => OutputFormat::Csv,
                        other => return Err(err(format!("bad format {other:?}"))),
                    }
                }
                other => return Err(err(format!("unknown config key {other:?}"))),
            }
        }
        Ok(())
    }

    pub fn distance_params(&self) -> Result<DistanceParams> {
        DistanceParams::new(self.exp_scale)
    }

    pub fn relevance_params(&self) -> Result<RelevanceParams> {
        RelevanceParams::new(self.window, self.global_form, self.denom_epsilon)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "farm",
    about = "Time-series relevance toolkit: forward warp alignment, dual-branch feature distance, windowed relevance, and baseline comparisons",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Flat key = value config file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory (falls back to config, then $FARM_OUT_DIR, then `.`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Local-relevance window width (odd, >= 3).
    #[arg(long, global = true)]
    pub window: Option<usize>,

    /// Multiplier on the exponential-branch exponent.
    #[arg(long, global = true)]
    pub exp_scale: Option<f64>,

    /// Numerator aggregation of the global relevance value.
    #[arg(long, global = true)]
    pub global_form: Option<GlobalFormArg>,

    /// Magnitude floor for the full-correlation denominator.
    #[arg(long = "epsilon", global = true)]
    pub denom_epsilon: Option<f64>,

    /// Generator seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Preferred serialization for path/crossover artifacts.
    #[arg(long, global = true)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate synthetic series files.
    Gen {
        /// base | sec4-pair | warped-family
        kind: String,
        /// Series length for base/warped-family kinds.
        #[arg(long, default_value_t = 48)]
        length: usize,
        /// Number of pairs for the warped-family kind.
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Align a reference/query CSV pair and write path artifacts.
    Align { ref_csv: PathBuf, qry_csv: PathBuf },
    /// Full relevance pipeline over a reference/query CSV pair.
    Relevance { ref_csv: PathBuf, qry_csv: PathBuf },
    /// Rank every candidate CSV in a directory against a target series.
    Rank {
        target_csv: PathBuf,
        candidates_dir: PathBuf,
    },
    /// Side-by-side forward/DTW/DDTW/AMSS-style comparison artifacts.
    Compare {
        ref_csv: PathBuf,
        qry_csv: PathBuf,
        /// Ground-truth warp JSON to score paths against.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Transfer-function ordering scan over a delta grid.
    Crossover {
        #[arg(long, default_value_t = 0.01)]
        grid_step: f64,
    },
}

/// Resolve the final configuration from defaults, config file, environment
/// and flags.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Ok(env_dir) = std::env::var("FARM_OUT_DIR") {
        if !env_dir.is_empty() {
            config.output_dir = PathBuf::from(env_dir);
        }
    }
    if let Some(path) = &cli.config {
        config.apply_file(path)?;
    }
    if let Some(w) = cli.window {
        config.window = w;
    }
    if let Some(s) = cli.exp_scale {
        config.exp_scale = s;
    }
    if let Some(f) = cli.global_form {
        config.global_form = f.into();
    }
    if let Some(e) = cli.denom_epsilon {
        config.denom_epsilon = e;
    }
    if let Some(out) = &cli.out {
        config.output_dir = out.clone();
    }
    if let Some(f) = cli.format {
        config.format = f;
    }
    // Validate eagerly so every command fails fast on bad knobs.
    config.distance_params()?;
    config.relevance_params()?;
    Ok(config)
}

/// Run a parsed invocation. Returns the artifacts directory used.
pub fn run(cli: &Cli) -> Result<PathBuf> {
    let config = resolve_config(cli)?;
    fs::create_dir_all(&config.output_dir)?;
    match &cli.command {
        Command::Gen {
            kind,
            length,
            count,
        } => cmd_gen(kind, *length, cli.seed, *count, &config)?,
        Command::Align { ref_csv, qry_csv } => cmd_align(ref_csv, qry_csv, &config)?,
        Command::Relevance { ref_csv, qry_csv } => cmd_relevance(ref_csv, qry_csv, &config)?,
        Command::Rank {
            target_csv,
            candidates_dir,
        } => cmd_rank(target_csv, candidates_dir, &config)?,
        Command::Compare {
            ref_csv,
            qry_csv,
            truth,
        } => cmd_compare(ref_csv, qry_csv, truth.as_deref(), &config)?,
        Command::Crossover { grid_step } => cmd_crossover(*grid_step, &config)?,
    }
    Ok(config.output_dir)
}

pub fn cmd_gen(
    kind: &str,
    length: usize,
    seed: u64,
    count: usize,
    config: &RunConfig,
) -> Result<()> {
    let dir = &config.output_dir;
    match kind {
        "base" => {
            let s = gen_base_signal(length, seed)?;
            io::write_series_csv(&dir.join("base.csv"), &s)?;
        }
        "sec4-pair" => {
            let (r, q) = gen_sec4_pair();
            io::write_series_csv(&dir.join("sec4_ref.csv"), &r)?;
            io::write_series_csv(&dir.join("sec4_qry.csv"), &q)?;
        }
        "warped-family" => {
            if count == 0 {
                return Err(invalid("warped-family needs a positive --count"));
            }
            for i in 0..count {
                let pair_seed = seed.wrapping_add(i as u64);
                let source = gen_base_signal(length, pair_seed)?;
                let spec = random_warp_spec(length, pair_seed.wrapping_add(1))?;
                let (warped, truth) = apply_warp_spec(&source, &spec, pair_seed.wrapping_add(2))?;
                io::write_series_csv(&dir.join(format!("family_{i:02}_ref.csv")), &warped)?;
                io::write_series_csv(&dir.join(format!("family_{i:02}_qry.csv")), &source)?;
                io::write_truth_json(&dir.join(format!("family_{i:02}_truth.json")), &truth)?;
            }
        }
        other => {
            return Err(invalid(format!(
                "unknown gen kind {other:?} (expected base, sec4-pair or warped-family)"
            )))
        }
    }
    Ok(())
}

pub fn cmd_align(ref_csv: &Path, qry_csv: &Path, config: &RunConfig) -> Result<()> {
    let dir = &config.output_dir;
    let reference = io::read_series_csv(ref_csv)?;
    let query = io::read_series_csv(qry_csv)?;
    let dparams = config.distance_params()?;
    let path = fwd::align(&reference.to_deltas(), &query.to_deltas(), &dparams)?;
    match config.format {
        OutputFormat::Json => io::write_path_json(&dir.join("path.json"), &path)?,
        OutputFormat::Csv => io::write_path_csv(&dir.join("path.csv"), &path)?,
    }
    let pair = apply_warp(&reference, &query, &path)?;
    io::write_aligned_csv(&dir.join("aligned.csv"), &pair)?;
    io::write_trace_csv(&dir.join("trace.csv"), &path_to_matrix_trace(&path))?;
    Ok(())
}

pub fn cmd_relevance(ref_csv: &Path, qry_csv: &Path, config: &RunConfig) -> Result<()> {
    let dir = &config.output_dir;
    let reference = io::read_series_csv(ref_csv)?;
    let query = io::read_series_csv(qry_csv)?;
    let report = farm_relevance(
        &reference,
        &query,
        &config.distance_params()?,
        &config.relevance_params()?,
    )?;
    io::write_report_json(&dir.join("relevance.json"), &report)?;
    io::write_local_csv(&dir.join("local.csv"), &report)?;
    Ok(())
}

pub fn cmd_rank(target_csv: &Path, candidates_dir: &Path, config: &RunConfig) -> Result<()> {
    let dir = &config.output_dir;
    let target = io::read_series_csv(target_csv)?;

    let mut files: Vec<PathBuf> = fs::read_dir(candidates_dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    files.sort();

    let mut candidates = Vec::new();
    let mut unparseable = Vec::new();
    for file in &files {
        match io::read_series_csv(file) {
            Ok(series) => candidates.push(series),
            Err(e) => unparseable.push((file.clone(), e.to_string())),
        }
    }

    if candidates.is_empty() {
        // Leave the manifest behind so the failure is inspectable.
        write_skipped_manifest(&dir.join("skipped.csv"), &unparseable, &[])?;
        return Err(invalid(format!(
            "no parseable candidate series in {}",
            candidates_dir.display()
        )));
    }

    let ranking = rank_exogenous(
        &target,
        &candidates,
        &config.distance_params()?,
        &config.relevance_params()?,
    );
    io::write_ranking_csv(&dir.join("ranking.csv"), &ranking)?;
    let reports_dir = dir.join("reports");
    fs::create_dir_all(&reports_dir)?;
    for entry in &ranking.entries {
        io::write_report_json(
            &reports_dir.join(format!("{}.json", entry.name)),
            &entry.report,
        )?;
    }
    write_skipped_manifest(&dir.join("skipped.csv"), &unparseable, &ranking.skipped)?;
    Ok(())
}

fn write_skipped_manifest(
    path: &Path,
    unparseable: &[(PathBuf, String)],
    evaluation_skips: &[relevance::SkippedCandidate],
) -> Result<()> {
    let mut out = String::from("stage,name,error\n");
    for (file, error) in unparseable {
        out.push_str(&format!(
            "parse,{},{}\n",
            file.display(),
            error.replace(',', ";")
        ));
    }
    for skip in evaluation_skips {
        out.push_str(&format!(
            "evaluate,{},{}\n",
            skip.name,
            skip.error.replace(',', ";")
        ));
    }
    io::atomic_write(path, out.as_bytes())
}

pub fn cmd_compare(
    ref_csv: &Path,
    qry_csv: &Path,
    truth_path: Option<&Path>,
    config: &RunConfig,
) -> Result<()> {
    let dir = &config.output_dir;
    let reference = io::read_series_csv(ref_csv)?;
    let query = io::read_series_csv(qry_csv)?;
    let truth = truth_path.map(io::read_truth_json).transpose()?;

    let dparams = config.distance_params()?;
    let farm_path = fwd::align(&reference.to_deltas(), &query.to_deltas(), &dparams)?;
    let farm_pair = apply_warp(&reference, &query, &farm_path)?;
    let amss = amss_align(reference.values(), query.values())?;
    let amss_pair = apply_steps(&reference, &query, &amss.path.steps)?;
    let dtw_out = dtw(reference.values(), query.values())?;
    let ddtw_out = ddtw(reference.values(), query.values())?;

    let write_baseline = |name: &str, path: &crate::baselines::BaselinePath| -> Result<()> {
        let mut out = String::from("step,ref_idx,qry_idx\n");
        for (i, (r, q)) in path.steps.iter().enumerate() {
            out.push_str(&format!("{},{r},{q}\n", i + 1));
        }
        io::atomic_write(&dir.join(format!("{name}_path.csv")), out.as_bytes())?;
        if config.format == OutputFormat::Json {
            io::atomic_write(
                &dir.join(format!("{name}_path.json")),
                serde_json::to_string_pretty(path)?.as_bytes(),
            )?;
        }
        Ok(())
    };

    match config.format {
        OutputFormat::Json => io::write_path_json(&dir.join("farm_path.json"), &farm_path)?,
        OutputFormat::Csv => io::write_path_csv(&dir.join("farm_path.csv"), &farm_path)?,
    }
    write_baseline("amss", &amss.path)?;
    write_baseline("dtw", &dtw_out.path)?;
    write_baseline("ddtw", &ddtw_out.path)?;
    io::write_aligned_csv(&dir.join("farm_aligned.csv"), &farm_pair)?;
    io::write_aligned_csv(&dir.join("amss_aligned.csv"), &amss_pair)?;
    io::write_trace_csv(
        &dir.join("farm_trace.csv"),
        &path_to_matrix_trace(&farm_path),
    )?;

    let comparison = compare_paths(&farm_path, &amss.path, truth.as_ref())?;
    let dtw_truth = truth
        .as_ref()
        .map(|t| truth_deviation_samples(&dtw_out.path.steps, t))
        .transpose()?;
    let ddtw_truth = truth
        .as_ref()
        .map(|t| truth_deviation_samples(&ddtw_out.path.steps, t))
        .transpose()?;

    let raw_correlation = {
        let m = reference.len().min(query.len());
        relevance::raw_correlation(&reference.values()[..m], &query.values()[..m])
    };
    let dewarped_correlation = relevance::raw_correlation(
        farm_pair.ref_aligned.values(),
        farm_pair.qry_aligned.values(),
    );

    let bundle = serde_json::json!({
        "farm": {
            "steps": farm_path.steps,
            "evaluations": farm_path.evaluations,
            "dewarped_correlation": dewarped_correlation,
        },
        "amss": {
            "steps": amss.path.steps,
            "similarity": amss.similarity,
        },
        "dtw": { "steps": dtw_out.path.steps, "cost": dtw_out.cost },
        "ddtw": { "steps": ddtw_out.path.steps, "cost": ddtw_out.cost },
        "raw_truncated_correlation": raw_correlation,
        "divergence": {
            "farm_vs_amss": comparison.mutual,
            "farm_vs_truth": comparison.farm_vs_truth,
            "amss_vs_truth": comparison.baseline_vs_truth,
            "dtw_vs_truth": dtw_truth,
            "ddtw_vs_truth": ddtw_truth,
        },
    });
    io::atomic_write(
        &dir.join("divergence.json"),
        serde_json::to_string_pretty(&bundle)?.as_bytes(),
    )?;
    Ok(())
}

pub fn cmd_crossover(grid_step: f64, config: &RunConfig) -> Result<()> {
    let dir = &config.output_dir;
    let report = transfer_crossover_scan(&config.distance_params()?, grid_step)?;
    match config.format {
        OutputFormat::Json => io::write_crossover_json(&dir.join("crossover.json"), &report)?,
        OutputFormat::Csv => {}
    }
    io::write_crossover_csv(&dir.join("crossover.csv"), &report)?;
    Ok(())
}
