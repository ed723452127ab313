//! Experiment orchestration for the model family: validated configurations,
//! seeded deterministic runs, CSV/JSON emission, and a table of named
//! presets for the standard experiments.
//!
//! Data files are a pure function of (configuration, seed): identical runs
//! produce byte-identical CSV regardless of thread count, because every
//! trial owns an RNG stream derived from (seed, trial index) and rows are
//! reduced in index order. Metadata sidecars carry wall-clock time and are
//! the only non-reproducible output.

// `!(z > 1.0)` rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use manneville::spectral::DEFAULT_EIGEN_TOL;
use manneville::{
    ensemble_mean_aic, largest_eigenvalue, log_checkpoints, markov_ks_entropy, parry_measure,
    EpsilonSequence, Error, FellerPrediction, PreimageLadder, RenewalModel, Result,
    TransitionMatrix, ValidityReport,
};

pub mod presets;

/// Exit code contract: 0 success, 2 configuration error, 3 numeric or
/// resource error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_) => 2,
        _ => 3,
    }
}

/// Sequence-family validation ahead of any run: parameters must be in range
/// and the sequence must pass its dynamic conditions on a prefix.
pub fn check_family(seq: &EpsilonSequence) -> Result<ValidityReport> {
    seq.check_params()?;
    let report = seq.validate(1000)?;
    if !report.pass() {
        return Err(Error::Domain(format!(
            "sequence fails validity conditions: {report:?}"
        )));
    }
    Ok(report)
}

/// The exponent of the power family matched to the intermittent map:
/// `alpha = 1 / (z - 1)`.
pub fn alpha_for_z(z: f64) -> Result<f64> {
    if !(z > 1.0) {
        return Err(Error::Domain(format!("map exponent z = {z} must exceed 1")));
    }
    Ok(1.0 / (z - 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenewalConfig {
    pub seq: EpsilonSequence,
    pub horizon: u64,
    pub trials: u64,
    pub seed: u64,
    pub checkpoints_per_decade: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AicConfig {
    pub seq: EpsilonSequence,
    pub horizon: u64,
    pub trials: u64,
    pub seed: u64,
    pub checkpoints_per_decade: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderConfig {
    pub z: f64,
    pub depth: usize,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralConfig {
    pub max_symbol: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidateConfig {
    pub seq: EpsilonSequence,
    pub k_max: i64,
}

fn checkpoints_for(horizon: u64, per_decade: u32) -> Vec<u64> {
    let lo = 10u64.min(horizon);
    log_checkpoints(lo.max(1), horizon, per_decade.max(1))
}

/// One row of the renewal experiment table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenewalRow {
    pub n: u64,
    pub exact_expected: f64,
    pub mc_mean: f64,
    pub mc_stderr: f64,
    pub feller: Option<f64>,
    pub regime: &'static str,
}

pub fn renewal_table(cfg: &RenewalConfig) -> Result<Vec<RenewalRow>> {
    check_family(&cfg.seq)?;
    if cfg.horizon < 1 || cfg.trials < 1 {
        return Err(Error::Domain("horizon and trials must be positive".into()));
    }
    let model = RenewalModel::new(cfg.seq.law());
    let checkpoints = checkpoints_for(cfg.horizon, cfg.checkpoints_per_decade);
    let exact = model.exact_mean_counts(cfg.horizon as usize)?;
    let sim = model.simulate_counts(cfg.horizon, cfg.trials, cfg.seed, &checkpoints);
    let regime = model.regime().label();
    let mut rows = Vec::with_capacity(checkpoints.len());
    for (idx, &n) in checkpoints.iter().enumerate() {
        let (mc_mean, mc_stderr) = sim.checkpoint_mean_stderr(idx);
        let feller = match model.feller_prediction(n) {
            Ok(FellerPrediction::Asymptotic(v)) => Some(v),
            Ok(FellerPrediction::SublinearUnbounded) => None,
            Err(Error::UnsupportedRegime { .. }) => None,
            Err(e) => return Err(e),
        };
        rows.push(RenewalRow {
            n,
            exact_expected: exact.expected()[n as usize],
            mc_mean,
            mc_stderr,
            feller,
            regime,
        });
    }
    Ok(rows)
}

pub fn renewal_csv(rows: &[RenewalRow]) -> String {
    let mut out = String::from("n,exact_EN,mc_mean,mc_stderr,feller_pred,regime\n");
    for r in rows {
        let feller = r.feller.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n, r.exact_expected, r.mc_mean, r.mc_stderr, feller, r.regime
        )
        .unwrap();
    }
    out
}

/// One row of the information-content experiment table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AicRow {
    pub n: u64,
    pub mean_events: f64,
    pub mean_estimate: f64,
    pub mean_lower: Option<f64>,
    pub mean_upper: Option<f64>,
    pub feller: Option<f64>,
}

pub fn aic_table(cfg: &AicConfig) -> Result<Vec<AicRow>> {
    check_family(&cfg.seq)?;
    if cfg.horizon < 1 || cfg.trials < 1 {
        return Err(Error::Domain("horizon and trials must be positive".into()));
    }
    let model = RenewalModel::new(cfg.seq.law());
    let checkpoints = checkpoints_for(cfg.horizon, cfg.checkpoints_per_decade);
    let rows = ensemble_mean_aic(&model, &checkpoints, cfg.trials, cfg.seed);
    Ok(rows
        .into_iter()
        .map(|row| {
            let feller = match model.feller_prediction(row.checkpoint) {
                Ok(FellerPrediction::Asymptotic(v)) => Some(v),
                _ => None,
            };
            AicRow {
                n: row.checkpoint,
                mean_events: row.mean_events,
                mean_estimate: row.mean_estimate,
                mean_lower: (row.bounded_trials > 0).then_some(row.mean_lower),
                mean_upper: (row.bounded_trials > 0).then_some(row.mean_upper),
                feller,
            }
        })
        .collect())
}

pub fn aic_csv(rows: &[AicRow]) -> String {
    let mut out = String::from("n,mean_N,mean_est,mean_lower,mean_upper,feller_pred\n");
    for r in rows {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n,
            r.mean_events,
            r.mean_estimate,
            opt(r.mean_lower),
            opt(r.mean_upper),
            opt(r.feller)
        )
        .unwrap();
    }
    out
}

pub fn ladder_table(cfg: &LadderConfig) -> Result<PreimageLadder> {
    PreimageLadder::build(cfg.z, cfg.depth, cfg.tol)
}

pub fn ladder_csv(ladder: &PreimageLadder) -> String {
    let mut out = String::from("k,x_k\n");
    for (k, &x) in ladder.points().iter().enumerate() {
        writeln!(out, "{k},{x}").unwrap();
    }
    out
}

/// Spectral summary of the finite sub-shift.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub max_symbol: usize,
    pub lambda_max: f64,
    pub topological_entropy_nats: f64,
    pub topological_entropy_bits: f64,
    pub stationary: Vec<f64>,
    pub ks_entropy_nats: f64,
    pub ks_entropy_bits: f64,
}

pub fn spectral_summary(cfg: &SpectralConfig) -> Result<SpectralSummary> {
    let m = TransitionMatrix::countdown(cfg.max_symbol)?;
    let (lambda, _) = largest_eigenvalue(&m, DEFAULT_EIGEN_TOL)?;
    let parry = parry_measure(&m, DEFAULT_EIGEN_TOL)?;
    let entropy = markov_ks_entropy(&parry);
    Ok(SpectralSummary {
        max_symbol: cfg.max_symbol,
        lambda_max: lambda,
        topological_entropy_nats: lambda.ln(),
        topological_entropy_bits: lambda.log2(),
        stationary: parry.stationary().to_vec(),
        ks_entropy_nats: entropy.nats,
        ks_entropy_bits: entropy.bits,
    })
}

/// What a finished run wrote to disk.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub data_path: Option<PathBuf>,
    pub meta_path: Option<PathBuf>,
    pub stdout: String,
}

#[derive(Serialize)]
struct Metadata<'a, C: Serialize> {
    command: &'a str,
    config: &'a C,
    version: &'a str,
    wall_time_s: f64,
}

fn write_outputs<C: Serialize>(
    out_dir: Option<&Path>,
    name: &str,
    command: &str,
    config: &C,
    data: &str,
    data_ext: &str,
    started: Instant,
) -> Result<RunOutput> {
    let mut output = RunOutput { data_path: None, meta_path: None, stdout: String::new() };
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)
            .map_err(|e| Error::Resource(format!("cannot create {}: {e}", dir.display())))?;
        let data_path = dir.join(format!("{name}.{data_ext}"));
        fs::write(&data_path, data)
            .map_err(|e| Error::Resource(format!("cannot write {}: {e}", data_path.display())))?;
        let meta = Metadata {
            command,
            config,
            version: env!("CARGO_PKG_VERSION"),
            wall_time_s: started.elapsed().as_secs_f64(),
        };
        let meta_path = dir.join(format!("{name}.meta.json"));
        let meta_json = serde_json::to_string_pretty(&meta)
            .map_err(|e| Error::Numeric(format!("metadata serialization failed: {e}")))?;
        fs::write(&meta_path, meta_json)
            .map_err(|e| Error::Resource(format!("cannot write {}: {e}", meta_path.display())))?;
        output.data_path = Some(data_path);
        output.meta_path = Some(meta_path);
    }
    Ok(output)
}

pub fn run_renewal(cfg: &RenewalConfig, out_dir: Option<&Path>, name: &str) -> Result<RunOutput> {
    let started = Instant::now();
    let rows = renewal_table(cfg)?;
    let csv = renewal_csv(&rows);
    let mut out = write_outputs(out_dir, name, "renewal", cfg, &csv, "csv", started)?;
    out.stdout = csv;
    Ok(out)
}

pub fn run_aic(cfg: &AicConfig, out_dir: Option<&Path>, name: &str) -> Result<RunOutput> {
    let started = Instant::now();
    let rows = aic_table(cfg)?;
    let csv = aic_csv(&rows);
    let mut out = write_outputs(out_dir, name, "aic", cfg, &csv, "csv", started)?;
    out.stdout = csv;
    Ok(out)
}

pub fn run_ladder(cfg: &LadderConfig, out_dir: Option<&Path>, name: &str) -> Result<RunOutput> {
    let started = Instant::now();
    let ladder = ladder_table(cfg)?;
    let csv = ladder_csv(&ladder);
    let mut out = write_outputs(out_dir, name, "ladder", cfg, &csv, "csv", started)?;
    out.stdout = csv;
    Ok(out)
}

pub fn run_spectral(cfg: &SpectralConfig, out_dir: Option<&Path>, name: &str) -> Result<RunOutput> {
    let started = Instant::now();
    let summary = spectral_summary(cfg)?;
    let json = serde_json::to_string_pretty(&summary)
        .map_err(|e| Error::Numeric(format!("serialization failed: {e}")))?;
    let mut out = write_outputs(out_dir, name, "spectral", cfg, &json, "json", started)?;
    out.stdout = json;
    Ok(out)
}

pub fn run_validate(cfg: &ValidateConfig, out_dir: Option<&Path>, name: &str) -> Result<RunOutput> {
    let started = Instant::now();
    cfg.seq.check_params()?;
    let report = cfg.seq.validate(cfg.k_max)?;
    #[derive(Serialize)]
    struct ValidateOut<'a> {
        seq: &'a EpsilonSequence,
        k_max: i64,
        pass: bool,
        report: &'a ValidityReport,
    }
    let payload = ValidateOut { seq: &cfg.seq, k_max: cfg.k_max, pass: report.pass(), report: &report };
    let json = serde_json::to_string_pretty(&payload)
        .map_err(|e| Error::Numeric(format!("serialization failed: {e}")))?;
    let mut out = write_outputs(out_dir, name, "validate", cfg, &json, "json", started)?;
    out.stdout = json;
    Ok(out)
}
