use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use manneville::{EpsilonSequence, Error};
use manneville_cli::presets::{find, presets, PresetExperiment};
use manneville_cli::{
    alpha_for_z, exit_code, run_aic, run_ladder, run_renewal, run_spectral, run_validate,
    AicConfig, LadderConfig, RenewalConfig, SpectralConfig, ValidateConfig,
};

/// Intermittent-map model family: validation, spectra, renewal counts, and
/// compression-based information content.
#[derive(Parser)]
#[command(name = "manneville", version, about)]
struct Cli {
    /// Output directory for CSV data and JSON metadata (omit to print only)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Master seed for all random draws
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Worker threads for Monte Carlo trials (advisory; results do not
    /// depend on it)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Power,
    Geometric,
    LogCorrected,
    InverseLog,
}

#[derive(Args)]
struct FamilyArgs {
    /// Sequence family
    #[arg(long, value_enum)]
    family: FamilyKind,

    /// Family parameters, comma-separated key=value pairs
    /// (power: alpha, c; geometric: a, c; log-corrected: alpha, beta, c;
    /// inverse-log: c)
    #[arg(long, default_value = "")]
    params: String,
}

fn parse_params(raw: &str) -> Result<BTreeMap<String, f64>, Error> {
    let mut map = BTreeMap::new();
    for piece in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = piece
            .split_once('=')
            .ok_or_else(|| Error::Domain(format!("expected key=value, got {piece:?}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|e| Error::Domain(format!("bad value in {piece:?}: {e}")))?;
        map.insert(key.trim().to_string(), value);
    }
    Ok(map)
}

impl FamilyArgs {
    fn build(&self) -> Result<EpsilonSequence, Error> {
        build_family(self.family, &self.params)
    }
}

fn build_family(kind: FamilyKind, params: &str) -> Result<EpsilonSequence, Error> {
    let mut map = parse_params(params)?;
    let mut take = |key: &str| map.remove(key);
    let seq = match kind {
        FamilyKind::Power => {
            let alpha = take("alpha")
                .ok_or_else(|| Error::Domain("power family requires alpha=<real>".into()))?;
            EpsilonSequence::power(alpha, take("c").unwrap_or(0.5))?
        }
        FamilyKind::Geometric => {
            EpsilonSequence::geometric(take("a").unwrap_or(2.0), take("c").unwrap_or(1.0))?
        }
        FamilyKind::LogCorrected => {
            let alpha = take("alpha").ok_or_else(|| {
                Error::Domain("log-corrected family requires alpha=<real>".into())
            })?;
            EpsilonSequence::log_corrected(alpha, take("beta").unwrap_or(0.0), take("c").unwrap_or(0.5))?
        }
        FamilyKind::InverseLog => EpsilonSequence::inverse_log(take("c").unwrap_or(0.5))?,
    };
    if let Some(key) = map.keys().next() {
        return Err(Error::Domain(format!("unknown parameter {key:?} for this family")));
    }
    Ok(seq)
}

#[derive(Subcommand)]
enum Command {
    /// Check the validity conditions of a sequence family
    Validate {
        #[command(flatten)]
        family: FamilyArgs,

        /// Largest index checked
        #[arg(long, default_value_t = 1000)]
        k_max: i64,
    },

    /// Preimage ladder of the intermittent map
    Ladder {
        /// Map exponent (z > 1)
        #[arg(long)]
        z: f64,

        /// Deepest rung index
        #[arg(long, default_value_t = 64)]
        depth: usize,

        /// Bisection residual target
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
    },

    /// Perron eigenvalue, stationary measure, and entropies of the finite
    /// sub-shift
    Spectral {
        /// Largest symbol N of the truncated alphabet
        #[arg(long)]
        n: usize,
    },

    /// Exact and Monte Carlo renewal counts with asymptotic predictions
    Renewal {
        #[command(flatten)]
        family: FamilyArgs,

        /// Horizon (largest n)
        #[arg(long)]
        n: u64,

        /// Monte Carlo trials
        #[arg(long, default_value_t = 1000)]
        trials: u64,

        /// Log-spaced checkpoints per decade
        #[arg(long, default_value_t = 20)]
        checkpoints: u32,
    },

    /// Ensemble information-content estimates under Lebesgue seeding
    Aic {
        /// Sequence family (alternative to --z)
        #[arg(long, value_enum)]
        family: Option<FamilyKind>,

        /// Family parameters, comma-separated key=value pairs
        #[arg(long, default_value = "")]
        params: String,

        /// Map exponent; implies the power family with alpha = 1/(z-1)
        #[arg(long, conflicts_with = "family")]
        z: Option<f64>,

        /// Horizon (largest n)
        #[arg(long)]
        n_max: u64,

        /// Monte Carlo trials
        #[arg(long, default_value_t = 1000)]
        trials: u64,

        /// Log-spaced checkpoints per decade
        #[arg(long, default_value_t = 20)]
        checkpoints: u32,
    },

    /// Run a named preset experiment (no name lists the table)
    Preset {
        name: Option<String>,

        /// List available presets
        #[arg(long)]
        list: bool,
    },
}

fn list_presets() {
    println!("available presets:");
    for p in presets() {
        println!("  {:<22} {}", p.name, p.about);
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let out_dir = cli.out.as_deref();
    match cli.command {
        Command::Validate { family, k_max } => {
            let cfg = ValidateConfig { seq: family.build()?, k_max };
            let out = run_validate(&cfg, out_dir, "validate")?;
            println!("{}", out.stdout);
        }
        Command::Ladder { z, depth, tol } => {
            let cfg = LadderConfig { z, depth, tol };
            let out = run_ladder(&cfg, out_dir, "ladder")?;
            print!("{}", out.stdout);
        }
        Command::Spectral { n } => {
            let cfg = SpectralConfig { max_symbol: n };
            let out = run_spectral(&cfg, out_dir, "spectral")?;
            println!("{}", out.stdout);
        }
        Command::Renewal { family, n, trials, checkpoints } => {
            let cfg = RenewalConfig {
                seq: family.build()?,
                horizon: n,
                trials,
                seed: cli.seed,
                checkpoints_per_decade: checkpoints,
            };
            let out = run_renewal(&cfg, out_dir, "renewal")?;
            print!("{}", out.stdout);
        }
        Command::Aic { family, params, z, n_max, trials, checkpoints } => {
            let seq = match (family, z) {
                (Some(kind), None) => build_family(kind, &params)?,
                (None, Some(z)) => EpsilonSequence::power(alpha_for_z(z)?, 0.5)?,
                _ => {
                    return Err(Error::Domain(
                        "specify exactly one of --family or --z".into(),
                    ))
                }
            };
            let cfg = AicConfig {
                seq,
                horizon: n_max,
                trials,
                seed: cli.seed,
                checkpoints_per_decade: checkpoints,
            };
            let out = run_aic(&cfg, out_dir, "aic")?;
            print!("{}", out.stdout);
        }
        Command::Preset { name, list } => {
            let Some(name) = name else {
                list_presets();
                return Ok(());
            };
            if list {
                list_presets();
                return Ok(());
            }
            let Some(preset) = find(&name) else {
                list_presets();
                return Err(Error::Domain(format!("unknown preset {name:?}")));
            };
            let out = match preset.experiment {
                PresetExperiment::Renewal(cfg) => run_renewal(&cfg, out_dir, preset.name)?,
                PresetExperiment::Aic(cfg) => run_aic(&cfg, out_dir, preset.name)?,
            };
            print!("{}", out.stdout);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Advisory only; ignore failure if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
