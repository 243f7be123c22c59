//! The `gallery-lab` command line.
//!
//! Each subcommand reads an optional `key=value` file (`--config`), applies
//! flag overrides on top, validates the result and runs one experiment. Exit
//! status: 0 ok, 2 usage, 3 accuracy, 4 invariant failure.

pub mod config;
pub mod experiments;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{ExperimentConfig, ExperimentKind, Overrides, KEYS};
pub use experiments::{run_experiment, Failure, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ACCURACY: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "gallery-lab", version, about = "Gallery-mode dispersion and Strichartz experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Airy phase, Poisson pairing and eigenbasis identity checks.
    VerifyIdentities(Flags),
    /// Sup-norm envelope against the dispersion bound, early decay fit.
    DispersionScan(Flags),
    /// Envelope peaks against the caustic intervals I_n.
    CausticScan(Flags),
    /// Strichartz quotient and kernel split over a dyadic h sweep.
    StrichartzScaling(Flags),
}

#[derive(Debug, Args)]
struct Flags {
    /// key=value file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    /// Semiclassical parameter
    #[arg(long)]
    h: Option<f64>,
    /// Source depth
    #[arg(long)]
    a: Option<f64>,
    /// Space dimension, 2 or 3
    #[arg(long)]
    dim: Option<usize>,
    /// Row-major tangential metric coefficients, comma separated
    #[arg(long, allow_hyphen_values = true)]
    metric: Option<String>,
    /// Largest time
    #[arg(long)]
    tmax: Option<f64>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed of the sampled checks
    #[arg(long)]
    seed: Option<u64>,
    /// Quadrature nodes per oscillation of the direct evaluator
    #[arg(long)]
    quad_density: Option<f64>,
    /// Fine normal-grid step, in units of h
    #[arg(long)]
    fine_step: Option<f64>,
    /// Time samples per caustic period
    #[arg(long)]
    per_period: Option<usize>,
    /// Coarsest h of the Strichartz sweep
    #[arg(long)]
    h_coarse: Option<f64>,
}

impl Flags {
    fn overrides(self) -> Result<Overrides, String> {
        let file = match &self.config {
            Some(p) => Overrides::from_file(p)?,
            None => Overrides::default(),
        };
        let metric = self.metric.as_deref().map(config::parse_metric).transpose()?;
        Ok(file.merged(Overrides {
            h: self.h,
            a: self.a,
            dim: self.dim,
            metric,
            tmax: self.tmax,
            quad_density: self.quad_density,
            seed: self.seed,
            fine_step: self.fine_step,
            per_period: self.per_period,
            h_coarse: self.h_coarse,
            out: self.out,
        }))
    }
}

/// Parses `args` (including the program name), runs the experiment and returns the exit status.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (kind, flags) = match cli.command {
        Command::VerifyIdentities(f) => (ExperimentKind::VerifyIdentities, f),
        Command::DispersionScan(f) => (ExperimentKind::DispersionScan, f),
        Command::CausticScan(f) => (ExperimentKind::CausticScan, f),
        Command::StrichartzScaling(f) => (ExperimentKind::StrichartzScaling, f),
    };
    let cfg = match flags.overrides().and_then(|o| ExperimentConfig::resolve(kind, o)) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    match run_experiment(&cfg) {
        Ok(out) => {
            for line in &out.summary {
                println!("{line}");
            }
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            if out.violations.is_empty() {
                EXIT_OK
            } else {
                for v in &out.violations {
                    eprintln!("invariant failed: {v}");
                }
                EXIT_INVARIANT
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Accuracy(msg)) => {
            eprintln!("accuracy failure: {msg}");
            EXIT_ACCURACY
        }
    }
}
