use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Exit statuses.
pub const EXIT_PASS: u8 = 0;
pub const EXIT_AUDIT_FAILURE: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "ratcurves", version, about = "Stable A-graph strata, contraction classes and finite-field line audits")]
pub struct Cli {
    /// Seed for every random choice; recorded in the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of projective points a single scan may visit.
    #[arg(long, global = true, default_value_t = ratcurves::hyperlines::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Also write the report into this directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the strata for r tails and degree e.
    Strata {
        #[arg(long)]
        tails: u32,
        #[arg(long)]
        degree: u32,
        /// Complete intersection as N:d1,d2,...
        #[arg(long)]
        target: Option<String>,
        /// Write the stratification poset as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Nice contractions onto a single vertex of degree e and their classes.
    Equiv {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        bound: u32,
        /// Largest source size the order search accepts.
        #[arg(long, default_value_t = ratcurves::contraction::DEFAULT_VERTEX_CAP)]
        cap: usize,
    },
    /// Fiber dimensions of lines through every point of a hypersurface in P^n.
    AuditLines {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: u32,
        /// Largest extension degree used to estimate dimensions.
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Form JSON file; coefficients are read mod p.
        #[arg(long, conflicts_with = "random")]
        phi: Option<PathBuf>,
        /// Use a random form drawn from --seed.
        #[arg(long)]
        random: bool,
        /// Number of points that also get the exhaustive line scan.
        #[arg(long)]
        cross_check: Option<usize>,
    },
    /// Frequency of degenerate tuples of forms of degrees 1..d in P^{n-1}.
    AuditTuples {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 0.01)]
        max_fraction: f64,
    },
    /// Canonical form and invariants of a graph given as JSON.
    Inspect {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        target: Option<String>,
    },
}

/// What a command produced: the text to print and the exit status.
pub struct Outcome {
    pub name: &'static str,
    pub text: String,
    pub extension: &'static str,
    pub status: u8,
}

fn run(cli: &Cli) -> Result<u8> {
    let outcome = commands::dispatch(cli)?;
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join(format!("{}.{}", outcome.name, outcome.extension));
        fs::write(&path, &outcome.text).with_context(|| format!("writing {}", path.display()))?;
    }
    print!("{}", outcome.text);
    Ok(outcome.status)
}

/// Budget exhaustion maps to its own status; everything else is configuration.
fn status_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<ratcurves::HyperError>() {
        Some(ratcurves::HyperError::FieldTooLarge { .. }) => EXIT_BUDGET,
        _ => EXIT_CONFIG,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(status_for(&err))
        }
    }
}

pub fn parse_target(s: Option<&str>) -> Result<Option<ratcurves::TargetDescriptor>> {
    s.map(|t| t.parse().with_context(|| format!("bad --target {t:?}"))).transpose()
}

pub fn require(cond: bool, msg: &str) -> Result<()> {
    if !cond {
        bail!("{msg}");
    }
    Ok(())
}
