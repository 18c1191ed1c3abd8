use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use numrad::bounds::DEFAULT_SLACK;
use numrad_cli::{
    cmd_classify, cmd_fuzz, cmd_generate, cmd_radius, cmd_range, cmd_verify, CliError, FuzzArgs, VerifyArgs, EXIT_INPUT,
};

/// Numerical radius, numerical range and sectorial-matrix inequality toolkit.
#[derive(Parser)]
#[command(name = "numrad", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Accretive/dissipative flags, sectoriality, optimal rotation and index.
    Classify { path: PathBuf },
    /// Numerical radius, operator norm and the ‖X‖/2 ≤ ω ≤ ‖X‖ check.
    Radius { path: PathBuf },
    /// Sample the boundary of the numerical range as `theta,re,im` rows.
    Range {
        path: PathBuf,
        #[arg(long, default_value_t = 360)]
        samples: usize,
        /// Write the CSV here instead of embedding it in the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one bound (or `all`) on the given factor files.
    Verify {
        #[arg(long, default_value = "all")]
        bound: String,
        #[arg(required = true, num_args = 2..)]
        paths: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SLACK)]
        slack: f64,
        /// Per-factor sector angles (radians), comma separated.
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1.0, hide = true)]
        rhs_scale: f64,
    },
    /// Draw hypothesis-matching random factors and check bounds on them.
    Fuzz {
        #[arg(long, default_value = "all")]
        bound: String,
        /// Applicable trials per bound.
        #[arg(long = "n", default_value_t = 100)]
        trials: usize,
        /// Dimension(s), comma separated; cycled across trials.
        #[arg(long, value_delimiter = ',', default_value = "3")]
        dim: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fixed sector angle for sectorial generators.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long, default_value_t = DEFAULT_SLACK)]
        slack: f64,
        #[arg(long, default_value_t = 1.0, hide = true)]
        rhs_scale: f64,
    },
    /// Write a random matrix of the given class as a matrix file.
    Generate {
        #[arg(long)]
        class: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<numrad_cli::RunReport, CliError> {
    match cli.command {
        Command::Classify { path } => cmd_classify(&path),
        Command::Radius { path } => cmd_radius(&path),
        Command::Range { path, samples, out } => cmd_range(&path, samples, out.as_deref()),
        Command::Verify { bound, paths, slack, alpha, rhs_scale } => {
            cmd_verify(&VerifyArgs { bound, paths, slack, alphas: alpha, rhs_scale })
        }
        Command::Fuzz { bound, trials, dim, seed, alpha, max_arity, slack, rhs_scale } => {
            cmd_fuzz(&FuzzArgs { bound, trials, dims: dim, seed, alpha, max_arity, slack, rhs_scale })
        }
        Command::Generate { class, dim, seed, alpha, scale, out } => cmd_generate(&class, dim, seed, alpha, scale, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            println!("{}", report.to_json());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("numrad: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
