use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod format;
mod thermo_cmds;
mod verify;

use format::{emit, Format};
use verify::{run_suite, VerifyConfig, SUITES};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] fockforge::Error),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser)]
#[command(name = "fockforge", version, about = "Full Fock space thermodynamics and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to PATH instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Partition function Tr e^{-βL} at one β or over an inclusive β grid
    Partition {
        /// Lowest weight n
        #[arg(short = 'n', long)]
        weight: u32,
        #[arg(long, conflicts_with = "beta_range", required_unless_present = "beta_range", allow_negative_numbers = true)]
        beta: Option<f64>,
        /// Inclusive grid START STOP STEPS
        #[arg(long, num_args = 3, value_names = ["START", "STOP", "STEPS"], allow_negative_numbers = true)]
        beta_range: Option<Vec<String>>,
        /// Truncation of the multiplicity series
        #[arg(long, default_value_t = 200)]
        m_max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Maximal inverse temperature β_n, the root of xⁿ + x = 1 with x = e^{-2πβ}
    BetaMax {
        #[arg(short = 'n', long, conflicts_with = "weights", required_unless_present = "weights")]
        weight: Option<u32>,
        /// Inclusive range A..B
        #[arg(long)]
        weights: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Rotation spectrum of the lowest-weight representation, truncated to d levels
    Spectrum {
        #[arg(short = 'n', long)]
        weight: u32,
        #[arg(long, default_value_t = 8)]
        d: usize,
        /// Also print the one-particle Gibbs weights at this β
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Exact multiplicities ν_m of the Fock space energy levels
    Multiplicities {
        #[arg(short = 'n', long)]
        weight: u32,
        #[arg(long, default_value_t = 30)]
        m_max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run the invariant suites; exit 1 if any fails
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only this suite
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: Option<String>,
        /// One-particle dimension
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Maximal particle number
        #[arg(long = "N", default_value_t = 4)]
        n_max: usize,
    },
}

fn dim_limit() -> Result<usize, CliError> {
    match std::env::var("FOCKFORGE_MAX_DIM") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::Config(format!("FOCKFORGE_MAX_DIM must be a positive integer, got {v:?}"))),
        Err(_) => Ok(fockforge::fock::DEFAULT_MAX_DIM),
    }
}

fn parse_range(raw: &[String]) -> Result<Vec<f64>, CliError> {
    let bad = |s: &str| CliError::Config(format!("invalid beta-range value {s:?}"));
    let start: f64 = raw[0].parse().map_err(|_| bad(&raw[0]))?;
    let stop: f64 = raw[1].parse().map_err(|_| bad(&raw[1]))?;
    let steps: usize = raw[2].parse().map_err(|_| bad(&raw[2]))?;
    thermo_cmds::linspace(start, stop, steps)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Partition { weight, beta, beta_range, m_max, output } => {
            let betas = match (beta, beta_range) {
                (Some(b), _) => vec![b],
                (None, Some(raw)) => parse_range(&raw)?,
                (None, None) => unreachable!("clap requires one of --beta, --beta-range"),
            };
            let (table, annotation) = thermo_cmds::partition(weight, &betas, m_max)?;
            if output.format == Format::Csv {
                eprintln!("{annotation}");
            }
            emit(&table.render(output.format), output.out.as_deref())?;
        }
        Command::BetaMax { weight, weights, output } => {
            let ns = match (weight, weights) {
                (Some(n), _) => vec![n],
                (None, Some(spec)) => thermo_cmds::parse_weights(&spec)?,
                (None, None) => unreachable!("clap requires one of --weight, --weights"),
            };
            let table = thermo_cmds::beta_max_table(&ns)?;
            emit(&table.render(output.format), output.out.as_deref())?;
        }
        Command::Spectrum { weight, d, beta, output } => {
            let table = thermo_cmds::spectrum(weight, d, beta)?;
            emit(&table.render(output.format), output.out.as_deref())?;
        }
        Command::Multiplicities { weight, m_max, output } => {
            let table = thermo_cmds::multiplicity_table(weight, m_max)?;
            emit(&table.render(output.format), output.out.as_deref())?;
        }
        Command::Verify { seed, suite, d, n_max } => {
            if d == 0 {
                return Err(CliError::Config("--d must be positive".into()));
            }
            let cfg = VerifyConfig { seed, d, n_max, dim_limit: dim_limit()? };
            let names: Vec<&str> = match &suite {
                Some(s) => vec![s.as_str()],
                None => SUITES.to_vec(),
            };
            let mut all_passed = true;
            let mut text = String::new();
            for name in names {
                let report = run_suite(name, &cfg)?;
                text.push_str(&report.line());
                text.push('\n');
                if !report.passed {
                    all_passed = false;
                    if let Some(dump) = &report.dump {
                        eprintln!("{name}: offending operator {dump}");
                    }
                }
            }
            text.push_str(if all_passed { "all suites passed\n" } else { "verification FAILED\n" });
            emit(&text, None)?;
            return Ok(all_passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
