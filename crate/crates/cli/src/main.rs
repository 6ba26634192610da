use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use divdfa_cli::commands::{self, ExprChoice};
use divdfa_cli::{parse_range, CliError, Format, SweepConfig};
use divdfa_core::{DivSpec, Limits, DEFAULT_MAX_STATES};

/// Minimal DFAs for base-b divisibility-by-k languages.
#[derive(Debug, Parser)]
#[command(name = "divdfa", version)]
struct Cli {
    /// Cap on the number of states of any automaton that is built explicitly.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the minimal state count f_b(k).
    Count {
        #[arg(short = 'b', long)]
        base: u64,
        #[arg(short = 'k', long)]
        modulus: u64,
        /// Expression to evaluate: 1, 2, 3 or all.
        #[arg(long, default_value = "3")]
        expr: ExprChoice,
    },
    /// Print the per-alpha table behind f_b(k).
    Breakdown {
        #[arg(short = 'b', long)]
        base: u64,
        #[arg(short = 'k', long)]
        modulus: u64,
        /// Extend the table through this alpha.
        #[arg(long)]
        alpha_max: Option<usize>,
    },
    /// Emit the canonical automaton, or the minimal one built from packages.
    Build {
        #[arg(short = 'b', long)]
        base: u64,
        #[arg(short = 'k', long)]
        modulus: u64,
        #[arg(long)]
        minimal: bool,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Minimize an automaton read from a file or stdin.
    Minimize {
        /// Input path; stdin when omitted.
        #[arg(long = "in")]
        input: Option<String>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Cross-check formula, minimizers and packages over a grid of (b, k).
    Verify {
        /// Base range, e.g. 2..10 (inclusive).
        #[arg(short = 'b', long)]
        base: String,
        /// Modulus range, e.g. 1..300 (inclusive).
        #[arg(short = 'k', long)]
        modulus: String,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        fail_fast: bool,
    },
    /// Tabulate f_b(x·y^z) for z = 0..=zmax.
    Pattern {
        #[arg(short = 'b', long)]
        base: u64,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
        #[arg(long)]
        zmax: u32,
    },
    /// Decide whether a digit string is a multiple of k.
    Member {
        #[arg(short = 'b', long)]
        base: u64,
        #[arg(short = 'k', long)]
        modulus: u64,
        /// Digits: compact (0-9a-z) for bases up to 36, or comma-separated.
        #[arg(default_value = "")]
        digits: String,
    },
    /// Print the residue classes grouped into packages.
    Packages {
        #[arg(short = 'b', long)]
        base: u64,
        #[arg(short = 'k', long)]
        modulus: u64,
        /// Path length; defaults to the cutoff A0.
        #[arg(long)]
        a: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let limits = Limits::with_max_states(cli.max_states);
    let spec = |b, k| DivSpec::new(b, k).map_err(CliError::from);
    let out = match cli.command {
        Command::Count { base, modulus, expr } => commands::cmd_count(spec(base, modulus)?, expr)?,
        Command::Breakdown {
            base,
            modulus,
            alpha_max,
        } => commands::cmd_breakdown(spec(base, modulus)?, alpha_max),
        Command::Build {
            base,
            modulus,
            minimal,
            format,
        } => commands::cmd_build(spec(base, modulus)?, minimal, format, &limits)?,
        Command::Minimize { input, format } => {
            let text = match input {
                Some(path) => std::fs::read_to_string(&path).map_err(|source| CliError::Io { path, source })?,
                None => {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|source| CliError::Io {
                            path: "<stdin>".into(),
                            source,
                        })?;
                    buf
                }
            };
            commands::cmd_minimize(&text, format, &limits)?
        }
        Command::Verify {
            base,
            modulus,
            jobs,
            fail_fast,
        } => {
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let config = SweepConfig::new(parse_range(&base)?, parse_range(&modulus)?, jobs, fail_fast)?;
            let report = commands::cmd_verify(&config, &limits)?;
            return Ok((report.render(), report.passed()));
        }
        Command::Pattern { base, x, y, zmax } => {
            spec(base, 1)?;
            commands::cmd_pattern(base, x, y, zmax)?
        }
        Command::Member {
            base,
            modulus,
            digits,
        } => commands::cmd_member(spec(base, modulus)?, &digits)?,
        Command::Packages { base, modulus, a } => commands::cmd_packages(spec(base, modulus)?, a, &limits)?,
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("divdfa: {e}");
            ExitCode::from(&e)
        }
    }
}
