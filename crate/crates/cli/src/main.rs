//! `maximin`: exact maximin-share queries from the command line.
//!
//! Exit codes: 0 success / true verdict, 1 false verdict or failed audit,
//! 2 usage or input error, 3 refusal by the search size limits.

mod commands;
mod record;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "maximin", version, about = "Exact maximin-share fairness toolkit")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also write a replayable run record (inputs, outputs, timing) here.
    #[arg(long, global = true, value_name = "FILE")]
    record: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct InstanceArgs {
    /// Item values, comma or whitespace separated (e.g. "1,3,5,6,9").
    #[arg(long, allow_hyphen_values = true, conflicts_with = "instance")]
    items: Option<String>,

    /// File with item values (plain text or a JSON array); "-" reads stdin.
    #[arg(long, value_name = "FILE")]
    instance: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct LimitArgs {
    /// Refuse searches over more items than this.
    #[arg(long, default_value_t = maximin::SearchLimits::DEFAULT_MAX_ITEMS)]
    max_items: usize,

    /// Refuse searches over more parts than this.
    #[arg(long, default_value_t = maximin::SearchLimits::DEFAULT_MAX_PARTS)]
    max_parts: usize,

    /// Disable the size limits entirely.
    #[arg(long)]
    unbounded: bool,
}

impl LimitArgs {
    fn limits(&self) -> maximin::SearchLimits {
        if self.unbounded {
            maximin::SearchLimits::unbounded()
        } else {
            maximin::SearchLimits {
                max_items: self.max_items,
                max_parts: self.max_parts,
            }
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the l-out-of-d maximin share of an instance.
    Mms {
        #[command(flatten)]
        input: InstanceArgs,
        /// The condition as l/d, e.g. 1/3.
        #[arg(long)]
        pair: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Decide whether (l, d) dominates (l', d'). Exit 0 if it does, 1 if not.
    Dominates {
        l: u32,
        d: u32,
        l_prime: u32,
        d_prime: u32,
    },
    /// List the non-dominated conditions for an entitlement and item count.
    Pairs {
        /// Entitlement as p/q or a decimal such as 0.74.
        #[arg(long)]
        entitlement: String,
        #[arg(long)]
        items_count: usize,
        /// Show which pair filtered out each candidate.
        #[arg(long)]
        trace: bool,
    },
    /// Audit an allocation against the OMMS, WMMS and BMMS criteria.
    Audit {
        #[command(flatten)]
        input: InstanceArgs,
        /// Entitlements, e.g. "2/5,3/5" or "0.6,0.2,0.2".
        #[arg(long)]
        entitlements: String,
        /// Item indices per agent, bundles separated by ';' (e.g. "0,3;1,2,4").
        #[arg(long, allow_hyphen_values = true, conflicts_with = "allocation_file")]
        allocation: Option<String>,
        /// JSON file holding an array of index arrays.
        #[arg(long, value_name = "FILE")]
        allocation_file: Option<PathBuf>,
        /// Subset of omms,wmms,bmms to evaluate.
        #[arg(long, default_value = "omms,wmms,bmms")]
        criteria: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Compare the three criteria over a grid of small instances.
    Scan {
        /// Item values for the exhaustive grid.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        values: Vec<u64>,
        /// Grid multisets have 1..=N items.
        #[arg(long = "grid-items", default_value_t = 4)]
        grid_items: usize,
        /// Agent counts to scan.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        agents: Vec<usize>,
        /// Entitlements are multiples of 1/DENOMINATOR.
        #[arg(long, default_value_t = 5)]
        denominator: u64,
        /// Additional random instances.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        sample_max_items: usize,
        #[arg(long, default_value_t = 20)]
        sample_max_value: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report here (.csv for CSV, anything else for JSON).
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Re-run a recorded invocation and check its outputs are reproduced.
    Replay {
        record_file: PathBuf,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli, &argv[1..]) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli, args: &[String]) -> Result<u8, CliError> {
    if let Command::Replay { record_file } = &cli.command {
        return record::replay(record_file, cli.json);
    }
    let started = std::time::Instant::now();
    let outcome = commands::execute(&cli.command)?;
    let rendered = if cli.json {
        format!("{}\n", commands::to_json(&outcome.json)?)
    } else {
        outcome.text.clone()
    };
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(rendered.as_bytes()).and_then(|()| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    if let Some(path) = &cli.record {
        record::write(path, args, &outcome, started.elapsed())?;
    }
    Ok(outcome.code)
}

/// Parses `args` (without the program name) and executes the command
/// without printing. Used by `replay`.
pub(crate) fn execute_args(args: &[String]) -> Result<commands::Outcome, CliError> {
    let argv = std::iter::once("maximin".to_string()).chain(args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    if matches!(cli.command, Command::Replay { .. }) {
        return Err(CliError::Usage("cannot replay a replay".into()));
    }
    commands::execute(&cli.command)
}
