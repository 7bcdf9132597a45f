use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use geoqm_cli::config::{normalize_key, parse};
use geoqm_cli::{run, CliError, Experiment};

#[derive(Parser)]
#[command(name = "geoqm", version, about = "Geometric two-state quantum mechanics experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the available experiments.
    List,
    /// Run one experiment and write its report.
    Run(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// Experiment name (see `geoqm list`).
    experiment: String,
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    /// Output directory for the JSON report and CSV files.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Born weight of the first eigenstate.
    #[arg(long)]
    c1sq: Option<f64>,
    #[arg(long)]
    t_final: Option<f64>,
    /// Exact-solve grid size for the Markov experiment.
    #[arg(long)]
    delta_grid: Option<usize>,
    /// Polar half-width of the capture region.
    #[arg(long)]
    region_width: Option<f64>,
    /// Any other configuration key, as `key=value`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn overrides(args: &RunArgs) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            parse(&text)?
        }
        None => BTreeMap::new(),
    };
    let flags = [
        ("seed", args.seed.map(|v| v.to_string())),
        ("trials", args.trials.map(|v| v.to_string())),
        ("c1sq", args.c1sq.map(|v| v.to_string())),
        ("t_final", args.t_final.map(|v| v.to_string())),
        ("delta_grid", args.delta_grid.map(|v| v.to_string())),
        ("d_theta", args.region_width.map(|v| v.to_string())),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            out.insert(k.to_string(), v);
        }
    }
    for kv in &args.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Usage(format!("--set expects key=value, got `{kv}`")))?;
        out.insert(normalize_key(k), v.trim().to_string());
    }
    Ok(out)
}

fn run_cmd(args: &RunArgs) -> Result<bool, CliError> {
    let exp: Experiment = args.experiment.parse()?;
    let report = run(exp, &overrides(args)?)?;
    report.write(&args.out)?;
    println!("{}", report.summary());
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::List => {
            for e in Experiment::ALL {
                println!("{:<12} {}", e.name(), e.description());
            }
            ExitCode::SUCCESS
        }
        Command::Run(args) => match run_cmd(&args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("geoqm: {e}");
                ExitCode::from(e.exit_code())
            }
        },
    }
}
