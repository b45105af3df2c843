use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isac_core::communication::RateUnit;
use isac_net::{execute, parse_threads, CliError, Experiment, ExperimentConfig, Format, Preset, THREADS_ENV};

/// Cooperative ISAC network experiments: closed forms, Monte Carlo checks
/// and the backhaul-constrained tradeoff.
#[derive(Parser)]
#[command(name = "isac-net", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Localization CRLB against the sensing cluster size.
    SensingCrlb(RunArgs),
    /// Acceptance probabilities against the load simulation.
    Acceptance(RunArgs),
    /// Average user rate against cluster size and power split.
    CommRate(RunArgs),
    /// Feasible configurations, Pareto frontier and time-sharing baseline.
    Tradeoff(RunArgs),
    /// Every closed form against its oracle, as a pass/fail report.
    Validate {
        #[command(flatten)]
        run: RunArgs,
        /// Exit with status 2 if any check fails.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitsArg {
    Nats,
    Bits,
}

#[derive(Args)]
struct RunArgs {
    /// TOML config; missing keys take the preset values.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in parameter set (the default when no config is given).
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo realizations per estimate.
    #[arg(long)]
    realizations: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Unit of reported rates.
    #[arg(long, value_enum)]
    units: Option<UnitsArg>,
}

fn resolve(experiment: Experiment, args: &RunArgs) -> Result<ExperimentConfig, CliError> {
    let mut config = match &args.config {
        Some(path) => {
            let c = ExperimentConfig::load(path)?;
            let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
                path: path.clone(),
                source,
            })?;
            // An explicit experiment key must agree with the subcommand.
            if text.parse::<toml::Table>().ok().is_some_and(|t| t.contains_key("experiment"))
                && c.experiment != experiment
            {
                return Err(CliError::ExperimentMismatch {
                    requested: experiment.name(),
                    found: c.experiment.name().to_string(),
                });
            }
            ExperimentConfig { experiment, ..c }
        }
        None => match args.preset.unwrap_or(PresetArg::Paper) {
            PresetArg::Paper => ExperimentConfig::preset(Preset::Paper, experiment),
        },
    };
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(n) = args.realizations {
        config.n_realizations = n;
    }
    if let Some(o) = &args.output {
        config.output_path = Some(o.clone());
    }
    if let Some(f) = args.format {
        config.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    if let Some(u) = args.units {
        config.options.units = match u {
            UnitsArg::Nats => RateUnit::Nats,
            UnitsArg::Bits => RateUnit::Bits,
        };
    }
    Ok(config)
}

fn main_inner(cli: Cli) -> Result<ExitCode, CliError> {
    let (experiment, args, strict) = match &cli.command {
        Command::SensingCrlb(a) => (Experiment::SensingCrlb, a, false),
        Command::Acceptance(a) => (Experiment::Acceptance, a, false),
        Command::CommRate(a) => (Experiment::CommRate, a, false),
        Command::Tradeoff(a) => (Experiment::Tradeoff, a, false),
        Command::Validate { run, strict } => (Experiment::Validate, run, *strict),
    };
    let config = resolve(experiment, args)?;
    let threads = parse_threads(std::env::var(THREADS_ENV).ok().as_deref())?;
    let outcome = execute(&config, threads)?;
    eprintln!("{}", serde_json::to_string(&outcome.manifest).map_err(CliError::from)?);

    match &config.output_path {
        Some(path) => std::fs::write(path, &outcome.bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&outcome.bytes)?;
            out.flush()?;
        }
    }
    if experiment == Experiment::Validate {
        let total = outcome.report.table.rows.len();
        let failed = outcome.report.failed_checks;
        eprintln!("validate: {} of {total} checks passed", total - failed);
        if strict && failed > 0 {
            return Ok(ExitCode::from(2));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
