use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use edflow::config::RunConfig;
use edflow::error::{ConfigError, ScenarioError};
use edflow::model::{EdSimulation, Reductions, SimOptions};
use edflow::report;
use edflow::scenario::{
    bundling_scenario, builtin_bundling, calibrate, run_scenario, sweep_bundling, sweep_delays,
    CalibrationOptions, Dimension, KnobBounds, ScenarioConfig, DEFAULT_LEVELS,
};

const EXIT_RUNTIME: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_VALIDATION: u8 = 4;

/// Emergency-department patient-flow simulator.
#[derive(Debug, Parser)]
#[command(name = "edflow", version)]
struct Cli {
    /// TOML config; omitted sections use the built-in defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides `replication.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides `replication.count`.
    #[arg(long, global = true)]
    reps: Option<u32>,
    /// Worker threads for replications (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for output files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Baseline run against the observed means; writes table4.csv.
    Validate,
    /// Imaging delay reductions; writes table5.csv (otb, etr) and table6.csv (both).
    SweepDelays {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_LEVELS.to_vec())]
        levels: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values = ["otb", "etr", "both"])]
        dimension: Vec<Dimension>,
    },
    /// Order-bundling scenarios; writes table7.csv.
    SweepBundling {
        /// Scenario names (S1-S8, or `baseline`); default all eight.
        #[arg(long, value_delimiter = ',')]
        scenarios: Vec<String>,
    },
    /// One scenario from the config; writes replications.csv.
    Run {
        /// Line-delimited JSON trace of every event in replication 0.
        #[arg(long)]
        event_log: Option<PathBuf>,
    },
    /// Prints the full default config as TOML.
    PrintDefaults,
    /// Fits the per-ESI departure multipliers to the validation targets and
    /// prints the resulting `[calibration]` section.
    Calibrate {
        #[arg(long, default_value_t = 0.05)]
        lo: f64,
        #[arg(long, default_value_t = 5.0)]
        hi: f64,
    },
}

#[derive(Debug)]
enum CliError {
    Config(ConfigError),
    Runtime(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Config(c) => CliError::Config(c),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(ConfigError::Parse(_)) => EXIT_PARSE,
            CliError::Config(ConfigError::Validation { .. }) => EXIT_VALIDATION,
            CliError::Config(ConfigError::Io(_)) | CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Config(c) => eprintln!("error: {c}"),
                CliError::Runtime(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}

fn load(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_path(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.replication.seed = seed;
    }
    if let Some(reps) = cli.reps {
        cfg.replication.count = reps;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Command::PrintDefaults = cli.command {
        print!("{}", RunConfig::default().to_toml_string());
        return Ok(());
    }
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    let cfg = load(&cli)?;
    let scenario = ScenarioConfig::from_run_config(&cfg)?;

    match &cli.command {
        Command::Validate => {
            let result = run_scenario(&scenario)?;
            write_out(&cli.out, "table4.csv", &report::table4_csv(&result, &cfg.validation.targets))?;
            eprintln!(
                "overall mean {:.1} min (95% CI half-width {:.1}), direct-care share {:.3}, physician utilization {:.3}, waiting room {:.1} min",
                result.overall.mean,
                result.overall.half_width,
                result.mean_direct_care_share(),
                result.mean_utilization(),
                result.mean_waiting_room()
            );
        }
        Command::SweepDelays { levels, dimension } => {
            let base = scenario.with_reductions(Reductions::NONE);
            let table = sweep_delays(&base, levels, dimension)?;
            let single: Vec<Dimension> = dimension
                .iter()
                .copied()
                .filter(|d| *d != Dimension::Both)
                .collect();
            if !single.is_empty() {
                write_out(&cli.out, "table5.csv", &report::sweep_csv(&table, &single))?;
            }
            if dimension.contains(&Dimension::Both) {
                write_out(&cli.out, "table6.csv", &report::sweep_csv(&table, &[Dimension::Both]))?;
            }
        }
        Command::SweepBundling { scenarios } => {
            let base = cfg.orders.profile;
            let list = if scenarios.is_empty() {
                builtin_bundling(&base)
            } else {
                scenarios
                    .iter()
                    .map(|n| bundling_scenario(&base, n))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let table = sweep_bundling(&scenario, &list)?;
            write_out(&cli.out, "table7.csv", &report::bundling_csv(&table))?;
        }
        Command::Run { event_log } => {
            let result = run_scenario(&scenario)?;
            write_out(&cli.out, "replications.csv", &report::replications_csv(&result))?;
            write_out(&cli.out, "strata.csv", &report::strata_csv(&result))?;
            println!(
                "overall mean {} min, 95% CI half-width {}",
                report::fixed(result.overall.mean, 1),
                report::fixed(result.overall.half_width, 1)
            );
            let esi: Vec<String> = result.per_esi.iter().map(|c| report::fixed(c.mean, 1)).collect();
            println!("per-ESI means {}", esi.join(" / "));
            println!(
                "direct-care share {}, physician utilization {}, waiting room {} min, censored {}",
                report::fixed(result.mean_direct_care_share(), 3),
                report::fixed(result.mean_utilization(), 3),
                report::fixed(result.mean_waiting_room(), 1),
                result.censored()
            );
            if let Some(path) = event_log {
                let options = SimOptions {
                    event_log: true,
                    audit: false,
                };
                let outcome = EdSimulation::run(
                    &scenario.params,
                    scenario.base_seed,
                    0,
                    scenario.end(),
                    options,
                )
                .map_err(|e| CliError::Runtime(e.to_string()))?;
                let mut file = std::io::BufWriter::new(fs::File::create(path)?);
                report::write_event_log(&mut file, &outcome.event_log.unwrap_or_default())?;
                file.flush()?;
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Calibrate { lo, hi } => {
            let found = calibrate(
                &cfg,
                cfg.validation.targets,
                &KnobBounds::departure(*lo, *hi),
                CalibrationOptions::default(),
            )?;
            eprintln!(
                "means {:?}, max relative error {:.4} after {} rounds ({} runs)",
                found.means.map(|m| (m * 10.0).round() / 10.0),
                found.max_error,
                found.rounds,
                found.evaluations
            );
            print!("{}", found.calibration.to_toml_section());
        }
        Command::PrintDefaults => unreachable!(),
    }
    Ok(())
}
