//! Command-line front end: sweep a scenario over time (`run`), dump the
//! reconstructed map at one time (`map`), or run the CP/TP/linearity
//! diagnostics with random probes (`check`).
//!
//! Exit codes: 0 on success, 1 on an invalid configuration, 2 on I/O
//! failure.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpt::emit;
use qpt::{
    check_scenario, oracle_map, run_scenario, sweep, ScenarioConfig, ScenarioKind, TimeGrid,
};

#[derive(Parser)]
#[command(
    name = "qpt",
    about = "Two-qubit process tomography simulator: how preparation procedures shape the reconstructed process map",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the scenario over the 2ωt grid and emit one row per point.
    Run(RunArgs),
    /// Reconstruct the map at a single time and dump its B form.
    Map(MapArgs),
    /// Diagnostics at a single time: CP spectrum, TP residual, and
    /// linearity residuals for random probes.
    Check(CheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Scenario {
    Ideal,
    ControlError,
    MixedUncorrelated,
    MixedCorrelated,
    MultiPin,
    NoPin,
}

impl From<Scenario> for ScenarioKind {
    fn from(s: Scenario) -> ScenarioKind {
        match s {
            Scenario::Ideal => ScenarioKind::Ideal,
            Scenario::ControlError => ScenarioKind::ControlError,
            Scenario::MixedUncorrelated => ScenarioKind::MixedUncorrelated,
            Scenario::MixedCorrelated => ScenarioKind::MixedCorrelated,
            Scenario::MultiPin => ScenarioKind::MultiPin,
            Scenario::NoPin => ScenarioKind::NoPin,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ConfigArgs {
    /// Which preset experiment to simulate.
    #[arg(long, value_enum)]
    scenario: Scenario,

    /// Exchange frequency ω.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,

    /// Control-error size ε (control-error scenario).
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,

    /// Pin polarization p (mixed scenarios).
    #[arg(long, default_value_t = 0.9)]
    p: f64,

    /// Fixed σ2⊗σ3 correlation strength.
    #[arg(long, default_value_t = 0.5)]
    c23: f64,

    /// Initial system polarization, comma separated: x,y,z.
    #[arg(long, value_parser = parse_vec3, default_value = "0,0,0")]
    a: [f64; 3],

    /// Sweep start in 2ωt.
    #[arg(long, default_value_t = 0.0)]
    t_start: f64,

    /// Sweep end in 2ωt.
    #[arg(long, default_value_t = PI)]
    t_end: f64,

    /// Number of grid points (rows).
    #[arg(long, default_value_t = 200)]
    steps: usize,
}

impl ConfigArgs {
    fn to_config(&self) -> ScenarioConfig {
        ScenarioConfig {
            scenario: self.scenario.into(),
            omega: self.omega,
            epsilon: self.epsilon,
            p: self.p,
            c23: self.c23,
            a: self.a,
            t_grid: TimeGrid {
                start: self.t_start,
                end: self.t_end,
                steps: self.steps,
            },
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    config: ConfigArgs,

    /// Probe RNG seed (accepted for a uniform interface; `run` is
    /// deterministic and does not draw probes).
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MapArgs {
    #[command(flatten)]
    config: ConfigArgs,

    /// Evaluation time in 2ωt.
    #[arg(long, default_value_t = PI / 3.0)]
    two_omega_t: f64,

    /// Also print the closed-form reference map if this preset has one.
    #[arg(long)]
    oracle: bool,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    config: ConfigArgs,

    /// Evaluation time in 2ωt.
    #[arg(long, default_value_t = PI / 3.0)]
    two_omega_t: f64,

    /// Number of random probes.
    #[arg(long, default_value_t = 20)]
    probes: usize,

    /// Probe RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output format; `json` is machine readable, `csv` renders the plain
    /// text report.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got {s:?}"));
    }
    let mut v = [0.0; 3];
    for (slot, part) in v.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad component {part:?}: {e}"))?;
    }
    Ok(v)
}

enum AppError {
    Config(String),
    Io(io::Error),
}

impl From<qpt::Error> for AppError {
    fn from(e: qpt::Error) -> Self {
        AppError::Config(e.to_string())
    }
}

impl From<io::Error> for AppError {
    fn from(e: io::Error) -> Self {
        AppError::Io(e)
    }
}

fn writer_for(out: &Option<PathBuf>) -> Result<Box<dyn Write>, AppError> {
    match out {
        Some(path) => Ok(Box::new(BufWriter::new(File::create(path)?))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn cmd_run(args: &RunArgs) -> Result<(), AppError> {
    let cfg = args.config.to_config();
    let result = sweep(&cfg)?;
    let mut w = writer_for(&args.out)?;
    match args.format {
        Format::Csv => emit::write_sweep_csv(&mut w, &result)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &emit::sweep_to_json(&result))
                .map_err(io::Error::from)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_map(args: &MapArgs) -> Result<(), AppError> {
    let cfg = args.config.to_config();
    let t = cfg.time_for(args.two_omega_t);
    let (_, map) = run_scenario(&cfg, t)?;
    let mut w = writer_for(&args.out)?;
    match args.format {
        Format::Json => {
            let mut value = emit::map_to_json(&cfg, args.two_omega_t, &map);
            if args.oracle {
                if let Some(oracle) = oracle_map(&cfg, t) {
                    value["oracle"] = emit::map_entries_json(&oracle);
                }
            }
            serde_json::to_writer_pretty(&mut w, &value).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        Format::Csv => {
            emit::write_map_csv(&mut w, &map)?;
            if args.oracle {
                if let Some(oracle) = oracle_map(&cfg, t) {
                    writeln!(w)?;
                    emit::write_map_csv(&mut w, &oracle)?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_check(args: &CheckArgs) -> Result<(), AppError> {
    let cfg = args.config.to_config();
    let t = cfg.time_for(args.two_omega_t);
    let report = check_scenario(&cfg, t, args.probes, args.seed)?;
    let mut w = writer_for(&args.out)?;
    match args.format {
        Format::Json => {
            let value = emit::report_to_json(&cfg, args.two_omega_t, &report);
            serde_json::to_writer_pretty(&mut w, &value).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        Format::Csv => emit::write_report_text(&mut w, &cfg, args.two_omega_t, &report)?,
    }
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Map(args) => cmd_map(args),
        Command::Check(args) => cmd_check(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(2)
        }
    }
}
