use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use icps_cli::commands;
use icps_cli::grid::SurfaceSpec;
use icps_cli::{Overrides, ScenarioConfig};
use icps_core::market::Mode;
use icps_core::stability::Concept;
use icps_core::{Exact, Scalar};

#[derive(Parser)]
#[command(name = "icps", version, about = "Stability of matching markets with credible bilateral testing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stability of the scenario's allocation.
    Check(Common),
    /// Stable sets per concept.
    Solve(Common),
    /// Improvement paths.
    Dynamics(Common),
    /// Correlation sweep to sweep.csv.
    Sweep(Common),
    /// Deviation-payoff surface to surface.csv.
    Surface(Common),
    /// Full property suite plus all scenario reports.
    Props(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    ExAnte,
    Realized,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConceptArg {
    Bayes,
    Icps,
    Endog,
    Seq,
    Ntu,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    concept: Option<ConceptArg>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rational arithmetic (default).
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// f64 arithmetic with tolerance 1e-9.
    #[arg(long)]
    float: bool,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            mode: self.mode.map(|m| match m {
                ModeArg::ExAnte => Mode::ExAnte,
                ModeArg::Realized => Mode::Realized,
            }),
            concept: self.concept.map(|c| match c {
                ConceptArg::Bayes => Concept::Bayes,
                ConceptArg::Icps => Concept::Icps,
                ConceptArg::Endog => Concept::Endog,
                ConceptArg::Seq => Concept::Seq,
                ConceptArg::Ntu => Concept::Ntu,
            }),
            out: self.out.clone(),
        }
    }

    fn config(&self) -> anyhow::Result<ScenarioConfig> {
        let path = self.config.as_ref().context("--config is required")?;
        ScenarioConfig::load(path)
    }
}

fn emit<T: Serialize>(value: &T, out: Option<PathBuf>, file: &str) -> anyhow::Result<()> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(&dir)?;
            let path = dir.join(file);
            commands::write_json(&path, value)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => {
            println!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

fn run<S: Scalar>(command: &Command, args: &Common) -> anyhow::Result<bool> {
    let ov = args.overrides();
    match command {
        Command::Check(_) => {
            let cfg = args.config()?;
            let records = commands::check(&cfg.prepare::<S>(&ov)?)?;
            for r in &records {
                println!("{}: {}", r.concept, if r.stable { "stable" } else { "blocked" });
            }
            emit(&records, cfg.out_dir(&ov), "check.json")?;
            Ok(true)
        }
        Command::Solve(_) => {
            let cfg = args.config()?;
            emit(&commands::solve(&cfg.prepare::<S>(&ov)?)?, cfg.out_dir(&ov), "stable_sets.json")?;
            Ok(true)
        }
        Command::Dynamics(_) => {
            let cfg = args.config()?;
            emit(&commands::dynamics(&cfg.prepare::<S>(&ov)?)?, cfg.out_dir(&ov), "traces.json")?;
            Ok(true)
        }
        Command::Sweep(_) => {
            let cfg = args.config()?;
            let spec = cfg.sweep.as_ref().context("scenario has no `sweep` section")?;
            let out = cfg.out_dir(&ov).unwrap_or_else(|| PathBuf::from("."));
            for note in commands::sweep::<S>(spec, &out)? {
                println!("{note}");
            }
            Ok(true)
        }
        Command::Surface(_) => {
            let (spec, out) = match &args.config {
                Some(_) => {
                    let cfg = args.config()?;
                    (cfg.surface.clone().unwrap_or_default(), cfg.out_dir(&ov))
                }
                None => (SurfaceSpec::default(), ov.out.clone()),
            };
            let out = out.unwrap_or_else(|| PathBuf::from("."));
            let rows = commands::surface::<S>(&spec, &out)?;
            println!("wrote {rows} rows to {}", out.join("surface.csv").display());
            Ok(true)
        }
        Command::Props(_) => {
            let cfg = args.config()?;
            let out = cfg.out_dir(&ov).unwrap_or_else(|| PathBuf::from("icps-out"));
            let report = commands::run_scenario::<S>(&cfg, &ov, &out)?;
            print!("{report}");
            Ok(report.all_hard_pass())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = match &cli.command {
        Command::Check(a)
        | Command::Solve(a)
        | Command::Dynamics(a)
        | Command::Sweep(a)
        | Command::Surface(a)
        | Command::Props(a) => a,
    };
    let result = if args.float {
        run::<f64>(&cli.command, args)
    } else {
        run::<Exact>(&cli.command, args)
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
