//! `stp`: plan, verify, simulate and run experiments from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification or assertion fails, 2 on
//! usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use stp_core::experiments::{export_results, run_batch, MechanismKind, Scenario, ScenarioParams};
use stp_core::fixtures::{fixture, verify_fixture, CHECK_SUITES};
use stp_core::flow::solve_economy;
use stp_core::market::Economy;
use stp_core::mechanisms::{all_regrets, run_simulation, DeviationScope, Scripted};
use stp_core::planner::{plan_driver_optimal, plan_driver_pessimal, verify_ce};

#[derive(Parser)]
#[command(name = "stp", version, about = "Spatio-temporal pricing for ridesharing markets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and verify a CE plan for an economy.
    Plan {
        #[command(flatten)]
        input: Input,
        /// Which extreme equilibrium to compute.
        #[arg(long, value_enum, default_value_t = Kind::Pessimal)]
        kind: Kind,
    },
    /// Run a bundled fixture check suite (or `all`).
    VerifyExample {
        /// Suite name.
        name: String,
    },
    /// Single-deviation regret of every driver under a mechanism.
    Regret {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        mech: MechanismArgs,
        /// Only consider relocations and exits as deviations.
        #[arg(long)]
        no_undispatched_pickups: bool,
    },
    /// Simulate a mechanism and print the trace.
    Simulate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        mech: MechanismArgs,
        /// JSON file with `{"overrides": [[driver, t, action], ...]}`.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Print the trace as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run a scenario batch and write results CSVs.
    Batch {
        /// Scenario: event, rush or airport.
        #[arg(long)]
        scenario: String,
        /// Sweep values: `a,b,c` or `start:end:step` (default: the scenario's sweep).
        #[arg(long)]
        sweep: Option<String>,
        /// Replications per sweep value.
        #[arg(long, default_value_t = 50)]
        reps: usize,
        /// Base seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory.
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// Mechanisms to compare (comma separated).
        #[arg(long, default_value = "stp,myopic")]
        mechanism: String,
        /// Also compute single-deviation regret (relocations and exits only).
        #[arg(long)]
        regret: bool,
    },
    /// Print the flow network as an edge list, optionally with an optimal flow.
    DumpNetwork {
        #[command(flatten)]
        input: Input,
        /// Solve and include the optimal flow.
        #[arg(long)]
        solve: bool,
    },
}

#[derive(Args)]
struct Input {
    /// Economy file (JSON).
    #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
    econ: Option<PathBuf>,
    /// Bundled fixture economy instead of a file.
    #[arg(long)]
    fixture: Option<String>,
}

impl Input {
    fn load(&self) -> Result<Economy> {
        match (&self.econ, &self.fixture) {
            (Some(path), _) => Ok(Economy::load(path)?),
            (None, Some(name)) => Ok(fixture(name)?),
            (None, None) => bail!(UsageError("either --econ or --fixture is required".into())),
        }
    }
}

#[derive(Args)]
struct MechanismArgs {
    /// Mechanism: stp, myopic, static-pessimal, static-optimal, driver-optimal, always-replan.
    #[arg(long, default_value = "stp")]
    mechanism: String,
    /// Seed for mechanism randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl MechanismArgs {
    fn kind(&self) -> Result<MechanismKind> {
        MechanismKind::from_name(&self.mechanism)
            .ok_or_else(|| UsageError(format!("unknown mechanism `{}`", self.mechanism)).into())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pessimal,
    Optimal,
}

/// Marks an error as a usage or input problem (exit code 2).
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Marks a failed verification (exit code 1).
#[derive(Debug)]
struct VerificationFailed(String);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn parse_sweep(s: &str) -> Result<Vec<u32>> {
    let bad = || UsageError(format!("invalid sweep `{s}`"));
    if let Some((range, step)) = s.rsplit_once(':').filter(|_| s.matches(':').count() == 2) {
        let (start, end) = range.split_once(':').ok_or_else(bad)?;
        let (start, end, step): (u32, u32, usize) = (
            start.parse().map_err(|_| bad())?,
            end.parse().map_err(|_| bad())?,
            step.parse().map_err(|_| bad())?,
        );
        if step == 0 || start > end {
            bail!(bad());
        }
        return Ok((start..=end).step_by(step).collect());
    }
    s.split(',')
        .map(|v| v.trim().parse::<u32>().map_err(|_| bad().into()))
        .collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Plan { input, kind } => {
            let econ = input.load()?;
            let plan = match kind {
                Kind::Pessimal => plan_driver_pessimal(&econ)?,
                Kind::Optimal => plan_driver_optimal(&econ)?,
            };
            print!("{}", plan.dump(&econ));
            let report = verify_ce(&econ, &plan);
            if report.is_ce() {
                println!("competitive equilibrium: ok");
            } else {
                println!("competitive equilibrium: FAILED");
                println!("{}", serde_json::to_string_pretty(&report)?);
                bail!(VerificationFailed("plan is not a competitive equilibrium".into()));
            }
        }
        Command::VerifyExample { name } => {
            let names: Vec<&str> = if name == "all" {
                CHECK_SUITES.to_vec()
            } else {
                vec![name.as_str()]
            };
            let mut failed = Vec::new();
            for n in names {
                let report = verify_fixture(n)?;
                println!("{report}");
                if !report.passed() {
                    failed.push(n.to_string());
                }
            }
            if !failed.is_empty() {
                bail!(VerificationFailed(format!("failed: {}", failed.join(", "))));
            }
        }
        Command::Regret {
            input,
            mech,
            no_undispatched_pickups,
        } => {
            let econ = input.load()?;
            let scope = if no_undispatched_pickups {
                DeviationScope::NoUndispatchedPickups
            } else {
                DeviationScope::Full
            };
            let proto = mech.kind()?.build(mech.seed);
            let regrets = all_regrets(&econ, proto.as_ref(), scope)?;
            for (i, r) in regrets.iter().enumerate() {
                println!("driver {i} regret {r}");
            }
        }
        Command::Simulate {
            input,
            mech,
            script,
            json,
        } => {
            let econ = input.load()?;
            let strategy = match script {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))
                        .map_err(|e| UsageError(format!("{e:#}")))?;
                    serde_json::from_str::<Scripted>(&text).map_err(|e| UsageError(format!("bad script: {e}")))?
                }
                None => Scripted::default(),
            };
            let mut m = mech.kind()?.build(mech.seed);
            let trace = run_simulation(&econ, m.as_mut(), &strategy)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&trace)?);
            } else {
                print!("{}", trace.dump());
            }
        }
        Command::Batch {
            scenario,
            sweep,
            reps,
            seed,
            out,
            mechanism,
            regret,
        } => {
            let scenario =
                Scenario::from_name(&scenario).ok_or_else(|| UsageError(format!("unknown scenario `{scenario}`")))?;
            let mut params = ScenarioParams::new(scenario, seed);
            if let Some(s) = sweep {
                params.sweep = parse_sweep(&s)?;
            }
            params.replications = reps;
            params.compute_regret = regret;
            let kinds = mechanism
                .split(',')
                .map(|m| {
                    MechanismKind::from_name(m.trim()).ok_or_else(|| UsageError(format!("unknown mechanism `{m}`")))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let table = run_batch(&params, &kinds)?;
            println!(
                "{:>8} {:>16} {:>12} {:>10} {:>10}",
                scenario.sweep_name(),
                "mechanism",
                "welfare",
                "efficiency",
                "regret"
            );
            for &v in &params.sweep {
                for m in &table.mechanisms {
                    let w = table.row("welfare", v, m).map_or(0.0, |r| r.mean);
                    let e = table.row("time_efficiency", v, m).map_or(0.0, |r| r.mean);
                    let r = table
                        .row("mean_regret", v, m)
                        .map_or_else(|| "-".to_string(), |r| format!("{:.3}", r.mean));
                    println!("{v:>8} {m:>16} {w:>12.2} {e:>10.3} {r:>10}");
                }
            }
            let dir = export_results(&table, &out)?;
            println!("results written to {}", dir.display());
        }
        Command::DumpNetwork { input, solve } => {
            let econ = input.load()?;
            let s = solve_economy(&econ)?;
            let flow = solve.then_some(s.flow.flow.as_slice());
            print!("{}", s.network.dump(flow, &econ.locations));
            if solve {
                println!("# welfare {}", s.welfare());
            }
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return 1;
    }
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<stp_core::Error>() {
        Some(
            stp_core::Error::InvalidEconomy(_)
            | stp_core::Error::InvalidParams(_)
            | stp_core::Error::InvalidBoundary(_)
            | stp_core::Error::UnknownFixture(_)
            | stp_core::Error::IllegalAction { .. }
            | stp_core::Error::Json(_)
            | stp_core::Error::Io { .. },
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
