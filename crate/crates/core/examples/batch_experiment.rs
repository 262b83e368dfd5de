//! Runs a scenario batch comparing STP with myopic pricing and writes the
//! results CSVs.
//!
//! ```text
//! cargo run --release --example batch_experiment -- [event|rush|airport] [reps] [out-dir] [--regret]
//! ```

use std::time::Instant;

use stp_core::experiments::{export_results, run_batch, MechanismKind, Scenario, ScenarioParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let scenario = args
        .first()
        .and_then(|s| Scenario::from_name(s))
        .unwrap_or(Scenario::Event);
    let reps = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let out = args.get(2).cloned().unwrap_or_else(|| "results".to_string());
    let mut params = ScenarioParams::new(scenario, 2024);
    params.replications = reps;
    params.compute_regret = args.iter().any(|a| a == "--regret");

    let start = Instant::now();
    let table = run_batch(&params, &[MechanismKind::Stp, MechanismKind::Myopic])?;
    println!(
        "{} scenario, {} replications per value, {:.1}s",
        scenario.name(),
        reps,
        start.elapsed().as_secs_f64()
    );
    println!(
        "{:>8} {:>10} {:>10} {:>8} {:>8}",
        scenario.sweep_name(),
        "mechanism",
        "welfare",
        "eff",
        "regret"
    );
    for &v in &params.sweep {
        for mech in &table.mechanisms {
            let w = table.row("welfare", v, mech).map(|r| r.mean).unwrap_or(0.0);
            let e = table.row("time_efficiency", v, mech).map(|r| r.mean).unwrap_or(0.0);
            let r = table
                .row("mean_regret", v, mech)
                .map(|r| format!("{:.3}", r.mean))
                .unwrap_or_else(|| "-".into());
            println!("{v:>8} {mech:>10} {w:>10.2} {e:>8.3} {r:>8}");
        }
    }
    let dir = export_results(&table, &out)?;
    println!("wrote {}", dir.display());
    Ok(())
}
