//! Generates small random economies and checks, for each, that both
//! equilibrium plans pass verification, lie in the core, and that STP leaves
//! no driver with a profitable single deviation.
//!
//! ```text
//! cargo run --release --example random_economies -- [count]
//! ```

use stp_core::experiments::{random_economy, RandomEconomyParams};
use stp_core::mechanisms::{all_regrets, stp_mechanism, DeviationScope};
use stp_core::planner::{check_core_sampled, plan_driver_optimal, plan_driver_pessimal, verify_ce};
use stp_core::Money;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let count: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    let params = RandomEconomyParams::default();
    let mut failures = 0;
    for seed in 0..count {
        let econ = random_economy(&params, seed);
        let mut ok = true;
        for plan in [plan_driver_pessimal(&econ)?, plan_driver_optimal(&econ)?] {
            ok &= verify_ce(&econ, &plan).is_ce();
            ok &= check_core_sampled(&econ, &plan, 256, seed)?.in_core();
        }
        let regrets = all_regrets(&econ, stp_mechanism().as_ref(), DeviationScope::Full)?;
        ok &= regrets.iter().all(|r| *r == Money::ZERO);
        if !ok {
            failures += 1;
            println!("seed {seed}: FAILED\n{}", econ.to_json_string());
        }
    }
    println!("{count} economies checked, {failures} failures");
    Ok(())
}
