//! Computes both extreme competitive-equilibrium plans of a bundled fixture
//! (or an economy file) and prints them with their equilibrium check.
//!
//! ```text
//! cargo run --example plan_equilibrium -- [fixture-name | path/to/economy.json]
//! ```

use stp_core::fixtures::fixture;
use stp_core::market::Economy;
use stp_core::planner::{plan_driver_optimal, plan_driver_pessimal, verify_ce};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "superbowl".into());
    let econ = if arg.ends_with(".json") {
        Economy::load(&arg)?
    } else {
        fixture(&arg)?
    };

    for plan in [plan_driver_pessimal(&econ)?, plan_driver_optimal(&econ)?] {
        println!("== {:?}", plan.kind);
        print!("{}", plan.dump(&econ));
        let report = verify_ce(&econ, &plan);
        println!(
            "competitive equilibrium: {}",
            if report.is_ce() { "ok" } else { "FAILED" }
        );
        println!("budget: rider payments - driver payments = {}", report.budget_delta);
    }
    Ok(())
}
