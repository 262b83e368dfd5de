//! Per-period dynamic-VCG payments to each driver, next to the
//! driver-optimal plan utilities (each driver's welfare contribution).
//!
//! ```text
//! cargo run --example dynamic_vcg -- [fixture-name]
//! ```

use stp_core::fixtures::fixture;
use stp_core::mechanisms::dynamic_vcg_payments;
use stp_core::planner::plan_driver_optimal;
use stp_core::Money;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "driver-optimal".into());
    let econ = fixture(&name)?;
    let plan = plan_driver_optimal(&econ)?;
    for (i, pay) in dynamic_vcg_payments(&econ)?.iter().enumerate() {
        let shown: Vec<String> = pay.iter().map(|p| p.to_string()).collect();
        let total: Money = pay.iter().copied().sum();
        println!(
            "driver {i}: per period [{}], total {total}, contribution {}",
            shown.join(", "),
            plan.driver_utility(&econ, i)
        );
    }
    Ok(())
}
