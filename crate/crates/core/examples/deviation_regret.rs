//! Compares the single-deviation regret of every driver under STP, the
//! always-replan variant, static pricing, the driver-optimal mechanism and
//! myopic pricing.
//!
//! ```text
//! cargo run --example deviation_regret -- [fixture-name]
//! ```

use stp_core::experiments::MechanismKind;
use stp_core::fixtures::fixture;
use stp_core::mechanisms::{all_regrets, DeviationScope};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "naive-replan".into());
    let econ = fixture(&name)?;
    println!("fixture {name}: {} drivers", econ.drivers.len());
    for kind in [
        MechanismKind::Stp,
        MechanismKind::AlwaysReplan,
        MechanismKind::StaticPessimal,
        MechanismKind::DriverOptimal,
        MechanismKind::Myopic,
    ] {
        let regrets = all_regrets(&econ, kind.build(0).as_ref(), DeviationScope::Full)?;
        let shown: Vec<String> = regrets.iter().map(|r| r.to_string()).collect();
        println!("{:>16}: [{}]", kind.name(), shown.join(", "));
    }
    Ok(())
}
