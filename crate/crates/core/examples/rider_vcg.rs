//! Rider-side VCG prices: each served rider's marginal externality, and the
//! check that lowering the rider's value to that price still yields a
//! competitive equilibrium charging exactly that price.
//!
//! ```text
//! cargo run --example rider_vcg -- [fixture-name]
//! ```

use stp_core::fixtures::fixture;
use stp_core::planner::{plan_driver_pessimal, rider_vcg_check};
use stp_core::Error;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "rider-vcg".into());
    let econ = fixture(&name)?;
    let plan = plan_driver_pessimal(&econ)?;
    for (j, rider) in econ.riders.iter().enumerate() {
        match rider_vcg_check(&econ, j) {
            Ok(check) => println!(
                "rider {j} {}: value {}, VCG {}, pessimal price {}, construction holds: {}",
                rider.trip(),
                rider.value,
                check.vcg,
                plan.prices.get(rider.trip()),
                check.holds()
            ),
            Err(Error::RiderNotServed(_)) => println!("rider {j} {}: not served", rider.trip()),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}
