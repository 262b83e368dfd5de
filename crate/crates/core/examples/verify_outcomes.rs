//! Checks outcomes against the competitive-equilibrium conditions: a
//! computed plan passes, a plan with one price lowered fails rider best
//! response, and the myopic surge plan fails driver best response.
//!
//! ```text
//! cargo run --example verify_outcomes
//! ```

use stp_core::fixtures::fixture;
use stp_core::market::Trip;
use stp_core::mechanisms::myopic_plan;
use stp_core::planner::{plan_driver_pessimal, verify_ce, verify_outcome};
use stp_core::Money;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let econ = fixture("superbowl")?;
    let loc = |name: &str| econ.location_index(name).expect("fixture location");

    let plan = plan_driver_pessimal(&econ)?;
    println!("computed plan is a CE: {}", verify_ce(&econ, &plan).is_ce());

    let mut cheaper = plan.clone();
    let trip = Trip::new(loc("C"), loc("A"), 1);
    cheaper.prices.set(trip, plan.prices.get(trip) - Money::from_units(1));
    let report = verify_ce(&econ, &cheaper);
    println!("\nwith {trip} one unit cheaper:");
    for v in &report.rider_br_violations {
        println!(
            "  rider {} (value {}, price {}) picked up: {}",
            v.rider, v.value, v.price, v.picked
        );
    }

    let (dispatch, prices) = myopic_plan(&econ, 0)?;
    let report = verify_outcome(&econ, &dispatch, &prices);
    println!("\nmyopic plan is a CE: {}", report.is_ce());
    for v in &report.driver_br_violations {
        println!(
            "  driver {} plan value {}, best value {}",
            v.driver, v.plan_value, v.best
        );
    }
    Ok(())
}
