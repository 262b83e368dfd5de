//! Builds an economy in code, validates it, round-trips it through JSON and
//! lists every feasible path of its driver with the path's cost.
//!
//! ```text
//! cargo run --example economy_basics
//! ```

use stp_core::market::{enumerate_feasible_paths, path_cost, validate_economy, Economy, DEFAULT_PATH_CAP};
use stp_core::Money;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two locations one period apart, three periods, driving costs 1 per
    // period and early exit costs 1 per period left.
    let mut econ = Economy::new(
        &["Home", "Town"],
        vec![vec![1, 1], vec![1, 1]],
        3,
        Money::from_units(1),
        Money::from_units(1),
    );
    econ.add_driver(true, 0, 0);
    econ.add_rider(0, 1, 0, Money::from_units(6));
    econ.add_rider(1, 0, 1, Money::from_units(4));
    validate_economy(&econ).into_result()?;

    let json = econ.to_json_string();
    println!("{json}");
    assert_eq!(Economy::from_json_str(&json)?, econ);

    let driver = econ.drivers[0];
    for path in enumerate_feasible_paths(&econ, &driver, DEFAULT_PATH_CAP)? {
        let trips: Vec<String> = path.trips.iter().map(|t| t.to_string()).collect();
        println!("cost {:>6}  [{}]", path_cost(&econ, &driver, &path)?, trips.join(", "));
    }
    Ok(())
}
