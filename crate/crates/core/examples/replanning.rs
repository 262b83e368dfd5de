//! Simulates STP on a fixture, first with everyone following the dispatch
//! and then with one driver deviating, and prints both traces. After the
//! deviation STP replans on the remaining economy.
//!
//! ```text
//! cargo run --example replanning
//! ```

use stp_core::fixtures::fixture;
use stp_core::market::Action;
use stp_core::mechanisms::{run_simulation, stp_mechanism, Scripted, Straightforward};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let econ = fixture("superbowl")?;

    let on_path = run_simulation(&econ, stp_mechanism().as_mut(), &Straightforward)?;
    println!("== everyone follows the dispatch");
    print!("{}", on_path.dump());

    // The last driver stays at B instead of following the dispatch at period 0.
    let b = econ.location_index("B").expect("fixture location");
    let last = econ.drivers.len() - 1;
    let stay = Scripted::single(last, 0, Action::Trip { dest: b, rider: None });
    let deviated = run_simulation(&econ, stp_mechanism().as_mut(), &stay)?;
    println!("\n== driver {last} stays at B");
    print!("{}", deviated.dump());
    println!(
        "driver {last}: utility {} following, {} deviating",
        on_path.utility_from(last, 0),
        deviated.utility_from(last, 0)
    );
    Ok(())
}
