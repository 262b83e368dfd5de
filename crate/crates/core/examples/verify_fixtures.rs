//! Runs every bundled fixture check suite and prints its report.
//!
//! ```text
//! cargo run --example verify_fixtures
//! ```

use stp_core::fixtures::{verify_fixture, CHECK_SUITES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut failed = 0;
    for name in CHECK_SUITES {
        let report = verify_fixture(name)?;
        println!("{report}");
        failed += usize::from(!report.passed());
    }
    println!("{} suites, {failed} failed", CHECK_SUITES.len());
    Ok(())
}
