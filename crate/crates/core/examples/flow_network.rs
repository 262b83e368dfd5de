//! The flow formulation: builds the network, solves it, decomposes the flow
//! into driver action paths, and prints both potential vectors and a few
//! boundary-perturbed welfare values.
//!
//! ```text
//! cargo run --example flow_network -- [fixture-name]
//! ```

use stp_core::fixtures::fixture;
use stp_core::flow::{decompose_flow, omega, potentials_optimal, potentials_pessimal, solve_economy, BoundaryNode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "superbowl".into());
    let econ = fixture(&name)?;
    let solved = solve_economy(&econ)?;
    println!("welfare {}", solved.welfare());
    print!("{}", solved.network.dump(Some(&solved.flow.flow), &econ.locations));

    let dispatch = decompose_flow(&solved.network, &solved.flow, &econ)?;
    for (i, path) in dispatch.paths.iter().enumerate() {
        let legs: Vec<String> = path
            .legs
            .iter()
            .map(|l| match l.rider {
                Some(j) => format!("{} carrying {j}", l.trip),
                None => l.trip.to_string(),
            })
            .collect();
        println!("driver {i}: [{}]", legs.join(", "));
    }

    let phi = potentials_pessimal(&solved.network, &solved.flow)?;
    let psi = potentials_optimal(&solved.network, &solved.flow)?;
    for t in 0..=econ.horizon {
        for (a, name) in econ.locations.iter().enumerate() {
            println!("({name},{t}): pessimal {:>8} optimal {:>8}", phi.at(a, t), psi.at(a, t));
        }
    }
    for i in 0..econ.drivers.len() {
        let replica = omega(&econ, &[(BoundaryNode::Driver(i), 1)])?;
        println!(
            "driver {i}: pessimal {} optimal {}; welfare with a replica {replica}",
            phi.driver(i),
            psi.driver(i)
        );
    }
    Ok(())
}
