//! Time-expanded min-cost-flow network, integral solver, flow decomposition
//! and residual-graph potentials.
//!
//! Every driver is a unit of flow entering at its own source node `D_i` and
//! leaving through a single sink `S`. Grid nodes `(a, t)` for `t ∈ 0..=T` are
//! connected by rider edges (capacity 1, cost `c − v`), relocation edges
//! (unbounded, cost `c`) and exit edges to the sink (cost `κ_{T−t}`). Minimum
//! cost equals minus the maximum welfare.

mod decompose;
mod network;
mod omega;
mod potentials;
mod solver;

pub use decompose::{decompose_flow, Dispatch};
pub use network::{build_network, Edge, EdgeClass, FlowNetwork, Node};
pub use omega::{omega, omega_of_network, BoundaryNode};
pub use potentials::{potentials_optimal, potentials_pessimal, Potentials};
pub use solver::{solve_min_cost_flow, OptimalFlow};

use crate::error::Result;
use crate::market::Economy;

/// A network together with an optimal flow on it.
#[derive(Clone, Debug)]
pub struct Solved {
    /// The network.
    pub network: FlowNetwork,
    /// An optimal integral flow.
    pub flow: OptimalFlow,
}

impl Solved {
    /// Maximum welfare.
    pub fn welfare(&self) -> crate::Money {
        self.flow.welfare()
    }
}

/// Builds and solves the network of an economy.
pub fn solve_economy(econ: &Economy) -> Result<Solved> {
    let network = build_network(econ);
    let flow = solve_min_cost_flow(&network)?;
    Ok(Solved { network, flow })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::Money;

    fn u(x: i64) -> Money {
        Money::from_units(x)
    }

    #[test]
    fn superbowl_welfare_dispatch_and_potentials() {
        let e = fixture("superbowl").unwrap();
        let s = solve_economy(&e).unwrap();
        assert_eq!(s.welfare(), u(215));
        let d = decompose_flow(&s.network, &s.flow, &e).unwrap();
        let riders = |i: usize| d.paths[i].riders().collect::<Vec<_>>();
        assert_eq!(riders(2), vec![2, 5]);
        assert_eq!(riders(0), vec![6]);
        assert_eq!(riders(1), vec![7]);
        let phi = potentials_pessimal(&s.network, &s.flow).unwrap();
        assert_eq!(phi.at(2, 0), u(50));
        for i in 0..3 {
            assert_eq!(phi.driver(i), u(50));
        }
    }

    #[test]
    fn driver_optimal_fixture_potentials() {
        let e = fixture("driver-optimal").unwrap();
        let s = solve_economy(&e).unwrap();
        assert_eq!(s.welfare(), u(7));
        let psi = potentials_optimal(&s.network, &s.flow).unwrap();
        assert_eq!(psi.driver(0), u(1));
        assert_eq!(psi.driver(1), u(1));
        let phi = potentials_pessimal(&s.network, &s.flow).unwrap();
        assert!(phi.driver(0) <= psi.driver(0));
    }

    #[test]
    fn naive_replan_fixture() {
        let e = fixture("naive-replan").unwrap();
        let s = solve_economy(&e).unwrap();
        assert_eq!(s.welfare(), u(14));
        let costs: Vec<i64> = s
            .network
            .edges
            .iter()
            .filter(|e| e.class == EdgeClass::Rider)
            .map(|e| e.cost.minor() / 100)
            .collect();
        assert_eq!(costs, vec![-6, -5, -4, -8]);
        let phi = potentials_pessimal(&s.network, &s.flow).unwrap();
        assert_eq!(phi.at(1, 1) - phi.at(1, 2), u(5));
        assert_eq!(phi.at(0, 1) - phi.at(0, 2), u(5));
    }

    #[test]
    fn omega_replica_gain_matches_pessimal_potential() {
        let e = fixture("superbowl").unwrap();
        let s = solve_economy(&e).unwrap();
        let phi = potentials_pessimal(&s.network, &s.flow).unwrap();
        let base = omega(&e, &[]).unwrap();
        assert_eq!(base, u(215));
        for i in 0..3 {
            let gain = omega(&e, &[(BoundaryNode::Driver(i), 1)]).unwrap() - base;
            assert_eq!(gain, phi.driver(i));
        }
        assert!(omega(&e, &[(BoundaryNode::Grid { loc: 0, time: 0 }, -1)]).is_err());
    }
}
