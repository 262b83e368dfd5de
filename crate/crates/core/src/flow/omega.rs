use serde::{Deserialize, Serialize};

use super::network::{build_network, FlowNetwork};
use super::solver::solve_min_cost_flow;
use crate::error::{Error, Result};
use crate::market::{Economy, Location, Time};
use crate::money::Money;

/// A node whose supply can be perturbed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryNode {
    /// Grid node `(loc, time)`: extra units there are committed drivers.
    Grid {
        /// Location.
        loc: Location,
        /// Period.
        time: Time,
    },
    /// Source of driver `i`: an extra unit is a replica of the driver.
    Driver(usize),
}

/// Maximum welfare of `econ` with the supply perturbed by `delta`.
///
/// Each `(node, k)` adds `k` units (or removes `−k`) at the node; the sink
/// absorbs the difference. Negative resulting supply is rejected.
pub fn omega(econ: &Economy, delta: &[(BoundaryNode, i64)]) -> Result<Money> {
    omega_of_network(&build_network(econ), delta)
}

/// [`omega`] on an already built network.
pub fn omega_of_network(net: &FlowNetwork, delta: &[(BoundaryNode, i64)]) -> Result<Money> {
    let mut net = net.clone();
    let sink = net.sink();
    for &(node, k) in delta {
        let id = match node {
            BoundaryNode::Grid { loc, time } => {
                if loc >= net.num_locations || time > net.horizon {
                    return Err(Error::InvalidBoundary(format!("no grid node ({loc},{time})")));
                }
                net.grid(loc, time)
            }
            BoundaryNode::Driver(i) => {
                if i >= net.num_drivers {
                    return Err(Error::InvalidBoundary(format!("no driver {i}")));
                }
                net.driver_node(i)
            }
        };
        net.supply[id] += k;
        if net.supply[id] < 0 {
            return Err(Error::InvalidBoundary(format!("negative supply at node {id}")));
        }
    }
    net.supply[sink] = 0;
    net.supply[sink] = -net.total_supply();
    net.refresh_unbounded_capacity();
    Ok(solve_min_cost_flow(&net)?.welfare())
}
