use serde::{Deserialize, Serialize};

use super::network::{EdgeClass, FlowNetwork, Node};
use super::solver::OptimalFlow;
use crate::error::{Error, Result};
use crate::market::{ActionPath, Economy, Leg};

/// A plan dispatch: which riders are picked up and each driver's action path.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dispatch {
    /// `pickups[j]` is `true` when rider `j` is served.
    pub pickups: Vec<bool>,
    /// Action path per driver. An empty path means the driver declines to
    /// enter (if not yet entered) or exits at the entry node.
    pub paths: Vec<ActionPath>,
    /// `true` for drivers whose unit of flow enters the grid (as opposed to
    /// declining straight to the sink).
    pub enters: Vec<bool>,
}

impl Dispatch {
    /// The driver assigned to rider `j`, if any.
    pub fn driver_of_rider(&self, j: usize) -> Option<usize> {
        self.paths.iter().position(|p| p.riders().any(|r| r == j))
    }
}

/// Splits an integral flow into one path per driver.
///
/// Nodes are processed in id order (driver sources first, then grid nodes by
/// time). At every node the arriving units, ordered by incoming edge and then
/// driver id, are matched one-to-one with the outgoing flow units, ordered by
/// edge index. This makes the decomposition deterministic.
pub fn decompose_flow(net: &FlowNetwork, flow: &OptimalFlow, econ: &Economy) -> Result<Dispatch> {
    let n_nodes = net.node_count();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
    for (k, e) in net.edges.iter().enumerate() {
        if flow.flow[k] < 0 || flow.flow[k] > e.upper {
            return Err(Error::FlowInvariant(format!(
                "edge {k} carries flow {} outside [0,{}]",
                flow.flow[k], e.upper
            )));
        }
        if flow.flow[k] > 0 {
            out_edges[e.tail].push(k);
        }
    }
    let mut arriving: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_nodes];
    for i in 0..net.num_drivers {
        arriving[net.driver_node(i)].push((0, i));
    }
    let mut dispatch = Dispatch {
        pickups: vec![false; econ.riders.len()],
        paths: vec![ActionPath::default(); net.num_drivers],
        enters: vec![false; net.num_drivers],
    };
    let grid_end = net.num_locations * (net.horizon + 1);
    let order = (grid_end..grid_end + net.num_drivers).chain(0..grid_end);
    for v in order {
        let mut units = std::mem::take(&mut arriving[v]);
        units.sort_unstable();
        let slots: Vec<usize> = out_edges[v]
            .iter()
            .flat_map(|&k| std::iter::repeat_n(k, flow.flow[k] as usize))
            .collect();
        if units.len() != slots.len() {
            return Err(Error::FlowInvariant(format!(
                "node {v}: {} units arrive but {} leave",
                units.len(),
                slots.len()
            )));
        }
        for ((_, driver), k) in units.into_iter().zip(slots) {
            let e = &net.edges[k];
            match e.class {
                EdgeClass::Rider | EdgeClass::Relocation => {
                    let trip = e.trip.expect("trip edges carry their trip");
                    if let Some(j) = e.rider {
                        dispatch.pickups[j] = true;
                    }
                    dispatch.paths[driver].legs.push(Leg { trip, rider: e.rider });
                }
                EdgeClass::Entry => dispatch.enters[driver] = true,
                EdgeClass::Exit | EdgeClass::Decline => {}
            }
            if let Node::Grid { .. } = net.node(e.head) {
                arriving[e.head].push((k, driver));
            }
        }
    }
    Ok(dispatch)
}
