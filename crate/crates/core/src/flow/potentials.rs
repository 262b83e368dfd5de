use serde::{Deserialize, Serialize};

use super::network::{FlowNetwork, Node};
use super::solver::OptimalFlow;
use crate::error::{Error, Result};
use crate::market::{Location, Time};
use crate::money::Money;

/// A potential per network node (grid nodes, driver sources, sink).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Potentials {
    /// Number of locations.
    pub num_locations: usize,
    /// Horizon `T`.
    pub horizon: Time,
    /// Values indexed by node id (see [`FlowNetwork`]).
    pub values: Vec<Money>,
}

impl Potentials {
    /// Potential of grid node `(a, t)`.
    pub fn at(&self, a: Location, t: Time) -> Money {
        self.values[t * self.num_locations + a]
    }

    /// Potential of driver `i`'s source node.
    pub fn driver(&self, i: usize) -> Money {
        self.values[self.num_locations * (self.horizon + 1) + i]
    }

    /// Number of drivers covered.
    pub fn num_drivers(&self) -> usize {
        self.values.len() - self.num_locations * (self.horizon + 1) - 1
    }
}

/// Residual arcs `(tail, head, cost)` of a flow: forward when the edge has
/// spare capacity (always, for unbounded edges), backward when it carries flow.
pub(crate) fn residual_arcs(net: &FlowNetwork, flow: &OptimalFlow) -> Vec<(usize, usize, i64)> {
    let mut arcs = Vec::with_capacity(2 * net.edges.len());
    for (e, &f) in net.edges.iter().zip(&flow.flow) {
        if e.class.is_unbounded() || f < e.upper {
            arcs.push((e.tail, e.head, e.cost.minor()));
        }
        if f > 0 {
            arcs.push((e.head, e.tail, -e.cost.minor()));
        }
    }
    arcs
}

const INF: i64 = i64::MAX / 4;

/// Label-correcting shortest paths from `root`; errors on a negative cycle.
fn shortest_from(n: usize, root: usize, arcs: &[(usize, usize, i64)]) -> Result<Vec<i64>> {
    let mut dist = vec![INF; n];
    dist[root] = 0;
    for round in 0..=n {
        let mut changed = false;
        for &(u, w, c) in arcs {
            if dist[u] < INF && dist[u] + c < dist[w] {
                dist[w] = dist[u] + c;
                changed = true;
            }
        }
        if !changed {
            return Ok(dist);
        }
        if round == n {
            break;
        }
    }
    Err(Error::FlowInvariant(
        "negative cycle in the residual graph: the flow is not optimal".into(),
    ))
}

/// Pessimal (driver-minimal) potentials `Φ_v = −d(v → S)` in the residual graph.
///
/// `Φ_v` is the largest welfare gain of adding one more unit of supply at
/// `v`; it is the smallest optimal dual solution normalised by `Φ_S = 0`.
pub fn potentials_pessimal(net: &FlowNetwork, flow: &OptimalFlow) -> Result<Potentials> {
    let n = net.node_count();
    let reversed: Vec<_> = residual_arcs(net, flow)
        .into_iter()
        .map(|(u, w, c)| (w, u, c))
        .collect();
    let dist = shortest_from(n, net.sink(), &reversed)?;
    if let Some(v) = dist.iter().position(|d| *d >= INF) {
        return Err(Error::FlowInvariant(format!("node {v} cannot reach the sink")));
    }
    Ok(Potentials {
        num_locations: net.num_locations,
        horizon: net.horizon,
        values: dist.into_iter().map(|d| Money(-d)).collect(),
    })
}

/// Optimal (driver-maximal) potentials `Ψ_v = d(S → v)` in the residual graph.
///
/// `Ψ_v` is the welfare lost by removing one unit of supply at `v`. Nodes the
/// sink cannot reach carry no flow; they receive the smallest value keeping
/// the potentials dual feasible, assigned backwards in time.
pub fn potentials_optimal(net: &FlowNetwork, flow: &OptimalFlow) -> Result<Potentials> {
    let n = net.node_count();
    let arcs = residual_arcs(net, flow);
    let mut dist = shortest_from(n, net.sink(), &arcs)?;
    let unreachable: Vec<bool> = dist.iter().map(|d| *d >= INF).collect();
    if unreachable.iter().any(|u| *u) {
        let mut out: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
        for &(u, w, c) in &arcs {
            out[u].push((w, c));
        }
        let grid_end = net.num_locations * (net.horizon + 1);
        let order = (0..grid_end).rev().chain(grid_end..grid_end + net.num_drivers);
        for v in order {
            if !unreachable[v] {
                continue;
            }
            let mut best = INF;
            for &(w, c) in &out[v] {
                debug_assert!(dist[w] < INF || matches!(net.node(w), Node::Grid { .. }));
                if dist[w] < INF {
                    let cand = dist[w] - c;
                    best = if best >= INF { cand } else { best.max(cand) };
                }
            }
            if best >= INF {
                return Err(Error::FlowInvariant(format!(
                    "node {v} has no residual route to the sink"
                )));
            }
            dist[v] = best;
        }
    }
    Ok(Potentials {
        num_locations: net.num_locations,
        horizon: net.horizon,
        values: dist.into_iter().map(Money).collect(),
    })
}
