use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::network::FlowNetwork;
use crate::error::{Error, Result};
use crate::money::Money;

/// An integral optimal flow on a [`FlowNetwork`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalFlow {
    /// Flow per edge, indexed like [`FlowNetwork::edges`].
    pub flow: Vec<i64>,
    /// Total cost `Σ cost·flow`.
    pub cost: Money,
}

impl OptimalFlow {
    /// Welfare of the flow, `−cost`.
    pub fn welfare(&self) -> Money {
        -self.cost
    }
}

const INF: i64 = i64::MAX / 4;

#[derive(Clone, Copy, Debug)]
struct Arc {
    head: usize,
    cap: i64,
    cost: i64,
}

/// Residual graph with paired arcs: arc `2k` is edge `k` forward, `2k+1` its reverse.
struct Residual {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Residual {
    fn add(&mut self, tail: usize, head: usize, cap: i64, cost: i64) {
        self.out[tail].push(self.arcs.len());
        self.arcs.push(Arc { head, cap, cost });
        self.out[head].push(self.arcs.len());
        self.arcs.push(Arc {
            head: tail,
            cap: 0,
            cost: -cost,
        });
    }
}

/// Solves the min-cost-flow problem with successive shortest paths.
///
/// A super source feeds every node with positive supply; all demand must sit
/// at the sink. Initial potentials come from a label-correcting pass, after
/// which each augmentation runs Dijkstra on reduced costs. Ties are broken by
/// edge order, so the result is deterministic.
pub fn solve_min_cost_flow(net: &FlowNetwork) -> Result<OptimalFlow> {
    let n = net.node_count();
    let sink = net.sink();
    for (v, s) in net.supply.iter().enumerate() {
        if *s < 0 && v != sink {
            return Err(Error::FlowInvariant(format!("negative supply at non-sink node {v}")));
        }
    }
    let total = net.total_supply();
    if -net.supply[sink] != total {
        return Err(Error::FlowInvariant("supply does not balance".into()));
    }
    let source = n;
    let mut res = Residual {
        arcs: Vec::with_capacity(2 * (net.edges.len() + n)),
        out: vec![Vec::new(); n + 1],
    };
    for e in &net.edges {
        res.add(e.tail, e.head, e.upper, e.cost.minor());
    }
    for (v, s) in net.supply.iter().enumerate() {
        if *s > 0 {
            res.add(source, v, *s, 0);
        }
    }

    let mut pot = initial_potentials(&res, source);
    let mut sent = 0i64;
    let mut dist = vec![INF; n + 1];
    let mut parent = vec![usize::MAX; n + 1];
    while sent < total {
        dist.fill(INF);
        parent.fill(usize::MAX);
        dist[source] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0i64, source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &a in &res.out[u] {
                let arc = res.arcs[a];
                if arc.cap <= 0 {
                    continue;
                }
                let nd = d + arc.cost + pot[u] - pot[arc.head];
                if nd < dist[arc.head] {
                    dist[arc.head] = nd;
                    parent[arc.head] = a;
                    heap.push(Reverse((nd, arc.head)));
                }
            }
        }
        if dist[sink] >= INF {
            return Err(Error::FlowInvariant(
                "sink unreachable before all supply was routed".into(),
            ));
        }
        for v in 0..=n {
            pot[v] += dist[v].min(dist[sink]);
        }
        let mut push = total - sent;
        let mut v = sink;
        while v != source {
            let a = parent[v];
            push = push.min(res.arcs[a].cap);
            v = res.arcs[a ^ 1].head;
        }
        let mut v = sink;
        while v != source {
            let a = parent[v];
            res.arcs[a].cap -= push;
            res.arcs[a ^ 1].cap += push;
            v = res.arcs[a ^ 1].head;
        }
        sent += push;
    }

    let flow: Vec<i64> = (0..net.edges.len()).map(|k| res.arcs[2 * k + 1].cap).collect();
    let cost = net.edges.iter().zip(&flow).map(|(e, f)| e.cost * *f).sum();
    Ok(OptimalFlow { flow, cost })
}

/// Shortest distances from the super source over arcs with capacity, by
/// label correction; unreachable nodes get 0.
fn initial_potentials(res: &Residual, source: usize) -> Vec<i64> {
    let n = res.out.len();
    let mut dist = vec![INF; n];
    dist[source] = 0;
    for _ in 0..n {
        let mut changed = false;
        for u in 0..n {
            if dist[u] >= INF {
                continue;
            }
            for &a in &res.out[u] {
                let arc = res.arcs[a];
                if arc.cap > 0 && dist[u] + arc.cost < dist[arc.head] {
                    dist[arc.head] = dist[u] + arc.cost;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist.into_iter().map(|d| if d >= INF { 0 } else { d }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::build_network;
    use crate::market::Economy;

    #[test]
    fn lone_driver_takes_best_rider() {
        let mut e = Economy::new(&["A", "B"], vec![vec![1, 1], vec![1, 1]], 2, Money::ZERO, Money::ZERO);
        e.add_driver(true, 0, 0);
        e.add_rider(0, 1, 0, Money::from_units(3));
        e.add_rider(0, 0, 0, Money::from_units(5));
        e.add_rider(1, 1, 1, Money::from_units(4));
        e.add_rider(0, 0, 1, Money::from_units(1));
        let net = build_network(&e);
        let f = solve_min_cost_flow(&net).unwrap();
        assert_eq!(f.welfare(), Money::from_units(7));
    }

    #[test]
    fn no_riders_gives_zero_welfare() {
        let mut e = Economy::new(&["A"], vec![vec![1]], 3, Money::from_units(1), Money::ZERO);
        e.add_driver(true, 0, 0);
        let f = solve_min_cost_flow(&build_network(&e)).unwrap();
        assert_eq!(f.welfare(), Money::ZERO);
    }
}
