use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::market::{Economy, Location, Time, Trip};
use crate::money::Money;

/// Kind of an edge in the flow network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    /// Carries one rider: capacity 1, cost `c − v`.
    Rider,
    /// Drives without a rider: unbounded, cost `c`.
    Relocation,
    /// Leaves the platform from `(a, t)`: unbounded, cost `κ_{T−t}`.
    Exit,
    /// Driver source to its entry node: unbounded, cost 0.
    Entry,
    /// Driver source straight to the sink (declining to enter): unbounded, cost 0.
    Decline,
}

impl EdgeClass {
    fn rank(self) -> u8 {
        match self {
            EdgeClass::Rider => 0,
            EdgeClass::Relocation => 1,
            EdgeClass::Exit => 2,
            EdgeClass::Entry | EdgeClass::Decline => 3,
        }
    }

    /// Short label used in dumps.
    pub fn label(self) -> &'static str {
        match self {
            EdgeClass::Rider => "rider",
            EdgeClass::Relocation => "relocation",
            EdgeClass::Exit => "exit",
            EdgeClass::Entry => "entry",
            EdgeClass::Decline => "decline",
        }
    }

    /// Whether the edge has unbounded capacity in the underlying model.
    pub fn is_unbounded(self) -> bool {
        self != EdgeClass::Rider
    }
}

/// A directed edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    /// Edge kind.
    pub class: EdgeClass,
    /// Tail node id.
    pub tail: usize,
    /// Head node id.
    pub head: usize,
    /// Capacity (unbounded edges carry the total supply).
    pub upper: i64,
    /// Cost per unit.
    pub cost: Money,
    /// Rider id for rider edges.
    pub rider: Option<usize>,
    /// The trip for rider and relocation edges.
    pub trip: Option<Trip>,
}

/// A decoded node id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// Grid node `(location, time)`.
    Grid {
        /// Location.
        loc: Location,
        /// Period in `0..=T`.
        time: Time,
    },
    /// Source node of a driver.
    Driver(usize),
    /// The sink.
    Sink,
}

/// The time-expanded network of an economy.
///
/// Node ids are time-major: grid node `(a, t)` is `t·|L| + a`, followed by
/// one source per driver and finally the sink. Edges are sorted by
/// `(class, tail, head, rider)`, which fixes every tie-break downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    /// Number of locations.
    pub num_locations: usize,
    /// Horizon `T`.
    pub horizon: Time,
    /// Number of drivers.
    pub num_drivers: usize,
    /// Edges in canonical order.
    pub edges: Vec<Edge>,
    /// Net supply per node (`+1` at each driver source, minus the total at the sink).
    pub supply: Vec<i64>,
}

impl FlowNetwork {
    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.num_locations * (self.horizon + 1) + self.num_drivers + 1
    }

    /// Id of grid node `(a, t)`.
    pub fn grid(&self, a: Location, t: Time) -> usize {
        t * self.num_locations + a
    }

    /// Id of driver `i`'s source.
    pub fn driver_node(&self, i: usize) -> usize {
        self.num_locations * (self.horizon + 1) + i
    }

    /// Id of the sink.
    pub fn sink(&self) -> usize {
        self.node_count() - 1
    }

    /// Decodes a node id.
    pub fn node(&self, id: usize) -> Node {
        let grid = self.num_locations * (self.horizon + 1);
        if id < grid {
            Node::Grid {
                loc: id % self.num_locations,
                time: id / self.num_locations,
            }
        } else if id < grid + self.num_drivers {
            Node::Driver(id - grid)
        } else {
            Node::Sink
        }
    }

    /// Human-readable node label: `A@3`, `D2`, `S`.
    pub fn node_label(&self, id: usize, names: &[String]) -> String {
        match self.node(id) {
            Node::Grid { loc, time } => {
                format!("{}@{time}", names.get(loc).cloned().unwrap_or_else(|| loc.to_string()))
            }
            Node::Driver(i) => format!("D{i}"),
            Node::Sink => "S".to_string(),
        }
    }

    /// Total positive supply.
    pub fn total_supply(&self) -> i64 {
        self.supply.iter().filter(|s| **s > 0).sum()
    }

    /// Sets the capacity of every unbounded edge to the total supply.
    pub(crate) fn refresh_unbounded_capacity(&mut self) {
        let cap = self.total_supply().max(1);
        for e in &mut self.edges {
            if e.class.is_unbounded() {
                e.upper = cap;
            }
        }
    }

    /// Edge-list dump, one edge per line: `class tail head upper cost flow`.
    pub fn dump(&self, flow: Option<&[i64]>, names: &[String]) -> String {
        let mut out = String::new();
        for (k, e) in self.edges.iter().enumerate() {
            let f = flow.map(|f| f[k]).unwrap_or(0);
            let _ = writeln!(
                out,
                "{} {} {} {} {} {}",
                e.class.label(),
                self.node_label(e.tail, names),
                self.node_label(e.head, names),
                e.upper,
                e.cost.minor(),
                f
            );
        }
        out
    }
}

/// Builds the time-expanded network of `econ`.
pub fn build_network(econ: &Economy) -> FlowNetwork {
    let l = econ.num_locations();
    let t_max = econ.horizon;
    let n = econ.num_drivers();
    let mut net = FlowNetwork {
        num_locations: l,
        horizon: t_max,
        num_drivers: n,
        edges: Vec::new(),
        supply: Vec::new(),
    };
    let sink = net.sink();
    let inf = (n as i64).max(1);
    let mut edges = Vec::new();
    for (j, r) in econ.riders.iter().enumerate() {
        let trip = r.trip();
        edges.push(Edge {
            class: EdgeClass::Rider,
            tail: net.grid(r.origin, r.time),
            head: net.grid(r.dest, econ.arrival(trip)),
            upper: 1,
            cost: econ.cost_of(trip) - r.value,
            rider: Some(j),
            trip: Some(trip),
        });
    }
    for trip in econ.feasible_trips() {
        edges.push(Edge {
            class: EdgeClass::Relocation,
            tail: net.grid(trip.origin, trip.start),
            head: net.grid(trip.dest, econ.arrival(trip)),
            upper: inf,
            cost: econ.cost_of(trip),
            rider: None,
            trip: Some(trip),
        });
    }
    for t in 0..=t_max {
        for a in 0..l {
            edges.push(Edge {
                class: EdgeClass::Exit,
                tail: net.grid(a, t),
                head: sink,
                upper: inf,
                cost: econ.exit_cost(t_max - t),
                rider: None,
                trip: None,
            });
        }
    }
    for (i, d) in econ.drivers.iter().enumerate() {
        edges.push(Edge {
            class: EdgeClass::Entry,
            tail: net.driver_node(i),
            head: net.grid(d.location, d.time),
            upper: inf,
            cost: Money::ZERO,
            rider: None,
            trip: None,
        });
        if !d.entered {
            edges.push(Edge {
                class: EdgeClass::Decline,
                tail: net.driver_node(i),
                head: sink,
                upper: inf,
                cost: Money::ZERO,
                rider: None,
                trip: None,
            });
        }
    }
    edges.sort_by_key(|e| (e.class.rank(), e.tail, e.head, e.rider));
    let mut supply = vec![0i64; net.node_count()];
    for i in 0..n {
        supply[net.driver_node(i)] = 1;
    }
    supply[sink] = -(n as i64);
    net.edges = edges;
    net.supply = supply;
    net
}
