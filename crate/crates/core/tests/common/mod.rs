//! Test-side oracles that recompute results by brute force, without using the
//! flow engine: every action path of every driver is enumerated and the best
//! rider-disjoint combination is found by memoised search.

#![allow(dead_code)]

use std::collections::HashMap;

use stp_core::experiments::{random_economy, RandomEconomyParams};
use stp_core::flow::{omega, BoundaryNode, Dispatch, EdgeClass, FlowNetwork, OptimalFlow, Potentials};
use stp_core::market::{DriverType, Economy, Trip};
use stp_core::planner::{Plan, PriceTable};
use stp_core::Money;

/// One way a driver can spend the horizon: the trips driven, the riders
/// carried (as a bit mask) and the total cost.
#[derive(Clone, Debug)]
pub struct OraclePath {
    pub trips: Vec<Trip>,
    pub riders: u64,
    pub value: Money,
    pub cost: Money,
}

fn exit_cost_after(econ: &Economy, driver: &DriverType, trips: &[Trip]) -> Money {
    match trips.last() {
        None if driver.entered => econ.exit_cost[econ.horizon - driver.time],
        None => Money::ZERO,
        Some(last) => {
            let arrive = last.start + econ.dist[last.origin][last.dest];
            econ.exit_cost[econ.horizon - arrive]
        }
    }
}

fn trip_cost(econ: &Economy, trip: Trip) -> Money {
    econ.trip_cost(trip.origin, trip.dest, trip.start)
}

/// Every trip sequence a driver can follow (empty sequence first).
pub fn oracle_paths(econ: &Economy, driver: &DriverType) -> Vec<Vec<Trip>> {
    fn go(econ: &Economy, at: usize, t: usize, cur: &mut Vec<Trip>, out: &mut Vec<Vec<Trip>>) {
        for b in 0..econ.locations.len() {
            let arrive = t + econ.dist[at][b];
            if arrive > econ.horizon {
                continue;
            }
            cur.push(Trip::new(at, b, t));
            out.push(cur.clone());
            go(econ, b, arrive, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![Vec::new()];
    go(econ, driver.location, driver.time, &mut Vec::new(), &mut out);
    out
}

/// Total cost of a trip sequence, including the early-exit cost.
pub fn oracle_path_cost(econ: &Economy, driver: &DriverType, trips: &[Trip]) -> Money {
    trips.iter().map(|t| trip_cost(econ, *t)).sum::<Money>() + exit_cost_after(econ, driver, trips)
}

/// Every action path of a driver: each path with every assignment of at most
/// one requesting rider per trip.
pub fn oracle_action_paths(econ: &Economy, driver: &DriverType) -> Vec<OraclePath> {
    let mut out = Vec::new();
    for trips in oracle_paths(econ, driver) {
        let cost = oracle_path_cost(econ, driver, &trips);
        let mut partial = vec![(0u64, Money::ZERO)];
        for trip in &trips {
            let mut next = Vec::new();
            for &(mask, value) in &partial {
                next.push((mask, value));
                for (j, r) in econ.riders.iter().enumerate() {
                    if r.origin == trip.origin && r.dest == trip.dest && r.time == trip.start {
                        next.push((mask | 1 << j, value + r.value));
                    }
                }
            }
            partial = next;
        }
        for (riders, value) in partial {
            out.push(OraclePath {
                trips: trips.clone(),
                riders,
                value,
                cost,
            });
        }
    }
    out
}

/// Exhaustive welfare oracle over an economy and all of its coalitions.
pub struct Oracle {
    options: Vec<Vec<OraclePath>>,
    num_riders: usize,
}

impl Oracle {
    /// Enumerates every action path of every driver.
    pub fn new(econ: &Economy) -> Self {
        Oracle {
            options: econ.drivers.iter().map(|d| oracle_action_paths(econ, d)).collect(),
            num_riders: econ.riders.len(),
        }
    }

    /// Maximum welfare of the whole economy.
    pub fn welfare(&self) -> Money {
        self.coalition_welfare((1u64 << self.options.len()) - 1, (1u64 << self.num_riders) - 1)
    }

    /// Maximum welfare the drivers and riders in the two masks achieve alone.
    pub fn coalition_welfare(&self, drivers: u64, riders: u64) -> Money {
        let members: Vec<&Vec<OraclePath>> = self
            .options
            .iter()
            .enumerate()
            .filter(|(i, _)| drivers >> i & 1 == 1)
            .map(|(_, o)| o)
            .collect();
        let mut memo = HashMap::new();
        best(&members, 0, !riders, &mut memo)
    }
}

/// Maximum welfare (rider values served minus driver costs) over every
/// dispatch, by exhaustive search.
pub fn oracle_welfare(econ: &Economy) -> Money {
    Oracle::new(econ).welfare()
}

fn best(options: &[&Vec<OraclePath>], i: usize, used: u64, memo: &mut HashMap<(usize, u64), Money>) -> Money {
    if i == options.len() {
        return Money::ZERO;
    }
    if let Some(&v) = memo.get(&(i, used)) {
        return v;
    }
    let mut top: Option<Money> = None;
    for p in options[i] {
        if p.riders & used != 0 {
            continue;
        }
        let v = p.value - p.cost + best(options, i + 1, used | p.riders, memo);
        top = Some(top.map_or(v, |t: Money| t.max(v)));
    }
    let v = top.expect("the empty path is always available");
    memo.insert((i, used), v);
    v
}

/// Economy restricted to the given drivers and riders (by mask).
pub fn sub_economy(econ: &Economy, drivers: u64, riders: u64) -> Economy {
    let mut e = econ.clone();
    e.drivers = econ
        .drivers
        .iter()
        .enumerate()
        .filter(|(i, _)| drivers >> i & 1 == 1)
        .map(|(_, d)| *d)
        .collect();
    e.riders = econ
        .riders
        .iter()
        .enumerate()
        .filter(|(j, _)| riders >> j & 1 == 1)
        .map(|(_, r)| *r)
        .collect();
    e
}

/// Welfare gain from adding one committed driver at `(loc, time)`.
pub fn oracle_replica_gain(econ: &Economy, loc: usize, time: usize) -> Money {
    let mut e = econ.clone();
    e.drivers.push(DriverType {
        entered: true,
        location: loc,
        time,
    });
    oracle_welfare(&e) - oracle_welfare(econ)
}

/// Best utility a driver can get by following any path at the given prices
/// (negative prices count as zero).
pub fn oracle_best_response(econ: &Economy, driver: &DriverType, prices: &PriceTable) -> Money {
    oracle_paths(econ, driver)
        .iter()
        .map(|trips| {
            trips.iter().map(|t| prices.get(*t).clamp_nonneg()).sum::<Money>() - oracle_path_cost(econ, driver, trips)
        })
        .max()
        .expect("the empty path is always available")
}

/// The seeded random economies used by the property suites.
pub fn small_economies(count: u64, max_horizon: usize) -> Vec<(u64, Economy)> {
    let params = RandomEconomyParams {
        max_horizon,
        ..RandomEconomyParams::default()
    };
    (0..count).map(|s| (s, random_economy(&params, s))).collect()
}

/// `Money` from whole units.
pub fn u(units: i64) -> Money {
    Money::from_units(units)
}

/// Checks that `pots` is a feasible dual of the flow problem that satisfies
/// complementary slackness with `flow`, and that the dual objective equals
/// the optimal welfare. Returns one message per violated condition.
///
/// Potentials are in welfare units: an edge of cost `c` has weight `−c`, the
/// sink has potential 0 and each rider's dual is `μ_j = max(0, w − Δ)` where
/// `Δ` is the potential drop along the rider edge.
pub fn duality_violations(net: &FlowNetwork, flow: &OptimalFlow, pots: &Potentials) -> Vec<String> {
    let mut out = Vec::new();
    let phi = |v: usize| pots.values[v];
    if phi(net.sink()) != Money::ZERO {
        out.push(format!("sink potential {} is not 0", phi(net.sink())));
    }
    let mut dual_objective = Money::ZERO;
    for (k, (e, &f)) in net.edges.iter().zip(&flow.flow).enumerate() {
        let w = -e.cost;
        let drop = phi(e.tail) - phi(e.head);
        if e.class == EdgeClass::Rider {
            let mu = (w - drop).clamp_nonneg();
            dual_objective += mu;
            if f > 0 && drop > w {
                out.push(format!("CS1: used rider edge {k} has slack {}", drop - w));
            }
            if mu > Money::ZERO && f != 1 {
                out.push(format!("CS2: rider edge {k} has positive dual but is unused"));
            }
        } else {
            if drop < w {
                out.push(format!(
                    "dual infeasible on {:?} edge {k}: drop {drop} < weight {w}",
                    e.class
                ));
            }
            if f > 0 && drop != w {
                let cs = match e.class {
                    EdgeClass::Relocation => "CS3",
                    EdgeClass::Exit => "CS4",
                    EdgeClass::Entry => "CS5",
                    _ => "CS6",
                };
                out.push(format!("{cs}: used {:?} edge {k} has slack {}", e.class, drop - w));
            }
        }
    }
    for i in 0..net.num_drivers {
        dual_objective += phi(net.driver_node(i));
    }
    if dual_objective != flow.welfare() {
        out.push(format!(
            "dual objective {dual_objective} differs from welfare {}",
            flow.welfare()
        ));
    }
    out
}

/// Every boundary node of a network: grid nodes, then driver sources.
pub fn boundary_nodes(econ: &Economy) -> Vec<BoundaryNode> {
    let mut nodes = Vec::new();
    for time in 0..=econ.horizon {
        for loc in 0..econ.locations.len() {
            nodes.push(BoundaryNode::Grid { loc, time });
        }
    }
    nodes.extend((0..econ.drivers.len()).map(BoundaryNode::Driver));
    nodes
}

/// The two local-exchange inequalities for one node pair `(a, b)`:
/// diminishing returns at `b`, and adding a unit at `a` lowers the marginal
/// value of `b` no more than adding a second unit at `b` does.
pub fn exchange_violations(econ: &Economy, a: BoundaryNode, b: BoundaryNode) -> Vec<String> {
    let w = |delta: &[(BoundaryNode, i64)]| omega(econ, delta).expect("non-negative perturbation");
    let base = w(&[]);
    let b1 = w(&[(b, 1)]);
    let b2 = w(&[(b, 2)]);
    let a1 = w(&[(a, 1)]);
    let a1b1 = w(&[(a, 1), (b, 1)]);
    let mut out = Vec::new();
    if b1 - base < b2 - b1 {
        out.push(format!("{b:?}: marginal rises from {} to {}", b1 - base, b2 - b1));
    }
    if a1b1 - a1 < b2 - b1 {
        out.push(format!(
            "{a:?},{b:?}: marginal of b after a is {} but after b is {}",
            a1b1 - a1,
            b2 - b1
        ));
    }
    out
}

/// Utility of driver `i` under a dispatch and prices, recomputed from the
/// dispatched trips.
pub fn dispatched_driver_utility(econ: &Economy, dispatch: &Dispatch, prices: &PriceTable, i: usize) -> Money {
    let d = &econ.drivers[i];
    let trips: Vec<Trip> = dispatch.paths[i].legs.iter().map(|l| l.trip).collect();
    trips.iter().map(|t| prices.get(*t).clamp_nonneg()).sum::<Money>() - oracle_path_cost(econ, d, &trips)
}

/// Independent competitive-equilibrium check of a priced plan: feasibility,
/// welfare optimality against the oracle, rider and driver best responses,
/// zero prices under excess supply, budget balance, envy-freeness, individual
/// rationality and (exhaustively) the core.
pub fn oracle_ce_violations(econ: &Economy, oracle: &Oracle, plan: &Plan) -> Vec<String> {
    let mut out = Vec::new();
    let dispatch = &plan.dispatch;
    let prices = &plan.prices;
    let mut carried = vec![0usize; econ.riders.len()];
    let mut welfare = Money::ZERO;
    let mut on_trip: HashMap<Trip, (usize, usize)> = HashMap::new();
    for (i, d) in econ.drivers.iter().enumerate() {
        let mut at = (d.location, d.time);
        for leg in &dispatch.paths[i].legs {
            let t = leg.trip;
            if (t.origin, t.start) != at || t.start + econ.dist[t.origin][t.dest] > econ.horizon {
                out.push(format!("driver {i}: leg {t} does not chain"));
            }
            at = (t.dest, t.start + econ.dist[t.origin][t.dest]);
            on_trip.entry(t).or_default().0 += 1;
            if let Some(j) = leg.rider {
                carried[j] += 1;
                on_trip.entry(t).or_default().1 += 1;
                welfare += econ.riders[j].value;
                if econ.riders[j].trip() != t {
                    out.push(format!("driver {i} carries rider {j} on the wrong trip"));
                }
            }
        }
        let trips: Vec<Trip> = dispatch.paths[i].legs.iter().map(|l| l.trip).collect();
        welfare -= oracle_path_cost(econ, d, &trips);
    }
    for (j, &c) in carried.iter().enumerate() {
        if c > 1 || (c == 1) != dispatch.pickups[j] {
            out.push(format!(
                "rider {j} carried {c} times, pickup flag {}",
                dispatch.pickups[j]
            ));
        }
    }
    let optimum = oracle.welfare();
    if welfare != optimum || plan.welfare != optimum {
        out.push(format!(
            "welfare {welfare} (reported {}) but optimum {optimum}",
            plan.welfare
        ));
    }
    let mut rider_utils = Vec::new();
    let mut charges = Money::ZERO;
    for (j, r) in econ.riders.iter().enumerate() {
        let p = prices.get(r.trip()).clamp_nonneg();
        if carried[j] == 1 {
            if r.value < p {
                out.push(format!("rider {j} served above the rider value"));
            }
            charges += p;
            rider_utils.push(r.value - p);
        } else {
            if r.value > p {
                out.push(format!("rider {j} can afford {p} but is not served"));
            }
            rider_utils.push(Money::ZERO);
        }
    }
    let mut driver_utils = Vec::new();
    let mut payments = Money::ZERO;
    for (i, d) in econ.drivers.iter().enumerate() {
        let u = dispatched_driver_utility(econ, dispatch, prices, i);
        let best = oracle_best_response(econ, d, prices);
        if u != best {
            out.push(format!("driver {i} gets {u} but could get {best}"));
        }
        if u != plan.driver_utility(econ, i) {
            out.push(format!(
                "driver {i} utility reported as {}",
                plan.driver_utility(econ, i)
            ));
        }
        let outside = if d.entered {
            -econ.exit_cost[econ.horizon - d.time]
        } else {
            Money::ZERO
        };
        if u < outside {
            out.push(format!("driver {i} below the outside option"));
        }
        payments += dispatch.paths[i]
            .legs
            .iter()
            .map(|l| prices.get(l.trip).clamp_nonneg())
            .sum::<Money>();
        driver_utils.push(u);
    }
    for (trip, (drivers, riders)) in &on_trip {
        if drivers > riders && prices.get(*trip) > Money::ZERO {
            out.push(format!("trip {trip} has excess supply but price {}", prices.get(*trip)));
        }
    }
    if charges != payments {
        out.push(format!(
            "rider charges {charges} differ from driver payments {payments}"
        ));
    }
    for i in 0..econ.drivers.len() {
        for k in 0..i {
            if econ.drivers[i] == econ.drivers[k] && driver_utils[i] != driver_utils[k] {
                out.push(format!(
                    "drivers {k} and {i} have the same type but different utilities"
                ));
            }
        }
    }
    for dm in 0..1u64 << econ.drivers.len() {
        for rm in 0..1u64 << econ.riders.len() {
            let sum: Money = (0..econ.drivers.len())
                .filter(|i| dm >> i & 1 == 1)
                .map(|i| driver_utils[i])
                .chain(
                    (0..econ.riders.len())
                        .filter(|j| rm >> j & 1 == 1)
                        .map(|j| rider_utils[j]),
                )
                .sum();
            let alone = oracle.coalition_welfare(dm, rm);
            if alone > sum {
                out.push(format!(
                    "coalition drivers {dm:b} riders {rm:b} blocks: {alone} > {sum}"
                ));
            }
        }
    }
    out
}
