use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::flow::{
    decompose_flow, potentials_optimal, potentials_pessimal, solve_economy, Dispatch, FlowNetwork, OptimalFlow,
    Potentials,
};
use crate::market::{path_cost, Economy, Trip};
use crate::money::Money;

/// Which extreme competitive equilibrium a plan implements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanKind {
    /// Lowest driver utilities (prices from `Φ`).
    DriverPessimal,
    /// Highest driver utilities (prices from `Ψ`).
    DriverOptimal,
}

/// Price of one trip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriceEntry {
    /// The trip.
    pub trip: Trip,
    /// Its anonymous price.
    pub price: Money,
}

/// Anonymous trip prices, one per feasible trip, sorted by trip.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriceTable {
    /// Entries sorted by trip.
    pub entries: Vec<PriceEntry>,
}

impl PriceTable {
    /// Builds a table from arbitrary entries (later duplicates win).
    pub fn from_entries(entries: impl IntoIterator<Item = (Trip, Money)>) -> Self {
        let mut t = PriceTable::default();
        for (trip, price) in entries {
            t.set(trip, price);
        }
        t
    }

    /// The price of `trip` (0 when absent).
    pub fn get(&self, trip: Trip) -> Money {
        match self.entries.binary_search_by_key(&trip, |e| e.trip) {
            Ok(k) => self.entries[k].price,
            Err(_) => Money::ZERO,
        }
    }

    /// Sets the price of `trip`.
    pub fn set(&mut self, trip: Trip, price: Money) {
        match self.entries.binary_search_by_key(&trip, |e| e.trip) {
            Ok(k) => self.entries[k].price = price,
            Err(k) => self.entries.insert(k, PriceEntry { trip, price }),
        }
    }

    /// Iterates over `(trip, price)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (Trip, Money)> + '_ {
        self.entries.iter().map(|e| (e.trip, e.price))
    }
}

/// A priced plan: dispatch, anonymous trip prices and the potentials they
/// were derived from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plan {
    /// Which extreme equilibrium.
    pub kind: PlanKind,
    /// Pick-ups and action paths.
    pub dispatch: Dispatch,
    /// Price of every feasible trip (non-negative).
    pub prices: PriceTable,
    /// Node potentials behind the prices.
    pub potentials: Potentials,
    /// Welfare of the dispatch.
    pub welfare: Money,
}

impl Plan {
    /// Total payment to driver `i`: the sum of prices along the driver's path.
    pub fn driver_payment(&self, i: usize) -> Money {
        self.dispatch.paths[i]
            .legs
            .iter()
            .map(|l| self.prices.get(l.trip))
            .sum()
    }

    /// Cost of driver `i`'s path, including any early-exit cost.
    pub fn driver_cost(&self, econ: &Economy, i: usize) -> Money {
        path_cost(econ, &econ.drivers[i], &self.dispatch.paths[i].path()).expect("plan paths are feasible")
    }

    /// Utility of driver `i`: payment minus cost.
    pub fn driver_utility(&self, econ: &Economy, i: usize) -> Money {
        self.driver_payment(i) - self.driver_cost(econ, i)
    }

    /// Payment of rider `j` (the trip price when picked, else 0).
    pub fn rider_payment(&self, econ: &Economy, j: usize) -> Money {
        if self.dispatch.pickups[j] {
            self.prices.get(econ.riders[j].trip())
        } else {
            Money::ZERO
        }
    }

    /// Utility of rider `j`.
    pub fn rider_utility(&self, econ: &Economy, j: usize) -> Money {
        if self.dispatch.pickups[j] {
            econ.riders[j].value - self.rider_payment(econ, j)
        } else {
            Money::ZERO
        }
    }

    /// Per-driver utilities.
    pub fn driver_utilities(&self, econ: &Economy) -> Vec<Money> {
        (0..econ.num_drivers()).map(|i| self.driver_utility(econ, i)).collect()
    }

    /// Per-rider utilities.
    pub fn rider_utilities(&self, econ: &Economy) -> Vec<Money> {
        (0..econ.riders.len()).map(|j| self.rider_utility(econ, j)).collect()
    }

    /// Text dump: one line per driver path, then the price of every trip some
    /// rider requests (prices of other trips only guide drivers).
    ///
    /// ```text
    /// welfare 215.00
    /// driver 0 C->A@1[r6] | payment 80.00 cost 30.00 utility 50.00
    /// price B->A@0 70.00
    /// ```
    pub fn dump(&self, econ: &Economy) -> String {
        let name = |a: usize| econ.locations[a].clone();
        let mut out = String::new();
        let _ = writeln!(out, "welfare {}", self.welfare);
        for (i, p) in self.dispatch.paths.iter().enumerate() {
            let legs: Vec<String> = p
                .legs
                .iter()
                .map(|l| {
                    let r = l.rider.map(|r| format!("[r{r}]")).unwrap_or_default();
                    format!("{}->{}@{}{r}", name(l.trip.origin), name(l.trip.dest), l.trip.start)
                })
                .collect();
            let legs = if legs.is_empty() {
                "-".to_string()
            } else {
                legs.join(" ")
            };
            let _ = writeln!(
                out,
                "driver {i} {legs} | payment {} cost {} utility {}",
                self.driver_payment(i),
                self.driver_cost(econ, i),
                self.driver_utility(econ, i)
            );
        }
        let requested: std::collections::BTreeSet<Trip> = econ.riders.iter().map(|r| r.trip()).collect();
        for (trip, p) in self.prices.iter() {
            if requested.contains(&trip) {
                let _ = writeln!(
                    out,
                    "price {}->{}@{} {p}",
                    name(trip.origin),
                    name(trip.dest),
                    trip.start
                );
            }
        }
        out
    }
}

/// Prices `p_{a,b,t} = max(0, φ_{a,t} − φ_{b,t+d} + c_{a,b,t})` for every feasible trip.
pub(crate) fn prices_from_potentials(econ: &Economy, pot: &Potentials) -> PriceTable {
    let mut entries: Vec<PriceEntry> = econ
        .feasible_trips()
        .into_iter()
        .map(|trip| {
            let raw = pot.at(trip.origin, trip.start) - pot.at(trip.dest, econ.arrival(trip)) + econ.cost_of(trip);
            PriceEntry {
                trip,
                price: raw.clamp_nonneg(),
            }
        })
        .collect();
    entries.sort_by_key(|e| e.trip);
    PriceTable { entries }
}

/// Builds a plan of the given kind from an optimal flow on `net`.
pub fn plan_from_flow(econ: &Economy, net: &FlowNetwork, flow: &OptimalFlow, kind: PlanKind) -> Result<Plan> {
    let dispatch = decompose_flow(net, flow, econ)?;
    let potentials = match kind {
        PlanKind::DriverPessimal => potentials_pessimal(net, flow)?,
        PlanKind::DriverOptimal => potentials_optimal(net, flow)?,
    };
    let prices = prices_from_potentials(econ, &potentials);
    Ok(Plan {
        kind,
        dispatch,
        prices,
        potentials,
        welfare: flow.welfare(),
    })
}

/// The driver-pessimal CE plan: welfare-optimal dispatch, prices from `Φ`.
pub fn plan_driver_pessimal(econ: &Economy) -> Result<Plan> {
    let s = solve_economy(econ)?;
    plan_from_flow(econ, &s.network, &s.flow, PlanKind::DriverPessimal)
}

/// The driver-optimal CE plan: welfare-optimal dispatch, prices from `Ψ`.
pub fn plan_driver_optimal(econ: &Economy) -> Result<Plan> {
    let s = solve_economy(econ)?;
    plan_from_flow(econ, &s.network, &s.flow, PlanKind::DriverOptimal)
}
