use serde::{Deserialize, Serialize};

use super::best_path::{best_driver_value, best_path_values};
use super::plan::{Plan, PriceTable};
use crate::flow::Dispatch;
use crate::market::{check_path, path_cost, Economy, Trip};
use crate::money::Money;

/// A rider whose pick-up decision is not a best response to the price.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiderViolation {
    /// Rider id.
    pub rider: usize,
    /// The rider's value.
    pub value: Money,
    /// Price of the rider's trip.
    pub price: Money,
    /// Whether the rider is picked up.
    pub picked: bool,
}

/// A driver who could do strictly better than the plan path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DriverViolation {
    /// Driver id.
    pub driver: usize,
    /// Value of the best path under the prices.
    pub best: Money,
    /// Value of the plan path.
    pub plan_value: Money,
}

/// Outcome of [`verify_ce`]. An empty report means the plan is a
/// competitive equilibrium.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CEReport {
    /// Dispatch infeasibilities (paths that do not chain, riders served twice or on the wrong trip).
    pub feasibility_violations: Vec<String>,
    /// Riders not best-responding.
    pub rider_br_violations: Vec<RiderViolation>,
    /// Drivers not best-responding.
    pub driver_br_violations: Vec<DriverViolation>,
    /// Trips some driver relocates along while their price is positive.
    pub excess_supply_price_violations: Vec<(Trip, Money)>,
    /// Envy between same-type drivers or same-trip riders.
    pub envy_violations: Vec<String>,
    /// `Σ rider payments − Σ driver payments`.
    pub budget_delta: Money,
}

impl CEReport {
    /// `true` when every condition holds.
    pub fn is_ce(&self) -> bool {
        self.feasibility_violations.is_empty()
            && self.rider_br_violations.is_empty()
            && self.driver_br_violations.is_empty()
            && self.excess_supply_price_violations.is_empty()
            && self.envy_violations.is_empty()
            && self.budget_delta == Money::ZERO
    }
}

/// Verifies that a priced plan is a competitive equilibrium. Everything is
/// recomputed from the dispatch and the price table.
pub fn verify_ce(econ: &Economy, plan: &Plan) -> CEReport {
    verify_outcome(econ, &plan.dispatch, &plan.prices)
}

/// Verifies an arbitrary dispatch under arbitrary anonymous prices.
pub fn verify_outcome(econ: &Economy, dispatch: &Dispatch, prices: &PriceTable) -> CEReport {
    let mut report = CEReport::default();
    let n = econ.num_drivers();
    let m = econ.riders.len();

    // Feasibility.
    let mut carried = vec![0usize; m];
    for (i, p) in dispatch.paths.iter().enumerate().take(n) {
        if let Err(e) = check_path(econ, &econ.drivers[i], &p.path()) {
            report.feasibility_violations.push(format!("driver {i}: {e}"));
        }
        for leg in &p.legs {
            if let Some(j) = leg.rider {
                if j >= m || econ.riders[j].trip() != leg.trip {
                    report
                        .feasibility_violations
                        .push(format!("driver {i} carries rider {j} on the wrong trip {}", leg.trip));
                } else {
                    carried[j] += 1;
                }
            }
        }
    }
    if dispatch.paths.len() != n || dispatch.pickups.len() != m {
        report
            .feasibility_violations
            .push("dispatch dimensions do not match the economy".into());
        return report;
    }
    for (j, &times) in carried.iter().enumerate() {
        if times != usize::from(dispatch.pickups[j]) {
            report.feasibility_violations.push(format!(
                "rider {j} is flagged {} but carried {times} times",
                dispatch.pickups[j]
            ));
        }
    }

    // Riders.
    let rider_pay = |j: usize| {
        if dispatch.pickups[j] {
            prices.get(econ.riders[j].trip())
        } else {
            Money::ZERO
        }
    };
    for (j, r) in econ.riders.iter().enumerate() {
        let price = prices.get(r.trip());
        let picked = dispatch.pickups[j];
        if (picked && r.value < price) || (!picked && r.value > price) {
            report.rider_br_violations.push(RiderViolation {
                rider: j,
                value: r.value,
                price,
                picked,
            });
        }
    }

    // Drivers.
    let values = best_path_values(econ, prices);
    let mut utilities = Vec::with_capacity(n);
    for (i, d) in econ.drivers.iter().enumerate() {
        let path = &dispatch.paths[i];
        let pay: Money = path.legs.iter().map(|l| prices.get(l.trip).clamp_nonneg()).sum();
        let cost = path_cost(econ, d, &path.path()).unwrap_or(Money::ZERO);
        let plan_value = pay - cost;
        utilities.push(plan_value);
        let best = best_driver_value(&values, d);
        if best > plan_value {
            report.driver_br_violations.push(DriverViolation {
                driver: i,
                best,
                plan_value,
            });
        }
        for leg in &path.legs {
            if leg.rider.is_none() && prices.get(leg.trip) > Money::ZERO {
                report
                    .excess_supply_price_violations
                    .push((leg.trip, prices.get(leg.trip)));
            }
        }
    }

    // Envy-freeness.
    for i in 0..n {
        for k in i + 1..n {
            if econ.drivers[i] == econ.drivers[k] && utilities[i] != utilities[k] {
                report.envy_violations.push(format!(
                    "drivers {i} and {k} share a type but earn {} and {}",
                    utilities[i], utilities[k]
                ));
            }
        }
    }
    for j in 0..m {
        let uj = if dispatch.pickups[j] {
            econ.riders[j].value - rider_pay(j)
        } else {
            Money::ZERO
        };
        for k in 0..m {
            if k == j || econ.riders[k].trip() != econ.riders[j].trip() || !dispatch.pickups[k] {
                continue;
            }
            let alt = econ.riders[j].value - rider_pay(k);
            if alt > uj {
                report
                    .envy_violations
                    .push(format!("rider {j} envies rider {k}: {alt} > {uj}"));
            }
        }
    }

    // Budget balance.
    let riders_total: Money = (0..m).map(rider_pay).sum();
    let drivers_total: Money = dispatch
        .paths
        .iter()
        .flat_map(|p| p.legs.iter())
        .map(|l| prices.get(l.trip))
        .sum();
    report.budget_delta = riders_total - drivers_total;
    report
}
