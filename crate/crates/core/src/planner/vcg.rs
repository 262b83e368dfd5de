use serde::{Deserialize, Serialize};

use super::plan::{plan_from_flow, PlanKind};
use super::verify::verify_outcome;
use crate::error::{Error, Result};
use crate::flow::{build_network, decompose_flow, solve_economy, solve_min_cost_flow, EdgeClass};
use crate::market::Economy;
use crate::money::Money;

/// Rider-side VCG price of rider `j`: the welfare the others lose because
/// the rider is served, `ω(D, R∖j) − (ω(D, R) − v_j)`.
///
/// Defined for riders served in the engine's optimal dispatch; returns
/// [`Error::RiderNotServed`] otherwise.
pub fn rider_vcg_price(econ: &Economy, j: usize) -> Result<Money> {
    if j >= econ.riders.len() {
        return Err(Error::InvalidParams(format!("no rider {j}")));
    }
    let s = solve_economy(econ)?;
    let dispatch = decompose_flow(&s.network, &s.flow, econ)?;
    if !dispatch.pickups[j] {
        return Err(Error::RiderNotServed(j));
    }
    let without = solve_economy(&econ.without_rider(j))?.welfare();
    Ok(without - (s.welfare() - econ.riders[j].value))
}

/// Evidence that the rider-side VCG price is the lowest equilibrium price of
/// the rider's trip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcgCheck {
    /// Rider id.
    pub rider: usize,
    /// The rider's VCG price.
    pub vcg: Money,
    /// Whether the rider is served when the rider's value is lowered to the VCG price.
    pub picked_in_modified: bool,
    /// Pessimal price of the rider's trip in the modified economy.
    pub modified_price: Money,
    /// Whether the modified plan is a CE of the original economy.
    pub modified_plan_is_ce: bool,
    /// Pessimal price of the rider's trip in the original economy.
    pub original_price: Money,
}

impl VcgCheck {
    /// All conditions: served at value `vcg`, modified price `≤ vcg`, a CE of
    /// the original economy, and the original pessimal price `≥ vcg`.
    pub fn holds(&self) -> bool {
        self.picked_in_modified
            && self.modified_price <= self.vcg
            && self.modified_plan_is_ce
            && self.original_price >= self.vcg
    }
}

/// Computes the VCG price of rider `j` and checks it against the equilibrium
/// prices: lower the rider's value to the VCG price, solve while breaking ties in the rider's
/// favour, and price the result pessimally.
pub fn rider_vcg_check(econ: &Economy, j: usize) -> Result<VcgCheck> {
    let vcg = rider_vcg_price(econ, j)?;
    let original = solve_economy(econ)?;
    let original_plan = plan_from_flow(econ, &original.network, &original.flow, PlanKind::DriverPessimal)?;
    let trip = econ.riders[j].trip();

    let mut modified = econ.clone();
    modified.riders[j].value = vcg;
    let net = build_network(&modified);
    let mut preferring = net.clone();
    for e in &mut preferring.edges {
        e.cost = e.cost * 2;
        if e.class == EdgeClass::Rider && e.rider == Some(j) {
            e.cost -= Money::from_minor(1);
        }
    }
    let mut flow = solve_min_cost_flow(&preferring)?;
    flow.cost = net.edges.iter().zip(&flow.flow).map(|(e, f)| e.cost * *f).sum();
    let plan = plan_from_flow(&modified, &net, &flow, PlanKind::DriverPessimal)?;
    let report = verify_outcome(econ, &plan.dispatch, &plan.prices);
    Ok(VcgCheck {
        rider: j,
        vcg,
        picked_in_modified: plan.dispatch.pickups[j],
        modified_price: plan.prices.get(trip),
        modified_plan_is_ce: report.is_ce(),
        original_price: original_plan.prices.get(trip),
    })
}
