//! Dynamic mechanisms, the simulation loop, single-deviation regret and
//! dynamic-VCG payments.
//!
//! A [`Mechanism`] is asked every period for a dispatch (one action and one
//! conditional payment per driver, plus posted trip prices) and then told
//! what the drivers actually did. Drivers are paid only when they take the
//! dispatched action.

mod dynamic_vcg;
mod myopic;
mod regret;
mod simulate;
mod stp;

pub use dynamic_vcg::dynamic_vcg_payments;
pub use myopic::{myopic_mechanism, myopic_plan, MyopicMechanism};
pub use regret::{all_regrets, single_deviation_regret, DeviationScope};
pub use simulate::{
    run_simulation, simulate_from, RiderCharge, Scripted, StepRecord, Straightforward, Strategy, Trace,
};
pub use stp::{
    always_replan_mechanism, driver_optimal_mechanism, static_ce_mechanism, stp_mechanism, ReplanPolicy, StpMechanism,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::market::{Action, Economy, PlatformState, Trip};
use crate::money::Money;

/// What a mechanism decides at the start of a period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDecision {
    /// Dispatched action per driver (`Idle` for drivers who do not act).
    pub actions: Vec<Action>,
    /// Payment per driver, made only if the driver takes the dispatched action.
    pub payments: Vec<Money>,
    /// Posted prices of trips starting this period.
    pub prices: Vec<(Trip, Money)>,
    /// Whether the mechanism recomputed its plan this period.
    pub replanned: bool,
}

/// A dynamic ridesharing mechanism.
pub trait Mechanism: Send {
    /// Short identifier, e.g. `stp` or `myopic`.
    fn name(&self) -> String;

    /// Dispatch and payments for the period `state.time`.
    fn decide(&mut self, econ: &Economy, state: &PlatformState) -> Result<StepDecision>;

    /// Observes the actions actually taken after [`Mechanism::decide`].
    fn observe(&mut self, econ: &Economy, state: &PlatformState, decision: &StepDecision, actions: &[Action]);

    /// Clones the mechanism together with its internal state.
    fn clone_box(&self) -> Box<dyn Mechanism>;
}

impl Clone for Box<dyn Mechanism> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

/// Whether any acting driver took an action other than the dispatched one.
pub(crate) fn any_deviation(state: &PlatformState, decision: &StepDecision, actions: &[Action]) -> bool {
    state.acting_drivers().any(|i| actions[i] != decision.actions[i])
}
