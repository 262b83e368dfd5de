use serde::{Deserialize, Serialize};

use super::{any_deviation, Mechanism, StepDecision};
use crate::error::Result;
use crate::market::{shift_economy, Action, Economy, PlatformState, ShiftedEconomy, Trip};
use crate::money::Money;
use crate::planner::{plan_driver_optimal, plan_driver_pessimal, Plan, PlanKind};

/// When a plan-executing mechanism recomputes its plan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReplanPolicy {
    /// Replan in the period after any driver deviates.
    OnDeviation,
    /// Replan every period.
    Always,
    /// Never replan; off-plan drivers are dispatched to exit.
    Never,
}

#[derive(Clone, Debug)]
struct ActivePlan {
    plan: Plan,
    shifted: ShiftedEconomy,
}

/// Executes a CE plan computed on the remaining economy and, depending on
/// the policy, recomputes it.
///
/// With [`PlanKind::DriverPessimal`] and [`ReplanPolicy::OnDeviation`] this is
/// the spatio-temporal pricing mechanism.
#[derive(Clone, Debug)]
pub struct StpMechanism {
    kind: PlanKind,
    policy: ReplanPolicy,
    active: Option<ActivePlan>,
    needs_replan: bool,
}

impl StpMechanism {
    /// A mechanism computing plans of `kind` and replanning per `policy`.
    pub fn new(kind: PlanKind, policy: ReplanPolicy) -> Self {
        StpMechanism {
            kind,
            policy,
            active: None,
            needs_replan: false,
        }
    }

    /// The plan currently executed, with its time offset.
    pub fn current_plan(&self) -> Option<(&Plan, usize)> {
        self.active.as_ref().map(|a| (&a.plan, a.shifted.offset))
    }

    fn replan(&mut self, econ: &Economy, state: &PlatformState) -> Result<()> {
        let shifted = shift_economy(econ, state)?;
        let plan = match self.kind {
            PlanKind::DriverPessimal => plan_driver_pessimal(&shifted.economy)?,
            PlanKind::DriverOptimal => plan_driver_optimal(&shifted.economy)?,
        };
        self.active = Some(ActivePlan { plan, shifted });
        self.needs_replan = false;
        Ok(())
    }
}

impl Mechanism for StpMechanism {
    fn name(&self) -> String {
        let kind = match self.kind {
            PlanKind::DriverPessimal => "pessimal",
            PlanKind::DriverOptimal => "optimal",
        };
        match self.policy {
            ReplanPolicy::OnDeviation if self.kind == PlanKind::DriverPessimal => "stp".into(),
            ReplanPolicy::OnDeviation => "driver-optimal".into(),
            ReplanPolicy::Always => format!("always-replan-{kind}"),
            ReplanPolicy::Never => format!("static-{kind}"),
        }
    }

    fn decide(&mut self, econ: &Economy, state: &PlatformState) -> Result<StepDecision> {
        let t = state.time;
        let fresh = self.active.is_none();
        let replan = fresh || self.policy == ReplanPolicy::Always || self.needs_replan;
        if replan {
            self.replan(econ, state)?;
        }
        let active = self.active.as_ref().expect("a plan exists after replanning");
        let local_t = t - active.shifted.offset;
        let n = state.drivers.len();
        let mut actions = vec![Action::Idle; n];
        let mut payments = vec![Money::ZERO; n];
        for i in state.acting_drivers() {
            let at = state.acting_location(i).expect("acting driver has a location");
            let leg = active
                .shifted
                .local_driver(i)
                .and_then(|k| active.plan.dispatch.paths[k].leg_at(local_t))
                .filter(|leg| leg.trip.origin == at);
            match leg {
                Some(leg) => {
                    actions[i] = Action::Trip {
                        dest: leg.trip.dest,
                        rider: leg.rider.map(|r| active.shifted.rider_ids[r]),
                    };
                    payments[i] = active.plan.prices.get(leg.trip).clamp_nonneg();
                }
                None => actions[i] = Action::Exit,
            }
        }
        let prices = active
            .plan
            .prices
            .iter()
            .filter(|(trip, _)| trip.start == local_t)
            .map(|(trip, p)| (Trip::new(trip.origin, trip.dest, t), p))
            .collect();
        Ok(StepDecision {
            actions,
            payments,
            prices,
            replanned: replan && !(fresh && t == 0),
        })
    }

    fn observe(&mut self, _econ: &Economy, state: &PlatformState, decision: &StepDecision, actions: &[Action]) {
        if self.policy == ReplanPolicy::OnDeviation && any_deviation(state, decision, actions) {
            self.needs_replan = true;
        }
    }

    fn clone_box(&self) -> Box<dyn Mechanism> {
        Box::new(self.clone())
    }
}

/// The spatio-temporal pricing mechanism: driver-pessimal CE plan, replanned
/// after any deviation.
pub fn stp_mechanism() -> Box<dyn Mechanism> {
    Box::new(StpMechanism::new(PlanKind::DriverPessimal, ReplanPolicy::OnDeviation))
}

/// Recomputes a CE plan of `kind` every period, whether or not anyone deviated.
pub fn always_replan_mechanism(kind: PlanKind) -> Box<dyn Mechanism> {
    Box::new(StpMechanism::new(kind, ReplanPolicy::Always))
}

/// Announces a CE plan of `kind` at the start and never updates it.
pub fn static_ce_mechanism(kind: PlanKind) -> Box<dyn Mechanism> {
    Box::new(StpMechanism::new(kind, ReplanPolicy::Never))
}

/// STP's control flow with driver-optimal CE plans.
pub fn driver_optimal_mechanism() -> Box<dyn Mechanism> {
    Box::new(StpMechanism::new(PlanKind::DriverOptimal, ReplanPolicy::OnDeviation))
}
