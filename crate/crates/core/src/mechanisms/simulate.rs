use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Mechanism;
use crate::error::{Error, Result};
use crate::market::{
    apply_actions, available_actions, initial_state, step_cost, Action, Economy, PlatformState, Time, Trip,
};
use crate::money::Money;

/// How a driver picks an action given the dispatch.
pub trait Strategy: Send + Sync {
    /// Chooses an action for driver `i`; must be one of `available`.
    fn choose(&self, i: usize, state: &PlatformState, dispatched: Action, available: &[Action]) -> Action;
}

/// Always follows the dispatch.
#[derive(Clone, Copy, Debug, Default)]
pub struct Straightforward;

impl Strategy for Straightforward {
    fn choose(&self, _i: usize, _state: &PlatformState, dispatched: Action, _available: &[Action]) -> Action {
        dispatched
    }
}

/// Follows the dispatch except for a list of `(driver, period, action)` overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scripted {
    /// Overrides.
    pub overrides: Vec<(usize, Time, Action)>,
}

impl Scripted {
    /// A single deviation of driver `i` at period `t`.
    pub fn single(i: usize, t: Time, action: Action) -> Self {
        Scripted {
            overrides: vec![(i, t, action)],
        }
    }
}

impl Strategy for Scripted {
    fn choose(&self, i: usize, state: &PlatformState, dispatched: Action, _available: &[Action]) -> Action {
        self.overrides
            .iter()
            .find(|(d, t, _)| *d == i && *t == state.time)
            .map(|(_, _, a)| *a)
            .unwrap_or(dispatched)
    }
}

/// One acting driver's period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    /// Period.
    pub t: Time,
    /// Driver id.
    pub driver: usize,
    /// Dispatched action.
    pub dispatched: Action,
    /// Action taken.
    pub taken: Action,
    /// Payment received (zero unless the dispatched action was taken).
    pub payment: Money,
    /// Trip or exit cost incurred.
    pub cost: Money,
}

/// A rider paying for a trip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiderCharge {
    /// Period.
    pub t: Time,
    /// Rider id.
    pub rider: usize,
    /// Driver who carried the rider.
    pub driver: usize,
    /// Amount charged.
    pub amount: Money,
}

/// Full record of a simulation run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    /// Mechanism name.
    pub mechanism: String,
    /// First simulated period.
    pub start: Time,
    /// States `s_start, …, s_T`.
    pub states: Vec<PlatformState>,
    /// Per-period records of acting drivers.
    pub steps: Vec<Vec<StepRecord>>,
    /// Posted prices per period.
    pub prices: Vec<Vec<(Trip, Money)>>,
    /// Rider charges.
    pub charges: Vec<RiderCharge>,
    /// Periods in which the mechanism replanned.
    pub replans: Vec<Time>,
    /// Whether each rider was carried.
    pub served: Vec<bool>,
    /// Realised utility per driver: payments minus costs.
    pub utilities: Vec<Money>,
    /// Realised welfare: carried rider values minus all costs.
    pub welfare: Money,
}

impl Trace {
    /// Driver `i`'s payments minus costs from period `t` onwards.
    pub fn utility_from(&self, i: usize, t: Time) -> Money {
        self.steps
            .iter()
            .flatten()
            .filter(|r| r.driver == i && r.t >= t)
            .map(|r| r.payment - r.cost)
            .sum()
    }

    /// Total rider charges.
    pub fn total_charges(&self) -> Money {
        self.charges.iter().map(|c| c.amount).sum()
    }

    /// Total driver payments.
    pub fn total_payments(&self) -> Money {
        self.steps.iter().flatten().map(|r| r.payment).sum()
    }

    /// Scripted overrides reproducing every deviation in this trace.
    pub fn deviations(&self) -> Scripted {
        Scripted {
            overrides: self
                .steps
                .iter()
                .flatten()
                .filter(|r| r.taken != r.dispatched)
                .map(|r| (r.driver, r.t, r.taken))
                .collect(),
        }
    }

    /// Text dump: `step`, `charge` and `replan` records, then per-driver utilities.
    ///
    /// ```text
    /// step 0 2 to:2+r2 to:2+r2 0.00 10.00
    /// charge 0 2 2 0.00
    /// replan 1
    /// utility 2 50.00
    /// welfare 215.00
    /// ```
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mechanism {}", self.mechanism);
        for (k, steps) in self.steps.iter().enumerate() {
            let t = self.start + k;
            if self.replans.contains(&t) {
                let _ = writeln!(out, "replan {t}");
            }
            for r in steps {
                let _ = writeln!(
                    out,
                    "step {} {} {} {} {} {}",
                    r.t, r.driver, r.dispatched, r.taken, r.payment, r.cost
                );
            }
            for c in self.charges.iter().filter(|c| c.t == t) {
                let _ = writeln!(out, "charge {} {} {} {}", c.t, c.rider, c.driver, c.amount);
            }
        }
        for (i, u) in self.utilities.iter().enumerate() {
            let _ = writeln!(out, "utility {i} {u}");
        }
        let _ = writeln!(out, "welfare {}", self.welfare);
        out
    }
}

/// Runs `mech` from period 0 with every driver following `strategy`.
pub fn run_simulation(econ: &Economy, mech: &mut dyn Mechanism, strategy: &dyn Strategy) -> Result<Trace> {
    simulate_from(econ, &initial_state(econ), mech, strategy)
}

/// Runs `mech` from `state` to the horizon.
pub fn simulate_from(
    econ: &Economy,
    state: &PlatformState,
    mech: &mut dyn Mechanism,
    strategy: &dyn Strategy,
) -> Result<Trace> {
    simulate_inner(econ, state, mech, strategy, None)
}

/// A mechanism snapshot taken just before it decides at a state.
pub(crate) type Snapshot = (PlatformState, Box<dyn Mechanism>);

pub(crate) fn simulate_inner(
    econ: &Economy,
    state: &PlatformState,
    mech: &mut dyn Mechanism,
    strategy: &dyn Strategy,
    mut snapshots: Option<&mut Vec<Snapshot>>,
) -> Result<Trace> {
    let n = econ.num_drivers();
    let mut trace = Trace {
        mechanism: mech.name(),
        start: state.time,
        states: vec![state.clone()],
        steps: Vec::new(),
        prices: Vec::new(),
        charges: Vec::new(),
        replans: Vec::new(),
        served: vec![false; econ.riders.len()],
        utilities: vec![Money::ZERO; n],
        welfare: Money::ZERO,
    };
    let mut state = state.clone();
    while state.time < econ.horizon {
        let t = state.time;
        if let Some(s) = snapshots.as_deref_mut() {
            s.push((state.clone(), mech.clone_box()));
        }
        let decision = mech.decide(econ, &state)?;
        if decision.replanned {
            trace.replans.push(t);
        }
        let mut taken = vec![Action::Idle; n];
        let mut records = Vec::new();
        for i in state.acting_drivers() {
            let dispatched = decision.actions[i];
            let reserved: Vec<usize> = (0..n)
                .filter(|&k| k != i)
                .filter_map(|k| match decision.actions[k] {
                    Action::Trip { rider: Some(j), .. } => Some(j),
                    _ => None,
                })
                .collect();
            let available = available_actions(econ, &state, i, &reserved);
            let action = strategy.choose(i, &state, dispatched, &available);
            if !available.contains(&action) {
                return Err(Error::IllegalAction {
                    driver: i,
                    time: t,
                    reason: format!("{action} is not available"),
                });
            }
            taken[i] = action;
            let payment = if action == dispatched {
                decision.payments[i]
            } else {
                Money::ZERO
            };
            let cost = step_cost(econ, &state, i, action);
            if let Action::Trip { rider: Some(j), .. } = action {
                trace.served[j] = true;
                trace.welfare += econ.riders[j].value;
                if action == dispatched {
                    trace.charges.push(RiderCharge {
                        t,
                        rider: j,
                        driver: i,
                        amount: payment,
                    });
                }
            }
            trace.welfare -= cost;
            trace.utilities[i] += payment - cost;
            records.push(StepRecord {
                t,
                driver: i,
                dispatched,
                taken: action,
                payment,
                cost,
            });
        }
        mech.observe(econ, &state, &decision, &taken);
        state = apply_actions(econ, &state, &taken)?;
        trace.steps.push(records);
        trace.prices.push(decision.prices);
        trace.states.push(state.clone());
    }
    Ok(trace)
}
