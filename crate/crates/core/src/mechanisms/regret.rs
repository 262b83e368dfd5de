use serde::{Deserialize, Serialize};

use super::simulate::{simulate_from, simulate_inner, Scripted, Snapshot, Straightforward};
use super::Mechanism;
use crate::error::Result;
use crate::market::{available_actions, initial_state, Action, Economy};
use crate::money::Money;

/// Which single deviations the regret search considers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviationScope {
    /// Every available action other than the dispatched one.
    #[default]
    Full,
    /// Relocations and exits only: picking up a rider who was not
    /// dispatched to the driver is not considered. Cheaper, and a lower bound.
    NoUndispatchedPickups,
}

/// Single-deviation regret of every driver: the largest gain from deviating
/// once (then following the dispatch) while everyone else is
/// straightforward, floored at 0.
///
/// `mech` is used as a prototype and is not modified; each branch restarts
/// from a clone of the mechanism taken just before the deviation period.
pub fn all_regrets(econ: &Economy, mech: &dyn Mechanism, scope: DeviationScope) -> Result<Vec<Money>> {
    regrets_for(econ, mech, scope, None)
}

/// Single-deviation regret of driver `driver`; see [`all_regrets`].
pub fn single_deviation_regret(
    econ: &Economy,
    mech: &dyn Mechanism,
    driver: usize,
    scope: DeviationScope,
) -> Result<Money> {
    Ok(regrets_for(econ, mech, scope, Some(driver))?[driver])
}

fn regrets_for(
    econ: &Economy,
    proto: &dyn Mechanism,
    scope: DeviationScope,
    only: Option<usize>,
) -> Result<Vec<Money>> {
    let n = econ.num_drivers();
    let mut snapshots: Vec<Snapshot> = Vec::new();
    let mut base_mech = proto.clone_box();
    let baseline = simulate_inner(
        econ,
        &initial_state(econ),
        base_mech.as_mut(),
        &Straightforward,
        Some(&mut snapshots),
    )?;
    let mut regret = vec![Money::ZERO; n];
    for (k, (state, snap)) in snapshots.iter().enumerate() {
        let t = state.time;
        let dispatched: Vec<Action> = {
            let mut d = vec![Action::Idle; n];
            for r in &baseline.steps[k] {
                d[r.driver] = r.dispatched;
            }
            d
        };
        for i in state.acting_drivers() {
            if only.is_some_and(|o| o != i) {
                continue;
            }
            let reserved: Vec<usize> = (0..n)
                .filter(|&q| q != i)
                .filter_map(|q| match dispatched[q] {
                    Action::Trip { rider: Some(j), .. } => Some(j),
                    _ => None,
                })
                .collect();
            let base_value = baseline.utility_from(i, t);
            for alpha in available_actions(econ, state, i, &reserved) {
                if alpha == dispatched[i] {
                    continue;
                }
                if scope == DeviationScope::NoUndispatchedPickups
                    && matches!(alpha, Action::Trip { rider: Some(_), .. })
                {
                    continue;
                }
                let mut branch = snap.clone_box();
                let trace = simulate_from(econ, state, branch.as_mut(), &Scripted::single(i, t, alpha))?;
                let gain = trace.utility_from(i, t) - base_value;
                regret[i] = regret[i].max(gain);
            }
        }
    }
    Ok(regret)
}
