use super::simulate::{run_simulation, Straightforward};
use super::stp::stp_mechanism;
use crate::error::Result;
use crate::flow::solve_economy;
use crate::market::{shift_economy, Economy, PlatformState};
use crate::money::Money;

/// Per-period dynamic-VCG payments `pay[i][t]` along straightforward
/// optimal play.
///
/// The payment to driver `i` at `t` is the welfare the others realise in
/// period `t` (rider values minus other drivers' costs) plus the change in
/// the others' optimal continuation welfare without `i`,
/// `W₋ᵢ(s_{t+1}) − W₋ᵢ(s_t)`. Summed over periods and net of the driver's own
/// costs, this is the driver's welfare contribution `ω(D,R) − ω(D∖{i},R)`.
pub fn dynamic_vcg_payments(econ: &Economy) -> Result<Vec<Vec<Money>>> {
    let mut mech = stp_mechanism();
    let trace = run_simulation(econ, mech.as_mut(), &Straightforward)?;
    let n = econ.num_drivers();
    let t_max = econ.horizon;
    let mut without: Vec<Vec<Money>> = vec![vec![Money::ZERO; t_max + 1]; n];
    for (t, state) in trace.states.iter().enumerate().take(t_max) {
        for (i, w) in without.iter_mut().enumerate() {
            w[t] = welfare_without(econ, state, i)?;
        }
    }
    let mut pay = vec![vec![Money::ZERO; t_max]; n];
    for t in 0..t_max {
        let records = &trace.steps[t];
        let values: Money = records
            .iter()
            .filter_map(|r| match r.taken {
                crate::market::Action::Trip { rider: Some(j), .. } => Some(econ.riders[j].value),
                _ => None,
            })
            .sum();
        for i in 0..n {
            let others_cost: Money = records.iter().filter(|r| r.driver != i).map(|r| r.cost).sum();
            pay[i][t] = values - others_cost + without[i][t + 1] - without[i][t];
        }
    }
    Ok(pay)
}

fn welfare_without(econ: &Economy, state: &PlatformState, i: usize) -> Result<Money> {
    let shifted = shift_economy(econ, state)?;
    let sub = match shifted.local_driver(i) {
        Some(k) => shifted.economy.without_driver(k),
        None => shifted.economy,
    };
    Ok(solve_economy(&sub)?.welfare())
}
