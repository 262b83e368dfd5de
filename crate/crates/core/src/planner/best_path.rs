use super::plan::PriceTable;
use crate::market::{DriverType, Economy, Location, Time, Trip};
use crate::money::Money;

/// Best continuation value `V[t][a]` of an available driver at `(a, t)` under
/// `prices`, by backward recursion:
/// `V(a,T) = 0`, `V(a,t) = max(max_b { max(p,0) − c + V(b, t+d) }, −κ_{T−t})`.
#[allow(clippy::needless_range_loop)] // `b` also names the destination of the trip
pub fn best_path_values(econ: &Economy, prices: &PriceTable) -> Vec<Vec<Money>> {
    let l = econ.num_locations();
    let t_max = econ.horizon;
    let mut v = vec![vec![Money::ZERO; l]; t_max + 1];
    for t in (0..t_max).rev() {
        for a in 0..l {
            let mut best = -econ.exit_cost(t_max - t);
            for b in 0..l {
                let trip = Trip::new(a, b, t);
                if !econ.is_feasible_trip(trip) {
                    continue;
                }
                let cand = prices.get(trip).clamp_nonneg() - econ.cost_of(trip) + v[econ.arrival(trip)][b];
                best = best.max(cand);
            }
            v[t][a] = best;
        }
    }
    v
}

/// Best continuation value of an available driver at `(a, t)`.
pub fn best_path_value(econ: &Economy, prices: &PriceTable, a: Location, t: Time) -> Money {
    best_path_values(econ, prices)[t][a]
}

/// Best utility a driver of the given type can obtain under `prices`
/// (a driver who has not entered may decline for 0).
pub fn best_driver_value(values: &[Vec<Money>], driver: &DriverType) -> Money {
    let v = values[driver.time][driver.location];
    if driver.entered {
        v
    } else {
        v.max(Money::ZERO)
    }
}
