use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::market::{Economy, Trip};
use crate::money::Money;

/// Bounds for [`random_economy`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomEconomyParams {
    /// Maximum number of drivers (at least 1 is generated).
    pub max_drivers: usize,
    /// Maximum number of riders.
    pub max_riders: usize,
    /// Maximum number of locations (at least 1).
    pub max_locations: usize,
    /// Maximum horizon (at least 1).
    pub max_horizon: usize,
}

impl Default for RandomEconomyParams {
    fn default() -> Self {
        RandomEconomyParams {
            max_drivers: 3,
            max_riders: 6,
            max_locations: 3,
            max_horizon: 3,
        }
    }
}

/// A small random economy: asymmetric distances in `{1, 2}`, per-period trip
/// cost and early-exit rate in `{0, 1, 2}`, a mix of entered and not-yet-entered
/// drivers, and rider values on a coarse grid `{0, 1, …, 12}` so that ties occur.
pub fn random_economy(params: &RandomEconomyParams, seed: u64) -> Economy {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = rng.gen_range(1..=params.max_locations.max(1));
    let horizon = rng.gen_range(1..=params.max_horizon.max(1));
    let dist: Vec<Vec<usize>> = (0..l)
        .map(|a| (0..l).map(|b| if a == b { 1 } else { rng.gen_range(1..=2) }).collect())
        .collect();
    let names: Vec<String> = (0..l).map(|k| ((b'A' + k as u8) as char).to_string()).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let rate = Money::from_units(rng.gen_range(0..=2));
    let exit_rate = Money::from_units(rng.gen_range(0..=2));
    let mut e = Economy::new(&name_refs, dist, horizon, rate, exit_rate);
    let n = rng.gen_range(1..=params.max_drivers.max(1));
    for _ in 0..n {
        let entered = rng.gen_bool(0.7);
        let loc = rng.gen_range(0..l);
        let time = rng.gen_range(0..horizon);
        e.add_driver(entered, loc, time);
    }
    let trips = e.feasible_trips();
    let m = rng.gen_range(0..=params.max_riders);
    for _ in 0..m {
        let Trip { origin, dest, start } = trips[rng.gen_range(0..trips.len())];
        let v = Money::from_units(rng.gen_range(0..=12));
        e.add_rider(origin, dest, start, v);
    }
    e
}
