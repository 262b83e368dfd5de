use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::market::Economy;
use crate::money::Money;

/// The three experiment settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    /// End of a sporting event: a burst of demand leaving the venue at `t = 1`.
    Event,
    /// Morning rush hour: steady commuter flow from C to B on top of background demand.
    Rush,
    /// Downtown and airport with unbalanced flows between them.
    Airport,
}

impl Scenario {
    /// All scenarios.
    pub const ALL: [Scenario; 3] = [Scenario::Event, Scenario::Rush, Scenario::Airport];

    /// Short name used in paths and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Event => "event",
            Scenario::Rush => "rush",
            Scenario::Airport => "airport",
        }
    }

    /// Parses a short name.
    pub fn from_name(s: &str) -> Option<Scenario> {
        Scenario::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Name of the swept quantity.
    pub fn sweep_name(self) -> &'static str {
        match self {
            Scenario::Event => "n_cb1",
            Scenario::Rush => "n_cb",
            Scenario::Airport => "n_da",
        }
    }

    /// Largest admissible sweep value.
    pub fn max_sweep(self) -> u32 {
        match self {
            Scenario::Event | Scenario::Rush => u32::MAX,
            Scenario::Airport => 40,
        }
    }

    /// Default sweep: `0..=100` step 20 (`0..=40` step 8 for the airport).
    pub fn default_sweep(self) -> Vec<u32> {
        match self {
            Scenario::Event | Scenario::Rush => (0..=100).step_by(20).collect(),
            Scenario::Airport => (0..=40).step_by(8).collect(),
        }
    }
}

/// Draws an exponential value with the given mean (in whole units) by
/// inverse CDF, rounded half-up to cents.
fn exp_value(rng: &mut ChaCha8Rng, mean: f64) -> Money {
    let u: f64 = rng.gen();
    Money::from_units_f64_round(-mean * (1.0 - u).ln())
}

fn base(locations: &[&str], dist: Vec<Vec<usize>>, horizon: usize) -> Economy {
    Economy::new(locations, dist, horizon, Money::from_units(3), Money::from_units(1))
}

/// End-of-event economy: locations A, B, C at unit distance, `T = 2`, trips
/// cost 3 per period and leaving early 1 per period. 15 drivers wait at the
/// venue C and 10 at B; 20 riders want (C,B,0), 10 want (B,C,0), 10 want
/// (B,A,0), and `n` leave the venue on (C,B,1). Values are exponential with
/// mean 10. Riders for larger `n` extend those for smaller `n`.
pub fn gen_scenario_event(n: u32, seed: u64) -> Economy {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = base(&["A", "B", "C"], vec![vec![1; 3]; 3], 2);
    let (a, b, c) = (0, 1, 2);
    for _ in 0..15 {
        e.add_driver(true, c, 0);
    }
    for _ in 0..10 {
        e.add_driver(true, b, 0);
    }
    for (o, d, count) in [(c, b, 20), (b, c, 10), (b, a, 10)] {
        for _ in 0..count {
            let v = exp_value(&mut rng, 10.0);
            e.add_rider(o, d, 0, v);
        }
    }
    for _ in 0..n {
        let v = exp_value(&mut rng, 10.0);
        e.add_rider(c, b, 1, v);
    }
    e
}

/// Rush-hour economy: locations A, B, C at unit distance, `T = 20`, 10
/// drivers per location at `t = 0`, 100 background riders with uniform
/// origin, destination and start (values exponential, mean 10), and `n`
/// commuters C→B in every period (values exponential, mean 20).
pub fn gen_scenario_rush(n: u32, seed: u64) -> Economy {
    let t_max = 20;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = base(&["A", "B", "C"], vec![vec![1; 3]; 3], t_max);
    for loc in 0..3 {
        for _ in 0..10 {
            e.add_driver(true, loc, 0);
        }
    }
    for _ in 0..100 {
        let o = rng.gen_range(0..3);
        let d = rng.gen_range(0..3);
        let t = rng.gen_range(0..t_max);
        let v = exp_value(&mut rng, 10.0);
        e.add_rider(o, d, t, v);
    }
    for t in 0..t_max {
        for _ in 0..n {
            let v = exp_value(&mut rng, 20.0);
            e.add_rider(2, 1, t, v);
        }
    }
    e
}

/// Airport economy: downtown D and airport A, one period within a location
/// and two across, `T = 20`, 20 drivers at each location. Every period 40
/// riders travel within downtown (values exponential, mean 10); every period
/// in which a crossing can finish, `n` riders go D→A and `40 − n` go A→D
/// (values exponential, mean 40). Requires `n ≤ 40`.
pub fn gen_scenario_airport(n: u32, seed: u64) -> Result<Economy> {
    if n > 40 {
        return Err(Error::InvalidParams(format!("airport sweep value {n} exceeds 40")));
    }
    let t_max = 20;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = base(&["A", "D"], vec![vec![1, 2], vec![2, 1]], t_max);
    let (a, d) = (0, 1);
    for loc in [a, d] {
        for _ in 0..20 {
            e.add_driver(true, loc, 0);
        }
    }
    for t in 0..t_max {
        for _ in 0..40 {
            let v = exp_value(&mut rng, 10.0);
            e.add_rider(d, d, t, v);
        }
    }
    // Values for both directions are drawn for all 40 slots so that
    // economies for different `n` share their random draws.
    for t in 0..t_max - 1 {
        for k in 0..40 {
            let v = exp_value(&mut rng, 40.0);
            if k < n {
                e.add_rider(d, a, t, v);
            } else {
                e.add_rider(a, d, t, v);
            }
        }
    }
    Ok(e)
}

/// Generates the economy of `scenario` for sweep value `n`.
pub fn generate_scenario(scenario: Scenario, n: u32, seed: u64) -> Result<Economy> {
    match scenario {
        Scenario::Event => Ok(gen_scenario_event(n, seed)),
        Scenario::Rush => Ok(gen_scenario_rush(n, seed)),
        Scenario::Airport => gen_scenario_airport(n, seed),
    }
}
