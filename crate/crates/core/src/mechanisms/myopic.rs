use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::simulate::{run_simulation, Straightforward};
use super::{Mechanism, StepDecision};
use crate::error::Result;
use crate::flow::Dispatch;
use crate::market::{Action, ActionPath, DriverState, Economy, Leg, PlatformState, Trip};
use crate::money::Money;
use crate::planner::PriceTable;

/// Myopic pricing: each `(location, period)` market is cleared on its own.
///
/// Riders with non-negative surplus per period of driving,
/// `σ_j = (v_j − c_j) / dist_j`, are served in decreasing `σ` order (ties by
/// rider id) by the drivers present (in id order). The clearing rate `ρ` is 0
/// when every such rider is served and otherwise the `σ` of the best unserved
/// one; the trip price is `⌈ρ · dist(a,b)⌉ + c_{a,b,t}`. Drivers left without
/// a rider pick a destination within reach uniformly at random and relocate
/// there if the trip costs no more than leaving, otherwise they exit.
#[derive(Clone, Debug)]
pub struct MyopicMechanism {
    seed: u64,
}

impl MyopicMechanism {
    /// A myopic mechanism whose random relocations derive from `seed`.
    pub fn new(seed: u64) -> Self {
        MyopicMechanism { seed }
    }
}

/// A myopic mechanism seeded with `seed`.
pub fn myopic_mechanism(seed: u64) -> Box<dyn Mechanism> {
    Box::new(MyopicMechanism::new(seed))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A rate `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug)]
struct Rate {
    num: i64,
    den: i64,
}

impl Rate {
    fn cmp(self, other: Rate) -> Ordering {
        (i128::from(self.num) * i128::from(other.den)).cmp(&(i128::from(other.num) * i128::from(self.den)))
    }

    /// `⌈rate · d⌉` for a non-negative rate.
    fn ceil_times(self, d: i64) -> i64 {
        let x = i128::from(self.num) * i128::from(d);
        let den = i128::from(self.den);
        ((x + den - 1).div_euclid(den)) as i64
    }
}

impl Mechanism for MyopicMechanism {
    fn name(&self) -> String {
        "myopic".into()
    }

    fn decide(&mut self, econ: &Economy, state: &PlatformState) -> Result<StepDecision> {
        let t = state.time;
        let n = state.drivers.len();
        let mut actions = vec![Action::Idle; n];
        let mut payments = vec![Money::ZERO; n];
        let mut prices = Vec::new();
        for a in 0..econ.num_locations() {
            let drivers: Vec<usize> = state
                .acting_drivers()
                .filter(|&i| state.acting_location(i) == Some(a))
                .collect();
            let mut candidates: Vec<(usize, Rate)> = econ
                .riders
                .iter()
                .enumerate()
                .filter(|(_, r)| r.origin == a && r.time == t)
                .map(|(j, r)| {
                    let surplus = r.value - econ.cost_of(r.trip());
                    let d = econ.dist(r.origin, r.dest) as i64;
                    (
                        j,
                        Rate {
                            num: surplus.minor(),
                            den: d,
                        },
                    )
                })
                .filter(|(_, s)| s.num >= 0)
                .collect();
            candidates.sort_by(|x, y| y.1.cmp(x.1).then(x.0.cmp(&y.0)));
            let k = drivers.len().min(candidates.len());
            let rho = candidates.get(k).map(|c| c.1).unwrap_or(Rate { num: 0, den: 1 });
            for b in 0..econ.num_locations() {
                let trip = Trip::new(a, b, t);
                if econ.is_feasible_trip(trip) {
                    let p = Money::from_minor(rho.ceil_times(econ.dist(a, b) as i64)) + econ.cost_of(trip);
                    prices.push((trip, p));
                }
            }
            let price_of = |b: usize| {
                prices
                    .iter()
                    .find(|(tr, _)| tr.origin == a && tr.dest == b)
                    .map(|(_, p)| *p)
                    .unwrap_or(Money::ZERO)
            };
            for (&i, &(j, _)) in drivers.iter().zip(&candidates) {
                let dest = econ.riders[j].dest;
                actions[i] = Action::Trip { dest, rider: Some(j) };
                payments[i] = price_of(dest);
            }
            for &i in &drivers[k..] {
                let reachable: Vec<usize> = (0..econ.num_locations())
                    .filter(|&b| econ.is_feasible_trip(Trip::new(a, b, t)))
                    .collect();
                let leave = match state.drivers[i] {
                    DriverState::Available { .. } => econ.exit_cost(econ.horizon - t),
                    _ => Money::ZERO,
                };
                actions[i] = Action::Exit;
                if !reachable.is_empty() {
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(splitmix(self.seed ^ splitmix((t as u64) << 32 ^ i as u64)));
                    let b = reachable[rng.gen_range(0..reachable.len())];
                    if econ.trip_cost(a, b, t) <= leave {
                        actions[i] = Action::Trip { dest: b, rider: None };
                    }
                }
            }
        }
        Ok(StepDecision {
            actions,
            payments,
            prices,
            replanned: false,
        })
    }

    fn observe(&mut self, _econ: &Economy, _state: &PlatformState, _decision: &StepDecision, _actions: &[Action]) {}

    fn clone_box(&self) -> Box<dyn Mechanism> {
        Box::new(self.clone())
    }
}

/// The outcome of straightforward play under the myopic mechanism, viewed as
/// a plan: realised pick-ups and paths, and every posted price.
pub fn myopic_plan(econ: &Economy, seed: u64) -> Result<(Dispatch, PriceTable)> {
    let mut mech = MyopicMechanism::new(seed);
    let trace = run_simulation(econ, &mut mech, &Straightforward)?;
    let mut paths = vec![ActionPath::default(); econ.num_drivers()];
    let mut enters = vec![false; econ.num_drivers()];
    for r in trace.steps.iter().flatten() {
        if let Action::Trip { dest, rider } = r.taken {
            let origin = trace.states[r.t - trace.start]
                .acting_location(r.driver)
                .expect("a driver who drove was acting");
            paths[r.driver].legs.push(Leg {
                trip: Trip::new(origin, dest, r.t),
                rider,
            });
            enters[r.driver] = true;
        }
    }
    for (i, d) in econ.drivers.iter().enumerate() {
        enters[i] |= d.entered;
    }
    let prices = PriceTable::from_entries(trace.prices.iter().flatten().copied());
    Ok((
        Dispatch {
            pickups: trace.served,
            paths,
            enters,
        },
        prices,
    ))
}
