use std::fmt;

use serde::{Deserialize, Serialize};

use super::economy::{Economy, Location, Time, Trip};
use crate::error::{Error, Result};
use crate::money::Money;

/// Per-driver state of the platform at the start of a period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DriverState {
    /// Not yet able to act: becomes available at `(location, time)`. Drivers
    /// who have not entered (`entered == false`) act at `time` by either
    /// entering with a trip or declining at no cost.
    NotEntered {
        /// Whether the driver is already committed to the platform.
        entered: bool,
        /// Entry location.
        location: Location,
        /// Entry period.
        time: Time,
    },
    /// Available to act at `(location, time)`.
    Available {
        /// Current location.
        location: Location,
        /// Current period.
        time: Time,
    },
    /// Driving a trip that has not finished yet.
    EnRoute {
        /// Trip origin.
        origin: Location,
        /// Trip destination.
        dest: Location,
        /// Trip start period.
        start: Time,
        /// Rider aboard, if any.
        rider: Option<usize>,
    },
    /// Left the platform (exited or never entered).
    Gone,
}

/// State of the whole platform at the start of period `time`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlatformState {
    /// Current period.
    pub time: Time,
    /// One state per driver id.
    pub drivers: Vec<DriverState>,
}

/// What a driver does in one period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Action {
    /// No decision this period (en route, gone, or not yet available).
    Idle,
    /// Exit the platform, or decline to enter.
    Exit,
    /// Drive to `dest`, optionally carrying a rider whose trip starts here and now.
    Trip {
        /// Destination.
        dest: Location,
        /// Rider carried, if any.
        rider: Option<usize>,
    },
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Idle => write!(f, "-"),
            Action::Exit => write!(f, "exit"),
            Action::Trip { dest, rider: None } => write!(f, "to:{dest}"),
            Action::Trip { dest, rider: Some(j) } => write!(f, "to:{dest}+r{j}"),
        }
    }
}

/// The platform state at period 0.
pub fn initial_state(econ: &Economy) -> PlatformState {
    PlatformState {
        time: 0,
        drivers: econ
            .drivers
            .iter()
            .map(|d| {
                if d.entered && d.time == 0 {
                    DriverState::Available {
                        location: d.location,
                        time: 0,
                    }
                } else {
                    DriverState::NotEntered {
                        entered: d.entered,
                        location: d.location,
                        time: d.time,
                    }
                }
            })
            .collect(),
    }
}

impl PlatformState {
    /// Location at which driver `i` must act this period, if the driver acts.
    pub fn acting_location(&self, i: usize) -> Option<Location> {
        match self.drivers[i] {
            DriverState::Available { location, time } if time == self.time => Some(location),
            DriverState::NotEntered {
                entered: false,
                location,
                time,
            } if time == self.time => Some(location),
            _ => None,
        }
    }

    /// Ids of drivers who act this period, in increasing order.
    pub fn acting_drivers(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.drivers.len()).filter(|&i| self.acting_location(i).is_some())
    }

    /// Whether driver `i` is on the platform (entered and not gone) this period.
    pub fn is_on_platform(&self, i: usize) -> bool {
        matches!(
            self.drivers[i],
            DriverState::Available { .. } | DriverState::EnRoute { .. }
        )
    }
}

/// Cost driver `i` incurs by taking `action` in `state`: the trip cost for a
/// trip, `κ_{T−t}` for leaving after having entered, nothing otherwise.
pub fn step_cost(econ: &Economy, state: &PlatformState, i: usize, action: Action) -> Money {
    let t = state.time;
    match (action, state.drivers[i]) {
        (Action::Trip { dest, .. }, _) => match state.acting_location(i) {
            Some(a) => econ.trip_cost(a, dest, t),
            None => Money::ZERO,
        },
        (Action::Exit, DriverState::Available { .. }) => econ.exit_cost(econ.horizon - t),
        _ => Money::ZERO,
    }
}

/// The available-action set of driver `i`: `Idle` for a driver who does not
/// act; otherwise every within-horizon relocation, every rider whose trip
/// starts at the driver's location now (except riders in `reserved`), and `Exit`.
pub fn available_actions(econ: &Economy, state: &PlatformState, i: usize, reserved: &[usize]) -> Vec<Action> {
    let Some(a) = state.acting_location(i) else {
        return vec![Action::Idle];
    };
    let t = state.time;
    let mut out = Vec::new();
    for b in 0..econ.num_locations() {
        if econ.is_feasible_trip(Trip::new(a, b, t)) {
            out.push(Action::Trip { dest: b, rider: None });
        }
    }
    for (j, r) in econ.riders.iter().enumerate() {
        if r.origin == a && r.time == t && !reserved.contains(&j) {
            out.push(Action::Trip {
                dest: r.dest,
                rider: Some(j),
            });
        }
    }
    out.push(Action::Exit);
    out
}

/// Applies one action per driver and returns the state at the next period.
///
/// Trips finishing next period make the driver available at the destination,
/// longer trips leave the driver en route, `Exit` removes the driver, and drivers who have
/// not entered yet are carried forward unchanged (committed drivers become
/// available at their entry period).
pub fn apply_actions(econ: &Economy, state: &PlatformState, actions: &[Action]) -> Result<PlatformState> {
    let t = state.time;
    if actions.len() != state.drivers.len() {
        return Err(Error::IllegalAction {
            driver: actions.len().min(state.drivers.len()),
            time: t,
            reason: format!("expected {} actions, got {}", state.drivers.len(), actions.len()),
        });
    }
    if t >= econ.horizon {
        return Err(Error::IllegalAction {
            driver: 0,
            time: t,
            reason: "no actions are possible at the horizon".to_string(),
        });
    }
    let mut picked: Vec<usize> = Vec::new();
    let mut next = Vec::with_capacity(actions.len());
    for (i, (&ds, &action)) in state.drivers.iter().zip(actions).enumerate() {
        let illegal = |reason: String| Error::IllegalAction {
            driver: i,
            time: t,
            reason,
        };
        let new_state = match state.acting_location(i) {
            Some(a) => match action {
                Action::Idle => return Err(illegal("an available driver must act".into())),
                Action::Exit => DriverState::Gone,
                Action::Trip { dest, rider } => {
                    let trip = Trip::new(a, dest, t);
                    if !econ.is_feasible_trip(trip) {
                        return Err(illegal(format!("trip {trip} is not feasible")));
                    }
                    if let Some(j) = rider {
                        let r = econ
                            .riders
                            .get(j)
                            .ok_or_else(|| illegal(format!("unknown rider {j}")))?;
                        if r.trip() != trip {
                            return Err(illegal(format!("rider {j} does not request trip {trip}")));
                        }
                        if picked.contains(&j) {
                            return Err(illegal(format!("rider {j} is picked up twice")));
                        }
                        picked.push(j);
                    }
                    if econ.arrival(trip) == t + 1 {
                        DriverState::Available {
                            location: dest,
                            time: t + 1,
                        }
                    } else {
                        DriverState::EnRoute {
                            origin: a,
                            dest,
                            start: t,
                            rider,
                        }
                    }
                }
            },
            None => {
                if action != Action::Idle {
                    return Err(illegal(format!("driver cannot act now but chose {action}")));
                }
                match ds {
                    DriverState::EnRoute {
                        origin, dest, start, ..
                    } if start + econ.dist(origin, dest) == t + 1 => DriverState::Available {
                        location: dest,
                        time: t + 1,
                    },
                    DriverState::NotEntered {
                        entered: true,
                        location,
                        time,
                    } if time == t + 1 => DriverState::Available { location, time: t + 1 },
                    other => other,
                }
            }
        };
        next.push(new_state);
    }
    Ok(PlatformState {
        time: t + 1,
        drivers: next,
    })
}
