use serde::{Deserialize, Serialize};

use super::economy::{DriverType, Economy, Location, Time, Trip};
use crate::error::{Error, Result};
use crate::money::Money;

/// Default cap on the number of paths [`enumerate_feasible_paths`] may return.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// A sequence of chained trips. A path that ends before the horizon implies
/// an early exit at its last arrival; the empty path means the driver never
/// drives (never enters, or exits immediately).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path {
    /// Trips in order.
    pub trips: Vec<Trip>,
}

/// One trip of an action path: either a relocation or carrying a rider.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Leg {
    /// The trip driven.
    pub trip: Trip,
    /// Rider carried on this trip, if any.
    pub rider: Option<usize>,
}

/// A path annotated with which rider, if any, is carried on each trip.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActionPath {
    /// Legs in order.
    pub legs: Vec<Leg>,
}

impl ActionPath {
    /// The underlying path.
    pub fn path(&self) -> Path {
        Path {
            trips: self.legs.iter().map(|l| l.trip).collect(),
        }
    }

    /// The leg starting at period `t`, if any.
    pub fn leg_at(&self, t: Time) -> Option<&Leg> {
        self.legs.iter().find(|l| l.trip.start == t)
    }

    /// Riders carried along the path.
    pub fn riders(&self) -> impl Iterator<Item = usize> + '_ {
        self.legs.iter().filter_map(|l| l.rider)
    }
}

/// Checks that `path` chains from the driver's entry point and stays within
/// the horizon.
pub fn check_path(econ: &Economy, driver: &DriverType, path: &Path) -> Result<()> {
    let mut at: (Location, Time) = (driver.location, driver.time);
    for (k, trip) in path.trips.iter().enumerate() {
        if (trip.origin, trip.start) != at {
            return Err(Error::InfeasiblePath(format!(
                "trip {k} {trip} does not start at location {} time {}",
                at.0, at.1
            )));
        }
        if !econ.is_feasible_trip(*trip) {
            return Err(Error::InfeasiblePath(format!("trip {k} {trip} ends after the horizon")));
        }
        at = (trip.dest, econ.arrival(*trip));
    }
    Ok(())
}

/// Total cost of a path: trip costs plus the early-exit cost `κ_Δ` when the
/// path ends `Δ > 0` periods before the horizon. The empty path costs 0 for a
/// driver who has not entered and `κ_{T−τ}` for one who has.
pub fn path_cost(econ: &Economy, driver: &DriverType, path: &Path) -> Result<Money> {
    check_path(econ, driver, path)?;
    Ok(path_cost_unchecked(econ, driver, &path.trips))
}

pub(crate) fn path_cost_unchecked(econ: &Economy, driver: &DriverType, trips: &[Trip]) -> Money {
    match trips.last() {
        None => {
            if driver.entered {
                econ.exit_cost(econ.horizon - driver.time)
            } else {
                Money::ZERO
            }
        }
        Some(last) => {
            let travel: Money = trips.iter().map(|t| econ.cost_of(*t)).sum();
            travel + econ.exit_cost(econ.horizon - econ.arrival(*last))
        }
    }
}

/// Every feasible path of a driver, including the empty path (first).
/// Intended for small instances; fails once more than `cap` paths exist.
pub fn enumerate_feasible_paths(econ: &Economy, driver: &DriverType, cap: usize) -> Result<Vec<Path>> {
    let mut out = vec![Path::default()];
    let mut stack: Vec<Trip> = Vec::new();
    extend(econ, driver.location, driver.time, &mut stack, &mut out, cap)?;
    Ok(out)
}

fn extend(econ: &Economy, at: Location, t: Time, stack: &mut Vec<Trip>, out: &mut Vec<Path>, cap: usize) -> Result<()> {
    for b in 0..econ.num_locations() {
        let trip = Trip::new(at, b, t);
        if !econ.is_feasible_trip(trip) {
            continue;
        }
        stack.push(trip);
        if out.len() >= cap {
            return Err(Error::CapExceeded { cap });
        }
        out.push(Path { trips: stack.clone() });
        extend(econ, b, econ.arrival(trip), stack, out, cap)?;
        stack.pop();
    }
    Ok(())
}
