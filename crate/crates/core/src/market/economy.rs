use std::fmt;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::money::Money;

/// Index into [`Economy::locations`].
pub type Location = usize;
/// A discrete period in `0..=horizon`.
pub type Time = usize;

/// Type of a driver: whether the driver is already on the platform, and where/when
/// the driver becomes able to act. Every driver stays until the end of the horizon
/// unless dispatched to exit (paying the early-exit cost).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DriverType {
    /// `true` if the driver is already committed to the platform; `false` if
    /// the driver may decline to enter at zero cost.
    pub entered: bool,
    /// Location at which the driver becomes available.
    pub location: Location,
    /// Period at which the driver becomes available (strictly before the horizon).
    pub time: Time,
}

/// An impatient rider requesting a single trip at a fixed start time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rider {
    /// Pick-up location.
    pub origin: Location,
    /// Drop-off location.
    pub dest: Location,
    /// Requested start period.
    pub time: Time,
    /// Willingness to pay.
    pub value: Money,
}

impl Rider {
    /// The trip this rider requests.
    pub fn trip(&self) -> Trip {
        Trip {
            origin: self.origin,
            dest: self.dest,
            start: self.time,
        }
    }
}

/// An origin–destination trip starting at a given period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Trip {
    /// Origin location.
    pub origin: Location,
    /// Destination location.
    pub dest: Location,
    /// Start period.
    pub start: Time,
}

impl Trip {
    /// Builds a trip.
    pub const fn new(origin: Location, dest: Location, start: Time) -> Self {
        Trip { origin, dest, start }
    }
}

impl fmt::Display for Trip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.origin, self.dest, self.start)
    }
}

/// Trip cost schedule `c_{a,b,t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripCost {
    /// `c_{a,b,t} = rate · dist(a,b)`.
    PerPeriod {
        /// Cost per period of driving.
        rate: Money,
    },
    /// Explicit table indexed `cost[a][b][t]` for `t` in `0..horizon`.
    Table {
        /// The cost table.
        cost: Vec<Vec<Vec<Money>>>,
    },
}

/// A complete economy: horizon, geography, cost schedules, drivers and riders.
///
/// Driver and rider ids are their indices in [`Economy::drivers`] and
/// [`Economy::riders`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Economy {
    /// Planning horizon `T ≥ 1`; periods run `0..=T`.
    pub horizon: Time,
    /// Location names; locations are referred to by index everywhere else.
    pub locations: Vec<String>,
    /// Travel time matrix in periods, `dist[a][b] ≥ 1`, `dist[a][a] = 1`.
    pub dist: Vec<Vec<usize>>,
    /// Trip cost schedule.
    pub trip_cost: TripCost,
    /// Early-exit cost `κ_Δ` for `Δ = 0..=T`, with `κ_0 = 0`.
    pub exit_cost: Vec<Money>,
    /// Drivers.
    #[serde(default)]
    pub drivers: Vec<DriverType>,
    /// Riders.
    #[serde(default)]
    pub riders: Vec<Rider>,
}

impl Economy {
    /// An economy with no agents, a per-period trip cost and linear exit cost
    /// `κ_Δ = exit_rate · Δ`.
    pub fn new(locations: &[&str], dist: Vec<Vec<usize>>, horizon: Time, rate: Money, exit_rate: Money) -> Self {
        Economy {
            horizon,
            locations: locations.iter().map(|s| s.to_string()).collect(),
            dist,
            trip_cost: TripCost::PerPeriod { rate },
            exit_cost: (0..=horizon as i64).map(|d| exit_rate * d).collect(),
            drivers: Vec::new(),
            riders: Vec::new(),
        }
    }

    /// Adds a driver and returns its id.
    pub fn add_driver(&mut self, entered: bool, location: Location, time: Time) -> usize {
        self.drivers.push(DriverType {
            entered,
            location,
            time,
        });
        self.drivers.len() - 1
    }

    /// Adds a rider and returns its id.
    pub fn add_rider(&mut self, origin: Location, dest: Location, time: Time, value: Money) -> usize {
        self.riders.push(Rider {
            origin,
            dest,
            time,
            value,
        });
        self.riders.len() - 1
    }

    /// Number of locations.
    pub fn num_locations(&self) -> usize {
        self.locations.len()
    }

    /// Index of the location with the given name.
    pub fn location_index(&self, name: &str) -> Option<Location> {
        self.locations.iter().position(|l| l == name)
    }

    /// Travel time from `a` to `b`.
    pub fn dist(&self, a: Location, b: Location) -> usize {
        self.dist[a][b]
    }

    /// Trip cost `c_{a,b,t}`.
    pub fn trip_cost(&self, a: Location, b: Location, t: Time) -> Money {
        match &self.trip_cost {
            TripCost::PerPeriod { rate } => *rate * self.dist[a][b] as i64,
            TripCost::Table { cost } => cost[a][b][t],
        }
    }

    /// Cost of a trip.
    pub fn cost_of(&self, trip: Trip) -> Money {
        self.trip_cost(trip.origin, trip.dest, trip.start)
    }

    /// Early-exit cost `κ_Δ`.
    pub fn exit_cost(&self, delta: usize) -> Money {
        self.exit_cost[delta]
    }

    /// Arrival period of a trip.
    pub fn arrival(&self, trip: Trip) -> Time {
        trip.start + self.dist[trip.origin][trip.dest]
    }

    /// Whether the trip lies in the feasible-trip set (ends by the horizon).
    pub fn is_feasible_trip(&self, trip: Trip) -> bool {
        let l = self.num_locations();
        trip.origin < l && trip.dest < l && trip.start + self.dist[trip.origin][trip.dest] <= self.horizon
    }

    /// All feasible trips ordered by `(start, origin, dest)`.
    pub fn feasible_trips(&self) -> Vec<Trip> {
        let l = self.num_locations();
        let mut out = Vec::new();
        for t in 0..self.horizon {
            for a in 0..l {
                for b in 0..l {
                    let trip = Trip::new(a, b, t);
                    if self.is_feasible_trip(trip) {
                        out.push(trip);
                    }
                }
            }
        }
        out
    }

    /// Total number of drivers.
    pub fn num_drivers(&self) -> usize {
        self.drivers.len()
    }

    /// The economy with driver `i` removed (other ids shift down by one).
    pub fn without_driver(&self, i: usize) -> Economy {
        let mut e = self.clone();
        e.drivers.remove(i);
        e
    }

    /// The economy with rider `j` removed (other ids shift down by one).
    pub fn without_rider(&self, j: usize) -> Economy {
        let mut e = self.clone();
        e.riders.remove(j);
        e
    }

    /// Parses an economy document and validates it.
    pub fn from_json_str(s: &str) -> Result<Economy> {
        let econ: Economy = serde_json::from_str(s)?;
        validate_economy(&econ).into_result()?;
        Ok(econ)
    }

    /// Reads and validates an economy file.
    pub fn load(path: impl AsRef<FsPath>) -> Result<Economy> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }

    /// Canonical pretty-printed JSON serialisation.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("economy serialisation cannot fail")
    }
}

/// Outcome of [`validate_economy`]: empty means the economy is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Human-readable violations.
    pub violations: Vec<String>,
}

impl ValidationReport {
    /// `true` when there are no violations.
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Converts the report into a `Result`.
    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidEconomy(self.violations))
        }
    }
}

/// Checks every model invariant: geometry, cost schedules, and the
/// stay-until-the-end and impatient-rider assumptions (drivers are available
/// strictly before the horizon; each rider's trip is feasible).
pub fn validate_economy(econ: &Economy) -> ValidationReport {
    let mut v = Vec::new();
    let l = econ.num_locations();
    let t_max = econ.horizon;
    if t_max == 0 {
        v.push("horizon must be at least 1".to_string());
    }
    if l == 0 {
        v.push("at least one location is required".to_string());
    }
    if econ.dist.len() != l || econ.dist.iter().any(|row| row.len() != l) {
        v.push(format!("distance matrix must be {l}x{l}"));
        return ValidationReport { violations: v };
    }
    for a in 0..l {
        for b in 0..l {
            let d = econ.dist[a][b];
            if a == b && d != 1 {
                v.push(format!("self-distance must be 1 (location {a} has {d})"));
            } else if d == 0 {
                v.push(format!("distance from {a} to {b} must be at least 1"));
            }
        }
    }
    match &econ.trip_cost {
        TripCost::PerPeriod { rate } => {
            if *rate < Money::ZERO {
                v.push("trip cost rate must be non-negative".to_string());
            }
        }
        TripCost::Table { cost } => {
            let shape_ok = cost.len() == l
                && cost
                    .iter()
                    .all(|row| row.len() == l && row.iter().all(|c| c.len() == t_max));
            if !shape_ok {
                v.push(format!("trip cost table must be {l}x{l}x{t_max}"));
            } else if cost.iter().flatten().flatten().any(|c| *c < Money::ZERO) {
                v.push("trip costs must be non-negative".to_string());
            }
        }
    }
    if econ.exit_cost.len() != t_max + 1 {
        v.push(format!("exit cost schedule must have {} entries", t_max + 1));
    } else {
        if econ.exit_cost[0] != Money::ZERO {
            v.push("exit cost for zero periods early must be 0".to_string());
        }
        if econ.exit_cost.iter().any(|k| *k < Money::ZERO) {
            v.push("exit costs must be non-negative".to_string());
        }
    }
    for (i, d) in econ.drivers.iter().enumerate() {
        if d.location >= l {
            v.push(format!("driver {i} has unknown location {}", d.location));
        }
        if d.time >= t_max {
            v.push(format!(
                "driver {i} becomes available at {} which is not before the horizon",
                d.time
            ));
        }
    }
    for (j, r) in econ.riders.iter().enumerate() {
        if r.origin >= l || r.dest >= l {
            v.push(format!("rider {j} has an unknown location"));
            continue;
        }
        if r.value < Money::ZERO {
            v.push(format!("rider {j} has a negative value"));
        }
        if r.time + econ.dist[r.origin][r.dest] > t_max {
            v.push(format!("infeasible rider trip for rider {j}"));
        }
    }
    ValidationReport { violations: v }
}
