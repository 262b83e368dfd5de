use super::economy::{DriverType, Economy, Rider, TripCost};
use super::state::{DriverState, PlatformState};
use crate::error::{Error, Result};

/// The remaining market re-rooted at the current period, together with the
/// maps from its driver and rider ids back to the original ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedEconomy {
    /// The shifted economy (horizon `T − t`, all times shifted by `−t`).
    pub economy: Economy,
    /// `driver_ids[k]` is the original id of shifted driver `k`.
    pub driver_ids: Vec<usize>,
    /// `rider_ids[k]` is the original id of shifted rider `k`.
    pub rider_ids: Vec<usize>,
    /// The period `t` the economy was shifted by.
    pub offset: usize,
}

impl ShiftedEconomy {
    /// Shifted id of original driver `i`, if still part of the market.
    pub fn local_driver(&self, i: usize) -> Option<usize> {
        self.driver_ids.iter().position(|&d| d == i)
    }

    /// Shifted id of original rider `j`, if still part of the market.
    pub fn local_rider(&self, j: usize) -> Option<usize> {
        self.rider_ids.iter().position(|&r| r == j)
    }
}

/// Builds the time-shifted economy starting at `state`.
///
/// Available drivers become committed drivers entering at period 0 where they
/// stand; en-route drivers become committed drivers entering at their trip's
/// destination and arrival period (drivers arriving exactly at the horizon can
/// no longer act or incur cost and are dropped); drivers who have not entered
/// are shifted; departed drivers are dropped. Riders whose trips start at or
/// after `t` are kept and shifted. Cost schedules are re-indexed so that the
/// early-exit cost of leaving `Δ` periods early is unchanged.
///
/// Driver and rider order is preserved.
pub fn shift_economy(econ: &Economy, state: &PlatformState) -> Result<ShiftedEconomy> {
    let t = state.time;
    if t >= econ.horizon {
        return Err(Error::InvalidParams(format!(
            "cannot shift an economy with horizon {} to period {t}",
            econ.horizon
        )));
    }
    let horizon = econ.horizon - t;
    let mut drivers = Vec::new();
    let mut driver_ids = Vec::new();
    for (i, ds) in state.drivers.iter().enumerate() {
        let shifted = match *ds {
            DriverState::Available { location, time } => Some(DriverType {
                entered: true,
                location,
                time: time - t,
            }),
            DriverState::EnRoute {
                origin, dest, start, ..
            } => {
                let arrival = start + econ.dist(origin, dest);
                (arrival < econ.horizon).then(|| DriverType {
                    entered: true,
                    location: dest,
                    time: arrival - t,
                })
            }
            DriverState::NotEntered {
                entered,
                location,
                time,
            } => Some(DriverType {
                entered,
                location,
                time: time - t,
            }),
            DriverState::Gone => None,
        };
        if let Some(d) = shifted {
            drivers.push(d);
            driver_ids.push(i);
        }
    }
    let mut riders = Vec::new();
    let mut rider_ids = Vec::new();
    for (j, r) in econ.riders.iter().enumerate() {
        if r.time >= t {
            riders.push(Rider { time: r.time - t, ..*r });
            rider_ids.push(j);
        }
    }
    let trip_cost = match &econ.trip_cost {
        TripCost::PerPeriod { rate } => TripCost::PerPeriod { rate: *rate },
        TripCost::Table { cost } => TripCost::Table {
            cost: cost
                .iter()
                .map(|row| row.iter().map(|c| c[t..].to_vec()).collect())
                .collect(),
        },
    };
    Ok(ShiftedEconomy {
        economy: Economy {
            horizon,
            locations: econ.locations.clone(),
            dist: econ.dist.clone(),
            trip_cost,
            exit_cost: econ.exit_cost[..=horizon].to_vec(),
            drivers,
            riders,
        },
        driver_ids,
        rider_ids,
        offset: t,
    })
}
