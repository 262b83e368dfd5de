use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::scenarios::Scenario;
use crate::market::{Action, Economy};
use crate::mechanisms::Trace;
use crate::money::Money;

/// Per-series (origin–destination, possibly per period) activity of one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesStats {
    /// Number of drivers who drove this trip (with or without a rider).
    pub drivers: u64,
    /// Sum of the charges of transacted trips.
    pub price_sum: Money,
    /// Number of transacted trips (a rider was charged).
    pub transactions: u64,
}

impl SeriesStats {
    /// Mean transacted price in whole units, if any trip was transacted.
    pub fn mean_price(&self) -> Option<f64> {
        (self.transactions > 0).then(|| self.price_sum.as_units_f64() / self.transactions as f64)
    }
}

/// Metrics of one simulated run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    /// Realised welfare.
    pub welfare: Money,
    /// Periods spent carrying a rider over periods spent driving (0 when nobody drove).
    pub time_efficiency: f64,
    /// Single-deviation regret averaged over drivers, in whole units, when computed.
    pub mean_regret: Option<f64>,
    /// Activity per series key.
    pub series: BTreeMap<String, SeriesStats>,
}

/// Series key of a trip: `a-b@t` for the event scenario, `a-b` otherwise.
pub(crate) fn series_key(scenario: Scenario, econ: &Economy, a: usize, b: usize, t: usize) -> String {
    let (a, b) = (&econ.locations[a], &econ.locations[b]);
    match scenario {
        Scenario::Event => format!("{a}-{b}@{t}"),
        Scenario::Rush | Scenario::Airport => format!("{a}-{b}"),
    }
}

/// Computes the metrics of a finished simulation.
pub fn compute_metrics(scenario: Scenario, econ: &Economy, trace: &Trace, regrets: Option<&[Money]>) -> RunMetrics {
    let mut carrying = 0u64;
    let mut driving = 0u64;
    let mut series: BTreeMap<String, SeriesStats> = BTreeMap::new();
    for r in trace.steps.iter().flatten() {
        if let Action::Trip { dest, rider } = r.taken {
            let origin = trace.states[r.t - trace.start]
                .acting_location(r.driver)
                .expect("a driver who drove was acting");
            let d = econ.dist(origin, dest) as u64;
            driving += d;
            if rider.is_some() {
                carrying += d;
            }
            let entry = series.entry(series_key(scenario, econ, origin, dest, r.t)).or_default();
            entry.drivers += 1;
            if rider.is_some() && r.taken == r.dispatched {
                entry.price_sum += r.payment;
                entry.transactions += 1;
            }
        }
    }
    let time_efficiency = if driving == 0 {
        0.0
    } else {
        carrying as f64 / driving as f64
    };
    let mean_regret = regrets.map(|rs| {
        if rs.is_empty() {
            0.0
        } else {
            rs.iter().map(|m| m.as_units_f64()).sum::<f64>() / rs.len() as f64
        }
    });
    RunMetrics {
        welfare: trace.welfare,
        time_efficiency,
        mean_regret,
        series,
    }
}
