use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::plan::Plan;
use crate::error::Result;
use crate::flow::solve_economy;
use crate::market::Economy;
use crate::money::Money;

/// Coalitions are enumerated exhaustively when there are at most this many.
pub const EXHAUSTIVE_LIMIT: usize = 4096;

/// A coalition that can do strictly better on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockingCoalition {
    /// Driver ids.
    pub drivers: Vec<usize>,
    /// Rider ids.
    pub riders: Vec<usize>,
    /// Maximum welfare the coalition achieves alone.
    pub welfare: Money,
    /// Sum of the members' utilities in the outcome.
    pub utility_sum: Money,
}

/// Outcome of a core check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreReport {
    /// Number of coalitions examined.
    pub coalitions_checked: usize,
    /// Whether every coalition was examined.
    pub exhaustive: bool,
    /// Coalitions that block the outcome.
    pub blocking: Vec<BlockingCoalition>,
}

impl CoreReport {
    /// `true` when no blocking coalition was found.
    pub fn in_core(&self) -> bool {
        self.blocking.is_empty()
    }
}

/// Checks core membership of a priced plan.
pub fn check_core_sampled(econ: &Economy, plan: &Plan, n_samples: usize, seed: u64) -> Result<CoreReport> {
    check_core_utilities(
        econ,
        &plan.driver_utilities(econ),
        &plan.rider_utilities(econ),
        n_samples,
        seed,
    )
}

/// Checks that no coalition of drivers and riders could achieve more welfare
/// on its own than the sum of its members' utilities. All coalitions are
/// examined when there are at most [`EXHAUSTIVE_LIMIT`]; otherwise
/// `n_samples` coalitions are drawn, each agent joining with probability ½.
pub fn check_core_utilities(
    econ: &Economy,
    driver_utils: &[Money],
    rider_utils: &[Money],
    n_samples: usize,
    seed: u64,
) -> Result<CoreReport> {
    let n = econ.num_drivers();
    let m = econ.riders.len();
    let agents = n + m;
    let mut report = CoreReport::default();
    let mut masks: Vec<Vec<bool>> = Vec::new();
    if agents < 63 && (1usize << agents) <= EXHAUSTIVE_LIMIT {
        report.exhaustive = true;
        for mask in 0..(1usize << agents) {
            masks.push((0..agents).map(|k| mask >> k & 1 == 1).collect());
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..n_samples {
            masks.push((0..agents).map(|_| rng.gen_bool(0.5)).collect());
        }
    }
    for mask in masks {
        let drivers: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
        let riders: Vec<usize> = (0..m).filter(|&j| mask[n + j]).collect();
        report.coalitions_checked += 1;
        let utility_sum: Money = drivers.iter().map(|&i| driver_utils[i]).sum::<Money>()
            + riders.iter().map(|&j| rider_utils[j]).sum::<Money>();
        let welfare = if drivers.is_empty() {
            Money::ZERO
        } else {
            let mut sub = econ.clone();
            sub.drivers = drivers.iter().map(|&i| econ.drivers[i]).collect();
            sub.riders = riders.iter().map(|&j| econ.riders[j]).collect();
            solve_economy(&sub)?.welfare()
        };
        if utility_sum < welfare {
            report.blocking.push(BlockingCoalition {
                drivers,
                riders,
                welfare,
                utility_sum,
            });
        }
    }
    Ok(report)
}
