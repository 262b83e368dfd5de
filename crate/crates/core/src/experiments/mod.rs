//! Scenario generators, seeded random economies, the batch runner, per-run
//! metrics and CSV export.

mod batch;
mod export;
mod metrics;
mod random;
mod scenarios;

pub use batch::{run_batch, MechanismKind, MetricsTable, RunRecord, ScenarioParams, SummaryRow};
pub use export::{export_results, RESULTS_SCHEMA_VERSION, SCALAR_METRICS, SERIES_METRICS};
pub use metrics::{compute_metrics, RunMetrics, SeriesStats};
pub use random::{random_economy, RandomEconomyParams};
pub use scenarios::{gen_scenario_airport, gen_scenario_event, gen_scenario_rush, generate_scenario, Scenario};

/// Mixes several words into one well-spread 64-bit seed.
pub fn mix_seed(parts: &[u64]) -> u64 {
    let mut h: u64 = 0x243F_6A88_85A3_08D3;
    for &p in parts {
        let mut z = h ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h = z ^ (z >> 31);
    }
    h
}
