use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::batch::MetricsTable;
use crate::error::{Error, Result};

/// Version of the results layout written by [`export_results`].
pub const RESULTS_SCHEMA_VERSION: u32 = 1;

/// Scalar metric files (`sweep_value,mechanism,mean,std,n`).
pub const SCALAR_METRICS: [&str; 3] = ["welfare", "time_efficiency", "mean_regret"];
/// Per-series metric files (`sweep_value,mechanism,series,mean,std,n`).
pub const SERIES_METRICS: [&str; 2] = ["od_drivers", "od_prices"];

#[derive(Serialize)]
struct Manifest<'a> {
    schema_version: u32,
    crate_version: &'a str,
    scenario: &'a str,
    sweep_variable: &'a str,
    sweep: &'a [u32],
    replications: usize,
    base_seed: u64,
    compute_regret: bool,
    regret_scope: crate::mechanisms::DeviationScope,
    mechanisms: &'a [String],
    files: Vec<String>,
}

fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

/// Writes `dir/<scenario>/<metric>.csv` for every metric plus
/// `dir/<scenario>/manifest.json`, and returns the scenario directory.
///
/// Money is written in whole units. A metric that was not computed yields a
/// header-only file.
pub fn export_results(table: &MetricsTable, dir: impl AsRef<Path>) -> Result<PathBuf> {
    let out = dir.as_ref().join(table.params.scenario.name());
    fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
    let mut files = Vec::new();
    for metric in SCALAR_METRICS.iter().chain(SERIES_METRICS.iter()) {
        let per_series = SERIES_METRICS.contains(metric);
        let path = out.join(format!("{metric}.csv"));
        let mut w = csv::Writer::from_path(&path)?;
        if per_series {
            w.write_record(["sweep_value", "mechanism", "series", "mean", "std", "n"])?;
        } else {
            w.write_record(["sweep_value", "mechanism", "mean", "std", "n"])?;
        }
        for r in table.rows(metric) {
            let v = r.sweep_value.to_string();
            let n = r.n.to_string();
            if per_series {
                let s = r.series.clone().unwrap_or_default();
                w.write_record([v.as_str(), &r.mechanism, &s, &fmt(r.mean), &fmt(r.std), &n])?;
            } else {
                w.write_record([v.as_str(), &r.mechanism, &fmt(r.mean), &fmt(r.std), &n])?;
            }
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        files.push(format!("{metric}.csv"));
    }
    let manifest = Manifest {
        schema_version: RESULTS_SCHEMA_VERSION,
        crate_version: env!("CARGO_PKG_VERSION"),
        scenario: table.params.scenario.name(),
        sweep_variable: table.params.scenario.sweep_name(),
        sweep: &table.params.sweep,
        replications: table.params.replications,
        base_seed: table.params.base_seed,
        compute_regret: table.params.compute_regret,
        regret_scope: table.params.regret_scope,
        mechanisms: &table.mechanisms,
        files,
    };
    let path = out.join("manifest.json");
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(out)
}
