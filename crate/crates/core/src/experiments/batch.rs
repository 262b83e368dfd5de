use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{compute_metrics, RunMetrics};
use super::mix_seed;
use super::scenarios::{generate_scenario, Scenario};
use crate::error::{Error, Result};
use crate::mechanisms::{
    all_regrets, always_replan_mechanism, driver_optimal_mechanism, myopic_mechanism, run_simulation,
    static_ce_mechanism, stp_mechanism, DeviationScope, Mechanism, Straightforward,
};
use crate::planner::PlanKind;

/// Mechanisms available to batches and the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MechanismKind {
    /// Spatio-temporal pricing.
    Stp,
    /// Myopic market clearing.
    Myopic,
    /// Static driver-pessimal CE plan.
    StaticPessimal,
    /// Static driver-optimal CE plan.
    StaticOptimal,
    /// Driver-optimal plans, replanned after deviations.
    DriverOptimal,
    /// Driver-pessimal plans, recomputed every period.
    AlwaysReplan,
}

impl MechanismKind {
    /// All kinds.
    pub const ALL: [MechanismKind; 6] = [
        MechanismKind::Stp,
        MechanismKind::Myopic,
        MechanismKind::StaticPessimal,
        MechanismKind::StaticOptimal,
        MechanismKind::DriverOptimal,
        MechanismKind::AlwaysReplan,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            MechanismKind::Stp => "stp",
            MechanismKind::Myopic => "myopic",
            MechanismKind::StaticPessimal => "static-pessimal",
            MechanismKind::StaticOptimal => "static-optimal",
            MechanismKind::DriverOptimal => "driver-optimal",
            MechanismKind::AlwaysReplan => "always-replan",
        }
    }

    /// Parses a command-line name.
    pub fn from_name(s: &str) -> Option<MechanismKind> {
        MechanismKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Builds a fresh mechanism; `seed` drives any internal randomness.
    pub fn build(self, seed: u64) -> Box<dyn Mechanism> {
        match self {
            MechanismKind::Stp => stp_mechanism(),
            MechanismKind::Myopic => myopic_mechanism(seed),
            MechanismKind::StaticPessimal => static_ce_mechanism(PlanKind::DriverPessimal),
            MechanismKind::StaticOptimal => static_ce_mechanism(PlanKind::DriverOptimal),
            MechanismKind::DriverOptimal => driver_optimal_mechanism(),
            MechanismKind::AlwaysReplan => always_replan_mechanism(PlanKind::DriverPessimal),
        }
    }
}

/// Parameters of a batch experiment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioParams {
    /// Which scenario.
    pub scenario: Scenario,
    /// Values of the swept quantity.
    pub sweep: Vec<u32>,
    /// Replications per sweep value (at least 1).
    pub replications: usize,
    /// Base seed; replication `r` uses the same economy seed for every sweep value.
    pub base_seed: u64,
    /// Whether to compute single-deviation regret (expensive).
    pub compute_regret: bool,
    /// Deviations considered when computing regret.
    pub regret_scope: DeviationScope,
}

impl ScenarioParams {
    /// Default sweep, 50 replications, regret off.
    pub fn new(scenario: Scenario, base_seed: u64) -> Self {
        ScenarioParams {
            scenario,
            sweep: scenario.default_sweep(),
            replications: 50,
            base_seed,
            compute_regret: false,
            regret_scope: DeviationScope::NoUndispatchedPickups,
        }
    }

    /// Seed of the economy for replication `rep` (independent of the sweep value).
    pub fn economy_seed(&self, rep: usize) -> u64 {
        mix_seed(&[self.base_seed, rep as u64, 0])
    }

    /// Seed of mechanism randomness for replication `rep`.
    pub fn mechanism_seed(&self, rep: usize) -> u64 {
        mix_seed(&[self.base_seed, rep as u64, 1])
    }

    fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::InvalidParams("replications must be at least 1".into()));
        }
        if let Some(v) = self.sweep.iter().find(|v| **v > self.scenario.max_sweep()) {
            return Err(Error::InvalidParams(format!(
                "sweep value {v} exceeds {} for the {} scenario",
                self.scenario.max_sweep(),
                self.scenario.name()
            )));
        }
        Ok(())
    }
}

/// Metrics of one (sweep value, replication, mechanism) run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    /// Sweep value.
    pub sweep_value: u32,
    /// Replication index.
    pub replication: usize,
    /// Mechanism name.
    pub mechanism: String,
    /// Metrics.
    pub metrics: RunMetrics,
}

/// One aggregated row: mean and standard deviation over replications.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    /// Metric name (`welfare`, `time_efficiency`, `mean_regret`, `od_drivers`, `od_prices`).
    pub metric: String,
    /// Sweep value.
    pub sweep_value: u32,
    /// Mechanism name.
    pub mechanism: String,
    /// Series key for per-series metrics.
    pub series: Option<String>,
    /// Mean.
    pub mean: f64,
    /// Sample standard deviation (0 for fewer than two observations).
    pub std: f64,
    /// Number of observations.
    pub n: usize,
}

/// All results of a batch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsTable {
    /// Parameters used.
    pub params: ScenarioParams,
    /// Mechanism names in run order.
    pub mechanisms: Vec<String>,
    /// Every run, ordered by (sweep value, replication, mechanism).
    pub runs: Vec<RunRecord>,
    /// Aggregated rows ordered by (metric, sweep value, mechanism, series).
    pub summary: Vec<SummaryRow>,
}

impl MetricsTable {
    /// Rows of one metric.
    pub fn rows<'a>(&'a self, metric: &'a str) -> impl Iterator<Item = &'a SummaryRow> + 'a {
        self.summary.iter().filter(move |r| r.metric == metric)
    }

    /// The aggregated row of a scalar metric.
    pub fn row(&self, metric: &str, sweep_value: u32, mechanism: &str) -> Option<&SummaryRow> {
        self.summary.iter().find(|r| {
            r.metric == metric && r.sweep_value == sweep_value && r.mechanism == mechanism && r.series.is_none()
        })
    }

    /// Runs of one mechanism at one sweep value, in replication order.
    pub fn runs_of<'a>(&'a self, sweep_value: u32, mechanism: &'a str) -> impl Iterator<Item = &'a RunRecord> + 'a {
        self.runs
            .iter()
            .filter(move |r| r.sweep_value == sweep_value && r.mechanism == mechanism)
    }
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let std = if n < 2 {
        0.0
    } else {
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    };
    (mean, std)
}

fn run_one(params: &ScenarioParams, mechanisms: &[MechanismKind], value: u32, rep: usize) -> Result<Vec<RunRecord>> {
    let econ = generate_scenario(params.scenario, value, params.economy_seed(rep))?;
    let mut out = Vec::with_capacity(mechanisms.len());
    for kind in mechanisms {
        let seed = params.mechanism_seed(rep);
        let mut mech = kind.build(seed);
        let trace = run_simulation(&econ, mech.as_mut(), &Straightforward)?;
        let regrets = if params.compute_regret {
            Some(all_regrets(&econ, kind.build(seed).as_ref(), params.regret_scope)?)
        } else {
            None
        };
        out.push(RunRecord {
            sweep_value: value,
            replication: rep,
            mechanism: kind.name().to_string(),
            metrics: compute_metrics(params.scenario, &econ, &trace, regrets.as_deref()),
        });
    }
    Ok(out)
}

/// Runs every mechanism with straightforward drivers on every (sweep value,
/// replication) economy and aggregates the metrics. Work items run in
/// parallel; results are collected in deterministic order.
pub fn run_batch(params: &ScenarioParams, mechanisms: &[MechanismKind]) -> Result<MetricsTable> {
    params.validate()?;
    let items: Vec<(u32, usize)> = params
        .sweep
        .iter()
        .flat_map(|&v| (0..params.replications).map(move |r| (v, r)))
        .collect();
    let results: Vec<Result<Vec<RunRecord>>> = items
        .par_iter()
        .map(|&(v, r)| {
            run_one(params, mechanisms, v, r).map_err(|e| Error::Batch {
                sweep_value: v,
                replication: r,
                source: Box::new(e),
            })
        })
        .collect();
    let mut runs = Vec::new();
    for r in results {
        runs.extend(r?);
    }
    let names: Vec<String> = mechanisms.iter().map(|k| k.name().to_string()).collect();
    let summary = summarise(params, &names, &runs);
    Ok(MetricsTable {
        params: params.clone(),
        mechanisms: names,
        runs,
        summary,
    })
}

fn summarise(params: &ScenarioParams, mechanisms: &[String], runs: &[RunRecord]) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    type Getter = fn(&RunMetrics) -> Option<f64>;
    let scalar: [(&str, Getter); 3] = [
        ("welfare", |m| Some(m.welfare.as_units_f64())),
        ("time_efficiency", |m| Some(m.time_efficiency)),
        ("mean_regret", |m| m.mean_regret),
    ];
    for (metric, get) in scalar {
        if metric == "mean_regret" && !params.compute_regret {
            continue;
        }
        for &v in &params.sweep {
            for mech in mechanisms {
                let xs: Vec<f64> = runs
                    .iter()
                    .filter(|r| r.sweep_value == v && &r.mechanism == mech)
                    .filter_map(|r| get(&r.metrics))
                    .collect();
                let (mean, std) = mean_std(&xs);
                rows.push(SummaryRow {
                    metric: metric.to_string(),
                    sweep_value: v,
                    mechanism: mech.clone(),
                    series: None,
                    mean,
                    std,
                    n: xs.len(),
                });
            }
        }
    }
    let keys: BTreeSet<&String> = runs.iter().flat_map(|r| r.metrics.series.keys()).collect();
    for metric in ["od_drivers", "od_prices"] {
        for &v in &params.sweep {
            for mech in mechanisms {
                let group: Vec<&RunRecord> = runs
                    .iter()
                    .filter(|r| r.sweep_value == v && &r.mechanism == mech)
                    .collect();
                for key in &keys {
                    let xs: Vec<f64> = group
                        .iter()
                        .filter_map(|r| {
                            let s = r.metrics.series.get(*key).copied().unwrap_or_default();
                            if metric == "od_drivers" {
                                Some(s.drivers as f64)
                            } else {
                                s.mean_price()
                            }
                        })
                        .collect();
                    let (mean, std) = mean_std(&xs);
                    rows.push(SummaryRow {
                        metric: metric.to_string(),
                        sweep_value: v,
                        mechanism: mech.clone(),
                        series: Some((*key).clone()),
                        mean,
                        std,
                        n: xs.len(),
                    });
                }
            }
        }
    }
    rows
}
