//! Small hand-checkable economies shipped with the crate.
//!
//! Each fixture is a JSON economy document (money in minor units).
//! [`verify_fixture`] runs a named suite of checks against one of them and
//! reports expected versus computed values.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{omega, solve_economy, BoundaryNode};
use crate::market::{
    enumerate_feasible_paths, path_cost, shift_economy, Action, Economy, Path, Trip, DEFAULT_PATH_CAP,
};
use crate::mechanisms::{
    all_regrets, always_replan_mechanism, driver_optimal_mechanism, dynamic_vcg_payments, myopic_mechanism,
    myopic_plan, run_simulation, stp_mechanism, DeviationScope, Scripted, Straightforward, Trace,
};
use crate::money::Money;
use crate::planner::{
    check_core_sampled, check_core_utilities, plan_driver_optimal, plan_driver_pessimal, rider_vcg_check,
    rider_vcg_price, verify_ce, verify_outcome, PlanKind,
};

/// Names of the check suites accepted by [`verify_fixture`].
pub const CHECK_SUITES: &[&str] = &[
    "single-driver-paths",
    "superbowl",
    "superbowl-replan",
    "superbowl-myopic",
    "naive-replan",
    "rider-vcg",
    "driver-optimal",
    "dynamic-vcg",
];

/// Names of the bundled fixture economies.
pub const FIXTURE_NAMES: &[&str] = &[
    "single-driver-paths",
    "superbowl",
    "naive-replan",
    "rider-vcg",
    "driver-optimal",
];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "single-driver-paths" => include_str!("../fixtures/single-driver-paths.json"),
        "superbowl" => include_str!("../fixtures/superbowl.json"),
        "naive-replan" => include_str!("../fixtures/naive-replan.json"),
        "rider-vcg" => include_str!("../fixtures/rider-vcg.json"),
        "driver-optimal" => include_str!("../fixtures/driver-optimal.json"),
        _ => return None,
    })
}

/// Loads a bundled fixture economy by name.
pub fn fixture(name: &str) -> Result<Economy> {
    let text = source(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    Economy::from_json_str(text)
}

/// One expected-versus-computed comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCheck {
    /// What is compared.
    pub label: String,
    /// Expected value.
    pub expected: String,
    /// Computed value.
    pub got: String,
    /// Whether they agree.
    pub pass: bool,
}

/// Outcome of a check suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureReport {
    /// Suite name.
    pub name: String,
    /// Individual checks in order.
    pub checks: Vec<FixtureCheck>,
}

impl FixtureReport {
    /// `true` when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn expect<T: PartialEq + fmt::Display>(&mut self, label: &str, expected: T, got: T) {
        self.checks.push(FixtureCheck {
            label: label.to_string(),
            expected: expected.to_string(),
            pass: expected == got,
            got: got.to_string(),
        });
    }

    fn cond(&mut self, label: &str, expected: &str, got: String, pass: bool) {
        self.checks.push(FixtureCheck {
            label: label.to_string(),
            expected: expected.to_string(),
            got,
            pass,
        });
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: expected {}, got {}",
                if c.pass { "ok  " } else { "FAIL" },
                c.label,
                c.expected,
                c.got
            )?;
        }
        write!(f, "{}: {}", self.name, if self.passed() { "pass" } else { "FAIL" })
    }
}

fn u(x: i64) -> Money {
    Money::from_units(x)
}

fn loc(econ: &Economy, name: &str) -> usize {
    econ.location_index(name).expect("fixture location exists")
}

fn posted(trace: &Trace, trip: Trip) -> Money {
    trace.prices[trip.start - trace.start]
        .iter()
        .find(|(t, _)| *t == trip)
        .map(|(_, p)| *p)
        .unwrap_or(Money::ZERO)
}

fn list(xs: &[Money]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Runs the named check suite (see [`CHECK_SUITES`]).
pub fn verify_fixture(name: &str) -> Result<FixtureReport> {
    let mut r = FixtureReport {
        name: name.to_string(),
        checks: Vec::new(),
    };
    match name {
        "single-driver-paths" => {
            let e = fixture(name)?;
            let (a, b) = (loc(&e, "A"), loc(&e, "B"));
            let d = e.drivers[0];
            let paths = enumerate_feasible_paths(&e, &d, DEFAULT_PATH_CAP)?;
            r.expect("number of feasible paths", 4, paths.len());
            let cost = |trips: Vec<Trip>| path_cost(&e, &d, &Path { trips });
            r.expect(
                "cost (A,A,0),(A,A,1)",
                u(4),
                cost(vec![Trip::new(a, a, 0), Trip::new(a, a, 1)])?,
            );
            r.expect("cost (A,B,0)", u(4), cost(vec![Trip::new(a, b, 0)])?);
            r.expect("cost (A,A,0) then exit", u(3), cost(vec![Trip::new(a, a, 0)])?);
            r.expect("cost of the empty path", u(0), cost(vec![])?);
        }
        "superbowl" => {
            let e = fixture(name)?;
            let (a, b, c) = (loc(&e, "A"), loc(&e, "B"), loc(&e, "C"));
            let plan = plan_driver_pessimal(&e)?;
            r.expect("optimal welfare", u(215), plan.welfare);
            for (label, trip, p) in [
                ("p(C,B,0)", Trip::new(c, b, 0), 55),
                ("p(B,C,0)", Trip::new(b, c, 0), 0),
                ("p(B,A,0)", Trip::new(b, a, 0), 70),
                ("p(C,B,1)", Trip::new(c, b, 1), 75),
                ("p(B,B,1)", Trip::new(b, b, 1), 20),
                ("p(C,A,1)", Trip::new(c, a, 1), 80),
            ] {
                r.expect(label, u(p), plan.prices.get(trip));
            }
            r.expect("driver utilities", list(&[u(50); 3]), list(&plan.driver_utilities(&e)));
            let ce = verify_ce(&e, &plan);
            r.cond("competitive equilibrium", "empty report", format!("{ce:?}"), ce.is_ce());
            let core = check_core_sampled(&e, &plan, 0, 0)?;
            r.cond(
                "core (exhaustive)",
                "no blocking coalition",
                format!("{} blocking of {}", core.blocking.len(), core.coalitions_checked),
                core.in_core() && core.exhaustive,
            );
        }
        "superbowl-replan" => {
            let e = fixture("superbowl")?;
            let (a, b, c) = (loc(&e, "A"), loc(&e, "B"), loc(&e, "C"));
            let dev = Scripted::single(2, 0, Action::Trip { dest: b, rider: None });
            let trace = run_simulation(&e, stp_mechanism().as_mut(), &dev)?;
            r.expect("replan periods", "[1]".to_string(), format!("{:?}", trace.replans));
            r.expect("p(C,A,1)", u(90), posted(&trace, Trip::new(c, a, 1)));
            r.expect("p(C,B,1)", u(85), posted(&trace, Trip::new(c, b, 1)));
            r.expect("p(B,B,1)", u(5), posted(&trace, Trip::new(b, b, 1)));
            let shifted = shift_economy(&e, &trace.states[1])?;
            let plan = plan_driver_pessimal(&shifted.economy)?;
            r.expect("Phi(C,1)", u(70), plan.potentials.at(c, 0));
            r.expect("Phi(B,2)", u(-5), plan.potentials.at(b, 1));
            r.expect("Phi(B,1)", u(-10), plan.potentials.at(b, 0));
            r.expect("deviator continuation utility", u(-10), trace.utility_from(2, 1));
            let base = omega(&shifted.economy, &[])?;
            let extra = omega(&shifted.economy, &[(BoundaryNode::Grid { loc: c, time: 0 }, 1)])?;
            r.expect("welfare gain of one more driver at (C,1)", u(70), extra - base);
        }
        "superbowl-myopic" => {
            let e = fixture("superbowl")?;
            let (a, b, c) = (loc(&e, "A"), loc(&e, "B"), loc(&e, "C"));
            let seed = 0;
            let trace = run_simulation(&e, myopic_mechanism(seed).as_mut(), &Straightforward)?;
            r.expect("p(C,B,1)", u(100), posted(&trace, Trip::new(c, b, 1)));
            r.expect("p(C,A,1)", u(200), posted(&trace, Trip::new(c, a, 1)));
            r.cond(
                "realised welfare",
                "<= 25.00",
                trace.welfare.to_string(),
                trace.welfare <= u(25),
            );
            let regret = all_regrets(&e, myopic_mechanism(seed).as_ref(), DeviationScope::Full)?;
            r.cond("driver 1 regret", ">= 20.00", regret[0].to_string(), regret[0] >= u(20));
            let (dispatch, prices) = myopic_plan(&e, seed)?;
            let report = verify_outcome(&e, &dispatch, &prices);
            let flagged = report.driver_br_violations.iter().any(|v| v.driver == 0);
            r.cond(
                "driver 1 not best-responding",
                "violation",
                format!("{:?}", report.driver_br_violations.first()),
                flagged,
            );
            let mut rider_utils = vec![Money::ZERO; e.riders.len()];
            for (j, served) in trace.served.iter().enumerate() {
                if *served {
                    rider_utils[j] = e.riders[j].value;
                }
            }
            for ch in &trace.charges {
                rider_utils[ch.rider] -= ch.amount;
            }
            let core = check_core_utilities(&e, &trace.utilities, &rider_utils, 0, 0)?;
            let side_deal = core.blocking.iter().any(|k| k.drivers == [0] && k.riders == [6]);
            r.cond(
                "driver 1 and rider 7 block the outcome",
                "blocking coalition",
                format!("{} blocking coalitions", core.blocking.len()),
                side_deal,
            );
        }
        "naive-replan" => {
            let e = fixture(name)?;
            let (a, b) = (loc(&e, "A"), loc(&e, "B"));
            let trace = run_simulation(&e, stp_mechanism().as_mut(), &Straightforward)?;
            r.expect("STP replans without deviations", 0, trace.replans.len());
            r.expect("STP p(B,B,1)", u(5), posted(&trace, Trip::new(b, b, 1)));
            r.expect("STP p(A,A,1)", u(5), posted(&trace, Trip::new(a, a, 1)));
            let naive = run_simulation(
                &e,
                always_replan_mechanism(PlanKind::DriverPessimal).as_mut(),
                &Straightforward,
            )?;
            r.expect(
                "always-replan p(B,B,1) at t=1",
                u(0),
                posted(&naive, Trip::new(b, b, 1)),
            );
            let naive_regret = all_regrets(
                &e,
                always_replan_mechanism(PlanKind::DriverPessimal).as_ref(),
                DeviationScope::Full,
            )?;
            r.expect("always-replan regret", list(&[u(4), u(0)]), list(&naive_regret));
            let stp_regret = all_regrets(&e, stp_mechanism().as_ref(), DeviationScope::Full)?;
            r.expect("STP regret", list(&[u(0), u(0)]), list(&stp_regret));
        }
        "rider-vcg" => {
            let e = fixture(name)?;
            let (a, b) = (loc(&e, "A"), loc(&e, "B"));
            let vcg = [rider_vcg_price(&e, 0)?, rider_vcg_price(&e, 1)?];
            r.expect("rider VCG prices", list(&[u(2), u(3)]), list(&vcg));
            let plan = plan_driver_pessimal(&e)?;
            r.expect(
                "p(A,A,0) + p(A,A,1)",
                u(8),
                plan.prices.get(Trip::new(a, a, 0)) + plan.prices.get(Trip::new(a, a, 1)),
            );
            r.expect("p(A,B,0)", u(8), plan.prices.get(Trip::new(a, b, 0)));
            r.expect("Phi(D)", u(8), plan.potentials.driver(0));
            for j in 0..2 {
                let check = rider_vcg_check(&e, j)?;
                r.cond(
                    &format!("minimum-price check for rider {}", j + 1),
                    "holds",
                    format!("{check:?}"),
                    check.holds(),
                );
            }
        }
        "driver-optimal" => {
            let e = fixture(name)?;
            let (a, b, c) = (loc(&e, "A"), loc(&e, "B"), loc(&e, "C"));
            let plan = plan_driver_optimal(&e)?;
            r.expect("p(C,C,1)", u(0), plan.prices.get(Trip::new(c, c, 1)));
            r.expect("p(C,C,2)", u(1), plan.prices.get(Trip::new(c, c, 2)));
            r.expect("p(A,A,2)", u(1), plan.prices.get(Trip::new(a, a, 2)));
            r.expect(
                "driver utilities",
                list(&[u(1), u(1)]),
                list(&plan.driver_utilities(&e)),
            );
            let trace = run_simulation(&e, driver_optimal_mechanism().as_mut(), &Straightforward)?;
            r.expect("realised payments", list(&[u(1), u(1)]), list(&trace.utilities));
            let dev = Scripted::single(0, 0, Action::Trip { dest: b, rider: None });
            let trace = run_simulation(&e, driver_optimal_mechanism().as_mut(), &dev)?;
            r.expect("replanned p(C,C,2)", u(5), posted(&trace, Trip::new(c, c, 2)));
            let regret = all_regrets(&e, driver_optimal_mechanism().as_ref(), DeviationScope::Full)?;
            let best = regret.iter().copied().max().unwrap_or(Money::ZERO);
            r.cond(
                "useful deviation exists",
                "> 0.00",
                best.to_string(),
                best > Money::ZERO,
            );
        }
        "dynamic-vcg" => {
            let e = fixture("driver-optimal")?;
            let pay = dynamic_vcg_payments(&e)?;
            r.expect("driver 1 payments", list(&[u(-5), u(1), u(5)]), list(&pay[0]));
            let total: Money = pay[0].iter().copied().sum();
            r.expect("driver 1 total", u(1), total);
            let loss = solve_economy(&e)?.welfare() - solve_economy(&e.without_driver(0))?.welfare();
            r.expect("welfare loss without driver 1", u(1), loss);
        }
        _ => return Err(Error::UnknownFixture(name.to_string())),
    }
    Ok(r)
}
