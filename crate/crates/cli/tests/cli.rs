//! End-to-end runs of the `stp` binary: output and exit codes.

use std::fs;
use std::process::{Command, Output};

use stp_core::fixtures::fixture;
use stp_core::market::Action;
use stp_core::mechanisms::Scripted;

fn stp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn plan_prints_a_verified_equilibrium() {
    let out = stp(&["plan", "--fixture", "superbowl"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("welfare 215.00"), "{text}");
    assert!(text.contains("price C->A@1 80.00"), "{text}");
    assert!(text.contains("competitive equilibrium: ok"), "{text}");
    let opt = stp(&["plan", "--fixture", "superbowl", "--kind", "optimal"]);
    assert_eq!(opt.status.code(), Some(0));
}

#[test]
fn every_bundled_check_suite_passes() {
    let out = stp(&["verify-example", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn plan_reads_economy_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("econ.json");
    fs::write(&path, fixture("rider-vcg").unwrap().to_json_string()).unwrap();
    let out = stp(&["plan", "--econ", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn regret_and_simulate_report_the_deviation() {
    let out = stp(&["regret", "--fixture", "naive-replan", "--mechanism", "always-replan"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("driver 0 regret 4.00"), "{}", stdout(&out));

    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("script.json");
    let stay = Scripted::single(2, 0, Action::Trip { dest: 1, rider: None });
    fs::write(&script, serde_json::to_string(&stay).unwrap()).unwrap();
    let out = stp(&[
        "simulate",
        "--fixture",
        "superbowl",
        "--script",
        script.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let trace: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(trace["replans"], serde_json::json!([1]));
}

#[test]
fn dump_network_includes_the_flow_on_request() {
    let out = stp(&["dump-network", "--fixture", "single-driver-paths", "--solve"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("# welfare"));
}

#[test]
fn batch_writes_results() {
    let dir = tempfile::tempdir().unwrap();
    let out = stp(&[
        "batch",
        "--scenario",
        "airport",
        "--sweep",
        "0:40:20",
        "--reps",
        "2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let welfare = fs::read_to_string(dir.path().join("airport/welfare.csv")).unwrap();
    assert_eq!(welfare.lines().count(), 1 + 3 * 2);
    assert!(dir.path().join("airport/manifest.json").exists());
}

#[test]
fn input_and_usage_errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let cases: [&[&str]; 6] = [
        &[
            "batch",
            "--scenario",
            "airport",
            "--sweep",
            "41",
            "--reps",
            "1",
            "--out",
            out_dir,
        ],
        &["batch", "--scenario", "stadium", "--out", out_dir],
        &["plan", "--econ", "/nonexistent/economy.json"],
        &["plan", "--fixture", "nope"],
        &["regret", "--fixture", "superbowl", "--mechanism", "auction"],
        &["plan"],
    ];
    for args in cases {
        let out = stp(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"locations\": []}").unwrap();
    assert_eq!(stp(&["plan", "--econ", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn plan_of_an_economy_without_riders_has_no_prices() {
    let mut e = fixture("single-driver-paths").unwrap();
    e.riders.clear();
    e.exit_cost.iter_mut().for_each(|k| *k = stp_core::Money::ZERO);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    fs::write(&path, e.to_json_string()).unwrap();
    let out = stp(&["plan", "--econ", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains("price "), "{text}");
    assert!(text.contains("utility 0.00"), "{text}");
}

#[test]
fn event_batch_is_reproducible() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let out = stp(&[
            "batch",
            "--scenario",
            "event",
            "--reps",
            "5",
            "--regret",
            "--out",
            d.path().to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in [
        "welfare.csv",
        "time_efficiency.csv",
        "mean_regret.csv",
        "od_drivers.csv",
        "od_prices.csv",
        "manifest.json",
    ] {
        let a = fs::read(dirs[0].path().join("event").join(name)).unwrap();
        let b = fs::read(dirs[1].path().join("event").join(name)).unwrap();
        assert!(a == b && !a.is_empty(), "{name}");
    }
}
