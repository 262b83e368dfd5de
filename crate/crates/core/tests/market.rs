//! The economy model: validation, path enumeration and costs, the platform
//! state machine and time-shifted economies.

mod common;

use std::collections::BTreeSet;

use common::{oracle_path_cost, oracle_paths, small_economies, u};
use stp_core::fixtures::fixture;
use stp_core::market::{
    apply_actions, available_actions, enumerate_feasible_paths, initial_state, path_cost, shift_economy,
    validate_economy, Action, DriverState, DriverType, Economy, Path, PlatformState, ShiftedEconomy, Trip,
    DEFAULT_PATH_CAP,
};
use stp_core::mechanisms::{run_simulation, stp_mechanism, Scripted, Straightforward};
use stp_core::{Error, Money};

fn messages(e: &Economy) -> Vec<String> {
    validate_economy(e).violations
}

#[test]
fn validation_reports_each_broken_invariant() {
    let mut e = Economy::new(&["A", "B"], vec![vec![1, 2], vec![2, 1]], 2, u(1), u(1));
    e.add_driver(true, 0, 0);
    e.add_rider(0, 1, 0, u(5));
    assert!(messages(&e).is_empty());

    let mut bad = e.clone();
    bad.dist[1][0] = 0;
    assert!(messages(&bad)
        .iter()
        .any(|m| m.contains("distance from 1 to 0 must be at least 1")));

    let mut bad = e.clone();
    bad.exit_cost[0] = u(1);
    assert!(messages(&bad)
        .iter()
        .any(|m| m.contains("exit cost for zero periods early must be 0")));

    let mut bad = e.clone();
    bad.exit_cost.pop();
    assert!(messages(&bad)
        .iter()
        .any(|m| m.contains("exit cost schedule must have 3 entries")));

    let mut bad = e.clone();
    bad.drivers[0].time = 2;
    assert!(messages(&bad).iter().any(|m| m.contains("not before the horizon")));

    let mut bad = e.clone();
    bad.riders[0].time = 1;
    assert!(messages(&bad)
        .iter()
        .any(|m| m.contains("infeasible rider trip for rider 0")));

    let mut bad = e.clone();
    bad.riders[0].value = u(-1);
    assert!(messages(&bad)
        .iter()
        .any(|m| m.contains("rider 0 has a negative value")));

    let mut bad = e;
    bad.dist.pop();
    assert!(matches!(
        validate_economy(&bad).into_result(),
        Err(Error::InvalidEconomy(_))
    ));
}

#[test]
fn loading_rejects_invalid_economies() {
    let mut e = fixture("superbowl").unwrap();
    assert_eq!(Economy::from_json_str(&e.to_json_string()).unwrap(), e);
    e.dist[0][0] = 2;
    let err = Economy::from_json_str(&e.to_json_string()).unwrap_err();
    assert!(err.to_string().contains("self-distance must be 1"), "{err}");
    assert!(matches!(Economy::from_json_str("{"), Err(Error::Json(_))));
}

#[test]
fn single_driver_fixture_has_four_paths() {
    let e = fixture("single-driver-paths").unwrap();
    let d = e.drivers[0];
    let paths = enumerate_feasible_paths(&e, &d, DEFAULT_PATH_CAP).unwrap();
    let got: BTreeSet<Vec<Trip>> = paths.iter().map(|p| p.trips.clone()).collect();
    let want: BTreeSet<Vec<Trip>> = [
        vec![],
        vec![Trip::new(0, 0, 0)],
        vec![Trip::new(0, 0, 0), Trip::new(0, 0, 1)],
        vec![Trip::new(0, 1, 0)],
    ]
    .into_iter()
    .collect();
    assert_eq!(got, want);
    let costs: Vec<Money> = [vec![Trip::new(0, 0, 0), Trip::new(0, 0, 1)], vec![Trip::new(0, 1, 0)]]
        .into_iter()
        .map(|trips| path_cost(&e, &d, &Path { trips }).unwrap())
        .collect();
    assert_eq!(costs, vec![u(4), u(4)]);
}

#[test]
fn path_enumeration_and_costs_match_the_oracle() {
    for (seed, e) in small_economies(100, 4) {
        for d in &e.drivers {
            let lib: BTreeSet<Vec<Trip>> = enumerate_feasible_paths(&e, d, DEFAULT_PATH_CAP)
                .unwrap()
                .into_iter()
                .map(|p| p.trips)
                .collect();
            let oracle: BTreeSet<Vec<Trip>> = oracle_paths(&e, d).into_iter().collect();
            assert_eq!(lib, oracle, "seed {seed}");
            for trips in &oracle {
                let c = path_cost(&e, d, &Path { trips: trips.clone() }).unwrap();
                assert_eq!(c, oracle_path_cost(&e, d, trips), "seed {seed}");
            }
        }
    }
}

#[test]
fn path_enumeration_respects_the_cap() {
    let e = fixture("superbowl").unwrap();
    let err = enumerate_feasible_paths(&e, &e.drivers[0], 3).unwrap_err();
    assert!(matches!(err, Error::CapExceeded { cap: 3 }));
}

#[test]
fn broken_paths_are_rejected() {
    let e = fixture("single-driver-paths").unwrap();
    let d = e.drivers[0];
    let gap = Path {
        trips: vec![Trip::new(0, 0, 1)],
    };
    assert!(matches!(path_cost(&e, &d, &gap), Err(Error::InfeasiblePath(_))));
    let late = Path {
        trips: vec![Trip::new(0, 0, 0), Trip::new(0, 1, 1)],
    };
    assert!(matches!(path_cost(&e, &d, &late), Err(Error::InfeasiblePath(_))));
}

#[test]
fn replaying_actions_is_deterministic() {
    for (seed, e) in small_economies(30, 4) {
        let trace = run_simulation(&e, stp_mechanism().as_mut(), &Straightforward).unwrap();
        let mut state = initial_state(&e);
        for (t, steps) in trace.steps.iter().enumerate() {
            let mut actions = vec![Action::Idle; e.drivers.len()];
            for r in steps {
                actions[r.driver] = r.taken;
                assert!(available_actions(&e, &state, r.driver, &[]).contains(&r.taken));
            }
            state = apply_actions(&e, &state, &actions).unwrap();
            assert_eq!(state, trace.states[t + 1], "seed {seed} t {t}");
        }
    }
}

/// Re-expresses a state of `econ` at period `t ≥ shifted.offset` in the ids
/// and clock of the shifted economy.
fn localise(econ: &Economy, shifted: &ShiftedEconomy, state: &PlatformState) -> PlatformState {
    let off = shifted.offset;
    let drivers = shifted
        .driver_ids
        .iter()
        .map(|&i| match state.drivers[i] {
            DriverState::NotEntered {
                entered,
                location,
                time,
            } => DriverState::NotEntered {
                entered,
                location,
                time: time - off,
            },
            DriverState::Available { location, time } => DriverState::Available {
                location,
                time: time - off,
            },
            DriverState::EnRoute {
                origin,
                dest,
                start,
                rider,
            } if start >= off => DriverState::EnRoute {
                origin,
                dest,
                start: start - off,
                rider: rider.map(|j| shifted.local_rider(j).unwrap()),
            },
            DriverState::EnRoute {
                origin, dest, start, ..
            } => DriverState::NotEntered {
                entered: true,
                location: dest,
                time: start + econ.dist(origin, dest) - off,
            },
            DriverState::Gone => DriverState::Gone,
        })
        .collect();
    PlatformState {
        time: state.time - off,
        drivers,
    }
}

#[test]
fn shifting_twice_equals_shifting_once() {
    for (seed, e) in small_economies(40, 4) {
        let trace = run_simulation(&e, stp_mechanism().as_mut(), &Straightforward).unwrap();
        for t1 in 0..e.horizon {
            let first = shift_economy(&e, &trace.states[t1]).unwrap();
            for t2 in t1..e.horizon {
                let direct = shift_economy(&e, &trace.states[t2]).unwrap();
                let local = localise(&e, &first, &trace.states[t2]);
                let twice = shift_economy(&first.economy, &local).unwrap();
                assert_eq!(twice.economy, direct.economy, "seed {seed} t1 {t1} t2 {t2}");
                let ids: Vec<usize> = twice.driver_ids.iter().map(|&k| first.driver_ids[k]).collect();
                assert_eq!(ids, direct.driver_ids, "seed {seed}");
                let rids: Vec<usize> = twice.rider_ids.iter().map(|&k| first.rider_ids[k]).collect();
                assert_eq!(rids, direct.rider_ids, "seed {seed}");
            }
        }
    }
}

#[test]
fn en_route_driver_reenters_at_the_destination() {
    // A driver heading from C to A (two periods) at period 1 is, at period 2,
    // a committed entrant at A one period later.
    let mut e = Economy::new(
        &["A", "B", "C"],
        vec![vec![1, 1, 2], vec![1, 1, 1], vec![2, 1, 1]],
        4,
        u(1),
        u(1),
    );
    e.add_driver(true, 2, 0);
    let s1 = apply_actions(&e, &initial_state(&e), &[Action::Trip { dest: 2, rider: None }]).unwrap();
    let s2 = apply_actions(&e, &s1, &[Action::Trip { dest: 0, rider: None }]).unwrap();
    assert_eq!(
        s2.drivers[0],
        DriverState::EnRoute {
            origin: 2,
            dest: 0,
            start: 1,
            rider: None
        }
    );
    let shifted = shift_economy(&e, &s2).unwrap();
    assert_eq!(
        shifted.economy.drivers,
        vec![DriverType {
            entered: true,
            location: 0,
            time: 1
        }]
    );
    assert_eq!(shifted.economy.horizon, 2);
}

#[test]
fn driver_arriving_at_the_horizon_leaves_the_shifted_economy() {
    let mut e = Economy::new(&["A", "C"], vec![vec![1, 2], vec![2, 1]], 3, u(1), u(1));
    e.add_driver(true, 1, 1);
    e.add_driver(true, 0, 0);
    let s1 = apply_actions(&e, &initial_state(&e), &[Action::Idle, Action::Exit]).unwrap();
    let s2 = apply_actions(&e, &s1, &[Action::Trip { dest: 0, rider: None }, Action::Idle]).unwrap();
    let shifted = shift_economy(&e, &s2).unwrap();
    assert!(shifted.economy.drivers.is_empty());
    assert!(validate_economy(&shifted.economy).is_ok());
}

#[test]
fn illegal_transitions_are_rejected() {
    let e = fixture("superbowl").unwrap();
    let s0 = initial_state(&e);
    let wrong_rider = [
        Action::Trip {
            dest: 0,
            rider: Some(0),
        },
        Action::Exit,
        Action::Exit,
    ];
    assert!(matches!(
        apply_actions(&e, &s0, &wrong_rider),
        Err(Error::IllegalAction { driver: 0, time: 0, .. })
    ));
    assert!(matches!(
        apply_actions(&e, &s0, &[Action::Exit]),
        Err(Error::IllegalAction { .. })
    ));
}

#[test]
fn driver_with_one_period_left_at_a_single_location_has_two_paths() {
    let mut e = Economy::new(&["A"], vec![vec![1]], 3, u(1), u(1));
    let d = DriverType {
        entered: false,
        location: 0,
        time: 2,
    };
    e.drivers.push(d);
    let paths = enumerate_feasible_paths(&e, &d, DEFAULT_PATH_CAP).unwrap();
    let got: BTreeSet<Vec<Trip>> = paths.into_iter().map(|p| p.trips).collect();
    assert_eq!(got, [vec![], vec![Trip::new(0, 0, 2)]].into_iter().collect());
}

#[test]
fn long_trips_leave_the_driver_en_route_and_exit_removes_them() {
    let e = fixture("superbowl").unwrap();
    let (a, c) = (0, 2);
    let s0 = initial_state(&e);
    let s1 = apply_actions(
        &e,
        &s0,
        &[Action::Trip { dest: a, rider: None }, Action::Exit, Action::Exit],
    )
    .unwrap();
    assert_eq!(
        s1.drivers[0],
        DriverState::EnRoute {
            origin: c,
            dest: a,
            start: 0,
            rider: None
        }
    );
    assert_eq!(s1.drivers[1], DriverState::Gone);
    assert!(available_actions(&e, &s1, 0, &[]).iter().all(|x| *x == Action::Idle));
}

#[test]
fn superbowl_after_the_stay_put_deviation_shifts_to_three_entrants() {
    let e = fixture("superbowl").unwrap();
    let (b, c) = (1, 2);
    let stay = Scripted::single(2, 0, Action::Trip { dest: b, rider: None });
    let trace = run_simulation(&e, stp_mechanism().as_mut(), &stay).unwrap();
    let shifted = shift_economy(&e, &trace.states[1]).unwrap();
    let entrant = |location| DriverType {
        entered: true,
        location,
        time: 0,
    };
    assert_eq!(shifted.economy.drivers, vec![entrant(c), entrant(c), entrant(b)]);
    assert_eq!(shifted.economy.horizon, 2);
    assert_eq!(shifted.rider_ids, vec![4, 5, 6, 7, 8]);
    assert_eq!(shifted.offset, 1);
}
