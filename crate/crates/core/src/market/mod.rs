//! The economy model, feasibility rules, the platform state machine and
//! time-shifted economies.

mod economy;
mod paths;
mod shift;
mod state;

pub use economy::{validate_economy, DriverType, Economy, Location, Rider, Time, Trip, TripCost, ValidationReport};
pub use paths::{check_path, enumerate_feasible_paths, path_cost, ActionPath, Leg, Path, DEFAULT_PATH_CAP};
pub use shift::{shift_economy, ShiftedEconomy};
pub use state::{apply_actions, available_actions, initial_state, step_cost, Action, DriverState, PlatformState};
