//! Planning and simulation engine for spatio-temporal ridesharing markets.
//!
//! The crate is organised in layers that mirror how a market is analysed:
//!
//! * [`market`] — the economy model (locations, distances, trip and exit costs,
//!   driver and rider types), feasibility rules, the per-period platform state
//!   machine and time-shifted economies.
//! * [`flow`] — the time-expanded min-cost-flow network, an exact integral
//!   successive-shortest-path solver, flow decomposition into driver paths and
//!   the extreme dual potentials read off the residual graph.
//! * [`planner`] — priced plans (driver-pessimal and driver-optimal competitive
//!   equilibria), equilibrium / envy / budget / core verification and rider-side
//!   VCG prices.
//! * [`mechanisms`] — dynamic mechanisms (spatio-temporal pricing, myopic
//!   market clearing, static plans, driver-optimal replanning), the simulation
//!   loop, single-deviation regret and per-period dynamic VCG payments.
//! * [`experiments`] — scenario generators, batch runner, metrics and CSV export.
//! * [`fixtures`] — small hand-checked economies shipped with the crate.
//!
//! All money is carried as exact integers in minor units (see [`Money`]); no
//! floating point enters any solver path.

pub mod error;
pub mod experiments;
pub mod fixtures;
pub mod flow;
pub mod market;
pub mod mechanisms;
pub mod money;
pub mod planner;

pub use error::{Error, Result};
pub use money::Money;
