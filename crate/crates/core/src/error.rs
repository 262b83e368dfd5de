//! Error type shared by every module of the crate.

use std::path::PathBuf;

use thiserror::Error;

/// Convenient result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building, solving or simulating an economy.
#[derive(Debug, Error)]
pub enum Error {
    /// The economy violates one or more model invariants.
    #[error("invalid economy: {}", .0.join("; "))]
    InvalidEconomy(Vec<String>),

    /// A path does not chain in space-time or leaves the horizon.
    #[error("infeasible path: {0}")]
    InfeasiblePath(String),

    /// Exhaustive path enumeration would exceed the caller's cap.
    #[error("path enumeration exceeded the cap of {cap} paths")]
    CapExceeded {
        /// The cap that was tripped.
        cap: usize,
    },

    /// A driver attempted an action outside the available-action set.
    #[error("illegal action for driver {driver} at time {time}: {reason}")]
    IllegalAction {
        /// Offending driver id.
        driver: usize,
        /// Period in which the action was attempted.
        time: usize,
        /// Human-readable reason.
        reason: String,
    },

    /// A boundary perturbation would create a negative supply.
    #[error("invalid boundary perturbation: {0}")]
    InvalidBoundary(String),

    /// An internal invariant of the flow machinery failed.
    #[error("flow invariant violated: {0}")]
    FlowInvariant(String),

    /// A rider-side VCG price was requested for a rider that is not served.
    #[error("rider {0} is not picked up in the engine's optimal dispatch")]
    RiderNotServed(usize),

    /// Experiment parameters are out of range.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Unknown fixture name.
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    /// Error while simulating a given (sweep value, replication) work item.
    #[error("batch item (sweep value {sweep_value}, replication {replication})")]
    Batch {
        /// Sweep value of the failing item.
        sweep_value: u32,
        /// Replication index of the failing item.
        replication: usize,
        /// Underlying error.
        #[source]
        source: Box<Error>,
    },

    /// Failure to read or write a file.
    #[error("I/O error on {path}")]
    Io {
        /// The file involved.
        path: PathBuf,
        /// Underlying error.
        #[source]
        source: std::io::Error,
    },

    /// Malformed JSON document.
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    /// CSV serialisation failure.
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
