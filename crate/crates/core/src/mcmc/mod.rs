//! Continuous-time Monte Carlo over the exact dynamics. Every event's
//! displacement record feeds a crossing ledger, from which currents are
//! estimated with batch-means error bars.

mod estimate;
mod ledger;
mod sim;

pub use estimate::{compare_with_closed_forms, estimate_observables, Estimate, EstimateCheck, EstimatedReport};
pub use ledger::CrossingLedger;
pub use sim::{
    simulate, simulate_replicas, total_variation, Batch, Event, Horizon, SimConfig, SimOutcome, SimState, Simulator,
    DEFAULT_BATCHES,
};
