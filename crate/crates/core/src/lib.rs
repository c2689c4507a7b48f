//! Seed-reproducible agent-based simulation of a social network whose
//! profiles form, strengthen, weaken and sever five-tier directed links
//! according to noisily perceived affinity, while affinity diffuses over
//! close ties.
//!
//! The pieces, bottom up:
//!
//! * [`model`]: tiers, profiles, parameters and the capacity/band arithmetic.
//! * [`rng`]: per-purpose ChaCha8 substreams derived from one seed.
//! * [`network`]: the population and its tiered adjacency.
//! * [`dynamics`]: the five-phase step.
//! * [`metrics`]: density, clustering, outliers and affinity statistics.
//! * [`experiments`]: replications, sweeps, sensitivity and the scenario battery.
//! * [`io`] and [`cli`]: config files, CSV/JSON output and the command line.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod experiments;
pub mod io;
pub mod metrics;
pub mod model;
pub mod network;
pub mod rng;

pub use error::{Error, Result};
pub use exec::Executor;
pub use experiments::{run_simulation, RunSummary, Simulation};
pub use metrics::MetricsRow;
pub use model::{Params, Profile, ProfileId, Tier};
pub use network::Network;
