//! Seeded discrete-event simulation of emergency-department patient flow,
//! with an imaging pipeline whose delays and order bundling can be varied.
//!
//! ```no_run
//! use edflow::config::RunConfig;
//! use edflow::scenario::{run_scenario, ScenarioConfig};
//!
//! let cfg = ScenarioConfig::from_run_config(&RunConfig::default()).unwrap();
//! let result = run_scenario(&cfg).unwrap();
//! println!("mean time in ED: {:.1} min", result.overall.mean);
//! ```

pub mod config;
pub mod error;
pub mod kernel;
pub mod model;
pub mod report;
pub mod scenario;
pub mod stats;
pub mod stochastic;

pub use config::RunConfig;
pub use error::{ConfigError, DistError, KernelError, ModelError, ScenarioError, StatsError};
pub use scenario::{run_replication, run_scenario, ScenarioConfig, ScenarioResult};
