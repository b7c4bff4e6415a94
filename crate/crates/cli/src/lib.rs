//! Scenario loading, seeded market generation, sweeps, surface data and the
//! property suite on top of `icps-core`.

pub mod commands;
pub mod generate;
pub mod grid;
pub mod props;
pub mod report;
pub mod scenario;

pub use generate::{generate_market, GenerateError, GenerateSpec};
pub use scenario::{Overrides, Scenario, ScenarioConfig};
