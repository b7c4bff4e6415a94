//! Stability concepts for two-sided matching markets with incomplete
//! information, where a deviating firm-worker pair may buy a credible test of
//! both types before deciding to block.
//!
//! Modules, bottom-up:
//! - [`market`]: markets, type distributions, surplus, welfare, matchings.
//! - [`info`]: option value, deviation value under a test, blocking
//!   thresholds, menus and sequential testing.
//! - [`stability`]: blocking-pair search, supporting payoffs, NTU checks and
//!   improvement dynamics.
//! - [`solver`]: stable sets per concept and whole-market reports.
//! - [`config`]: the JSON scenario document.

pub mod config;
pub mod error;
pub mod feasibility;
pub mod info;
pub mod market;
pub mod num;
pub mod solver;
pub mod stability;

pub use error::{Error, Result};
pub use num::{Exact, Scalar};
