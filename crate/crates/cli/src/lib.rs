//! Command-line front end: fit a mixture model to a target graph, sample
//! graphs from it, compare graphs and generate baselines.

pub mod app;
pub mod config;
pub mod model;
pub mod output;
pub mod report;

pub use app::{run, Cli};
