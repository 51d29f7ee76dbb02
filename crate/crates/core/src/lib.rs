pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod metrics;
pub mod optimizer;
pub mod outage;
pub mod params;
pub mod quadrature;
pub mod report;
pub mod simulator;
pub mod validation;

pub use error::{Error, Result};
