//! Exact plethysm machinery.

pub mod cache;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod order;
pub mod partitions;
pub mod specht;
pub mod symfunc;
pub mod tabloids;

pub use error::{Error, Result};
pub use partitions::Partition;
