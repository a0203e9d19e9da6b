//! Exact q-series arithmetic for graph-indexed Nahm-type sums.

pub mod series;

pub use series::{Comparison, Exponent, Series, SeriesError};
pub mod catalog;
pub mod graph;
pub mod theta;
pub mod jets;
pub mod registry;
pub mod asymptotics;
