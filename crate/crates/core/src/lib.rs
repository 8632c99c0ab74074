//! Limiting Hodge data, Weil-Petersson potentials and distance checks near boundary points.

pub mod exact;
pub mod hodge_core;
pub mod limiting_data;
pub mod potential;
pub mod classifier;
pub mod fixtures;
pub mod metric_distance;
pub mod schema;
