//! Driver for `severi-core`: run configurations, reports, a result cache and
//! verification against reference values.

pub mod cache;
pub mod config;
pub mod golden;
pub mod report;
pub mod verify;
