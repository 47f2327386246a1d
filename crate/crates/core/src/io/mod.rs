//! Configuration, reference data and the artifacts behind each CLI verb.

pub mod calibrate;
pub mod config;
pub mod figures;
pub mod reference;
pub mod table;
pub mod verify;

pub use config::{MappingStatus, OutputFormat, RunConfig};
