//! Command-line front end: JSON system documents, change of ordering,
//! verification, matrix dumps and precision experiments.

pub mod commands;
pub mod document;
pub mod experiment;

pub use commands::{exit, Failure};
pub use document::{MatrixDocument, SystemDocument};
pub use experiment::{ExperimentConfig, ExperimentReport, Mode};
