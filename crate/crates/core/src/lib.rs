//! Normalized mutual information (NI) for classifier evaluation.
//!
//! NI is the fraction of the target's entropy removed by observing the
//! classifier output, `NI = (H(T) - H(T|Y)) / H(T)`, computed from plug-in
//! frequencies. For binary classifiers the crate also provides NI in closed
//! form as a function of accuracy, precision, recall and false alarm, the
//! data behind the NI-versus-index relation maps, and an NI + accuracy model
//! ranking.

pub mod closed_form;
pub mod error;
pub mod evaluation;
pub mod exec;
pub mod export;
pub mod info_theory;
pub mod ingest;
pub mod kernel;
pub mod metrics;
pub mod relation_maps;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use metrics::{ClassSizes, ConfusionMatrix, MetricsReport};
