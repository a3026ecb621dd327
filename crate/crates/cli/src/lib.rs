//! Front end for the `agnostic` binary: CSV ingestion, regression reports,
//! power curves and simulation runs.

pub mod data;
pub mod output;
pub mod power;
pub mod regress;
pub mod simulate;

pub use data::{load_csv, Dataset, LoadError};
pub use power::{cmd_power, PowerRequest};
pub use regress::{cmd_regress, ReportRow};
pub use simulate::cmd_simulate;
