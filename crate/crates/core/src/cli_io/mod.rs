//! Group ingestion, reports, batch runs and command dispatch.

pub mod corpus;
pub mod report;
pub mod spec;

#[cfg(feature = "cli")]
mod command;

#[cfg(feature = "cli")]
pub use command::run_command;
pub use report::Report;
pub use spec::{parse_group_spec, resolve_group_arg, GroupSpec, SpecError};
