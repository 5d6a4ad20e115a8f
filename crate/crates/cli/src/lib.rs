//! Library half of the `forge` binary: input parsing, limit resolution and
//! job dispatch.

pub mod error;
pub mod input;
pub mod job;
pub mod limits;

pub use error::CliError;
pub use job::{run_job, Command, JobOutput, JobSpec};
pub use limits::LimitOverrides;
