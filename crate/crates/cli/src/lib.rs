//! Batch front-end for `isoelastic-core`.
//!
//! A job file names a model, lists deformation gradients and requests
//! checks; [`run`] evaluates it into per-input records and check reports,
//! which [`output`] encodes as JSON lines or CSV.

pub mod catalog;
pub mod job;
pub mod output;
mod run;

pub use job::{load_job, parse_job, validate, Job, JobSpec, OutputFormat};
pub use run::{run, Mode, RunOutput, Status};

/// Environment variable that overrides every seed in a job file.
pub const SEED_ENV: &str = "RICHTER_SEED";

/// Problems with the job file or its contents (exit status 2).
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error in `{path}`: {message}")]
    /// `message` already ends with the line and column.
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("inputs[{index}]: {message}")]
    Input { index: usize, message: String },

    #[error("{0}")]
    Invalid(String),
}
