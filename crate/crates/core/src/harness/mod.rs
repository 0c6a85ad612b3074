//! Manifest ingestion, sampling, suite orchestration and JSON reports.

mod manifest;
mod report;
mod sampling;
mod suites;

pub use manifest::{Manifest, ParamSpec, Parsed, SampleSpec};
pub use report::{build_report, Conventions, PlanSummary, Report};
pub use sampling::sample_points;
pub use suites::{run_suites, CheckSummary, SuiteId, SuiteOutcome, SuiteRun};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("{0}")]
    Io(String),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("parameter: {0}")]
    Parameter(String),
    #[error("sampling: {0}")]
    Sampling(String),
}
