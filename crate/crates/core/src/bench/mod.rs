//! Evaluation harness: character-level metrics, throughput measurement,
//! threshold sweeps, and report emission.

mod metrics;
mod report;
mod sweep;
mod throughput;

pub use metrics::{
    evaluate, evaluate_predictions, match_boundaries, BenchError, Counts, EvalResult,
};
pub use report::{emit_report, ReportEntry, ReportFormat, REPORT_FORMAT};
pub use sweep::{sweep_boundary_sets, threshold_sweep, SweepCurve};
pub use throughput::{measure_throughput, ThroughputResult};
