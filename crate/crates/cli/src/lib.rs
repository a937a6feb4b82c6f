//! Problem-file ingestion, pipeline orchestration and report emission for
//! the `greyrank` binary.

pub mod pipeline;
pub mod problem;
pub mod report;

pub use pipeline::{run_pipeline, PipelineError};
pub use problem::{
    parse_problem, parse_problem_str, validate, FusionMode, GammaMode, Params, PlanEntry,
    ProblemError, ProblemFile, ValidatedProblem,
};
pub use report::{emit_report, ReportFile, ReportFormat};

/// Bundled worked example: 5 equipment plans scored on 6 effect attributes by
/// two experts, with per-plan preference intervals.
pub const EXAMPLE_PROBLEM_JSON: &str = include_str!("../fixtures/worked_example.json");

/// Reference results for the bundled example.
pub mod example_expectations {
    /// Relative approach degree of grey TOPSIS.
    pub const TOPSIS_SCORES: [f64; 5] = [0.4449, 0.5078, 0.0842, 0.5205, 1.0000];
    /// Relative approach degree of grey incidence (theta = 0.5 / 0.5).
    pub const APPROACH_SCORES: [f64; 5] = [0.4809, 0.4963, 0.3714, 0.5006, 0.6411];
    /// Relative membership degree of grey incidence.
    pub const MEMBERSHIP_SCORES: [f64; 5] = [0.4618, 0.4926, 0.2588, 0.5013, 0.7614];
    /// Final rank per plan (1 = best): A5 > A4 > A2 > A1 > A3.
    pub const FINAL_RANKS: [usize; 5] = [4, 3, 5, 2, 1];
    /// Reference score vectors are reproduced to this absolute tolerance;
    /// the source tables omit their intermediate weights, so exact agreement
    /// is not expected.
    pub const SCORE_TOLERANCE: f64 = 0.05;
}
