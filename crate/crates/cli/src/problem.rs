//! Problem file schema, parsing and validation.
//!
//! Decision problems are small human-editable JSON documents: attribute
//! specs, plan rows of `[lo, hi]` intervals, expert judgment matrices, an
//! optional per-plan preference vector and method parameters. All defaults
//! are materialized on load so a report always shows the effective values.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use greyrank_core::{
    AttributeSpec, DecisionMatrix, FusionDenominator, GreyInterval, JudgmentMatrix,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {source}")]
    Syntax {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ProblemError {
    ProblemError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaMode {
    Equal,
    Lp,
}

/// Fusion rule for the final-weight denominator, mirrored from the core enum
/// so it can ride in problem files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FusionMode {
    IntervalSum,
    MidpointScalar,
}

impl From<FusionMode> for FusionDenominator {
    fn from(mode: FusionMode) -> Self {
        match mode {
            FusionMode::IntervalSum => FusionDenominator::IntervalSum,
            FusionMode::MidpointScalar => FusionDenominator::MidpointScalar,
        }
    }
}

fn default_half() -> f64 {
    0.5
}

fn default_method_weights() -> [f64; 3] {
    [1.0 / 3.0; 3]
}

fn default_gamma_mode() -> GammaMode {
    GammaMode::Equal
}

fn default_fusion() -> FusionMode {
    FusionMode::MidpointScalar
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default = "default_half")]
    pub rho: f64,
    #[serde(default = "default_half")]
    pub theta_pos: f64,
    #[serde(default = "default_half")]
    pub theta_neg: f64,
    #[serde(default = "default_half")]
    pub lambda: f64,
    #[serde(default = "default_gamma_mode")]
    pub gamma_mode: GammaMode,
    #[serde(default = "default_method_weights")]
    pub method_weights: [f64; 3],
    #[serde(default = "default_fusion")]
    pub weight_fusion: FusionMode,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            rho: 0.5,
            theta_pos: 0.5,
            theta_neg: 0.5,
            lambda: 0.5,
            gamma_mode: GammaMode::Equal,
            method_weights: default_method_weights(),
            weight_fusion: FusionMode::MidpointScalar,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanEntry {
    pub name: String,
    pub values: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: u32,
    pub attributes: Vec<AttributeSpec>,
    pub plans: Vec<PlanEntry>,
    pub experts: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preference: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub params: Params,
}

/// Validated core-level view of a [`ProblemFile`].
#[derive(Debug)]
pub struct ValidatedProblem {
    pub matrix: DecisionMatrix,
    pub experts: Vec<JudgmentMatrix>,
    pub preference: Option<Vec<GreyInterval>>,
    pub params: Params,
}

pub fn parse_problem(path: &Path) -> Result<ProblemFile, ProblemError> {
    let text = std::fs::read_to_string(path).map_err(|source| ProblemError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_problem_str(&text, &path.display().to_string())
}

pub fn parse_problem_str(text: &str, origin: &str) -> Result<ProblemFile, ProblemError> {
    let problem: ProblemFile =
        serde_json::from_str(text).map_err(|source| ProblemError::Syntax {
            path: origin.to_string(),
            source,
        })?;
    // Run validation once at load time so downstream stages see only
    // well-formed inputs; the result is rebuilt (cheaply) by the pipeline.
    validate(&problem)?;
    Ok(problem)
}

pub fn validate(problem: &ProblemFile) -> Result<ValidatedProblem, ProblemError> {
    if problem.schema != SCHEMA_VERSION {
        return Err(invalid(
            "schema",
            format!("unsupported schema version {}, expected {SCHEMA_VERSION}", problem.schema),
        ));
    }
    let m = problem.attributes.len();
    let n = problem.plans.len();

    let mut rows = Vec::with_capacity(n);
    for (i, plan) in problem.plans.iter().enumerate() {
        if plan.values.len() != m {
            return Err(invalid(
                format!("plans[{i}].values"),
                format!("expected {m} intervals, got {}", plan.values.len()),
            ));
        }
        let mut row = Vec::with_capacity(m);
        for (j, &[lo, hi]) in plan.values.iter().enumerate() {
            let cell = GreyInterval::new(lo, hi)
                .map_err(|e| invalid(format!("plans[{i}].values[{j}]"), e.to_string()))?;
            row.push(cell);
        }
        rows.push(row);
    }
    let matrix = DecisionMatrix::new(
        problem.plans.iter().map(|p| p.name.clone()).collect(),
        problem.attributes.clone(),
        rows,
    )
    .map_err(|e| invalid("plans", e.to_string()))?;

    if problem.experts.is_empty() {
        return Err(invalid("experts", "at least one judgment matrix is required"));
    }
    let mut experts = Vec::with_capacity(problem.experts.len());
    for (l, entries) in problem.experts.iter().enumerate() {
        let jm = JudgmentMatrix::new(entries.clone())
            .map_err(|e| invalid(format!("experts[{l}]"), e.to_string()))?;
        if jm.order() != m {
            return Err(invalid(
                format!("experts[{l}]"),
                format!("order {} does not match attribute count {m}", jm.order()),
            ));
        }
        experts.push(jm);
    }

    let preference = match &problem.preference {
        None => None,
        Some(values) => {
            if values.len() != n {
                return Err(invalid(
                    "preference",
                    format!("expected {n} intervals, got {}", values.len()),
                ));
            }
            let mut intervals = Vec::with_capacity(n);
            for (i, &[lo, hi]) in values.iter().enumerate() {
                if lo < 0.0 {
                    return Err(invalid(
                        format!("preference[{i}]"),
                        "preference intervals must be non-negative",
                    ));
                }
                let cell = GreyInterval::new(lo, hi)
                    .map_err(|e| invalid(format!("preference[{i}]"), e.to_string()))?;
                intervals.push(cell);
            }
            Some(intervals)
        }
    };

    let p = &problem.params;
    if !(p.rho > 0.0 && p.rho < 1.0) {
        return Err(invalid("params.rho", format!("{} must lie in (0, 1)", p.rho)));
    }
    let special_theta = p.theta_pos == 1.0 && p.theta_neg == 0.0;
    if !special_theta && (p.theta_pos <= 0.0 || p.theta_neg <= 0.0) {
        return Err(invalid(
            "params.theta_pos/theta_neg",
            "preference coefficients must be positive (or exactly 1 and 0)",
        ));
    }
    if !(0.0..=1.0).contains(&p.lambda) {
        return Err(invalid("params.lambda", format!("{} must lie in [0, 1]", p.lambda)));
    }
    let weight_sum: f64 = p.method_weights.iter().sum();
    if p.method_weights.iter().any(|&w| w < 0.0) || (weight_sum - 1.0).abs() > 1e-9 {
        return Err(invalid(
            "params.method_weights",
            format!("must be non-negative and sum to 1, got sum {weight_sum}"),
        ));
    }

    Ok(ValidatedProblem {
        matrix,
        experts,
        preference,
        params: problem.params.clone(),
    })
}
