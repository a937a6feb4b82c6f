//! Orchestration: normalized matrix -> weight bundle -> three ranking
//! methods -> weighted Borda fusion, with a trace of every default or
//! fallback that fired along the way.

use thiserror::Error;

use greyrank_core::{
    blend_preference, borda_aggregate, compute_weight_bundle, ideal_vectors,
    incidence_approach_scores, incidence_coefficients, incidence_degrees, membership_scores,
    normalize_matrix, rescale_preference, topsis_scores, weighted_matrix, NormalizeError,
    PreferenceVector, RankError, WeightError,
};

use crate::problem::{validate, GammaMode, ProblemError, ProblemFile};
use crate::report::ReportFile;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("normalization failed: {0}")]
    Normalize(#[from] NormalizeError),
    #[error("weight determination failed: {0}")]
    Weights(#[from] WeightError),
    #[error("ranking failed: {0}")]
    Ranking(#[from] RankError),
}

impl PipelineError {
    /// Exit code contract: 1 for validation problems, 2 for degenerate
    /// decision problems that parse fine but cannot be ranked.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Ranking(RankError::DegenerateProblem)
            | PipelineError::Ranking(RankError::BothDegreesZero(_)) => 2,
            _ => 1,
        }
    }
}

pub fn run_pipeline(problem: &ProblemFile) -> Result<ReportFile, PipelineError> {
    let validated = validate(problem)?;
    let params = &validated.params;
    let mut trace: Vec<String> = Vec::new();

    let normalized = normalize_matrix(&validated.matrix)?;
    let n = normalized.plan_count();
    let m = normalized.attribute_count();

    let (weights, weight_warnings) = compute_weight_bundle(
        &validated.experts,
        &normalized,
        params.weight_fusion.into(),
    )?;
    trace.extend(weight_warnings);

    // Preference blend. Without a preference vector the blended matrix is
    // just the normalized one.
    let z = match &validated.preference {
        Some(raw) => {
            let (pref, factor) = rescale_preference(raw)?;
            if factor != 1.0 {
                trace.push(format!(
                    "preference intervals rescaled by 1/{factor} to restore the unit range"
                ));
            }
            blend_preference(&normalized, &pref, params.lambda)?
        }
        None => {
            trace.push("no preference vector supplied; ranking the normalized matrix alone".into());
            let unit = PreferenceVector::new(vec![
                greyrank_core::GreyInterval::point(0.0).expect("0 is a valid point");
                n
            ])?;
            blend_preference(&normalized, &unit, 0.0)?
        }
    };

    let y = weighted_matrix(&z, &weights.final_weights)?;
    let ideals = ideal_vectors(&y);

    let topsis = topsis_scores(&y, &ideals)?;

    let coeffs = incidence_coefficients(&y, &ideals, params.rho)?;
    if coeffs.degenerate_positive || coeffs.degenerate_negative {
        trace.push(
            "all ideal distances are zero; incidence coefficients set to 1 by convention".into(),
        );
    }
    let gamma = match params.gamma_mode {
        GammaMode::Equal => vec![1.0 / m as f64; m],
        GammaMode::Lp => {
            let gamma = greyrank_core::gamma_weights_lp(&coeffs.positive, &coeffs.negative)?;
            trace.push(format!("incidence weights chosen by LP vertex solution: {gamma:?}"));
            gamma
        }
    };
    let g_pos = incidence_degrees(&coeffs.positive, &gamma)?;
    let g_neg = incidence_degrees(&coeffs.negative, &gamma)?;

    let theta_sum = params.theta_pos + params.theta_neg;
    if (theta_sum - 1.0).abs() > 1e-12 && !(params.theta_pos == 1.0 && params.theta_neg == 0.0) {
        trace.push(format!(
            "theta coefficients ({}, {}) normalized to ({}, {})",
            params.theta_pos,
            params.theta_neg,
            params.theta_pos / theta_sum,
            params.theta_neg / theta_sum,
        ));
    }
    let approach = incidence_approach_scores(
        &g_pos,
        &g_neg,
        params.theta_pos,
        params.theta_neg,
        params.rho,
        &gamma,
    )?;
    let membership = membership_scores(&g_pos, &g_neg, params.rho, &gamma)?;

    for result in [&topsis, &approach, &membership] {
        if result.ranks.iter().any(|r| r.fract() != 0.0) {
            trace.push(format!(
                "{:?} scores contain exact ties; average ranks assigned",
                result.method
            ));
        }
    }

    let fused = borda_aggregate(
        &[topsis, approach, membership],
        params.method_weights,
    )?;

    let final_order = {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| fused.final_ranks[i]);
        order
            .into_iter()
            .map(|i| normalized.plans()[i].clone())
            .collect()
    };

    Ok(ReportFile {
        schema: crate::problem::SCHEMA_VERSION,
        problem: effective_problem(problem),
        normalized,
        weights,
        methods: fused.methods,
        borda_scores: fused.borda_scores,
        final_ranks: fused.final_ranks,
        final_order,
        trace,
    })
}

/// Echo of the input with all defaults materialized, so re-running the CLI on
/// the echoed section reproduces the report bit-identically.
fn effective_problem(problem: &ProblemFile) -> ProblemFile {
    problem.clone()
}
