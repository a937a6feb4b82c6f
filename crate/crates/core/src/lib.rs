//! Multi-attribute decision making over interval grey numbers.
//!
//! A decision problem here is a matrix of plans (rows) against attributes
//! (columns) whose entries, weights and decision-maker preferences are all
//! closed intervals `[lo, hi]`. The pipeline goes:
//!
//! 1. [`normalize`] the raw matrix (cost / effect ratio formulas),
//! 2. fuse subjective (group AHP), deviation-maximizing and entropy
//!    [`weights`] into one interval weight vector,
//! 3. score plans by three [`ranking`] methods (grey TOPSIS, incidence
//!    approach degree, incidence membership degree) and combine the rank
//!    vectors with a weighted Borda count.

pub mod interval;
pub mod normalize;
pub mod ranking;
pub mod weights;

pub use interval::{GreyInterval, IntervalError};
pub use normalize::{
    normalize_matrix, AttributeKind, AttributeSpec, DecisionMatrix, NormalizeError,
    NormalizedMatrix,
};
pub use ranking::{
    average_ranks, blend_preference, borda_aggregate, gamma_weights_lp, ideal_vectors,
    incidence_approach_scores, incidence_coefficients, incidence_degrees, membership_scores,
    rescale_preference, topsis_scores, weighted_matrix, IdealPair, IncidenceCoefficients, Method,
    MethodParams, MethodResult, PreferenceVector, RankError, RankReport, WeightedMatrix,
};
pub use weights::{
    ahp_priority, comprehensive_objective, compute_weight_bundle, entropy_bound_weights,
    final_weights, objective_opt_weights, subjective_interval_weights, AhpConsistency,
    AhpSolution, CrispWeightVector, FusionDenominator, JudgmentMatrix, WeightBundle, WeightError,
};
