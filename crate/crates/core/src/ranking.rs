//! Plan scoring by grey TOPSIS, grey incidence approach degree and grey
//! incidence membership degree, plus weighted Borda fusion of the three
//! rank vectors.
//!
//! All three methods work on the same comprehensive weighted matrix
//! `y_ij = w_j * (lambda * q_i + (1 - lambda) * x_ij)` and the columnwise
//! ideal pair built from it.

use serde::Serialize;
use thiserror::Error;

use crate::interval::{GreyInterval, IntervalError};
use crate::normalize::NormalizedMatrix;

/// Absolute threshold below which two scores count as tied.
const TIE_EPS: f64 = 1e-12;
const SIMPLEX_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RankError {
    #[error("blend coefficient lambda = {0} must lie in [0, 1]")]
    BadLambda(f64),
    #[error("distinguishing coefficient rho = {0} must lie in (0, 1)")]
    BadRho(f64),
    #[error("preference coefficients theta+ = {pos}, theta- = {neg} must be positive (or the special case 1/0)")]
    BadTheta { pos: f64, neg: f64 },
    #[error("preference vector has {got} entries, expected {expected}")]
    PreferenceLength { got: usize, expected: usize },
    #[error("preference interval [{lo}, {hi}] must satisfy 0 <= lo <= hi <= 1 after rescaling")]
    PreferenceOutOfRange { lo: f64, hi: f64 },
    #[error("weight vector has {got} entries, expected {expected}")]
    WeightLength { got: usize, expected: usize },
    #[error("incidence weights are off the simplex: sum = {0}")]
    GammaOffSimplex(f64),
    #[error("negative incidence weight {0}")]
    NegativeGamma(f64),
    #[error("coefficient matrices have mismatched shapes")]
    CoefficientShape,
    #[error("all plans are identical in every weighted column; ranking is degenerate")]
    DegenerateProblem,
    #[error("plan {0} has zero incidence degree against both ideals")]
    BothDegreesZero(usize),
    #[error("method results disagree on plan count")]
    InconsistentPlanCount,
    #[error("Borda fusion expects exactly 3 method results, got {0}")]
    WrongMethodCount(usize),
    #[error("method weights must be non-negative and sum to 1, got sum {0}")]
    BadMethodWeights(f64),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// Per-plan subjective preference intervals, constrained to `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PreferenceVector(Vec<GreyInterval>);

impl PreferenceVector {
    pub fn new(values: Vec<GreyInterval>) -> Result<Self, RankError> {
        for v in &values {
            if v.lo() < 0.0 || v.hi() > 1.0 + TIE_EPS {
                return Err(RankError::PreferenceOutOfRange {
                    lo: v.lo(),
                    hi: v.hi(),
                });
            }
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[GreyInterval] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Bring raw preference intervals into `[0, 1]` by dividing both bounds by the
/// largest upper bound, when that exceeds 1. Returns the applied divisor
/// (1.0 when the input already satisfied the range).
pub fn rescale_preference(raw: &[GreyInterval]) -> Result<(PreferenceVector, f64), RankError> {
    for v in raw {
        if v.lo() < 0.0 {
            return Err(RankError::PreferenceOutOfRange {
                lo: v.lo(),
                hi: v.hi(),
            });
        }
    }
    let max_hi = raw.iter().map(GreyInterval::hi).fold(0.0, f64::max);
    let factor = if max_hi > 1.0 { max_hi } else { 1.0 };
    let scaled = raw
        .iter()
        .map(|v| GreyInterval::new(v.lo() / factor, v.hi() / factor))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((PreferenceVector::new(scaled)?, factor))
}

/// `z_ij = lambda * q_i + (1 - lambda) * x_ij`, endpoint-wise.
pub fn blend_preference(
    x: &NormalizedMatrix,
    q: &PreferenceVector,
    lambda: f64,
) -> Result<Vec<Vec<GreyInterval>>, RankError> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(RankError::BadLambda(lambda));
    }
    if q.len() != x.plan_count() {
        return Err(RankError::PreferenceLength {
            got: q.len(),
            expected: x.plan_count(),
        });
    }
    let mut rows = Vec::with_capacity(x.plan_count());
    for (i, qi) in q.values().iter().enumerate() {
        let mut row = Vec::with_capacity(x.attribute_count());
        for j in 0..x.attribute_count() {
            let cell = x.cell(i, j);
            row.push(GreyInterval::new(
                lambda * qi.lo() + (1.0 - lambda) * cell.lo(),
                lambda * qi.hi() + (1.0 - lambda) * cell.hi(),
            )?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Comprehensive weighted decision matrix `y_ij = w_j * z_ij`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedMatrix {
    cells: Vec<Vec<GreyInterval>>,
}

impl WeightedMatrix {
    pub fn plan_count(&self) -> usize {
        self.cells.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    pub fn cell(&self, plan: usize, attr: usize) -> &GreyInterval {
        &self.cells[plan][attr]
    }

    pub fn rows(&self) -> &[Vec<GreyInterval>] {
        &self.cells
    }
}

pub fn weighted_matrix(
    z: &[Vec<GreyInterval>],
    w: &[GreyInterval],
) -> Result<WeightedMatrix, RankError> {
    let m = z.first().map_or(0, Vec::len);
    if w.len() != m {
        return Err(RankError::WeightLength {
            got: w.len(),
            expected: m,
        });
    }
    let cells = z
        .iter()
        .map(|row| {
            row.iter()
                .zip(w)
                .map(|(cell, wj)| wj.mul(cell).map_err(RankError::from))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightedMatrix { cells })
}

/// Columnwise ideal attribute vectors: the positive ideal takes the maximum
/// lower and upper bounds over plans, the negative ideal the minima.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdealPair {
    pub positive: Vec<GreyInterval>,
    pub negative: Vec<GreyInterval>,
}

pub fn ideal_vectors(y: &WeightedMatrix) -> IdealPair {
    let m = y.attribute_count();
    let mut positive = Vec::with_capacity(m);
    let mut negative = Vec::with_capacity(m);
    for j in 0..m {
        let lo_max = y.rows().iter().map(|r| r[j].lo()).fold(f64::NEG_INFINITY, f64::max);
        let hi_max = y.rows().iter().map(|r| r[j].hi()).fold(f64::NEG_INFINITY, f64::max);
        let lo_min = y.rows().iter().map(|r| r[j].lo()).fold(f64::INFINITY, f64::min);
        let hi_min = y.rows().iter().map(|r| r[j].hi()).fold(f64::INFINITY, f64::min);
        positive.push(GreyInterval::new(lo_max, hi_max).expect("columnwise maxima stay ordered"));
        negative.push(GreyInterval::new(lo_min, hi_min).expect("columnwise minima stay ordered"));
    }
    IdealPair { positive, negative }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Topsis,
    IncidenceApproach,
    IncidenceMembership,
}

/// Parameters a method actually ran with, echoed into reports.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct MethodParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_pos: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_neg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodResult {
    pub method: Method,
    pub scores: Vec<f64>,
    /// Rank 1 is best; exact ties receive their average rank, so entries can
    /// be fractional.
    pub ranks: Vec<f64>,
    pub params: MethodParams,
}

/// Descending-score ranks with average-rank tie handling (ties detected at
/// 1e-12 absolute).
pub fn average_ranks(scores: &[f64]) -> Vec<f64> {
    let n = scores.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).expect("scores are finite"));
    let mut ranks = vec![0.0; n];
    let mut pos = 0;
    while pos < n {
        let mut end = pos + 1;
        while end < n && (scores[order[end - 1]] - scores[order[end]]).abs() <= TIE_EPS {
            end += 1;
        }
        // Positions pos..end are tied; average of ranks pos+1 ..= end.
        let avg = (pos + 1 + end) as f64 / 2.0;
        for &idx in &order[pos..end] {
            ranks[idx] = avg;
        }
        pos = end;
    }
    ranks
}

/// Grey TOPSIS relative approach degree `C_i = D_i^- / (D_i^+ + D_i^-)` where
/// `D_i` is the root-sum-square bound gap to the respective ideal vector.
pub fn topsis_scores(y: &WeightedMatrix, ideals: &IdealPair) -> Result<MethodResult, RankError> {
    let mut scores = Vec::with_capacity(y.plan_count());
    for row in y.rows() {
        let gap = |ideal: &[GreyInterval]| -> f64 {
            row.iter()
                .zip(ideal)
                .map(|(c, t)| (c.hi() - t.hi()).powi(2) + (c.lo() - t.lo()).powi(2))
                .sum::<f64>()
                .sqrt()
        };
        let d_pos = gap(&ideals.positive);
        let d_neg = gap(&ideals.negative);
        if d_pos + d_neg == 0.0 {
            return Err(RankError::DegenerateProblem);
        }
        scores.push(d_neg / (d_pos + d_neg));
    }
    let ranks = average_ranks(&scores);
    Ok(MethodResult {
        method: Method::Topsis,
        scores,
        ranks,
        params: MethodParams::default(),
    })
}

/// Grey incidence coefficient matrices against both ideals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncidenceCoefficients {
    pub positive: Vec<Vec<f64>>,
    pub negative: Vec<Vec<f64>>,
    /// True when every distance to the respective ideal was zero and the
    /// coefficients were taken as all 1 by convention.
    pub degenerate_positive: bool,
    pub degenerate_negative: bool,
}

fn coefficient_matrix(
    y: &WeightedMatrix,
    ideal: &[GreyInterval],
    rho: f64,
) -> (Vec<Vec<f64>>, bool) {
    let distances: Vec<Vec<f64>> = y
        .rows()
        .iter()
        .map(|row| row.iter().zip(ideal).map(|(c, t)| c.distance(t)).collect())
        .collect();
    let min = distances
        .iter()
        .flatten()
        .fold(f64::INFINITY, |a, &b| a.min(b));
    let max = distances
        .iter()
        .flatten()
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    if max == 0.0 {
        return (vec![vec![1.0; ideal.len()]; y.plan_count()], true);
    }
    let matrix = distances
        .iter()
        .map(|row| {
            row.iter()
                .map(|&d| (min + rho * max) / (d + rho * max))
                .collect()
        })
        .collect();
    (matrix, false)
}

pub fn incidence_coefficients(
    y: &WeightedMatrix,
    ideals: &IdealPair,
    rho: f64,
) -> Result<IncidenceCoefficients, RankError> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(RankError::BadRho(rho));
    }
    let (positive, degenerate_positive) = coefficient_matrix(y, &ideals.positive, rho);
    let (negative, degenerate_negative) = coefficient_matrix(y, &ideals.negative, rho);
    Ok(IncidenceCoefficients {
        positive,
        negative,
        degenerate_positive,
        degenerate_negative,
    })
}

/// Weighted incidence degree `G_i = sum_j gamma_j r_ij`; uniform gamma gives
/// the plain mean.
pub fn incidence_degrees(r: &[Vec<f64>], gamma: &[f64]) -> Result<Vec<f64>, RankError> {
    let m = r.first().map_or(0, Vec::len);
    if gamma.len() != m {
        return Err(RankError::WeightLength {
            got: gamma.len(),
            expected: m,
        });
    }
    if let Some(&g) = gamma.iter().find(|g| **g < 0.0) {
        return Err(RankError::NegativeGamma(g));
    }
    let sum: f64 = gamma.iter().sum();
    if (sum - 1.0).abs() > SIMPLEX_TOL {
        return Err(RankError::GammaOffSimplex(sum));
    }
    Ok(r.iter()
        .map(|row| row.iter().zip(gamma).map(|(r, g)| r * g).sum())
        .collect())
}

/// Incidence-coefficient weights by the linear program
/// `max sum_j s_j gamma_j` over the simplex, `s_j = sum_i (r+_ij - r-_ij)`.
/// The maximum sits at a vertex; tied maxima split the weight equally.
pub fn gamma_weights_lp(
    r_pos: &[Vec<f64>],
    r_neg: &[Vec<f64>],
) -> Result<Vec<f64>, RankError> {
    let m = r_pos.first().map_or(0, Vec::len);
    if r_pos.len() != r_neg.len()
        || r_pos.iter().any(|r| r.len() != m)
        || r_neg.iter().any(|r| r.len() != m)
        || m == 0
    {
        return Err(RankError::CoefficientShape);
    }
    let scores: Vec<f64> = (0..m)
        .map(|j| {
            r_pos
                .iter()
                .zip(r_neg)
                .map(|(p, n)| p[j] - n[j])
                .sum()
        })
        .collect();
    let best = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let winners: Vec<usize> = (0..m).filter(|&j| (scores[j] - best).abs() <= TIE_EPS).collect();
    let share = 1.0 / winners.len() as f64;
    let mut gamma = vec![0.0; m];
    for j in winners {
        gamma[j] = share;
    }
    Ok(gamma)
}

/// Incidence relative approach degree with preference coefficients:
/// `C_i = G+_i theta+ / (G+_i theta+ + G-_i theta-)`. The special case
/// `theta+ = 1, theta- = 0` returns `G+_i` directly; otherwise both must be
/// positive and are normalized to sum 1.
pub fn incidence_approach_scores(
    g_pos: &[f64],
    g_neg: &[f64],
    theta_pos: f64,
    theta_neg: f64,
    rho: f64,
    gamma: &[f64],
) -> Result<MethodResult, RankError> {
    if g_pos.len() != g_neg.len() {
        return Err(RankError::InconsistentPlanCount);
    }
    let (scores, tp, tn) = if theta_pos == 1.0 && theta_neg == 0.0 {
        (g_pos.to_vec(), 1.0, 0.0)
    } else {
        if theta_pos <= 0.0 || theta_neg <= 0.0 {
            return Err(RankError::BadTheta {
                pos: theta_pos,
                neg: theta_neg,
            });
        }
        let total = theta_pos + theta_neg;
        let (tp, tn) = (theta_pos / total, theta_neg / total);
        let scores = g_pos
            .iter()
            .zip(g_neg)
            .map(|(p, n)| p * tp / (p * tp + n * tn))
            .collect();
        (scores, tp, tn)
    };
    let ranks = average_ranks(&scores);
    Ok(MethodResult {
        method: Method::IncidenceApproach,
        scores,
        ranks,
        params: MethodParams {
            rho: Some(rho),
            theta_pos: Some(tp),
            theta_neg: Some(tn),
            gamma: Some(gamma.to_vec()),
        },
    })
}

/// Incidence relative membership degree, the closed-form minimizer of the
/// squared-deviation objective: `u_i = G+^2 / (G+^2 + G-^2)`.
pub fn membership_scores(
    g_pos: &[f64],
    g_neg: &[f64],
    rho: f64,
    gamma: &[f64],
) -> Result<MethodResult, RankError> {
    if g_pos.len() != g_neg.len() {
        return Err(RankError::InconsistentPlanCount);
    }
    let scores = g_pos
        .iter()
        .zip(g_neg)
        .enumerate()
        .map(|(i, (p, n))| {
            let denom = p * p + n * n;
            if denom == 0.0 {
                Err(RankError::BothDegreesZero(i))
            } else {
                Ok(p * p / denom)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ranks = average_ranks(&scores);
    Ok(MethodResult {
        method: Method::IncidenceMembership,
        scores,
        ranks,
        params: MethodParams {
            rho: Some(rho),
            gamma: Some(gamma.to_vec()),
            ..MethodParams::default()
        },
    })
}

/// Fused ranking: per-plan Borda score, final order and the inputs it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub methods: Vec<MethodResult>,
    pub borda_scores: Vec<f64>,
    /// 1-based final rank per plan; ties broken by TOPSIS score, then index.
    pub final_ranks: Vec<usize>,
    pub method_weights: [f64; 3],
}

/// Weighted Borda count over the three method rank vectors: each plan earns
/// `sum_k omega_k * (n - rank_k)` points and the final order is by descending
/// score.
pub fn borda_aggregate(
    results: &[MethodResult],
    method_weights: [f64; 3],
) -> Result<RankReport, RankError> {
    if results.len() != 3 {
        return Err(RankError::WrongMethodCount(results.len()));
    }
    let n = results[0].scores.len();
    if results.iter().any(|r| r.scores.len() != n || r.ranks.len() != n) {
        return Err(RankError::InconsistentPlanCount);
    }
    let sum: f64 = method_weights.iter().sum();
    if method_weights.iter().any(|&w| w < 0.0) || (sum - 1.0).abs() > SIMPLEX_TOL {
        return Err(RankError::BadMethodWeights(sum));
    }
    let borda_scores: Vec<f64> = (0..n)
        .map(|i| {
            results
                .iter()
                .zip(&method_weights)
                .map(|(r, w)| w * (n as f64 - r.ranks[i]))
                .sum()
        })
        .collect();

    let topsis = results
        .iter()
        .find(|r| r.method == Method::Topsis)
        .map(|r| r.scores.clone())
        .unwrap_or_else(|| vec![0.0; n]);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let primary = borda_scores[b].partial_cmp(&borda_scores[a]).unwrap();
        if (borda_scores[a] - borda_scores[b]).abs() > TIE_EPS {
            return primary;
        }
        if (topsis[a] - topsis[b]).abs() > TIE_EPS {
            return topsis[b].partial_cmp(&topsis[a]).unwrap();
        }
        a.cmp(&b)
    });
    let mut final_ranks = vec![0; n];
    for (rank0, &plan) in order.iter().enumerate() {
        final_ranks[plan] = rank0 + 1;
    }

    Ok(RankReport {
        methods: results.to_vec(),
        borda_scores,
        final_ranks,
        method_weights,
    })
}
