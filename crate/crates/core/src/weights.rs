//! Attribute weight determination from three sources and their fusion.
//!
//! Subjective interval weights come from group AHP: each expert's reciprocal
//! judgment matrix yields a priority vector (principal eigenvector, power
//! iteration) and the per-attribute envelope over experts forms the interval.
//! Objective weights combine the deviation-maximizing closed form (each
//! column weighted by its total pairwise interval-distance mass) with entropy
//! weights computed separately on lower and upper bounds. The final weight is
//! the normalized interval product of subjective and objective weights.

use serde::Serialize;
use thiserror::Error;

use crate::interval::{GreyInterval, IntervalError};
use crate::normalize::NormalizedMatrix;

/// Saaty random consistency indices for matrix orders 1..=10.
const RANDOM_INDEX: [f64; 10] = [0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49];

const POWER_ITER_TOL: f64 = 1e-12;
const POWER_ITER_MAX: usize = 10_000;
const RECIPROCAL_TOL: f64 = 1e-9;
const SIMPLEX_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("judgment matrix order {0} out of supported range 1..=10")]
    BadOrder(usize),
    #[error("judgment matrix row {row} has {got} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("judgment matrix entry [{row}][{col}] = {value} must be positive")]
    NonPositiveEntry { row: usize, col: usize, value: f64 },
    #[error("judgment matrix diagonal entry [{0}][{0}] must be 1")]
    BadDiagonal(usize),
    #[error("judgment matrix entries [{row}][{col}] and [{col}][{row}] are not reciprocal")]
    NotReciprocal { row: usize, col: usize },
    #[error("power iteration did not converge within {0} iterations")]
    NonConvergence(usize),
    #[error("expert matrices disagree on order: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("at least one expert judgment matrix is required")]
    NoExperts,
    #[error("all plans are identical; objective deviation weights are undefined")]
    ZeroTotalDeviation,
    #[error("all columns are perfectly uniform; entropy weights are undefined")]
    ZeroEntropySpread,
    #[error("a column has zero {bound}-bound mass; entropy shares are undefined")]
    ZeroColumnMass { bound: &'static str },
    #[error("weight vector is not on the simplex: sum = {0}")]
    OffSimplex(f64),
    #[error("negative weight entry {0}")]
    NegativeWeight(f64),
    #[error("weight fusion denominator has non-positive lower mass")]
    ZeroDenominator,
    #[error("weight vector length {0} does not match {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// One expert's positive reciprocal pairwise comparison matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JudgmentMatrix {
    entries: Vec<Vec<f64>>,
}

impl JudgmentMatrix {
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self, WeightError> {
        // Order 1 is the trivial single-attribute matrix [[1]]; it is allowed
        // and yields the weight vector (1) with zero inconsistency.
        let m = entries.len();
        if !(1..=10).contains(&m) {
            return Err(WeightError::BadOrder(m));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != m {
                return Err(WeightError::RaggedMatrix {
                    row: i,
                    got: row.len(),
                    expected: m,
                });
            }
        }
        for i in 0..m {
            if entries[i][i] != 1.0 {
                return Err(WeightError::BadDiagonal(i));
            }
            for j in 0..m {
                let e = entries[i][j];
                if !(e.is_finite() && e > 0.0) {
                    return Err(WeightError::NonPositiveEntry {
                        row: i,
                        col: j,
                        value: e,
                    });
                }
                if j > i && (entries[i][j] * entries[j][i] - 1.0).abs() > RECIPROCAL_TOL {
                    return Err(WeightError::NotReciprocal { row: i, col: j });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }
}

/// Non-negative weight vector summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct CrispWeightVector(Vec<f64>);

impl CrispWeightVector {
    pub fn new(values: Vec<f64>) -> Result<Self, WeightError> {
        if let Some(&v) = values.iter().find(|v| **v < 0.0) {
            return Err(WeightError::NegativeWeight(v));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(WeightError::OffSimplex(sum));
        }
        Ok(Self(values))
    }

    pub fn uniform(m: usize) -> Self {
        Self(vec![1.0 / m as f64; m])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AhpSolution {
    pub weights: CrispWeightVector,
    pub lambda_max: f64,
    pub consistency_ratio: f64,
}

/// Per-expert consistency report carried into the final weight bundle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AhpConsistency {
    pub expert: usize,
    pub lambda_max: f64,
    pub consistency_ratio: f64,
    pub acceptable: bool,
}

/// Principal eigenvector of a judgment matrix plus its consistency ratio.
///
/// Power iteration seeded with the row-geometric-mean vector; the iterate is
/// renormalized to unit sum each step. `CR = ((lambda_max - m)/(m - 1)) / RI(m)`,
/// taken as 0 for orders whose random index is 0.
pub fn ahp_priority(matrix: &JudgmentMatrix) -> Result<AhpSolution, WeightError> {
    let m = matrix.order();
    let a = matrix.entries();

    let mut w: Vec<f64> = (0..m)
        .map(|i| {
            let log_mean: f64 = a[i].iter().map(|e| e.ln()).sum::<f64>() / m as f64;
            log_mean.exp()
        })
        .collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);

    let mut converged = false;
    for _ in 0..POWER_ITER_MAX {
        let mut v: Vec<f64> = (0..m)
            .map(|i| a[i].iter().zip(&w).map(|(e, x)| e * x).sum())
            .collect();
        let s: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= s);
        let delta = v
            .iter()
            .zip(&w)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        w = v;
        if delta < POWER_ITER_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(WeightError::NonConvergence(POWER_ITER_MAX));
    }

    let lambda_max = (0..m)
        .map(|i| {
            let aw: f64 = a[i].iter().zip(&w).map(|(e, x)| e * x).sum();
            aw / w[i]
        })
        .sum::<f64>()
        / m as f64;
    let ri = RANDOM_INDEX[m - 1];
    let consistency_ratio = if ri == 0.0 {
        0.0
    } else {
        ((lambda_max - m as f64) / (m as f64 - 1.0)) / ri
    };

    Ok(AhpSolution {
        weights: CrispWeightVector::new(w)?,
        lambda_max,
        consistency_ratio,
    })
}

/// Per-attribute envelope `[min_l w_l_j, max_l w_l_j]` over expert priority vectors.
pub fn subjective_interval_weights(
    experts: &[JudgmentMatrix],
) -> Result<Vec<GreyInterval>, WeightError> {
    let first = experts.first().ok_or(WeightError::NoExperts)?;
    let m = first.order();
    for e in experts {
        if e.order() != m {
            return Err(WeightError::OrderMismatch(m, e.order()));
        }
    }
    let vectors: Vec<CrispWeightVector> = experts
        .iter()
        .map(|e| ahp_priority(e).map(|s| s.weights))
        .collect::<Result<_, _>>()?;
    (0..m)
        .map(|j| {
            let lo = vectors.iter().map(|v| v.values()[j]).fold(f64::INFINITY, f64::min);
            let hi = vectors
                .iter()
                .map(|v| v.values()[j])
                .fold(f64::NEG_INFINITY, f64::max);
            GreyInterval::new(lo, hi).map_err(WeightError::from)
        })
        .collect()
}

fn column_deviation_mass(x: &NormalizedMatrix, j: usize) -> f64 {
    let n = x.plan_count();
    let mut mass = 0.0;
    for i in 0..n {
        for k in 0..n {
            mass += x.cell(i, j).distance(x.cell(k, j));
        }
    }
    mass
}

/// Deviation-maximizing objective weights: each column's share of the total
/// pairwise interval-distance mass. This is the simplex-normalized form of the
/// closed-form maximizer of the total deviation over the unit sphere.
pub fn objective_opt_weights(x: &NormalizedMatrix) -> Result<CrispWeightVector, WeightError> {
    let m = x.attribute_count();
    let masses: Vec<f64> = (0..m).map(|j| column_deviation_mass(x, j)).collect();
    let total: f64 = masses.iter().sum();
    if total <= 0.0 {
        return Err(WeightError::ZeroTotalDeviation);
    }
    CrispWeightVector::new(masses.into_iter().map(|d| d / total).collect())
}

fn entropy_weights_for_bound(
    x: &NormalizedMatrix,
    bound: fn(&GreyInterval) -> f64,
    bound_name: &'static str,
) -> Result<Vec<f64>, WeightError> {
    let n = x.plan_count();
    let m = x.attribute_count();
    let k = 1.0 / (n as f64).ln();
    let mut etas = Vec::with_capacity(m);
    for j in 0..m {
        let col_sum: f64 = (0..n).map(|i| bound(x.cell(i, j))).sum();
        if col_sum <= 0.0 {
            return Err(WeightError::ZeroColumnMass { bound: bound_name });
        }
        let entropy: f64 = (0..n)
            .map(|i| {
                let p = bound(x.cell(i, j)) / col_sum;
                if p > 0.0 {
                    p * p.ln()
                } else {
                    0.0 // p ln p -> 0 as p -> 0
                }
            })
            .sum::<f64>()
            * -k;
        // Uniform columns give entropy 1 up to roundoff; clamp the deviation at 0.
        etas.push((1.0 - entropy).max(0.0));
    }
    Ok(etas)
}

/// Entropy weights computed separately on the lower and upper bounds of the
/// normalized matrix: `(beta_ent_lo, beta_ent_hi)`.
pub fn entropy_bound_weights(
    x: &NormalizedMatrix,
) -> Result<(CrispWeightVector, CrispWeightVector), WeightError> {
    let eta_lo = entropy_weights_for_bound(x, GreyInterval::lo, "lower")?;
    let eta_hi = entropy_weights_for_bound(x, GreyInterval::hi, "upper")?;
    let normalize = |etas: Vec<f64>| -> Result<CrispWeightVector, WeightError> {
        let total: f64 = etas.iter().sum();
        if total <= 0.0 {
            return Err(WeightError::ZeroEntropySpread);
        }
        CrispWeightVector::new(etas.into_iter().map(|e| e / total).collect())
    };
    Ok((normalize(eta_lo)?, normalize(eta_hi)?))
}

/// Componentwise min/max envelope of the three objective weight vectors.
pub fn comprehensive_objective(
    opt: &CrispWeightVector,
    ent_lo: &CrispWeightVector,
    ent_hi: &CrispWeightVector,
) -> Result<Vec<GreyInterval>, WeightError> {
    let m = opt.len();
    for v in [ent_lo, ent_hi] {
        if v.len() != m {
            return Err(WeightError::LengthMismatch(v.len(), m));
        }
    }
    (0..m)
        .map(|j| {
            let vals = [opt.values()[j], ent_lo.values()[j], ent_hi.values()[j]];
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            GreyInterval::new(lo, hi).map_err(WeightError::from)
        })
        .collect()
}

/// How the interval-product numerators are normalized in [`final_weights`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FusionDenominator {
    /// Divide each numerator by the interval sum of all numerators
    /// (cross-endpoint interval division; widens the result).
    IntervalSum,
    /// Divide by the scalar midpoint of the numerator-sum interval.
    #[default]
    MidpointScalar,
}

/// Fuse subjective and objective interval weights multiplicatively:
/// `w_j = (alpha_j * beta_j) / sum_j (alpha_j * beta_j)`.
pub fn final_weights(
    subjective: &[GreyInterval],
    objective: &[GreyInterval],
    denominator: FusionDenominator,
) -> Result<Vec<GreyInterval>, WeightError> {
    if subjective.len() != objective.len() {
        return Err(WeightError::LengthMismatch(objective.len(), subjective.len()));
    }
    let numerators: Vec<GreyInterval> = subjective
        .iter()
        .zip(objective)
        .map(|(a, b)| a.mul(b))
        .collect::<Result<_, _>>()?;
    let sum_lo: f64 = numerators.iter().map(GreyInterval::lo).sum();
    let sum_hi: f64 = numerators.iter().map(GreyInterval::hi).sum();
    match denominator {
        FusionDenominator::IntervalSum => {
            if sum_lo <= 0.0 {
                return Err(WeightError::ZeroDenominator);
            }
            let denom = GreyInterval::new(sum_lo, sum_hi)?;
            numerators
                .iter()
                .map(|n| n.div_by_scalar_interval(&denom).map_err(WeightError::from))
                .collect()
        }
        FusionDenominator::MidpointScalar => {
            let mid = 0.5 * (sum_lo + sum_hi);
            if mid <= 0.0 {
                return Err(WeightError::ZeroDenominator);
            }
            numerators
                .iter()
                .map(|n| n.scale(1.0 / mid).map_err(WeightError::from))
                .collect()
        }
    }
}

/// Everything the weight stage produces, in evaluation order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightBundle {
    pub subjective: Vec<GreyInterval>,
    pub objective_opt: CrispWeightVector,
    pub entropy_lo: CrispWeightVector,
    pub entropy_hi: CrispWeightVector,
    pub objective: Vec<GreyInterval>,
    pub final_weights: Vec<GreyInterval>,
    pub ahp_consistency: Vec<AhpConsistency>,
}

/// Run the whole weight stage, applying the documented degenerate fallbacks
/// (uniform weights when deviation or entropy spread vanishes) and collecting
/// human-readable warnings for every fallback or CR > 0.1 event.
pub fn compute_weight_bundle(
    experts: &[JudgmentMatrix],
    x: &NormalizedMatrix,
    denominator: FusionDenominator,
) -> Result<(WeightBundle, Vec<String>), WeightError> {
    let m = x.attribute_count();
    let mut warnings = Vec::new();

    let first = experts.first().ok_or(WeightError::NoExperts)?;
    if first.order() != m {
        return Err(WeightError::OrderMismatch(first.order(), m));
    }
    let mut ahp_consistency = Vec::with_capacity(experts.len());
    for (l, e) in experts.iter().enumerate() {
        let solution = ahp_priority(e)?;
        let acceptable = solution.consistency_ratio <= 0.1;
        if !acceptable {
            warnings.push(format!(
                "expert {} judgment matrix has consistency ratio {:.4} > 0.1",
                l + 1,
                solution.consistency_ratio
            ));
        }
        ahp_consistency.push(AhpConsistency {
            expert: l + 1,
            lambda_max: solution.lambda_max,
            consistency_ratio: solution.consistency_ratio,
            acceptable,
        });
    }
    let subjective = subjective_interval_weights(experts)?;

    let objective_opt = match objective_opt_weights(x) {
        Ok(v) => v,
        Err(WeightError::ZeroTotalDeviation) => {
            warnings.push(
                "zero total deviation; objective optimization weights fell back to uniform"
                    .to_string(),
            );
            CrispWeightVector::uniform(m)
        }
        Err(e) => return Err(e),
    };
    let (entropy_lo, entropy_hi) = match entropy_bound_weights(x) {
        Ok(pair) => pair,
        Err(WeightError::ZeroEntropySpread) => {
            warnings.push(
                "zero entropy spread; entropy weights fell back to uniform".to_string(),
            );
            (CrispWeightVector::uniform(m), CrispWeightVector::uniform(m))
        }
        Err(e) => return Err(e),
    };
    let objective = comprehensive_objective(&objective_opt, &entropy_lo, &entropy_hi)?;
    let final_weights = final_weights(&subjective, &objective, denominator)?;

    Ok((
        WeightBundle {
            subjective,
            objective_opt,
            entropy_lo,
            entropy_hi,
            objective,
            final_weights,
            ahp_consistency,
        },
        warnings,
    ))
}
