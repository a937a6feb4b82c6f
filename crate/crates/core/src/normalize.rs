//! Raw interval decision matrix and its ratio normalization.
//!
//! Effect attributes (bigger is better) use the direct ratio formula, cost
//! attributes (smaller is better) the reciprocal one:
//!
//! ```text
//! effect:  x_lo = a_lo / sum_k a_hi          x_hi = a_hi / sum_k a_lo
//! cost:    x_lo = (1/a_hi) / sum_k (1/a_lo)  x_hi = (1/a_lo) / sum_k (1/a_hi)
//! ```
//!
//! The cross pairing (lower numerator over the sum of the opposite bound)
//! keeps `x_lo <= x_hi` per cell. Bounds can slightly exceed 1 for wide
//! intervals with few plans; they are deliberately not clamped since all
//! downstream use is through ratios and distances.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::GreyInterval;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NormalizeError {
    #[error("a decision problem needs at least 2 plans, got {0}")]
    TooFewPlans(usize),
    #[error("a decision problem needs at least 1 attribute")]
    NoAttributes,
    #[error("duplicate attribute name {0:?}")]
    DuplicateAttribute(String),
    #[error("plan {plan:?} has {got} cells, expected {expected}")]
    RaggedRow {
        plan: String,
        got: usize,
        expected: usize,
    },
    #[error("cell [{plan}][{attribute}] = [{lo}, {hi}] must be non-negative")]
    NegativeCell {
        plan: String,
        attribute: String,
        lo: f64,
        hi: f64,
    },
    #[error("cost attribute {attribute:?} has a zero lower bound in plan {plan:?}; reciprocals need lo > 0")]
    ZeroCostLowerBound { plan: String, attribute: String },
    #[error("effect attribute {attribute:?} is all-zero; the bound sums vanish")]
    AllZeroEffectColumn { attribute: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttributeKind {
    /// Smaller raw values are better.
    Cost,
    /// Larger raw values are better.
    Effect,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeSpec {
    pub name: String,
    pub kind: AttributeKind,
}

/// Raw `n x m` interval decision matrix, rows indexed by plan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionMatrix {
    plans: Vec<String>,
    attributes: Vec<AttributeSpec>,
    cells: Vec<Vec<GreyInterval>>,
}

impl DecisionMatrix {
    pub fn new(
        plans: Vec<String>,
        attributes: Vec<AttributeSpec>,
        cells: Vec<Vec<GreyInterval>>,
    ) -> Result<Self, NormalizeError> {
        let n = plans.len();
        let m = attributes.len();
        if n < 2 {
            return Err(NormalizeError::TooFewPlans(n));
        }
        if m == 0 {
            return Err(NormalizeError::NoAttributes);
        }
        for (i, attr) in attributes.iter().enumerate() {
            if attributes[..i].iter().any(|a| a.name == attr.name) {
                return Err(NormalizeError::DuplicateAttribute(attr.name.clone()));
            }
        }
        for (plan, row) in plans.iter().zip(&cells) {
            if row.len() != m {
                return Err(NormalizeError::RaggedRow {
                    plan: plan.clone(),
                    got: row.len(),
                    expected: m,
                });
            }
        }
        if cells.len() != n {
            return Err(NormalizeError::RaggedRow {
                plan: String::new(),
                got: cells.len(),
                expected: n,
            });
        }
        for (plan, row) in plans.iter().zip(&cells) {
            for (attr, cell) in attributes.iter().zip(row) {
                if !cell.is_non_negative() {
                    return Err(NormalizeError::NegativeCell {
                        plan: plan.clone(),
                        attribute: attr.name.clone(),
                        lo: cell.lo(),
                        hi: cell.hi(),
                    });
                }
                if attr.kind == AttributeKind::Cost && cell.lo() <= 0.0 {
                    return Err(NormalizeError::ZeroCostLowerBound {
                        plan: plan.clone(),
                        attribute: attr.name.clone(),
                    });
                }
            }
        }
        Ok(Self {
            plans,
            attributes,
            cells,
        })
    }

    pub fn plan_count(&self) -> usize {
        self.plans.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn plans(&self) -> &[String] {
        &self.plans
    }

    pub fn attributes(&self) -> &[AttributeSpec] {
        &self.attributes
    }

    pub fn cell(&self, plan: usize, attr: usize) -> &GreyInterval {
        &self.cells[plan][attr]
    }
}

/// Ratio-normalized matrix, same shape as its source [`DecisionMatrix`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizedMatrix {
    plans: Vec<String>,
    attributes: Vec<AttributeSpec>,
    cells: Vec<Vec<GreyInterval>>,
}

impl NormalizedMatrix {
    pub fn plan_count(&self) -> usize {
        self.plans.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn plans(&self) -> &[String] {
        &self.plans
    }

    pub fn attributes(&self) -> &[AttributeSpec] {
        &self.attributes
    }

    pub fn cell(&self, plan: usize, attr: usize) -> &GreyInterval {
        &self.cells[plan][attr]
    }

    pub fn rows(&self) -> &[Vec<GreyInterval>] {
        &self.cells
    }
}

pub fn normalize_matrix(raw: &DecisionMatrix) -> Result<NormalizedMatrix, NormalizeError> {
    let n = raw.plan_count();
    let m = raw.attribute_count();
    let mut cells = vec![Vec::with_capacity(m); n];

    for (j, attr) in raw.attributes.iter().enumerate() {
        // Column sums in input order; bit-reproducibility over last-ulp accuracy.
        let column = |f: &dyn Fn(&GreyInterval) -> f64| -> f64 {
            (0..n).map(|i| f(raw.cell(i, j))).sum()
        };
        match attr.kind {
            AttributeKind::Effect => {
                let sum_hi = column(&|c| c.hi());
                let sum_lo = column(&|c| c.lo());
                if sum_lo == 0.0 && sum_hi == 0.0 {
                    return Err(NormalizeError::AllZeroEffectColumn {
                        attribute: attr.name.clone(),
                    });
                }
                for (i, row) in cells.iter_mut().enumerate() {
                    let a = raw.cell(i, j);
                    let lo = a.lo() / sum_hi;
                    let hi = if sum_lo > 0.0 { a.hi() / sum_lo } else { f64::INFINITY };
                    if !hi.is_finite() {
                        return Err(NormalizeError::AllZeroEffectColumn {
                            attribute: attr.name.clone(),
                        });
                    }
                    row.push(GreyInterval::new(lo, hi).expect("ratio formulas keep lo <= hi"));
                }
            }
            AttributeKind::Cost => {
                // lo > 0 enforced at construction, so reciprocals are finite.
                let sum_inv_lo = column(&|c| 1.0 / c.lo());
                let sum_inv_hi = column(&|c| 1.0 / c.hi());
                for (i, row) in cells.iter_mut().enumerate() {
                    let a = raw.cell(i, j);
                    let lo = (1.0 / a.hi()) / sum_inv_lo;
                    let hi = (1.0 / a.lo()) / sum_inv_hi;
                    row.push(GreyInterval::new(lo, hi).expect("ratio formulas keep lo <= hi"));
                }
            }
        }
    }

    Ok(NormalizedMatrix {
        plans: raw.plans.clone(),
        attributes: raw.attributes.clone(),
        cells,
    })
}
