//! Interval grey numbers `[lo, hi]` and the endpoint arithmetic the rest of
//! the pipeline is built on.
//!
//! Everything downstream (normalized scores, weights, weighted matrices) is
//! non-negative, so multiplication and division use the standard non-negative
//! interval rules. The distance between two intervals is the Euclidean metric
//! on their `(lo, hi)` endpoint pairs.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntervalError {
    #[error("interval bounds must be finite, got [{lo}, {hi}]")]
    NonFinite { lo: f64, hi: f64 },
    #[error("interval lower bound {lo} exceeds upper bound {hi}")]
    Inverted { lo: f64, hi: f64 },
    #[error("operand [{lo}, {hi}] must be non-negative")]
    NegativeOperand { lo: f64, hi: f64 },
    #[error("scale factor {0} must be finite and non-negative")]
    BadScale(f64),
    #[error("divisor [{lo}, {hi}] must have a strictly positive lower bound")]
    DivisorTouchesZero { lo: f64, hi: f64 },
}

/// A closed interval of reals with `lo <= hi`, immutable after construction.
///
/// Point intervals (`lo == hi`) are ordinary values, not a special case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreyInterval {
    lo: f64,
    hi: f64,
}

impl GreyInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(IntervalError::NonFinite { lo, hi });
        }
        if lo > hi {
            return Err(IntervalError::Inverted { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// Degenerate interval `[v, v]`.
    pub fn point(v: f64) -> Result<Self, IntervalError> {
        Self::new(v, v)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_non_negative(&self) -> bool {
        self.lo >= 0.0
    }

    /// Euclidean distance on endpoint pairs:
    /// `sqrt((b.hi - a.hi)^2 + (b.lo - a.lo)^2)`.
    pub fn distance(&self, other: &Self) -> f64 {
        let dh = other.hi - self.hi;
        let dl = other.lo - self.lo;
        (dh * dh + dl * dl).sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        // Endpoint sums of finite ordered bounds stay finite and ordered.
        Self {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }

    pub fn scale(&self, c: f64) -> Result<Self, IntervalError> {
        if !c.is_finite() || c < 0.0 {
            return Err(IntervalError::BadScale(c));
        }
        Ok(Self {
            lo: c * self.lo,
            hi: c * self.hi,
        })
    }

    /// Non-negative interval product `[a.lo * b.lo, a.hi * b.hi]`.
    pub fn mul(&self, other: &Self) -> Result<Self, IntervalError> {
        for op in [self, other] {
            if !op.is_non_negative() {
                return Err(IntervalError::NegativeOperand {
                    lo: op.lo,
                    hi: op.hi,
                });
            }
        }
        Ok(Self {
            lo: self.lo * other.lo,
            hi: self.hi * other.hi,
        })
    }

    /// Non-negative interval quotient `[a.lo / s.hi, a.hi / s.lo]`.
    pub fn div_by_scalar_interval(&self, s: &Self) -> Result<Self, IntervalError> {
        if !self.is_non_negative() {
            return Err(IntervalError::NegativeOperand {
                lo: self.lo,
                hi: self.hi,
            });
        }
        if s.lo <= 0.0 {
            return Err(IntervalError::DivisorTouchesZero { lo: s.lo, hi: s.hi });
        }
        Ok(Self {
            lo: self.lo / s.hi,
            hi: self.hi / s.lo,
        })
    }
}

// Wire format is a two-element array [lo, hi]; bounds are re-validated on read.
impl Serialize for GreyInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GreyInterval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [lo, hi] = <[f64; 2]>::deserialize(deserializer)?;
        GreyInterval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}
