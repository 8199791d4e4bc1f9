//! Validated probability distributions on a finite outcome set.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Default tolerance on `|sum - 1|` and on out-of-range entries.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Outcome of validating a candidate probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub ok: bool,
    /// `|sum(values) - 1|`, computed on the raw input.
    pub sum_error: f64,
    /// Indices whose value lies outside `[-tol, 1 + tol]` (or is NaN).
    pub bad_indices: Vec<usize>,
}

/// Checks `values` against the simplex constraints without building a
/// distribution.
pub fn validate(values: &[f64], tolerance: f64) -> ValidationReport {
    let sum: f64 = values.iter().sum();
    let sum_error = (sum - 1.0).abs();
    let bad_indices: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| !(v >= -tolerance && v <= 1.0 + tolerance))
        .map(|(i, _)| i)
        .collect();
    ValidationReport {
        ok: sum_error <= tolerance && bad_indices.is_empty(),
        sum_error,
        bad_indices,
    }
}

/// A probability vector with at least two outcomes, entries in `[0, 1]`
/// and unit sum.
///
/// Immutable once built. Constructors renormalize inputs that are within
/// tolerance of the simplex, so stored values are exactly `v_i / sum(v)`
/// after clamping tiny negatives to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    probs: Vec<f64>,
}

impl ProbDist {
    /// Builds a distribution using [`DEFAULT_TOLERANCE`].
    pub fn new(values: &[f64]) -> Result<Self> {
        Self::with_tolerance(values, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(values: &[f64], tolerance: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&tolerance) {
            return Err(Error::InvalidArgument("tolerance must lie in [0, 1)"));
        }
        if values.len() < 2 {
            return Err(Error::Dimension(values.len()));
        }
        let report = validate(values, tolerance);
        if !report.ok {
            return Err(Error::Validation(report));
        }
        let mut probs: Vec<f64> = values.iter().map(|&v| v.max(0.0)).collect();
        let sum: f64 = probs.iter().sum();
        if sum <= 0.0 {
            return Err(Error::Validation(ValidationReport {
                ok: false,
                ..report
            }));
        }
        if sum != 1.0 {
            probs.iter_mut().for_each(|v| *v /= sum);
        }
        Ok(Self { probs })
    }

    /// The uniform distribution on `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension(n));
        }
        Ok(Self {
            probs: alloc::vec![1.0 / n as f64; n],
        })
    }

    /// Wraps values already known to lie on the simplex (negation outputs).
    pub(crate) fn from_raw(probs: Vec<f64>) -> Self {
        debug_assert!(probs.len() >= 2);
        Self { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Number of outcomes.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }

    /// Appends `k` zero-probability outcomes.
    pub fn pad_with_zeros(&self, k: usize) -> Self {
        let mut probs = Vec::with_capacity(self.len() + k);
        probs.extend_from_slice(&self.probs);
        probs.resize(self.len() + k, 0.0);
        Self { probs }
    }

    /// `max_i |p_i - 1/n|`.
    pub fn max_deviation_from_uniform(&self) -> f64 {
        let u = 1.0 / self.len() as f64;
        self.probs
            .iter()
            .map(|&p| (p - u).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_uniform(&self, tolerance: f64) -> bool {
        self.max_deviation_from_uniform() <= tolerance
    }

    /// `sum_i |p_i - q_i|`, in `[0, 2]`.
    pub fn l1_distance(&self, other: &ProbDist) -> Result<f64> {
        self.check_same_len(other)?;
        Ok(self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .sum())
    }

    /// True when the entries read the same forwards and backwards.
    pub fn is_palindromic(&self, tolerance: f64) -> bool {
        self.probs
            .iter()
            .zip(self.probs.iter().rev())
            .all(|(a, b)| (a - b).abs() <= tolerance)
    }

    pub(crate) fn check_same_len(&self, other: &ProbDist) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

impl AsRef<[f64]> for ProbDist {
    fn as_ref(&self) -> &[f64] {
        &self.probs
    }
}
