//! The negation operator `p_i -> (1 - p_i) / (n - 1)` and its iterates.
//!
//! Negation is the affine map `x -> u + r (x - u)` with `u` the uniform
//! distribution and `r = -1 / (n - 1)`, so the `k`-fold negation has the
//! closed form `u + r^k (p - u)`. For `n >= 3` iterates converge
//! geometrically to `u`; for `n = 2` negation swaps the two entries.

use alloc::vec::Vec;

use crate::entropy::shannon_entropy;
use crate::{Error, ProbDist, Result};

/// Default iteration cap for [`converge_to_uniform`].
pub const DEFAULT_MAX_STEPS: usize = 1000;

pub fn negate(p: &ProbDist) -> ProbDist {
    let m = (p.len() - 1) as f64;
    ProbDist::from_raw(p.probs().iter().map(|&x| (1.0 - x) / m).collect())
}

/// `(p_i + n - 2) / (n - 1)^2`.
pub fn negate_twice(p: &ProbDist) -> ProbDist {
    let n = p.len() as f64;
    let m2 = (n - 1.0) * (n - 1.0);
    ProbDist::from_raw(p.probs().iter().map(|&x| (x + n - 2.0) / m2).collect())
}

/// The ratio `-1 / (n - 1)` by which negation scales deviations from
/// uniform.
pub fn contraction_ratio(n: usize) -> f64 {
    -1.0 / (n as f64 - 1.0)
}

/// `k`-fold negation via the closed form `1/n + (p_i - 1/n) r^k`.
pub fn negate_iterated(p: &ProbDist, k: u32) -> ProbDist {
    if k == 0 {
        return p.clone();
    }
    let n = p.len();
    let u = 1.0 / n as f64;
    let scale = libm::pow(contraction_ratio(n), f64::from(k));
    ProbDist::from_raw(
        p.probs()
            .iter()
            .map(|&x| (u + (x - u) * scale).max(0.0))
            .collect(),
    )
}

/// Why a trace stopped without reaching the uniform distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oscillation {
    /// Two outcomes: negation swaps them, so the iterates alternate forever.
    PeriodTwo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTrace {
    /// `p, neg p, neg neg p, ...`.
    pub iterates: Vec<ProbDist>,
    /// Shannon entropy of each iterate, in bits.
    pub entropies: Vec<f64>,
    /// `max_i |p^(k)_i - 1/n|`, as `|r|^k` times the initial deviation.
    pub distances: Vec<f64>,
    pub converged: bool,
    /// Number of negations applied.
    pub steps: usize,
    pub oscillation: Option<Oscillation>,
}

impl ConvergenceTrace {
    /// `distances[k + 1] / distances[k]` for each step with a nonzero
    /// starting distance.
    pub fn contraction_ratios(&self) -> Vec<f64> {
        self.distances
            .windows(2)
            .filter(|w| w[0] > 0.0)
            .map(|w| w[1] / w[0])
            .collect()
    }

    pub fn last(&self) -> &ProbDist {
        self.iterates
            .last()
            .expect("trace holds at least the start")
    }
}

/// Negates until every entry is within `tolerance` of `1/n`, or until
/// `max_steps` negations have been applied.
///
/// Two-outcome non-uniform inputs are reported up front as a period-two
/// oscillation.
pub fn converge_to_uniform(
    p: &ProbDist,
    tolerance: f64,
    max_steps: usize,
) -> Result<ConvergenceTrace> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    if max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be at least 1"));
    }
    let n = p.len();
    let d0 = p.max_deviation_from_uniform();
    let mut trace = ConvergenceTrace {
        iterates: alloc::vec![p.clone()],
        entropies: alloc::vec![shannon_entropy(p)],
        distances: alloc::vec![d0],
        converged: d0 <= tolerance,
        steps: 0,
        oscillation: None,
    };
    if trace.converged {
        return Ok(trace);
    }
    if n == 2 {
        let swapped = negate(p);
        trace.entropies.push(shannon_entropy(&swapped));
        trace.distances.push(swapped.max_deviation_from_uniform());
        trace.iterates.push(swapped);
        trace.steps = 1;
        trace.oscillation = Some(Oscillation::PeriodTwo);
        return Ok(trace);
    }
    let ratio = contraction_ratio(n).abs();
    for k in 1..=max_steps {
        let k32 = u32::try_from(k).unwrap_or(u32::MAX);
        let next = negate_iterated(p, k32);
        let dist = d0 * libm::pow(ratio, f64::from(k32));
        trace.entropies.push(shannon_entropy(&next));
        trace.distances.push(dist);
        trace.iterates.push(next);
        trace.steps = k;
        if dist <= tolerance {
            trace.converged = true;
            break;
        }
    }
    Ok(trace)
}
