use alloc::string::String;

use crate::distribution::ValidationReport;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("a distribution needs at least 2 outcomes, got {0}")]
    Dimension(usize),

    #[error("invalid distribution: sum error {}, out-of-range indices {:?}", .0.sum_error, .0.bad_indices)]
    Validation(ValidationReport),

    #[error("dimension mismatch: {left} vs {right} outcomes")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} out of range for {n} outcomes")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("probability {0} outside [0, 1]")]
    ProbabilityDomain(f64),

    #[error("point {0} outside the domain of `{1}`")]
    PointDomain(f64, String),

    #[error("{points} points but {weights} weights")]
    LengthMismatch { points: usize, weights: usize },

    #[error("weights must be nonnegative and sum to 1, got sum {0}")]
    Weights(f64),

    #[error("`{name}` is tagged {actual}, this check needs a {expected} function")]
    Curvature {
        name: String,
        actual: crate::Curvature,
        expected: crate::Curvature,
    },

    #[error("curvature spot-check failed for `{0}`")]
    SpotCheck(String),

    #[error("partial-mean chain needs at least 3 outcomes, got {0}")]
    ChainUndefined(usize),

    #[error("alpha {0} exceeds the supported maximum {max}", max = crate::dissimilarity::MAX_ALPHA)]
    AlphaTooLarge(u32),

    #[error("alpha list must be nonempty and strictly ascending")]
    AlphaOrder,

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
