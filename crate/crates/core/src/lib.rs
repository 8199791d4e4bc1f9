//! Negation of discrete probability distributions.
//!
//! The negation of `P = (p_1, ..., p_n)` spreads each outcome's probability
//! evenly over the other `n - 1` outcomes, giving `(1 - p_i) / (n - 1)`.
//! This crate provides:
//!
//! - [`ProbDist`], a validated point on the probability simplex,
//! - the negation operator, its double and iterated closed forms, and the
//!   convergence trace towards the uniform distribution ([`negation`]),
//! - Shannon entropy and the entropy orderings between a distribution, its
//!   negation and `log2 n` ([`entropy`]),
//! - a Jensen-inequality engine with pluggable convex/concave functions and
//!   certificate checks built on it ([`jensen`]),
//! - the `I_alpha` dissimilarity family between a distribution and its
//!   negation ([`dissimilarity`]).
//!
//! Every inequality check returns a [`Certificate`] holding both sides, the
//! slack between them and hold/equality flags, rather than a bare boolean.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use neglab_core::{negation, ProbDist};
//!
//! let p = ProbDist::new(&[1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0]).unwrap();
//! let neg = negation::negate(&p);
//! assert!((neg.probs()[0] - 2.0 / 9.0).abs() < 1e-15);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod certificate;
pub mod dissimilarity;
pub mod distribution;
pub mod entropy;
mod error;
pub mod jensen;
pub mod negation;

pub use certificate::Certificate;
pub use dissimilarity::DissimResult;
pub use distribution::{ProbDist, ValidationReport, DEFAULT_TOLERANCE};
pub use entropy::EntropyReport;
pub use error::Error;
pub use jensen::{Curvature, FunctionSpec, PartialMeanChain};
pub use negation::ConvergenceTrace;

pub type Result<T, E = Error> = core::result::Result<T, E>;
