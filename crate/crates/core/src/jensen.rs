//! Jensen-inequality engine and the certificates built on it.
//!
//! Each outcome probability satisfies `1/n = p_i / n + ((n - 1) / n) neg_i`,
//! so Jensen's inequality bounds `f(1/n)` by a mixture of `f` over a
//! distribution and its negation. Likewise `neg_i` is the mean of the other
//! probabilities, which gives the partial-mean chain of
//! [`partial_mean_chain`].

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::{Certificate, EQUALITY_TOLERANCE};
use crate::entropy::{self_information, shannon_entropy};
use crate::negation::{negate, negate_twice};
use crate::{Error, ProbDist, Result};

/// Name of the built-in `-log2 x`.
pub const NEG_LOG: &str = "neg_log";
/// Name of the built-in `-x log2 x`.
pub const X_LOG_X: &str = "x_log_x";
/// Name of the built-in `x^2`.
pub const SQUARE: &str = "square";

const SPOT_CHECK_TRIPLES: usize = 100;
const SPOT_CHECK_SEED: u64 = 0x6e65_676c_6162;
const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    Convex,
    Concave,
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Curvature::Convex => "convex",
            Curvature::Concave => "concave",
        })
    }
}

/// An interval inside `[0, 1]`, optionally open at the lower end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lower: f64,
    pub upper: f64,
    pub lower_open: bool,
}

impl Domain {
    pub const UNIT: Domain = Domain {
        lower: 0.0,
        upper: 1.0,
        lower_open: false,
    };
    pub const UNIT_OPEN_AT_ZERO: Domain = Domain {
        lower: 0.0,
        upper: 1.0,
        lower_open: true,
    };

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lower_open {
            x > self.lower
        } else {
            x >= self.lower
        };
        above && x <= self.upper
    }

    /// Closure of the domain. Points on an open boundary are accepted by
    /// the checks and evaluate to an infinite value.
    fn closure_contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }
}

/// A real function on a subinterval of `[0, 1]`, tagged with its curvature.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    name: String,
    curvature: Curvature,
    eval: fn(f64) -> f64,
    domain: Domain,
    domain_note: String,
}

fn neg_log(x: f64) -> f64 {
    if x == 0.0 {
        f64::INFINITY
    } else {
        -libm::log2(x)
    }
}

fn x_log_x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        -x * libm::log2(x)
    }
}

fn square(x: f64) -> f64 {
    x * x
}

impl FunctionSpec {
    /// Registers a function after a numeric spot-check of its curvature tag
    /// on 100 pseudo-random triples `x < y < z` from the domain.
    pub fn register(
        name: impl Into<String>,
        curvature: Curvature,
        eval: fn(f64) -> f64,
        domain: Domain,
        domain_note: impl Into<String>,
    ) -> Result<Self> {
        let spec = Self {
            name: name.into(),
            curvature,
            eval,
            domain,
            domain_note: domain_note.into(),
        };
        if !(domain.lower >= 0.0 && domain.upper <= 1.0 && domain.lower < domain.upper) {
            return Err(Error::InvalidArgument(
                "domain must be a nonempty subinterval of [0, 1]",
            ));
        }
        if !spec.spot_check() {
            return Err(Error::SpotCheck(spec.name));
        }
        Ok(spec)
    }

    /// `-log2 x`, convex on `(0, 1]`.
    pub fn neg_log() -> Self {
        Self {
            name: NEG_LOG.to_string(),
            curvature: Curvature::Convex,
            eval: neg_log,
            domain: Domain::UNIT_OPEN_AT_ZERO,
            domain_note: "requires argument > 0; f(0) = +inf".to_string(),
        }
    }

    /// `-x log2 x`, concave on `[0, 1]` with `f(0) = 0`.
    pub fn x_log_x() -> Self {
        Self {
            name: X_LOG_X.to_string(),
            curvature: Curvature::Concave,
            eval: x_log_x,
            domain: Domain::UNIT,
            domain_note: "f(0) = 0 by continuity".to_string(),
        }
    }

    /// `x^2`, convex on `[0, 1]`.
    pub fn square() -> Self {
        Self {
            name: SQUARE.to_string(),
            curvature: Curvature::Convex,
            eval: square,
            domain: Domain::UNIT,
            domain_note: String::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn curvature(&self) -> Curvature {
        self.curvature
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn domain_note(&self) -> &str {
        &self.domain_note
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// Chord test: `f(y)` against the chord through `(x, f(x))` and
    /// `(z, f(z))`, with the inequality reversed for concave functions.
    pub fn spot_check(&self) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(SPOT_CHECK_SEED);
        let mut checked = 0;
        while checked < SPOT_CHECK_TRIPLES {
            let mut t = [0.0f64; 3];
            for v in &mut t {
                *v = rng.random_range(self.domain.lower..=self.domain.upper);
            }
            t.sort_by(f64::total_cmp);
            let [x, y, z] = t;
            if !(x < y && y < z) || !self.domain.contains(x) {
                continue;
            }
            checked += 1;
            let (fx, fy, fz) = (self.eval(x), self.eval(y), self.eval(z));
            let chord = ((z - y) * fx + (y - x) * fz) / (z - x);
            let ok = match self.curvature {
                Curvature::Convex => fy <= chord + 1e-12,
                Curvature::Concave => fy >= chord - 1e-12,
            };
            if !ok {
                return false;
            }
        }
        true
    }

    fn require(&self, expected: Curvature) -> Result<()> {
        if self.curvature != expected {
            return Err(Error::Curvature {
                name: self.name.clone(),
                actual: self.curvature,
                expected,
            });
        }
        Ok(())
    }
}

/// The built-in functions: `neg_log`, `x_log_x`, `square`.
pub fn builtins() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec::neg_log(),
        FunctionSpec::x_log_x(),
        FunctionSpec::square(),
    ]
}

/// Immutable name-indexed set of functions.
#[derive(Debug, Clone)]
pub struct FunctionRegistry {
    functions: Vec<FunctionSpec>,
}

impl Default for FunctionRegistry {
    fn default() -> Self {
        Self {
            functions: builtins(),
        }
    }
}

impl FunctionRegistry {
    /// Adds `spec`, rejecting duplicate names.
    pub fn with(mut self, spec: FunctionSpec) -> Result<Self> {
        if self.get(spec.name()).is_some() {
            return Err(Error::InvalidArgument("function name already registered"));
        }
        self.functions.push(spec);
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&FunctionSpec> {
        self.functions.iter().find(|f| f.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.functions.iter().map(|f| f.name.as_str())
    }
}

/// Jensen's inequality for one set of points and convex weights.
///
/// Convex `f`: `f(sum w x) <= sum w f(x)`. Concave `f`: the reverse, so
/// the certificate's `lhs` is the weighted mean of `f`. Equality is
/// reported when all points with positive weight coincide within `1e-9`.
pub fn jensen_check(f: &FunctionSpec, points: &[f64], weights: &[f64]) -> Result<Certificate> {
    if points.len() != weights.len() || points.is_empty() {
        return Err(Error::LengthMismatch {
            points: points.len(),
            weights: weights.len(),
        });
    }
    let wsum: f64 = weights.iter().sum();
    if weights.iter().any(|w| w.is_nan() || *w < 0.0) || (wsum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(Error::Weights(wsum));
    }
    if let Some(&x) = points.iter().find(|&&x| !f.domain.closure_contains(x)) {
        return Err(Error::PointDomain(x, f.name.clone()));
    }
    let active = || points.iter().zip(weights).filter(|(_, &w)| w > 0.0);
    let mean: f64 = active().map(|(x, w)| w * x).sum();
    let f_mean = f.eval(mean.clamp(f.domain.lower, f.domain.upper));
    let mean_f: f64 = active().map(|(&x, w)| w * f.eval(x)).sum();
    let (lo, hi) = active().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (&x, _)| {
        (lo.min(x), hi.max(x))
    });
    let cert = match f.curvature {
        Curvature::Convex => Certificate::leq("jensen", f_mean, mean_f),
        Curvature::Concave => Certificate::leq("jensen", mean_f, f_mean),
    };
    Ok(cert.with_equality(hi - lo <= EQUALITY_TOLERANCE))
}

/// `(1/n^2) sum f(a_i) + ((n - 1)/n^2) sum f(b_i)`.
fn mixture(f: impl Fn(f64) -> f64, a: &ProbDist, b: &ProbDist) -> f64 {
    let n = a.len() as f64;
    let sa: f64 = a.probs().iter().map(|&x| f(x)).sum();
    let sb: f64 = b.probs().iter().map(|&x| f(x)).sum();
    sa / (n * n) + (n - 1.0) * sb / (n * n)
}

fn uniform_point(p: &ProbDist) -> f64 {
    1.0 / p.len() as f64
}

/// `f(1/n) <= (1/n^2) sum f(p_i) + ((n - 1)/n^2) sum f(neg_i)` for convex
/// `f`, with equality on uniform inputs.
pub fn mixture_bound(f: &FunctionSpec, p: &ProbDist) -> Result<Certificate> {
    f.require(Curvature::Convex)?;
    let neg = negate(p);
    Ok(Certificate::leq(
        "mixture_bound",
        f.eval(uniform_point(p)),
        mixture(|x| f.eval(x), p, &neg),
    )
    .with_equality_if(p.is_uniform(EQUALITY_TOLERANCE)))
}

/// [`mixture_bound`] applied to the negation and the double negation.
pub fn double_negation_mixture_bound(f: &FunctionSpec, p: &ProbDist) -> Result<Certificate> {
    f.require(Curvature::Convex)?;
    let neg = negate(p);
    let neg2 = negate_twice(p);
    Ok(Certificate::leq(
        "double_negation_mixture_bound",
        f.eval(uniform_point(p)),
        mixture(|x| f.eval(x), &neg, &neg2),
    )
    .with_equality_if(p.is_uniform(EQUALITY_TOLERANCE)))
}

/// Concave counterpart of [`mixture_bound`]:
/// `(1/n^2) sum f(p_i) + ((n - 1)/n^2) sum f(neg_i) <= f(1/n)`.
///
/// For `x_log_x` a sub-certificate states the entropy form
/// `(1/n) H(P) + ((n - 1)/n) H(neg P) <= log2 n`.
pub fn concave_mixture_bound(f: &FunctionSpec, p: &ProbDist) -> Result<Certificate> {
    f.require(Curvature::Concave)?;
    let neg = negate(p);
    let cert = Certificate::leq(
        "concave_mixture_bound",
        mixture(|x| f.eval(x), p, &neg),
        f.eval(uniform_point(p)),
    )
    .with_equality_if(p.is_uniform(EQUALITY_TOLERANCE));
    if f.name != X_LOG_X {
        return Ok(cert);
    }
    let n = p.len() as f64;
    let lhs = shannon_entropy(p) / n + (n - 1.0) / n * shannon_entropy(&neg);
    let corollary = Certificate::leq("entropy_mixture_bound", lhs, libm::log2(n));
    let equality = cert.equality && corollary.equality;
    Ok(cert.with_detail(vec![corollary]).with_equality(equality))
}

/// The single-index form `f(1/n) <= (1/n) f(p_i) + ((n - 1)/n) f(neg_i)`.
pub fn pointwise_mixture_bound(
    f: &FunctionSpec,
    p: &ProbDist,
    index: usize,
) -> Result<Certificate> {
    f.require(Curvature::Convex)?;
    let n = p.len();
    let pi = *p
        .probs()
        .get(index)
        .ok_or(Error::IndexOutOfRange { index, n })?;
    let neg_i = (1.0 - pi) / (n as f64 - 1.0);
    let nf = n as f64;
    Ok(Certificate::leq(
        "pointwise_mixture_bound",
        f.eval(1.0 / nf),
        f.eval(pi) / nf + (nf - 1.0) / nf * f.eval(neg_i),
    )
    .with_equality_if((pi - 1.0 / nf).abs() <= EQUALITY_TOLERANCE)
    .at_index(index))
}

/// `log2 n <= (1/n^2) sum D(p_i) + ((n - 1)/n^2) sum D(neg_i)` with
/// `D(x) = -log2 x` the self-information. Infinite when some `p_i = 0`.
pub fn self_information_bound(p: &ProbDist) -> Certificate {
    let neg = negate(p);
    let info = |x: f64| self_information(x).unwrap_or(f64::NAN);
    Certificate::leq(
        "self_information_bound",
        libm::log2(p.len() as f64),
        mixture(info, p, &neg),
    )
    .with_equality_if(p.is_uniform(EQUALITY_TOLERANCE))
}

/// The telescoping bounds on `f(neg_i)` obtained by peeling one
/// probability at a time off the mean of the others.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialMeanChain {
    pub excluded_index: usize,
    /// Partial means from the full mean of the `n - 1` remaining
    /// probabilities down to the single lowest-indexed one.
    pub zetas: Vec<f64>,
    /// Right-hand side after each peeling step; the last one is
    /// `(1/(n - 1)) sum_{j != i} f(p_j)`.
    pub bounds: Vec<f64>,
}

/// Bounds `f(neg_i)` by successively splitting off the highest-indexed
/// remaining probability.
///
/// With `r_1 < ... < r_{n-1}` the indices other than `i` and `z_m` the mean
/// of `p_{r_1}, ..., p_{r_m}`, step `t` uses
/// `z_m = p_{r_m} / m + ((m - 1)/m) z_{m-1}` to bound
/// `f(z_{n-1}) <= (1/(n-1)) sum_{s > n-1-t} f(p_{r_s}) + ((n-1-t)/(n-1)) f(z_{n-1-t})`.
///
/// The certificate has `lhs = f(neg_i)`, `rhs =` the final bound, and one
/// detail entry per step comparing consecutive bounds.
pub fn partial_mean_chain(
    f: &FunctionSpec,
    p: &ProbDist,
    index: usize,
) -> Result<(PartialMeanChain, Certificate)> {
    f.require(Curvature::Convex)?;
    let n = p.len();
    if n < 3 {
        return Err(Error::ChainUndefined(n));
    }
    if index >= n {
        return Err(Error::IndexOutOfRange { index, n });
    }
    let rest: Vec<f64> = p
        .probs()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != index)
        .map(|(_, &x)| x)
        .collect();
    let m = rest.len();
    let mf = m as f64;

    let mut prefix = Vec::with_capacity(m + 1);
    prefix.push(0.0);
    for &x in &rest {
        prefix.push(prefix.last().copied().unwrap_or(0.0) + x);
    }
    let neg_i = negate(p).probs()[index];
    let zetas: Vec<f64> = (1..=m)
        .rev()
        .map(|k| if k == m { neg_i } else { prefix[k] / k as f64 })
        .collect();

    let lhs = f.eval(neg_i);
    let mut bounds = Vec::with_capacity(m - 1);
    let mut steps = Vec::with_capacity(m - 1);
    let mut peeled = 0.0;
    let mut prev = lhs;
    for t in 1..m {
        peeled += f.eval(rest[m - t]);
        let remaining = m - t;
        let bound = peeled / mf + remaining as f64 / mf * f.eval(zetas[t]);
        steps.push(Certificate::leq("partial_mean_step", prev, bound).at_index(t - 1));
        bounds.push(bound);
        prev = bound;
    }
    let final_bound = *bounds.last().expect("n >= 3 gives at least one step");
    let all_equal = steps.iter().all(|s| s.equality);
    let cert = Certificate::leq("partial_mean_chain", lhs, final_bound)
        .at_index(index)
        .with_detail(steps);
    let (lo, hi) = rest
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let equality = cert.equality && all_equal && hi - lo <= EQUALITY_TOLERANCE;
    Ok((
        PartialMeanChain {
            excluded_index: index,
            zetas,
            bounds,
        },
        cert.with_equality(equality),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[f64]) -> ProbDist {
        ProbDist::new(v).unwrap()
    }

    fn p4() -> ProbDist {
        d(&[1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0])
    }

    fn p5() -> ProbDist {
        d(&[0.125, 0.125, 0.5, 0.125, 0.125])
    }

    #[test]
    fn builtins_pass_spot_check() {
        for f in builtins() {
            assert!(f.spot_check(), "{}", f.name());
        }
    }

    #[test]
    fn registration_rejects_wrong_tag() {
        fn cube_root(x: f64) -> f64 {
            libm::cbrt(x)
        }
        let err = FunctionSpec::register("cbrt", Curvature::Convex, cube_root, Domain::UNIT, "");
        assert!(matches!(err, Err(Error::SpotCheck(_))));
        let ok = FunctionSpec::register("cbrt", Curvature::Concave, cube_root, Domain::UNIT, "");
        assert!(ok.is_ok());
        let reg = FunctionRegistry::default().with(ok.unwrap()).unwrap();
        assert!(reg.get("cbrt").is_some());
        assert!(reg.clone().with(FunctionSpec::square()).is_err());
        assert_eq!(reg.names().count(), 4);
    }

    #[test]
    fn jensen_examples() {
        let c = jensen_check(&FunctionSpec::square(), &[0.2, 0.4], &[0.5, 0.5]).unwrap();
        assert!((c.lhs - 0.09).abs() < 1e-15 && (c.rhs - 0.10).abs() < 1e-15);
        assert!(c.holds && !c.equality);

        let c = jensen_check(&FunctionSpec::neg_log(), &[0.3; 3], &[0.2, 0.5, 0.3]).unwrap();
        assert!(c.holds && c.equality);

        let c = jensen_check(
            &FunctionSpec::x_log_x(),
            &[1.0 / 3.0, 2.0 / 3.0],
            &[0.5, 0.5],
        )
        .unwrap();
        assert!(c.holds);
        assert_eq!(c.rhs, 0.5);
        // (f(1/3) + f(2/3)) / 2 = (log2 3)/2 - 1/3
        assert!((c.lhs - (3f64.log2() / 2.0 - 1.0 / 3.0)).abs() < 1e-15);
        assert!((c.lhs - 0.4591).abs() < 1e-4);
    }

    #[test]
    fn jensen_errors_and_infinite_path() {
        let f = FunctionSpec::neg_log();
        assert!(matches!(
            jensen_check(&f, &[0.5], &[0.5, 0.5]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            jensen_check(&f, &[0.5, 0.5], &[0.5, 0.6]),
            Err(Error::Weights(_))
        ));
        assert!(matches!(
            jensen_check(&f, &[0.5, 0.5], &[1.5, -0.5]),
            Err(Error::Weights(_))
        ));
        assert!(matches!(
            jensen_check(&f, &[1.5, 0.5], &[0.5, 0.5]),
            Err(Error::PointDomain(..))
        ));
        let c = jensen_check(&f, &[0.0, 0.5], &[0.5, 0.5]).unwrap();
        assert!(c.holds && c.infinite && !c.equality);
        // a zero-weight point at the pole does not contribute
        let c = jensen_check(&f, &[0.0, 0.5], &[0.0, 1.0]).unwrap();
        assert!(!c.infinite && c.equality);
    }

    #[test]
    fn mixture_bound_examples() {
        let f = FunctionSpec::neg_log();
        let c = mixture_bound(&f, &ProbDist::uniform(4).unwrap()).unwrap();
        assert!(c.holds && c.equality);
        assert_eq!(c.lhs, 2.0);
        assert!((c.rhs - 2.0).abs() < 1e-15);

        let c = mixture_bound(&f, &p4()).unwrap();
        let neg: [f64; 4] = [2.0 / 9.0, 5.0 / 18.0, 5.0 / 18.0, 2.0 / 9.0];
        let direct = p4().probs().iter().map(|x| -x.log2()).sum::<f64>() / 16.0
            + 3.0 * neg.iter().map(|x| -x.log2()).sum::<f64>() / 16.0;
        assert!((c.rhs - direct).abs() < 1e-14);
        assert!(c.holds && !c.equality && c.slack > 1e-3);

        let c = mixture_bound(&FunctionSpec::square(), &d(&[0.7, 0.3])).unwrap();
        assert!((c.lhs - 0.25).abs() < 1e-15);
        assert!((c.rhs - 0.29).abs() < 1e-15);

        assert!(matches!(
            mixture_bound(&FunctionSpec::x_log_x(), &p4()),
            Err(Error::Curvature { .. })
        ));
    }

    #[test]
    fn pointwise_examples() {
        let f = FunctionSpec::neg_log();
        let u = ProbDist::uniform(6).unwrap();
        for i in 0..6 {
            let c = pointwise_mixture_bound(&f, &u, i).unwrap();
            assert!(c.equality);
            assert!((c.lhs - 6f64.log2()).abs() < 1e-15);
        }
        let c = pointwise_mixture_bound(&f, &p4(), 0).unwrap();
        let expect = 0.25 * 3f64.log2() + 0.75 * 4.5f64.log2();
        assert!((c.rhs - expect).abs() < 1e-14);
        assert!(c.holds && c.lhs == 2.0);

        let q5 = d(&[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 0.0, 0.0]);
        let c = pointwise_mixture_bound(&f, &q5, 3).unwrap();
        assert!(c.holds && c.infinite);
        assert!(matches!(
            pointwise_mixture_bound(&f, &q5, 5),
            Err(Error::IndexOutOfRange { index: 5, n: 5 })
        ));
    }

    #[test]
    fn double_negation_examples() {
        let f = FunctionSpec::neg_log();
        assert!(
            double_negation_mixture_bound(&f, &ProbDist::uniform(3).unwrap())
                .unwrap()
                .equality
        );
        let c = double_negation_mixture_bound(&f, &p4()).unwrap();
        let neg: [f64; 4] = [2.0 / 9.0, 5.0 / 18.0, 5.0 / 18.0, 2.0 / 9.0];
        let neg2: [f64; 4] = [7.0 / 27.0, 13.0 / 54.0, 13.0 / 54.0, 7.0 / 27.0];
        let direct = neg.iter().map(|x| -x.log2()).sum::<f64>() / 16.0
            + 3.0 * neg2.iter().map(|x| -x.log2()).sum::<f64>() / 16.0;
        assert!((c.rhs - direct).abs() < 1e-14);
        assert!(c.holds && c.slack > 0.0);
        let c = double_negation_mixture_bound(&FunctionSpec::square(), &d(&[0.9, 0.1])).unwrap();
        // neg = (0.1, 0.9), neg2 = (0.9, 0.1): rhs = (0.82 + 0.82) / 4
        assert!((c.rhs - 0.41).abs() < 1e-15);
        assert!(c.holds);
    }

    #[test]
    fn concave_examples() {
        let f = FunctionSpec::x_log_x();
        let c = concave_mixture_bound(&f, &ProbDist::uniform(5).unwrap()).unwrap();
        assert!(c.holds && c.equality && c.detail[0].equality);

        let c = concave_mixture_bound(&f, &p4()).unwrap();
        let corollary = &c.detail[0];
        assert_eq!(corollary.name, "entropy_mixture_bound");
        assert!((corollary.lhs - 1.9729).abs() < 1e-4);
        assert_eq!(corollary.rhs, 2.0);
        assert!(c.holds && !c.equality);

        let c = concave_mixture_bound(&f, &d(&[0.9, 0.1])).unwrap();
        let h = shannon_entropy(&d(&[0.9, 0.1]));
        assert!((c.detail[0].lhs - h).abs() < 1e-12);
        assert!(c.holds);
        assert!(concave_mixture_bound(&FunctionSpec::square(), &p4()).is_err());
    }

    #[test]
    fn self_information_bound_examples() {
        let c = self_information_bound(&ProbDist::uniform(8).unwrap());
        assert!(c.equality && c.lhs == 3.0);
        let c = self_information_bound(&p4());
        assert!(c.holds && !c.equality);
        let c = self_information_bound(&d(&[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 0.0, 0.0]));
        assert!(c.holds && c.infinite);
    }

    #[test]
    fn chain_uniform_is_flat() {
        let f = FunctionSpec::neg_log();
        let (chain, c) = partial_mean_chain(&f, &ProbDist::uniform(4).unwrap(), 1).unwrap();
        assert!(chain.zetas.iter().all(|&z| (z - 0.25).abs() < 1e-15));
        assert!(chain.bounds.iter().all(|&b| (b - 2.0).abs() < 1e-14));
        assert_eq!(chain.zetas.len(), 3);
        assert_eq!(chain.bounds.len(), 2);
        assert!(c.holds && c.equality);
    }

    #[test]
    fn chain_symmetric_equality() {
        let f = FunctionSpec::neg_log();
        let (chain, c) = partial_mean_chain(&f, &p5(), 2).unwrap();
        assert_eq!(c.lhs, 3.0);
        assert!((c.rhs - 3.0).abs() <= 1e-12);
        assert!(c.equality);
        assert_eq!(chain.zetas[0], 0.125);
        let (_, c0) = partial_mean_chain(&f, &p5(), 0).unwrap();
        assert!(c0.holds && !c0.equality);
    }

    #[test]
    fn chain_p4_strict() {
        let f = FunctionSpec::neg_log();
        let (chain, c) = partial_mean_chain(&f, &p4(), 0).unwrap();
        // remaining 1/6, 1/6, 1/3
        let expect = (2.0 * -(1.0f64 / 6.0).log2() - (1.0f64 / 3.0).log2()) / 3.0;
        assert!((c.rhs - expect).abs() < 1e-14);
        assert!((c.lhs + (2.0f64 / 9.0).log2()).abs() < 1e-15);
        assert!(c.holds && !c.equality && c.slack > 1e-3);
        // zeta_3 = neg_0, zeta_2 = mean(1/6, 1/6), zeta_1 = 1/6
        assert!((chain.zetas[0] - 2.0 / 9.0).abs() < 1e-16);
        assert!((chain.zetas[1] - 1.0 / 6.0).abs() < 1e-16);
        assert!((chain.zetas[2] - 1.0 / 6.0).abs() < 1e-16);
        assert!(chain.bounds.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn chain_errors() {
        let f = FunctionSpec::neg_log();
        assert!(matches!(
            partial_mean_chain(&f, &d(&[0.9, 0.1]), 0),
            Err(Error::ChainUndefined(2))
        ));
        assert!(partial_mean_chain(&f, &p4(), 4).is_err());
        assert!(partial_mean_chain(&FunctionSpec::x_log_x(), &p4(), 0).is_err());
        let q5 = d(&[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 0.0, 0.0]);
        let (_, c) = partial_mean_chain(&f, &q5, 0).unwrap();
        assert!(c.holds && c.infinite);
    }
}
