//! The `I_alpha` dissimilarity family between a distribution and another
//! distribution on the same outcomes, usually its negation.
//!
//! ```text
//! I_alpha(P; Q) = -log2( (1 + S/2) / 2 ),
//! S = sum_i [ min(p_i, ((2^a - 1) p_i + q_i) / 2^a)
//!           + min((p_i + (2^a - 1) q_i) / 2^a, q_i) ]
//! ```
//!
//! Since `min(a, b) = (a + b - |a - b|) / 2`, each summand equals
//! `p_i + q_i - |p_i - q_i| / 2^a`, so `S = 2 - l1 / 2^a` and
//! `I_alpha = -log2(1 - l1 / 2^(a + 2))`. Every evaluation computes both
//! forms.

use alloc::vec::Vec;

use crate::certificate::Certificate;
use crate::negation::{negate, negate_iterated};
use crate::{Error, ProbDist, Result};

/// Largest supported `alpha`; `2^alpha` must stay finite.
pub const MAX_ALPHA: u32 = 1000;

/// Tolerance between the literal and closed-form evaluations.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-12;

/// Tolerance on `I(P; Q) = I(Q; P)`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-14;

/// Values closer than this count as equal when classifying the ordering
/// across `alpha`.
const ORDERING_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissimResult {
    pub alpha: u32,
    /// Literal evaluation, clamped to `[0, 1]`.
    pub value: f64,
    /// The sum `S` of paired minima.
    pub sum_of_min_pairs: f64,
    /// `-log2(1 - l1 / 2^(alpha + 2))`.
    pub closed_form_value: f64,
    pub l1: f64,
}

impl DissimResult {
    pub fn closed_form_error(&self) -> f64 {
        (self.value - self.closed_form_value).abs()
    }
}

fn unit_clamp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x.min(1.0)
    }
}

pub fn i_alpha(p: &ProbDist, q: &ProbDist, alpha: u32) -> Result<DissimResult> {
    p.check_same_len(q)?;
    if alpha > MAX_ALPHA {
        return Err(Error::AlphaTooLarge(alpha));
    }
    let scale = libm::ldexp(1.0, alpha as i32);
    let sum_of_min_pairs: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&pi, &qi)| {
            let toward_q = ((scale - 1.0) * pi + qi) / scale;
            let toward_p = (pi + (scale - 1.0) * qi) / scale;
            pi.min(toward_q) + toward_p.min(qi)
        })
        .sum();
    let value = unit_clamp(-libm::log2((1.0 + 0.5 * sum_of_min_pairs) / 2.0));
    let l1 = p.l1_distance(q)?;
    let closed_form_value = unit_clamp(-libm::log2(
        1.0 - l1 * libm::ldexp(1.0, -(alpha as i32) - 2),
    ));
    Ok(DissimResult {
        alpha,
        value,
        sum_of_min_pairs,
        closed_form_value,
        l1,
    })
}

/// `I_alpha(P; neg P)`.
pub fn i_alpha_negation(p: &ProbDist, alpha: u32) -> Result<DissimResult> {
    i_alpha(p, &negate(p), alpha)
}

/// How a sequence of values moves as `alpha` increases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaOrdering {
    /// Fewer than two values.
    Single,
    Constant,
    StrictlyDecreasing,
    NonIncreasing,
    StrictlyIncreasing,
    NonDecreasing,
    Mixed,
}

impl AlphaOrdering {
    pub fn classify(values: &[f64]) -> Self {
        if values.len() < 2 {
            return Self::Single;
        }
        let (mut up, mut down, mut flat) = (false, false, false);
        for w in values.windows(2) {
            let d = w[1] - w[0];
            if d > ORDERING_TOLERANCE {
                up = true;
            } else if d < -ORDERING_TOLERANCE {
                down = true;
            } else {
                flat = true;
            }
        }
        match (up, down, flat) {
            (false, false, _) => Self::Constant,
            (false, true, false) => Self::StrictlyDecreasing,
            (false, true, true) => Self::NonIncreasing,
            (true, false, false) => Self::StrictlyIncreasing,
            (true, false, true) => Self::NonDecreasing,
            (true, true, _) => Self::Mixed,
        }
    }

    pub fn is_non_increasing(self) -> bool {
        matches!(
            self,
            Self::Single | Self::Constant | Self::StrictlyDecreasing | Self::NonIncreasing
        )
    }

    pub fn is_non_decreasing(self) -> bool {
        matches!(
            self,
            Self::Single | Self::Constant | Self::StrictlyIncreasing | Self::NonDecreasing
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Single => "single",
            Self::Constant => "constant",
            Self::StrictlyDecreasing => "strictly_decreasing",
            Self::NonIncreasing => "non_increasing",
            Self::StrictlyIncreasing => "strictly_increasing",
            Self::NonDecreasing => "non_decreasing",
            Self::Mixed => "mixed",
        }
    }
}

/// Range, identity and symmetry checks of `I_alpha(P; neg P)` over a list
/// of `alpha` values, plus the observed ordering across `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertiesReport {
    pub values: Vec<DissimResult>,
    /// `I_alpha(neg P; P)` for the same `alpha` list.
    pub swapped: Vec<DissimResult>,
    pub range_ok: bool,
    pub zero_iff_equal_ok: bool,
    pub symmetry_ok: bool,
    pub symmetry_max_error: f64,
    pub ordering: AlphaOrdering,
    /// Holds iff the range, identity and symmetry checks pass. The ordering
    /// is reported separately and does not affect it.
    pub certificate: Certificate,
}

pub fn m_properties_check(p: &ProbDist, alphas: &[u32]) -> Result<PropertiesReport> {
    properties_check(p, &negate(p), alphas)
}

/// As [`m_properties_check`] for an arbitrary pair.
pub fn properties_check(p: &ProbDist, q: &ProbDist, alphas: &[u32]) -> Result<PropertiesReport> {
    if alphas.is_empty() || alphas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::AlphaOrder);
    }
    let values = alphas
        .iter()
        .map(|&a| i_alpha(p, q, a))
        .collect::<Result<Vec<_>>>()?;
    let swapped = alphas
        .iter()
        .map(|&a| i_alpha(q, p, a))
        .collect::<Result<Vec<_>>>()?;

    let range_violations = values
        .iter()
        .filter(|r| !(0.0..=1.0).contains(&r.value))
        .count();
    let identity_violations = values
        .iter()
        .filter(|r| (r.value <= CLOSED_FORM_TOLERANCE) != (r.l1 <= CLOSED_FORM_TOLERANCE))
        .count();
    let symmetry_max_error = values
        .iter()
        .zip(&swapped)
        .map(|(a, b)| (a.value - b.value).abs())
        .fold(0.0, f64::max);
    let closed_form_max_error = values
        .iter()
        .map(DissimResult::closed_form_error)
        .fold(0.0, f64::max);
    let ordering = AlphaOrdering::classify(&values.iter().map(|r| r.value).collect::<Vec<_>>());

    let certificate = Certificate::no_violations(
        "dissimilarity_properties",
        range_violations + identity_violations,
    )
    .with_detail(alloc::vec![
        Certificate::no_violations("range", range_violations),
        Certificate::no_violations("zero_iff_equal", identity_violations),
        Certificate::leq("symmetry", symmetry_max_error, SYMMETRY_TOLERANCE),
        Certificate::leq(
            "closed_form_agreement",
            closed_form_max_error,
            CLOSED_FORM_TOLERANCE
        ),
    ]);
    Ok(PropertiesReport {
        range_ok: range_violations == 0,
        zero_iff_equal_ok: identity_violations == 0,
        symmetry_ok: symmetry_max_error <= SYMMETRY_TOLERANCE,
        symmetry_max_error,
        values,
        swapped,
        ordering,
        certificate,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IteratedDissim {
    /// `I_alpha(P; P^(k))` for `k = 1..=depth`.
    pub results: Vec<DissimResult>,
    pub non_decreasing: bool,
}

/// Dissimilarity between `p` and each of its first `depth` iterated
/// negations, with a flag for whether the values grow with `k`.
pub fn negation_iterate_dissim(p: &ProbDist, alpha: u32, depth: u32) -> Result<IteratedDissim> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1"));
    }
    let results = (1..=depth)
        .map(|k| i_alpha(p, &negate_iterated(p, k), alpha))
        .collect::<Result<Vec<_>>>()?;
    let non_decreasing = results
        .windows(2)
        .all(|w| w[1].value >= w[0].value - ORDERING_TOLERANCE);
    Ok(IteratedDissim {
        results,
        non_decreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(v: &[f64]) -> ProbDist {
        ProbDist::new(v).unwrap()
    }

    fn p4() -> ProbDist {
        d(&[1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0])
    }

    /// Term-by-term evaluation written independently of `i_alpha`.
    fn literal_oracle(p: &[f64], q: &[f64], alpha: u32) -> f64 {
        let two_a = 2f64.powi(alpha as i32);
        let mut s = 0.0;
        for (pi, qi) in p.iter().zip(q) {
            let a = ((two_a - 1.0) * pi + qi) / two_a;
            let b = (pi + (two_a - 1.0) * qi) / two_a;
            s += if *pi < a { *pi } else { a };
            s += if b < *qi { b } else { *qi };
        }
        -((1.0 + s / 2.0) / 2.0).log2()
    }

    #[test]
    fn identical_inputs_give_zero() {
        for a in [0, 1, 5, 16] {
            let r = i_alpha(&p4(), &p4(), a).unwrap();
            assert_eq!(r.value, 0.0);
            assert_eq!(r.l1, 0.0);
        }
    }

    #[test]
    fn p4_fixtures() {
        let neg = negate(&p4());
        let r = i_alpha(&p4(), &neg, 0).unwrap();
        assert!((r.l1 - 4.0 / 9.0).abs() < 1e-15);
        assert!((r.value + (8.0f64 / 9.0).log2()).abs() < 1e-12);
        assert!((r.value - 0.16993).abs() < 1e-5);
        assert!((r.value - literal_oracle(p4().probs(), neg.probs(), 0)).abs() < 1e-15);
        let r = i_alpha(&p4(), &neg, 1).unwrap();
        assert!((r.value + (17.0f64 / 18.0).log2()).abs() < 1e-12);
        assert!((r.value - 0.08246).abs() < 1e-5);
    }

    #[test]
    fn disjoint_supports_attain_one() {
        let r = i_alpha(&d(&[1.0, 0.0]), &d(&[0.0, 1.0]), 0).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.closed_form_value, 1.0);
        assert!(i_alpha(&d(&[1.0, 0.0]), &d(&[0.0, 1.0]), 1).unwrap().value < 1.0);
    }

    #[test]
    fn negation_examples() {
        for n in [2, 3, 7] {
            let u = ProbDist::uniform(n).unwrap();
            assert!(i_alpha_negation(&u, 3).unwrap().value <= 1e-15);
        }
        assert!((i_alpha_negation(&p4(), 0).unwrap().value - 0.16993).abs() < 1e-5);
        let r = i_alpha_negation(&d(&[0.9, 0.1]), 0).unwrap();
        assert!((r.l1 - 1.6).abs() < 1e-15);
        assert!((r.value + 0.6f64.log2()).abs() < 1e-12);
        assert!((r.value - 0.73697).abs() < 1e-5);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            i_alpha(&p4(), &d(&[0.5, 0.5]), 0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            i_alpha(&p4(), &p4(), MAX_ALPHA + 1),
            Err(Error::AlphaTooLarge(_))
        ));
        assert!(matches!(
            m_properties_check(&p4(), &[]),
            Err(Error::AlphaOrder)
        ));
        assert!(matches!(
            m_properties_check(&p4(), &[2, 1]),
            Err(Error::AlphaOrder)
        ));
        assert!(negation_iterate_dissim(&p4(), 0, 0).is_err());
    }

    #[test]
    fn properties_uniform() {
        let r = m_properties_check(&ProbDist::uniform(4).unwrap(), &[0, 1, 2]).unwrap();
        assert!(r.certificate.holds);
        assert!(r.values.iter().all(|v| v.value == 0.0));
        assert_eq!(r.ordering, AlphaOrdering::Constant);
    }

    #[test]
    fn properties_p4() {
        let r = m_properties_check(&p4(), &[0, 1, 2, 3]).unwrap();
        assert!(r.certificate.holds && r.range_ok && r.zero_iff_equal_ok && r.symmetry_ok);
        let expected: Vec<f64> = (0..4)
            .map(|a| -(1.0 - (4.0 / 9.0) / 2f64.powi(a + 2)).log2())
            .collect();
        for (got, want) in r.values.iter().zip(&expected) {
            assert!((got.value - want).abs() < 1e-12);
        }
        for (got, want) in r.values.iter().zip([0.16993, 0.08246, 0.04064, 0.02018]) {
            assert!((got.value - want).abs() < 1e-5);
        }
        assert_eq!(r.ordering, AlphaOrdering::StrictlyDecreasing);
    }

    #[test]
    fn properties_two_outcomes() {
        let r = m_properties_check(&d(&[0.9, 0.1]), &[0, 5]).unwrap();
        assert!(r.certificate.holds);
        assert!(r.values[1].value < r.values[0].value);
    }

    #[test]
    fn iterated_p4_against_brute_force() {
        let p = p4();
        let got = negation_iterate_dissim(&p, 0, 3).unwrap();
        let mut it = p.clone();
        for (k, r) in got.results.iter().enumerate() {
            it = negate(&it);
            let want = literal_oracle(p.probs(), it.probs(), 0);
            assert!((r.value - want).abs() < 1e-12, "k = {}", k + 1);
        }
        // l1 to the k-th iterate is (1 - (-1/3)^k) / 3: 4/9, 8/27, 28/81
        for (r, l1) in got.results.iter().zip([4.0 / 9.0, 8.0 / 27.0, 28.0 / 81.0]) {
            assert!((r.l1 - l1).abs() < 1e-12);
        }
        assert!(!got.non_decreasing);
    }

    #[test]
    fn iterated_uniform_and_two_outcomes() {
        let got = negation_iterate_dissim(&ProbDist::uniform(3).unwrap(), 0, 4).unwrap();
        assert!(got.results.iter().all(|r| r.value <= 1e-15));
        let got = negation_iterate_dissim(&d(&[0.9, 0.1]), 0, 2).unwrap();
        assert!(got.results[0].value > 0.7);
        assert_eq!(got.results[1].value, 0.0);
    }

    #[test]
    fn classify_orderings() {
        use AlphaOrdering::*;
        assert_eq!(AlphaOrdering::classify(&[1.0]), Single);
        assert_eq!(
            AlphaOrdering::classify(&[3.0, 2.0, 1.0]),
            StrictlyDecreasing
        );
        assert_eq!(AlphaOrdering::classify(&[3.0, 3.0, 1.0]), NonIncreasing);
        assert_eq!(AlphaOrdering::classify(&[1.0, 2.0]), StrictlyIncreasing);
        assert_eq!(AlphaOrdering::classify(&[1.0, 2.0, 1.0]), Mixed);
        assert!(NonIncreasing.is_non_increasing() && !NonIncreasing.is_non_decreasing());
    }

    fn pair() -> impl Strategy<Value = (ProbDist, ProbDist)> {
        (2usize..24)
            .prop_flat_map(|n| {
                let w = prop::collection::vec(0.0f64..1.0, n);
                (w.clone(), w)
            })
            .prop_filter_map("nonzero", |(a, b)| {
                let norm = |w: Vec<f64>| {
                    let s: f64 = w.iter().sum();
                    ProbDist::new(&w.iter().map(|x| x / s).collect::<Vec<_>>()).ok()
                };
                Some((norm(a)?, norm(b)?))
            })
    }

    proptest! {
        #[test]
        fn closed_form_and_oracle_agree((p, q) in pair(), alpha in 0u32..=16) {
            let r = i_alpha(&p, &q, alpha).unwrap();
            let oracle = literal_oracle(p.probs(), q.probs(), alpha);
            prop_assert!((r.value - r.closed_form_value).abs() <= 1e-12);
            prop_assert!((r.value - oracle).abs() <= 1e-12);
            prop_assert!((r.sum_of_min_pairs - (2.0 - r.l1 / 2f64.powi(alpha as i32))).abs() <= 1e-12);
        }

        #[test]
        fn range_and_symmetry((p, q) in pair(), alpha in 0u32..=16) {
            let a = i_alpha(&p, &q, alpha).unwrap();
            let b = i_alpha(&q, &p, alpha).unwrap();
            prop_assert!((0.0..=1.0).contains(&a.value));
            prop_assert!((a.value - b.value).abs() <= 1e-14);
        }

        #[test]
        fn strictly_decreasing_in_alpha((p, q) in pair()) {
            prop_assume!(p.l1_distance(&q).unwrap() > 0.0);
            let alphas: Vec<u32> = (0..=16).collect();
            let r = properties_check(&p, &q, &alphas).unwrap();
            prop_assert_eq!(r.ordering, AlphaOrdering::StrictlyDecreasing);
        }
    }
}
