//! Shannon entropy in bits and the orderings between a distribution, its
//! negation and the maximum `log2 n`.

use alloc::vec;

use crate::certificate::{Certificate, EQUALITY_TOLERANCE, HOLD_TOLERANCE};
use crate::negation::{negate, negate_twice};
use crate::{Error, ProbDist, Result};

/// `-sum p_i log2 p_i` over a raw probability slice, with `0 log 0 = 0`.
pub fn entropy_of(probs: &[f64]) -> f64 {
    let h: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * libm::log2(p))
        .sum();
    // -0.0 for degenerate inputs
    h + 0.0
}

pub fn shannon_entropy(p: &ProbDist) -> f64 {
    entropy_of(p.probs())
}

/// `-log2 p`: zero for a certain event, `+inf` for an impossible one.
pub fn self_information(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityDomain(p));
    }
    if p == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(-libm::log2(p) + 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub h: f64,
    /// `log2 n`.
    pub h_max: f64,
    /// `h_max - h`.
    pub gap: f64,
    pub n: usize,
}

pub fn entropy_report(p: &ProbDist) -> EntropyReport {
    let h = shannon_entropy(p);
    let h_max = libm::log2(p.len() as f64);
    EntropyReport {
        h,
        h_max,
        gap: h_max - h,
        n: p.len(),
    }
}

/// Shannon's inequality `-sum p log2 p <= -sum p log2 q`.
///
/// An outcome with `q_i = 0 < p_i` sends the right side to `+inf`; the
/// certificate then holds with `infinite` set as the divergence flag.
pub fn cross_entropy_check(p: &ProbDist, q: &ProbDist) -> Result<Certificate> {
    p.check_same_len(q)?;
    let lhs = shannon_entropy(p);
    let rhs: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .filter(|(&pi, _)| pi > 0.0)
        .map(|(&pi, &qi)| {
            if qi == 0.0 {
                f64::INFINITY
            } else {
                -pi * libm::log2(qi)
            }
        })
        .sum();
    let same = p
        .probs()
        .iter()
        .zip(q.probs())
        .all(|(a, b)| (a - b).abs() <= HOLD_TOLERANCE);
    Ok(Certificate::leq("shannon_inequality", lhs, rhs).with_equality(same))
}

/// The chain `H(P) <= H(neg P) <= H(neg neg P) <= log2 n`.
///
/// `lhs` is `H(P)` and `rhs` is `log2 n`; the three adjacent comparisons
/// are the detail entries.
pub fn entropy_chain_check(p: &ProbDist) -> Certificate {
    let h = shannon_entropy(p);
    let h1 = shannon_entropy(&negate(p));
    let h2 = shannon_entropy(&negate_twice(p));
    let h_max = libm::log2(p.len() as f64);
    let all_equal = [h1, h2, h_max]
        .iter()
        .all(|x| (x - h).abs() <= EQUALITY_TOLERANCE);
    Certificate::leq("entropy_chain", h, h_max)
        .with_detail(vec![
            Certificate::leq("entropy_of_negation", h, h1),
            Certificate::leq("entropy_of_double_negation", h1, h2),
            Certificate::leq("double_negation_below_max", h2, h_max),
        ])
        .with_equality(all_equal)
}

/// Zero-probability outcomes leave `H` unchanged but raise the entropy of
/// the negation, since negation gives them mass `1 / (n + k - 1)`.
///
/// For non-uniform `p` the second comparison is strict.
pub fn zero_padding_entropy_check(p: &ProbDist, k: usize) -> Result<Certificate> {
    if k == 0 {
        return Err(Error::InvalidArgument("padding count must be at least 1"));
    }
    let padded = p.pad_with_zeros(k);
    let h = shannon_entropy(p);
    let h_padded = shannon_entropy(&padded);
    let invariant = Certificate::no_violations(
        "entropy_unchanged_by_padding",
        usize::from((h - h_padded).abs() > HOLD_TOLERANCE),
    );
    let hn = shannon_entropy(&negate(p));
    let hn_padded = shannon_entropy(&negate(&padded));
    let growth = if p.is_uniform(EQUALITY_TOLERANCE) {
        Certificate::leq("padded_negation_more_uncertain", hn, hn_padded)
    } else {
        Certificate::lt("padded_negation_more_uncertain", hn, hn_padded)
    };
    Ok(Certificate::leq("zero_padding", h, h_padded)
        .with_detail(vec![invariant, growth])
        .with_equality(false))
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

    #[test]
    fn zero_log_zero_is_zero() {
        assert_eq!(entropy_of(&[1.0, 0.0]), 0.0);
        assert!(entropy_of(&[1.0, 0.0]).is_sign_positive());
        assert_eq!(entropy_of(&[0.5, 0.5, 0.0]), 1.0);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(shannon_entropy(&d(&[0.5, 0.5])), 1.0);
        let p3 = d(&[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]);
        let q5 = p3.pad_with_zeros(2);
        assert_eq!(shannon_entropy(&p3), shannon_entropy(&q5));
        // log2(3)*2/3 + log2(6)/3
        let expect = 2.0 / 3.0 * 3f64.log2() + 6f64.log2() / 3.0;
        assert!((shannon_entropy(&p4()) - expect).abs() < 1e-15);
        assert!((shannon_entropy(&p4()) - 1.918295834).abs() < 1e-9);
    }

    #[test]
    fn self_information_examples() {
        assert_eq!(self_information(1.0).unwrap(), 0.0);
        assert_eq!(self_information(0.5).unwrap(), 1.0);
        assert_eq!(self_information(0.125).unwrap(), 3.0);
        assert_eq!(self_information(0.0).unwrap(), f64::INFINITY);
        assert!(matches!(
            self_information(-0.1),
            Err(Error::ProbabilityDomain(_))
        ));
        assert!(matches!(
            self_information(1.5),
            Err(Error::ProbabilityDomain(_))
        ));
        assert!(self_information(f64::NAN).is_err());
    }

    #[test]
    fn report_examples() {
        let r = entropy_report(&ProbDist::uniform(4).unwrap());
        assert_eq!((r.h, r.h_max, r.gap, r.n), (2.0, 2.0, 0.0, 4));
        let r = entropy_report(&p4());
        assert!((r.h - 1.9183).abs() < 1e-4);
        assert!((r.gap - 0.0817).abs() < 1e-4);
        assert_eq!(r.gap, r.h_max - r.h);
        let r = entropy_report(&d(&[1.0, 0.0]));
        assert_eq!((r.h, r.gap), (0.0, 1.0));
    }

    #[test]
    fn cross_entropy_examples() {
        let c = cross_entropy_check(&p4(), &p4()).unwrap();
        assert!(c.holds && c.equality);
        let c = cross_entropy_check(&p4(), &ProbDist::uniform(4).unwrap()).unwrap();
        assert!(c.holds && !c.equality);
        assert!((c.lhs - 1.9183).abs() < 1e-4);
        assert!((c.rhs - 2.0).abs() < 1e-15);
        let c = cross_entropy_check(&d(&[0.5, 0.5]), &d(&[1.0, 0.0])).unwrap();
        assert!(c.holds && c.infinite && !c.equality);
        assert_eq!(c.rhs, f64::INFINITY);
        assert!(cross_entropy_check(&p4(), &d(&[0.5, 0.5])).is_err());
    }

    #[test]
    fn chain_examples() {
        let c = entropy_chain_check(&p4());
        assert!(c.holds && !c.equality);
        assert!(c.detail.iter().all(|s| s.slack > 1e-6));
        assert!((c.detail[0].rhs - 1.9911).abs() < 1e-4);

        let c = entropy_chain_check(&ProbDist::uniform(6).unwrap());
        assert!(c.holds && c.equality);
        assert!((c.lhs - 6f64.log2()).abs() < 1e-12);

        let c = entropy_chain_check(&d(&[0.9, 0.1]));
        assert!(c.holds);
        assert!((c.detail[0].lhs - c.detail[0].rhs).abs() < 1e-12);
        assert!(c.detail[2].rhs == 1.0 && c.detail[2].lhs <= 1.0);
    }

    #[test]
    fn zero_padding_examples() {
        let c = zero_padding_entropy_check(&d(&[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]), 2).unwrap();
        assert!(c.holds);
        assert!(c.detail[1].slack > 0.0);

        let c = zero_padding_entropy_check(&ProbDist::uniform(3).unwrap(), 1).unwrap();
        assert!(c.holds);
        // negation of [1/3,1/3,1/3,0] is [2/9,2/9,2/9,1/3]
        let expect = 3.0 * (2.0 / 9.0) * (9.0f64 / 2.0).log2() + 3f64.log2() / 3.0;
        assert!((c.detail[1].rhs - expect).abs() < 1e-14);
        assert!((c.detail[1].lhs - 3f64.log2()).abs() < 1e-14);

        let c = zero_padding_entropy_check(&d(&[1.0, 0.0]), 1).unwrap();
        assert!(c.holds && c.lhs == 0.0 && c.rhs == 0.0);
        assert!(zero_padding_entropy_check(&d(&[1.0, 0.0]), 0).is_err());
    }
}
