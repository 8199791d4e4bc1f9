//! Worked examples reproduced by the `report` subcommand.

use neglab_core::dissimilarity;
use neglab_core::entropy::shannon_entropy;
use neglab_core::jensen::{self, FunctionSpec};
use neglab_core::negation::{self, Oscillation};
use neglab_core::ProbDist;
use serde_json::{json, Value};

use crate::commands::ordering_record;
use crate::input::parse_dist;
use crate::output::{certificate, dist, num, vector, Document};

pub const P4: &str = "1/3,1/6,1/6,1/3";
pub const P3: &str = "2/3,1/6,1/6";
pub const Q5: &str = "2/3,1/6,1/6,0,0";
pub const P5: &str = "1/8,1/8,1/2,1/8,1/8";
pub const P2: &str = "0.9,0.1";

const GOLDEN_TOLERANCE: f64 = 1e-14;
const ENTROPY_TOLERANCE: f64 = 1e-12;
const STRICT_GAP: f64 = 1e-6;

fn load(spec: &str) -> ProbDist {
    let values = parse_dist(spec).expect("fixture literal parses");
    ProbDist::new(&values).expect("fixture literal is a distribution")
}

fn rationals(pairs: &[(f64, f64)]) -> Vec<f64> {
    pairs.iter().map(|(a, b)| a / b).collect()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn golden(name: &str, got: &ProbDist, expected: &[f64]) -> Value {
    let err = max_abs_diff(got.probs(), expected);
    json!({
        "fixture": name,
        "pass": err <= GOLDEN_TOLERANCE,
        "tolerance": num(GOLDEN_TOLERANCE),
        "computed": dist(got),
        "expected": vector(expected),
        "max_error": num(err),
    })
}

fn entropy_fixtures(p4: &ProbDist, p3: &ProbDist, q5: &ProbDist) -> Vec<Value> {
    let (h3, h5) = (shannon_entropy(p3), shannon_entropy(q5));
    let (hn3, hn5) = (
        shannon_entropy(&negation::negate(p3)),
        shannon_entropy(&negation::negate(q5)),
    );
    let h = shannon_entropy(p4);
    let h1 = shannon_entropy(&negation::negate(p4));
    let h2 = shannon_entropy(&negation::negate_twice(p4));
    vec![
        json!({
            "fixture": "entropy_unchanged_by_zero_padding",
            "pass": (h3 - h5).abs() <= ENTROPY_TOLERANCE,
            "entropy_p3": num(h3),
            "entropy_q5": num(h5),
        }),
        json!({
            "fixture": "padded_negation_more_uncertain",
            "pass": hn5 - hn3 > STRICT_GAP,
            "negation_entropy_p3": num(hn3),
            "negation_entropy_q5": num(hn5),
        }),
        json!({
            "fixture": "entropy_chain_p4",
            "pass": h1 - h > STRICT_GAP && h2 - h1 > STRICT_GAP && h2 <= 2.0,
            "entropy": num(h),
            "negation_entropy": num(h1),
            "double_negation_entropy": num(h2),
            "max_entropy": num(2.0),
        }),
    ]
}

fn symmetric_fixture(p5: &ProbDist) -> Value {
    let f = FunctionSpec::neg_log();
    let (_, cert) = jensen::partial_mean_chain(&f, p5, 2).expect("n = 5");
    let gap = (cert.lhs - cert.rhs).abs();
    let mut perturbed = p5.probs().to_vec();
    perturbed[0] += 0.01;
    let perturbed = ProbDist::with_tolerance(&perturbed, 0.02).expect("renormalizable");
    let (_, broken) = jensen::partial_mean_chain(&f, &perturbed, 2).expect("n = 5");
    let broken_gap = broken.rhs - broken.lhs;
    json!({
        "fixture": "symmetric_partial_mean_equality",
        "pass": cert.lhs == 3.0 && gap <= 1e-12 && cert.equality && broken_gap > 1e-4,
        "index": 3,
        "certificate": certificate(&cert),
        "perturbed": dist(&perturbed),
        "perturbed_certificate": certificate(&broken),
    })
}

fn dissim_fixtures(p4: &ProbDist) -> Vec<Value> {
    let expected = [(0, 8.0f64 / 9.0), (1, 17.0 / 18.0), (2, 35.0 / 36.0)];
    let mut out: Vec<Value> = expected
        .iter()
        .map(|&(alpha, arg)| {
            let r = dissimilarity::i_alpha_negation(p4, alpha).expect("alpha in range");
            let want = -arg.log2();
            let err = (r.value - want).abs();
            json!({
                "fixture": format!("dissimilarity_p4_alpha{alpha}"),
                "pass": err <= 1e-12 && r.closed_form_error() <= 1e-12,
                "value": num(r.value),
                "closed_form_value": num(r.closed_form_value),
                "expected": num(want),
                "l1": num(r.l1),
            })
        })
        .collect();
    let props = dissimilarity::m_properties_check(p4, &[0, 1, 2, 3]).expect("ascending alphas");
    out.push(json!({
        "fixture": "dissimilarity_properties_p4",
        "pass": props.certificate.holds && props.ordering.is_non_increasing(),
        "values": props.values.iter().map(|r| num(r.value)).collect::<Vec<_>>(),
        "alpha_ordering": ordering_record(props.ordering),
        "certificate": certificate(&props.certificate),
    }));
    out
}

fn convergence_fixtures(p4: &ProbDist, p2: &ProbDist) -> Vec<Value> {
    let trace = negation::converge_to_uniform(p4, 1e-6, negation::DEFAULT_MAX_STEPS)
        .expect("valid arguments");
    let osc = negation::converge_to_uniform(p2, 1e-6, 50).expect("valid arguments");
    vec![
        json!({
            "fixture": "convergence_p4",
            "pass": trace.converged && trace.steps == 11,
            "steps": trace.steps,
            "expected_steps": 11,
        }),
        json!({
            "fixture": "two_outcome_oscillation",
            "pass": !osc.converged && osc.oscillation == Some(Oscillation::PeriodTwo),
            "converged": osc.converged,
            "oscillation": osc.oscillation.map(|_| json!({"period": 2})),
        }),
    ]
}

/// Builds the full fixture report.
pub fn report() -> Document {
    let inputs: Vec<Vec<f64>> = [P4, P3, Q5, P5, P2]
        .iter()
        .map(|s| parse_dist(s).expect("fixture literal parses"))
        .collect();
    let (p4, p3, q5, p5, p2) = (load(P4), load(P3), load(Q5), load(P5), load(P2));

    let mut results = vec![
        golden(
            "negation_p4",
            &negation::negate(&p4),
            &rationals(&[(2.0, 9.0), (5.0, 18.0), (5.0, 18.0), (2.0, 9.0)]),
        ),
        golden(
            "double_negation_p4",
            &negation::negate_twice(&p4),
            &rationals(&[(7.0, 27.0), (13.0, 54.0), (13.0, 54.0), (7.0, 27.0)]),
        ),
        golden(
            "negation_p3",
            &negation::negate(&p3),
            &rationals(&[(1.0, 6.0), (5.0, 12.0), (5.0, 12.0)]),
        ),
        golden(
            "negation_q5",
            &negation::negate(&q5),
            &rationals(&[
                (1.0, 12.0),
                (5.0, 24.0),
                (5.0, 24.0),
                (1.0, 4.0),
                (1.0, 4.0),
            ]),
        ),
        golden(
            "negation_p5",
            &negation::negate(&p5),
            &rationals(&[
                (7.0, 32.0),
                (7.0, 32.0),
                (1.0, 8.0),
                (7.0, 32.0),
                (7.0, 32.0),
            ]),
        ),
    ];
    results.extend(entropy_fixtures(&p4, &p3, &q5));
    results.push(symmetric_fixture(&p5));
    results.extend(dissim_fixtures(&p4));
    results.extend(convergence_fixtures(&p4, &p2));

    let all_hold = results.iter().all(|r| r["pass"] == json!(true));
    Document {
        command: "report".into(),
        input: inputs,
        results,
        all_hold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_passes() {
        let doc = report();
        for r in &doc.results {
            assert_eq!(r["pass"], json!(true), "{r:#}");
        }
        assert!(doc.all_hold);
        assert_eq!(doc.input.len(), 5);
    }
}
