//! Subcommand implementations. Each turns a [`RunConfig`] into a
//! [`Document`]; exit-code mapping happens in [`crate::cli`].

use std::path::PathBuf;

use neglab_core::dissimilarity::{self, AlphaOrdering};
use neglab_core::entropy::{self, self_information};
use neglab_core::jensen::{self, FunctionRegistry, FunctionSpec};
use neglab_core::negation::{self, Oscillation};
use neglab_core::{Certificate, Curvature, Error as CoreError, ProbDist};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::fixtures;
use crate::output::{certificate, dissim, dist, num, vector, Document, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Negate,
    Entropy,
    Converge,
    Verify,
    Dissim,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Negate => "negate",
            Command::Entropy => "entropy",
            Command::Converge => "converge",
            Command::Verify => "verify",
            Command::Dissim => "dissim",
            Command::Report => "report",
        }
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<Vec<f64>>,
    pub format: Format,
    /// Validation tolerance for input distributions.
    pub tolerance: f64,
    /// Stopping tolerance for `converge`.
    pub convergence_tolerance: f64,
    pub max_steps: usize,
    pub alphas: Vec<u32>,
    pub depth: Option<u32>,
    pub function_name: String,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            inputs: Vec::new(),
            format: Format::Json,
            tolerance: neglab_core::DEFAULT_TOLERANCE,
            convergence_tolerance: 1e-9,
            max_steps: negation::DEFAULT_MAX_STEPS,
            alphas: vec![0],
            depth: None,
            function_name: jensen::NEG_LOG.to_string(),
            out: None,
        }
    }
}

/// Validates every input, reporting the first failure with its position.
pub fn build_dists(inputs: &[Vec<f64>], tolerance: f64) -> Result<Vec<ProbDist>, CliError> {
    inputs
        .iter()
        .enumerate()
        .map(|(position, values)| {
            ProbDist::with_tolerance(values, tolerance).map_err(|e| match e {
                CoreError::Validation(report) => CliError::Validation {
                    position,
                    values: values.clone(),
                    report,
                },
                other => CliError::Core(other),
            })
        })
        .collect()
}

pub fn execute(config: &RunConfig) -> Result<Document, CliError> {
    if config.command == Command::Report {
        return Ok(fixtures::report());
    }
    if config.inputs.is_empty() {
        return Err(CliError::Usage("no input: pass --dist or --file".into()));
    }
    let dists = build_dists(&config.inputs, config.tolerance)?;
    let mut results = Vec::with_capacity(dists.len());
    let mut all_hold = true;
    for p in &dists {
        let (value, holds) = match config.command {
            Command::Negate => (negate_record(p), true),
            Command::Entropy => entropy_record(p)?,
            Command::Converge => converge_record(p, config)?,
            Command::Verify => verify_record(p, &config.function_name)?,
            Command::Dissim => dissim_record(p, &config.alphas, config.depth)?,
            Command::Report => unreachable!("handled above"),
        };
        all_hold &= holds;
        results.push(value);
    }
    Ok(Document {
        command: config.command.name().to_string(),
        input: config.inputs.clone(),
        results,
        all_hold,
    })
}

pub fn negate_record(p: &ProbDist) -> Value {
    let neg = negation::negate(p);
    json!({
        "n": p.len(),
        "p": dist(p),
        "negation": dist(&neg),
        "double_negation": dist(&negation::negate_twice(p)),
        "fixed_point": p.is_uniform(1e-12),
    })
}

fn entropy_record(p: &ProbDist) -> Result<(Value, bool), CliError> {
    let report = entropy::entropy_report(p);
    let uniform = ProbDist::uniform(p.len())?;
    let certs = [
        entropy::cross_entropy_check(p, &uniform)?,
        entropy::entropy_chain_check(p),
    ];
    let info: Vec<f64> = p
        .probs()
        .iter()
        .map(|&x| self_information(x))
        .collect::<Result<_, _>>()?;
    let holds = certs.iter().all(|c| c.holds);
    Ok((
        json!({
            "n": report.n,
            "entropy": num(report.h),
            "max_entropy": num(report.h_max),
            "gap": num(report.gap),
            "negation_entropy": num(entropy::shannon_entropy(&negation::negate(p))),
            "self_information": vector(&info),
            "certificates": certs.iter().map(certificate).collect::<Vec<_>>(),
        }),
        holds,
    ))
}

fn converge_record(p: &ProbDist, config: &RunConfig) -> Result<(Value, bool), CliError> {
    let trace = negation::converge_to_uniform(p, config.convergence_tolerance, config.max_steps)?;
    let rising = trace
        .entropies
        .windows(2)
        .map(|w| Certificate::leq("entropy_step", w[0], w[1]))
        .collect::<Vec<_>>();
    let monotone = match (trace.entropies.first(), trace.entropies.last()) {
        (Some(&first), Some(&last)) => {
            Certificate::leq("entropy_non_decreasing", first, last).with_detail(rising)
        }
        _ => Certificate::no_violations("entropy_non_decreasing", 0),
    };
    let holds = monotone.holds;
    let oscillation = match trace.oscillation {
        Some(Oscillation::PeriodTwo) => json!({"period": 2}),
        None => Value::Null,
    };
    Ok((
        json!({
            "n": p.len(),
            "tolerance": num(config.convergence_tolerance),
            "max_steps": config.max_steps,
            "converged": trace.converged,
            "steps": trace.steps,
            "oscillation": oscillation,
            "contraction_ratio": num(negation::contraction_ratio(p.len()).abs()),
            "entropies": vector(&trace.entropies),
            "distances": vector(&trace.distances),
            "final": dist(trace.last()),
            "iterates": trace.iterates.iter().map(dist).collect::<Vec<_>>(),
            "certificates": [certificate(&monotone)],
        }),
        holds,
    ))
}

/// Every certificate that applies to `p` with function `name`.
///
/// Convex functions drive the mixture, pointwise, double-negation and
/// partial-mean checks; the concave check then uses the built-in
/// `x_log_x`. A concave function drives the concave check directly. The
/// self-information bound, Shannon's inequality against uniform and the
/// entropy chain do not depend on the function.
pub fn verify_certificates(
    p: &ProbDist,
    f: &FunctionSpec,
) -> Result<(Vec<Certificate>, Vec<jensen::PartialMeanChain>), CliError> {
    let mut certs = Vec::new();
    let mut chains = Vec::new();
    match f.curvature() {
        Curvature::Convex => {
            certs.push(jensen::mixture_bound(f, p)?);
            for i in 0..p.len() {
                certs.push(jensen::pointwise_mixture_bound(f, p, i)?);
            }
            certs.push(jensen::self_information_bound(p));
            certs.push(jensen::double_negation_mixture_bound(f, p)?);
            certs.push(jensen::concave_mixture_bound(&FunctionSpec::x_log_x(), p)?);
            if p.len() >= 3 {
                for i in 0..p.len() {
                    let (chain, cert) = jensen::partial_mean_chain(f, p, i)?;
                    chains.push(chain);
                    certs.push(cert);
                }
            }
        }
        Curvature::Concave => {
            certs.push(jensen::self_information_bound(p));
            certs.push(jensen::concave_mixture_bound(f, p)?);
        }
    }
    certs.push(entropy::cross_entropy_check(
        p,
        &ProbDist::uniform(p.len())?,
    )?);
    certs.push(entropy::entropy_chain_check(p));
    Ok((certs, chains))
}

fn label(c: &Certificate) -> String {
    match c.index {
        Some(i) => format!("{}[{}]", c.name, i + 1),
        None => c.name.clone(),
    }
}

fn verify_record(p: &ProbDist, name: &str) -> Result<(Value, bool), CliError> {
    let registry = FunctionRegistry::default();
    let f = registry.get(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown function `{name}` (known: {})",
            registry.names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    let (certs, chains) = verify_certificates(p, f)?;
    let failures: Vec<String> = certs.iter().flat_map(|c| c.failures()).map(label).collect();
    let equalities: Vec<String> = certs.iter().filter(|c| c.equality).map(label).collect();
    let holds = failures.is_empty();
    Ok((
        json!({
            "n": p.len(),
            "function": f.name(),
            "curvature": f.curvature().to_string(),
            "certificates": certs.iter().map(certificate).collect::<Vec<_>>(),
            "partial_mean_chains": chains.iter().map(|c| json!({
                "index": c.excluded_index + 1,
                "zetas": vector(&c.zetas),
                "bounds": vector(&c.bounds),
            })).collect::<Vec<_>>(),
            "equalities": equalities,
            "failures": failures,
            "all_hold": holds,
        }),
        holds,
    ))
}

/// The ordering across `alpha` that is sometimes claimed for this family;
/// the closed form gives the opposite whenever `l1 > 0`.
pub const CLAIMED_ORDERING: AlphaOrdering = AlphaOrdering::NonDecreasing;

pub fn ordering_record(ordering: AlphaOrdering) -> Value {
    json!({
        "observed": ordering.as_str(),
        "claimed": CLAIMED_ORDERING.as_str(),
        "matches_claim": ordering.is_non_decreasing(),
        "matches_closed_form": ordering.is_non_increasing(),
    })
}

fn dissim_record(
    p: &ProbDist,
    alphas: &[u32],
    depth: Option<u32>,
) -> Result<(Value, bool), CliError> {
    let mut alphas = alphas.to_vec();
    alphas.sort_unstable();
    alphas.dedup();
    let props = dissimilarity::m_properties_check(p, &alphas)?;
    let mut record = json!({
        "n": p.len(),
        "negation": dist(&negation::negate(p)),
        "values": props.values.iter().map(dissim).collect::<Vec<_>>(),
        "properties": {
            "range_ok": props.range_ok,
            "zero_iff_equal_ok": props.zero_iff_equal_ok,
            "symmetry_ok": props.symmetry_ok,
            "symmetry_max_error": num(props.symmetry_max_error),
            "alpha_ordering": ordering_record(props.ordering),
            "certificate": certificate(&props.certificate),
        },
    });
    if let Some(depth) = depth {
        let iterated = alphas
            .iter()
            .map(|&a| {
                dissimilarity::negation_iterate_dissim(p, a, depth).map(|r| {
                    json!({
                        "alpha": a,
                        "depth": depth,
                        "values": r.results.iter().map(dissim).collect::<Vec<_>>(),
                        "non_decreasing": r.non_decreasing,
                    })
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        record["iterated"] = Value::Array(iterated);
    }
    Ok((record, props.certificate.holds))
}
