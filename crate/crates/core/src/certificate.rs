//! Inequality certificates.

use alloc::string::String;
use alloc::vec::Vec;

/// Slack below which `lhs <= rhs` is still considered to hold.
pub const HOLD_TOLERANCE: f64 = 1e-12;

/// Absolute difference at or below which both sides are declared equal.
pub const EQUALITY_TOLERANCE: f64 = 1e-9;

/// One evaluated instance of a claim `lhs <= rhs`.
///
/// `slack` is `rhs - lhs`. A right side of `+inf` (or a left side of `-inf`)
/// makes the claim hold trivially; such certificates carry `infinite = true`
/// and never report equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub name: String,
    /// Zero-based outcome index for per-index certificates.
    pub index: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub equality: bool,
    pub infinite: bool,
    pub detail: Vec<Certificate>,
}

impl Certificate {
    /// Certificate for `lhs <= rhs` at [`HOLD_TOLERANCE`].
    pub fn leq(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let infinite = rhs == f64::INFINITY || lhs == f64::NEG_INFINITY;
        let slack = rhs - lhs;
        let (holds, equality) = if infinite {
            (true, false)
        } else if slack.is_nan() {
            (false, false)
        } else {
            (slack >= -HOLD_TOLERANCE, slack.abs() <= EQUALITY_TOLERANCE)
        };
        Self {
            name: name.into(),
            index: None,
            lhs,
            rhs,
            slack,
            holds,
            equality,
            infinite,
            detail: Vec::new(),
        }
    }

    /// Certificate for the strict claim `lhs < rhs`: the slack must exceed
    /// [`HOLD_TOLERANCE`], and equality is never reported.
    pub fn lt(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let mut cert = Self::leq(name, lhs, rhs);
        if !cert.infinite {
            cert.holds = cert.slack > HOLD_TOLERANCE;
        }
        cert.equality = false;
        cert
    }

    /// Certificate that a count of violations is zero.
    pub fn no_violations(name: impl Into<String>, violations: usize) -> Self {
        let mut cert = Self::leq(name, violations as f64, 0.0);
        cert.equality = cert.holds;
        cert
    }

    pub fn at_index(mut self, index: usize) -> Self {
        self.index = Some(index);
        self
    }

    /// Keeps the numeric equality flag only when `attained` is also true.
    /// Near-tight slack alone does not make an equality case.
    pub fn with_equality_if(self, attained: bool) -> Self {
        let equality = self.equality && attained;
        self.with_equality(equality)
    }

    /// Replaces the numeric equality flag. Equality still implies `holds`
    /// and is suppressed on infinite certificates.
    pub fn with_equality(mut self, equality: bool) -> Self {
        self.equality = equality && self.holds && !self.infinite;
        self
    }

    /// Attaches sub-certificates. The parent holds only if every part does,
    /// and is infinite if any part is.
    pub fn with_detail(mut self, detail: Vec<Certificate>) -> Self {
        self.holds = self.holds && detail.iter().all(|c| c.holds);
        self.equality = self.equality && self.holds;
        self.infinite = self.infinite || detail.iter().any(|c| c.infinite);
        if self.infinite {
            self.equality = false;
        }
        self.detail = detail;
        self
    }

    /// All certificates in this tree (including `self`) that do not hold.
    pub fn failures(&self) -> Vec<&Certificate> {
        let mut out = Vec::new();
        self.collect_failures(&mut out);
        out
    }

    fn collect_failures<'a>(&'a self, out: &mut Vec<&'a Certificate>) {
        if !self.holds {
            out.push(self);
        }
        for c in &self.detail {
            c.collect_failures(out);
        }
    }
}
