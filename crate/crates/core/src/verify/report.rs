use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl From<f64> for Quantity {
    fn from(v: f64) -> Self {
        Quantity::Real(v)
    }
}

impl From<Complex64> for Quantity {
    fn from(v: Complex64) -> Self {
        Quantity::Complex { re: v.re, im: v.im }
    }
}

impl Quantity {
    pub fn as_complex(&self) -> Complex64 {
        match *self {
            Quantity::Real(v) => Complex64::new(v, 0.0),
            Quantity::Complex { re, im } => Complex64::new(re, im),
        }
    }
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Quantity::Real(v) => write!(f, "{v:.6e}"),
            Quantity::Complex { re, im } => write!(f, "{re:.6e}{im:+.6e}i"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub parameters: BTreeMap<String, Value>,
    pub observed: Quantity,
    pub expected: Quantity,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub notes: String,
}

/// How `pass` is derived from the errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `rel_err <= tol`, or `abs_err <= tol` when the expected value is zero.
    Within,
    /// `observed > tol`; used for lower-bound certificates.
    Exceeds,
    /// `observed <= expected + tol`.
    AtMost,
    /// The negation of `Within`: an as-printed constant is expected to fail.
    DocumentedFailure,
}

fn within(abs_err: f64, rel_err: f64, expected_zero: bool, tol: f64) -> bool {
    rel_err <= tol || (expected_zero && abs_err <= tol)
}

#[derive(Clone)]
pub struct Builder {
    check_id: String,
    parameters: BTreeMap<String, Value>,
    notes: Vec<String>,
}

pub fn record(check_id: &str) -> Builder {
    Builder { check_id: check_id.to_string(), parameters: BTreeMap::new(), notes: Vec::new() }
}

impl Builder {
    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        let n = note.into();
        if !n.is_empty() {
            self.notes.push(n);
        }
        self
    }

    pub fn finish(self, mode: Mode, observed: impl Into<Quantity>, expected: impl Into<Quantity>, tolerance: f64) -> VerificationReport {
        let observed = observed.into();
        let expected = expected.into();
        let o = observed.as_complex();
        let e = expected.as_complex();
        let abs_err = (o - e).norm();
        let rel_err = if e.norm() > 0.0 { abs_err / e.norm() } else { abs_err };
        let expected_zero = e.norm() == 0.0;
        let mut notes = self.notes;
        let pass = match mode {
            Mode::Within => within(abs_err, rel_err, expected_zero, tolerance),
            Mode::Exceeds => {
                notes.insert(0, "lower-bound check: passes when observed > tolerance".to_string());
                o.re > tolerance
            }
            Mode::AtMost => {
                notes.insert(0, "upper-bound check: passes when observed <= expected + tolerance".to_string());
                o.re <= e.re + tolerance
            }
            Mode::DocumentedFailure => {
                notes.insert(0, "documented discrepancy: passes when the as-printed value misses the tolerance".to_string());
                !within(abs_err, rel_err, expected_zero, tolerance) || !abs_err.is_finite()
            }
        };
        let pass = pass && (mode == Mode::DocumentedFailure || (abs_err.is_finite() || mode == Mode::Exceeds));
        VerificationReport {
            check_id: self.check_id,
            parameters: self.parameters,
            observed,
            expected,
            abs_err,
            rel_err,
            tolerance,
            pass,
            notes: notes.join("; "),
        }
    }

    /// A failing record for a check that could not be evaluated.
    pub fn error(self, err: impl std::fmt::Display) -> VerificationReport {
        let mut notes = self.notes;
        notes.push(format!("evaluation error: {err}"));
        VerificationReport {
            check_id: self.check_id,
            parameters: self.parameters,
            observed: Quantity::Real(f64::NAN),
            expected: Quantity::Real(f64::NAN),
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tolerance: f64::NAN,
            pass: false,
            notes: notes.join("; "),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of(records: &[VerificationReport]) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        Summary { total: records.len(), passed, failed: records.len() - passed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn within_uses_relative_or_absolute_at_zero() {
        let r = record("x").finish(Mode::Within, 1.0 + 1e-11, 1.0, 1e-10);
        assert!(r.pass);
        let r = record("x").finish(Mode::Within, 1e-11, 0.0, 1e-10);
        assert!(r.pass);
        assert_eq!(r.rel_err, r.abs_err);
        let r = record("x").finish(Mode::Within, 1.1, 1.0, 1e-10);
        assert!(!r.pass);
    }

    #[test]
    fn documented_failure_inverts() {
        let r = record("x").finish(Mode::DocumentedFailure, 1.1, 1.0, 1e-10);
        assert!(r.pass);
        assert!(r.notes.contains("documented discrepancy"));
        let r = record("x").finish(Mode::DocumentedFailure, 1.0, 1.0, 1e-10);
        assert!(!r.pass);
    }

    #[test]
    fn bounds() {
        assert!(record("x").finish(Mode::Exceeds, 0.5, 0.0, 0.01).pass);
        assert!(!record("x").finish(Mode::Exceeds, 0.001, 0.0, 0.01).pass);
        assert!(record("x").finish(Mode::AtMost, 1.0, 1.0, 1e-14).pass);
        assert!(!record("x").finish(Mode::AtMost, 1.1, 1.0, 1e-14).pass);
    }

    #[test]
    fn nan_never_passes_within() {
        assert!(!record("x").finish(Mode::Within, f64::NAN, 1.0, 1e-10).pass);
        assert!(!record("x").error("boom").pass);
    }

    #[test]
    fn complex_quantities_serialize_untagged() {
        let r = record("x").finish(Mode::Within, Complex64::new(1.0, 2.0), Complex64::new(1.0, 2.0), 1e-12);
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["observed"]["re"], 1.0);
        assert_eq!(j["observed"]["im"], 2.0);
        let back: VerificationReport = serde_json::from_value(j).unwrap();
        assert_eq!(back, r);
    }
}
