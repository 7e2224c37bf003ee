//! Verification reports.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cone::ConePair;
use crate::form::Form;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// First nonzero term of a residual that should have vanished.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    /// Which identity of the check failed.
    pub part: String,
    /// `first`, `second` or `form`.
    pub slot: String,
    pub term: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub fingerprint: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<Residual>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<String>,
    pub wall_time_ms: f64,
    pub counters: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One line: `CHECK name fingerprint PASS|FAIL [residual]`.
    pub fn text_line(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        let mut line = format!("CHECK {} {} {}", self.check, self.fingerprint, verdict);
        if let Some(r) = &self.residual {
            line.push_str(&format!(
                " [{}: {} slot, ({}) {}]",
                r.part, r.slot, r.coeff, r.term
            ));
        }
        if let Some(v) = &self.value {
            line.push_str(&format!(" value={v}"));
        }
        line
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text_line())
    }
}

/// Accumulates sub-assertions of one check; the first failure wins.
pub struct ReportBuilder {
    check: String,
    fingerprint: String,
    start: Instant,
    residual: Option<Residual>,
    value: Option<String>,
    counters: BTreeMap<String, u64>,
}

impl ReportBuilder {
    pub fn new(check: impl Into<String>, fingerprint: impl Into<String>) -> Self {
        ReportBuilder {
            check: check.into(),
            fingerprint: fingerprint.into(),
            start: Instant::now(),
            residual: None,
            value: None,
            counters: BTreeMap::new(),
        }
    }

    pub fn failed(&self) -> bool {
        self.residual.is_some()
    }

    pub fn assert_zero_pair(&mut self, part: &str, residual: &ConePair) -> bool {
        self.bump("assertions", 1);
        self.max("max_residual_terms", residual.monomial_count() as u64);
        match residual.first_nonzero() {
            None => true,
            Some((slot, term, coeff)) => {
                self.fail(part, slot, term, coeff.to_string());
                false
            }
        }
    }

    pub fn assert_zero_form(&mut self, part: &str, residual: &Form) -> bool {
        self.bump("assertions", 1);
        match residual.first_term() {
            None => true,
            Some((term, coeff)) => {
                self.fail(part, "form", term, coeff.to_string());
                false
            }
        }
    }

    pub fn assert_true(&mut self, part: &str, ok: bool, detail: impl FnOnce() -> String) -> bool {
        self.bump("assertions", 1);
        if !ok {
            self.fail(part, "-", detail(), "-".into());
        }
        ok
    }

    pub fn fail(&mut self, part: &str, slot: &str, term: String, coeff: String) {
        if self.residual.is_none() {
            self.residual = Some(Residual {
                part: part.to_string(),
                slot: slot.to_string(),
                term,
                coeff,
            });
        }
    }

    pub fn value(&mut self, v: impl Into<String>) {
        self.value = Some(v.into());
    }

    pub fn bump(&mut self, name: &str, by: u64) {
        *self.counters.entry(name.to_string()).or_default() += by;
    }

    pub fn max(&mut self, name: &str, v: u64) {
        let slot = self.counters.entry(name.to_string()).or_default();
        *slot = (*slot).max(v);
    }

    pub fn set(&mut self, name: &str, v: u64) {
        self.counters.insert(name.to_string(), v);
    }

    pub fn finish(self) -> VerificationReport {
        VerificationReport {
            check: self.check,
            fingerprint: self.fingerprint,
            verdict: if self.residual.is_some() {
                Verdict::Fail
            } else {
                Verdict::Pass
            },
            residual: self.residual,
            value: self.value,
            wall_time_ms: (self.start.elapsed().as_secs_f64() * 1e6).round() / 1e3,
            counters: self.counters,
        }
    }
}
