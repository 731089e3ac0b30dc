//! Verdict and report records shared by every suite.

use std::fmt;
use std::time::Duration;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
    Excluded,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
            Verdict::Excluded => "excluded",
        })
    }
}

/// Outcome of checking one proved statement over a parameter range.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub range: String,
    pub verdict: Verdict,
    /// Parameters and both sides of the first failure.
    pub counterexample: Option<String>,
    /// Extra findings, e.g. which printed variant of an identity holds.
    pub note: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    pub fn new(id: impl Into<String>, range: impl Into<String>) -> Self {
        TheoremReport {
            id: id.into(),
            range: range.into(),
            verdict: Verdict::Pass,
            counterexample: None,
            note: None,
            elapsed: Duration::ZERO,
        }
    }

    /// Records a failure; only the first counterexample is kept.
    pub fn fail(&mut self, counterexample: impl Into<String>) {
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample.into());
        }
        self.verdict = Verdict::Fail;
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// One line of suite output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub id: String,
    pub params: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(
        suite: &str,
        id: impl Into<String>,
        params: impl Into<String>,
        verdict: Verdict,
        detail: impl Into<String>,
    ) -> Self {
        CheckRecord {
            suite: suite.to_string(),
            id: id.into(),
            params: params.into(),
            verdict,
            detail: detail.into(),
        }
    }

    pub fn from_theorem(suite: &str, r: &TheoremReport) -> Self {
        let mut detail = String::new();
        if let Some(c) = &r.counterexample {
            detail.push_str("counterexample: ");
            detail.push_str(c);
        }
        if let Some(n) = &r.note {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(n);
        }
        CheckRecord::new(suite, r.id.clone(), r.range.clone(), r.verdict, detail)
    }
}
