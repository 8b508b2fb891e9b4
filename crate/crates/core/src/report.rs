//! Structured verdicts returned by every `check_*` operation.

use std::fmt;

use serde::Serialize;

use crate::linalg::Scalar;

/// First failing basis tuple (1-based) with its nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub at: Vec<usize>,
    pub residual: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub clauses: Vec<Clause>,
    /// Whether an independent second route reached the same verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routes_agree: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn pass(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            holds: true,
            violation: None,
            clauses: Vec::new(),
            routes_agree: None,
            notes: Vec::new(),
        }
    }

    /// Scans `(tuple, residual)` pairs in order and records the first nonzero residual.
    pub fn scan<I>(check: impl Into<String>, residuals: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<Scalar>)>,
    {
        let mut r = Report::pass(check);
        r.violation = first_violation(residuals);
        r.holds = r.violation.is_none();
        r
    }

    /// Adds a clause; the overall verdict becomes the conjunction.
    pub fn with_clause(mut self, name: impl Into<String>, sub: &Report) -> Self {
        self.push_clause(name, sub.holds, sub.violation.clone());
        self
    }

    pub fn push_clause(&mut self, name: impl Into<String>, holds: bool, violation: Option<Violation>) {
        if !holds && self.violation.is_none() {
            self.violation = violation.clone();
        }
        self.holds &= holds;
        self.clauses.push(Clause {
            name: name.into(),
            holds,
            violation,
        });
    }

    pub fn add(&mut self, name: impl Into<String>, sub: &Report) {
        self.push_clause(name, sub.holds, sub.violation.clone());
    }

    /// Records a clause that is reported but does not enter the verdict.
    pub fn add_derived(&mut self, name: impl Into<String>, sub: &Report) {
        self.clauses.push(Clause {
            name: name.into(),
            holds: sub.holds,
            violation: sub.violation.clone(),
        });
    }

    pub fn all_clauses_hold(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn push_bool(&mut self, name: impl Into<String>, holds: bool) {
        self.push_clause(name, holds, None);
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    /// Records the verdict of a second route without changing `holds`.
    pub fn cross_check(mut self, other: bool) -> Self {
        self.routes_agree = Some(self.holds == other);
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, if self.holds { "holds" } else { "fails" })?;
        if let Some(v) = &self.violation {
            let res: Vec<String> = v.residual.iter().map(ToString::to_string).collect();
            write!(f, " at {:?} (residual [{}])", v.at, res.join(", "))?;
        }
        if let Some(agree) = self.routes_agree {
            write!(f, "; routes {}", if agree { "agree" } else { "DISAGREE" })?;
        }
        for c in &self.clauses {
            write!(f, "\n  - {}: {}", c.name, if c.holds { "ok" } else { "fails" })?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

pub fn first_violation<I>(residuals: I) -> Option<Violation>
where
    I: IntoIterator<Item = (Vec<usize>, Vec<Scalar>)>,
{
    residuals
        .into_iter()
        .find(|(_, r)| r.iter().any(|x| !x.is_zero()))
        .map(|(at, residual)| Violation {
            at: at.into_iter().map(|i| i + 1).collect(),
            residual,
        })
}
