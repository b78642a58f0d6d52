//! Inequality reports shared by every checker.

use serde::{Deserialize, Serialize};

/// Absolute tolerance used for clause slack and non-negativity decisions.
pub const TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clause {
    pub description: String,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// `rhs - lhs`; negative when violated.
    pub slack: f64,
}

impl Clause {
    /// Clause of the form `lhs <= rhs`.
    pub fn le(description: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        Clause {
            description: description.into(),
            lhs,
            rhs,
            satisfied: slack >= -TOL,
            slack,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub family: String,
    pub clauses: Vec<Clause>,
    pub all_satisfied: bool,
}

impl InequalityReport {
    pub fn new(family: impl Into<String>, clauses: Vec<Clause>) -> Self {
        let all_satisfied = clauses.iter().all(|c| c.satisfied);
        InequalityReport {
            family: family.into(),
            clauses,
            all_satisfied,
        }
    }

    pub fn violated(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.satisfied)
    }

    /// Clause with the smallest slack.
    pub fn tightest(&self) -> Option<&Clause> {
        self.clauses
            .iter()
            .min_by(|a, b| a.slack.total_cmp(&b.slack))
    }

    pub fn min_slack(&self) -> f64 {
        self.tightest().map_or(f64::INFINITY, |c| c.slack)
    }

    /// Concatenate several reports under a new family name.
    pub fn merge(family: impl Into<String>, parts: &[InequalityReport]) -> Self {
        let clauses = parts
            .iter()
            .flat_map(|r| r.clauses.iter().cloned())
            .collect();
        InequalityReport::new(family, clauses)
    }
}

pub(crate) fn sign_char(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

pub(crate) fn pm(s: i8) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}
