//! Identity check records shared by the test suites and the command line.

use serde::Serialize;

use crate::lin::{Basis, Lin};
use crate::operator::Op;

/// Outcome of one identity evaluated on a finite set of basis words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub id: String,
    pub truncation: String,
    pub checked: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl IdentityCheck {
    pub fn new(id: impl Into<String>, truncation: impl Into<String>, checked: usize, counterexample: Option<String>) -> Self {
        IdentityCheck { id: id.into(), truncation: truncation.into(), checked, holds: counterexample.is_none(), counterexample }
    }

    /// Checks `residual(w) = 0` for every `w`.
    pub fn zero_residual<'a, A: std::fmt::Debug + 'a, B: Basis>(
        id: impl Into<String>,
        truncation: impl Into<String>,
        basis: impl IntoIterator<Item = &'a A>,
        residual: impl Fn(&A) -> Lin<B>,
    ) -> Self {
        let mut n = 0;
        let mut bad = None;
        for w in basis {
            n += 1;
            let r = residual(w);
            if !r.is_zero() {
                bad = Some(format!("{w:?} ↦ {r:?}"));
                break;
            }
        }
        Self::new(id, truncation, n, bad)
    }

    /// Checks `a = b` as operators on `basis`.
    pub fn equal_ops<'a, A: Basis + 'a, B: Basis>(
        id: impl Into<String>,
        truncation: impl Into<String>,
        a: &Op<A, B>,
        b: &Op<A, B>,
        basis: impl IntoIterator<Item = &'a A>,
    ) -> Self {
        Self::zero_residual(id, truncation, basis, |w| a.on(w) - b.on(w))
    }

    pub fn zero_op<'a, A: Basis + 'a, B: Basis>(
        id: impl Into<String>,
        truncation: impl Into<String>,
        a: &Op<A, B>,
        basis: impl IntoIterator<Item = &'a A>,
    ) -> Self {
        Self::zero_residual(id, truncation, basis, |w| a.on(w))
    }

    /// A boolean fact, with the failure description supplied by the caller.
    pub fn fact(id: impl Into<String>, truncation: impl Into<String>, ok: bool, why: impl FnOnce() -> String) -> Self {
        Self::new(id, truncation, 1, (!ok).then(why))
    }
}

/// A named list of identity checks.
///
/// `identities` decide the verdict. `findings` record candidate readings
/// that were evaluated to settle a convention; they are reported with
/// their outcome but never affect the verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub identities: Vec<IdentityCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<IdentityCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        SuiteReport { suite: suite.into(), seed, ..Default::default() }
    }

    pub fn push(&mut self, c: IdentityCheck) {
        self.identities.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = IdentityCheck>) {
        self.identities.extend(cs);
    }

    pub fn finding(&mut self, c: IdentityCheck) {
        self.findings.push(c);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    /// Appends another report's records.
    pub fn absorb(&mut self, other: SuiteReport) {
        self.identities.extend(other.identities);
        self.findings.extend(other.findings);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.identities.iter().filter(|c| !c.holds)
    }

    /// Sorts identities by id so that the order of evaluation never shows.
    pub fn sorted(mut self) -> Self {
        self.identities.sort_by(|a, b| a.id.cmp(&b.id));
        self.findings.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }
}
