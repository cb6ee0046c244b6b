//! Three-valued verdicts with provenance.
//!
//! Integral-closure questions are only semi-decidable here: multiplicity or
//! membership certificates close one direction, curve probes refute the
//! other, and anything else stays open. A [`Verdict`] records which of the
//! five outcomes was reached, the ordered provenance trail that produced it,
//! and the caller-asserted hypotheses it relies on.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Replayable evidence attached to a refutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// A curve along which the target has strictly smaller valuation than
    /// the module supplies.
    Curve {
        curve: String,
        parametrization: String,
        row: usize,
        target_order: u32,
        /// Valuation available from the module in that row (None: nothing
        /// definite at all).
        module_order: Option<u32>,
    },
    /// A strict multiplicity drop between a submodule and its enlargement.
    Multiplicity { e_sub: u64, e_total: u64 },
    /// A certified infinite colength where a finite one was required.
    InfiniteColength { description: String },
}

/// Outcome of a check.
///
/// `CertifiedTrue`/`CertifiedFalse` are backed by exact certificates
/// (membership, nilpotency, multiplicity equality/inequality) recorded in
/// the provenance trail. `Refuted` carries its witness inline so it can be
/// replayed without re-running the check. `NotRefuted` is evidence, not
/// proof: the stated number of probes failed to refute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum Status {
    CertifiedTrue,
    CertifiedFalse,
    Refuted { witness: Witness },
    NotRefuted { probes: usize },
    Inconclusive { reason: String },
}

impl Status {
    pub fn is_certified(&self) -> bool {
        matches!(self, Status::CertifiedTrue | Status::CertifiedFalse)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Status::Refuted { .. })
    }

    /// Canonical short label, e.g. for report headers.
    pub fn label(&self) -> String {
        match self {
            Status::CertifiedTrue => "CERTIFIED-TRUE".to_string(),
            Status::CertifiedFalse => "CERTIFIED-FALSE".to_string(),
            Status::Refuted { .. } => "REFUTED".to_string(),
            Status::NotRefuted { probes } => format!("NOT-REFUTED({probes})"),
            Status::Inconclusive { .. } => "INCONCLUSIVE".to_string(),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// One step of the provenance trail: which criterion was applied and the
/// data it produced. Data keys are sorted so serialized output is stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProvenanceStep {
    pub criterion: String,
    pub data: BTreeMap<String, String>,
}

/// A decided (or undecided) claim together with how it was decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    /// The claim being decided, human-readable.
    pub claim: String,
    pub status: Status,
    /// Ordered criteria applied on the way to `status`.
    pub provenance: Vec<ProvenanceStep>,
    /// Caller-asserted hypotheses this verdict relies on (echoed, not
    /// verified).
    pub assumptions: Vec<String>,
}

impl Verdict {
    pub fn new(claim: impl Into<String>, status: Status) -> Self {
        Verdict {
            claim: claim.into(),
            status,
            provenance: Vec::new(),
            assumptions: Vec::new(),
        }
    }

    /// Append a provenance step; returns `self` for chaining.
    pub fn step<K: Into<String>, V: Into<String>>(
        mut self,
        criterion: impl Into<String>,
        data: impl IntoIterator<Item = (K, V)>,
    ) -> Self {
        self.push_step(criterion, data);
        self
    }

    pub fn push_step<K: Into<String>, V: Into<String>>(
        &mut self,
        criterion: impl Into<String>,
        data: impl IntoIterator<Item = (K, V)>,
    ) {
        self.provenance.push(ProvenanceStep {
            criterion: criterion.into(),
            data: data
                .into_iter()
                .map(|(k, v)| (k.into(), v.into()))
                .collect(),
        });
    }

    pub fn assume(mut self, assumption: impl Into<String>) -> Self {
        self.assumptions.push(assumption.into());
        self
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.status.label(), self.claim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_display() {
        assert_eq!(Status::CertifiedTrue.label(), "CERTIFIED-TRUE");
        assert_eq!(Status::NotRefuted { probes: 12 }.label(), "NOT-REFUTED(12)");
        let v = Verdict::new("h lies in the closure", Status::CertifiedTrue)
            .step("membership", [("remainder", "0")])
            .assume("equidimensional (asserted)");
        assert_eq!(v.to_string(), "CERTIFIED-TRUE: h lies in the closure");
        assert_eq!(v.provenance.len(), 1);
        assert_eq!(v.provenance[0].data["remainder"], "0");
    }

    #[test]
    fn witnesses_serialize_stably() {
        let w = Witness::Curve {
            curve: "probe-3".into(),
            parametrization: "(-t^2, t, 0)".into(),
            row: 0,
            target_order: 1,
            module_order: Some(3),
        };
        let s = serde_json::to_string(&w).unwrap();
        assert!(s.contains("\"kind\":\"Curve\""));
        assert!(s.contains("\"target_order\":1"));
    }
}
