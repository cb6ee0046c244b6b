//! Deterministic run reports.
//!
//! A report is a labeled tree of nodes, each carrying an optional status
//! line, sorted key-value data, and children. Reports deliberately contain
//! no timestamps or host information: two runs over the same inputs with
//! the same seed must produce byte-identical output, both as text and as
//! JSON.

use crate::verdict::{Status, Verdict, Witness};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportNode {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<ReportNode>,
}

impl ReportNode {
    pub fn new(label: impl Into<String>) -> Self {
        ReportNode {
            label: label.into(),
            status: None,
            data: BTreeMap::new(),
            children: Vec::new(),
        }
    }

    pub fn with_status(label: impl Into<String>, status: impl Into<String>) -> Self {
        let mut n = ReportNode::new(label);
        n.status = Some(status.into());
        n
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.data.insert(key.into(), value.into());
    }

    pub fn entry(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.put(key, value);
        self
    }

    pub fn child(mut self, node: ReportNode) -> Self {
        self.children.push(node);
        self
    }

    pub fn add_child(&mut self, node: ReportNode) {
        self.children.push(node);
    }

    /// Render a verdict as a node: status header, claim, witness (for
    /// refutations), the provenance trail as child nodes, assumptions.
    pub fn from_verdict(label: impl Into<String>, v: &Verdict) -> Self {
        let mut n = ReportNode::with_status(label, v.status.label());
        n.put("claim", &v.claim);
        match &v.status {
            Status::Refuted { witness } => n.add_child(witness_node(witness)),
            Status::Inconclusive { reason } => n.put("reason", reason),
            _ => {}
        }
        for step in &v.provenance {
            let mut s = ReportNode::new(&step.criterion);
            s.data = step.data.clone();
            n.add_child(s);
        }
        if !v.assumptions.is_empty() {
            n.put("assumptions", v.assumptions.join("; "));
        }
        n
    }

    /// Indented text rendering: `label [STATUS]`, data lines `key = value`,
    /// then children, two spaces per depth level.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match &self.status {
            Some(s) => out.push_str(&format!("{pad}{} [{s}]\n", self.label)),
            None => out.push_str(&format!("{pad}{}\n", self.label)),
        }
        for (k, v) in &self.data {
            out.push_str(&format!("{pad}  {k} = {v}\n"));
        }
        for c in &self.children {
            c.render_into(depth + 1, out);
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn witness_node(w: &Witness) -> ReportNode {
    match w {
        Witness::Curve {
            curve,
            parametrization,
            row,
            target_order,
            module_order,
        } => ReportNode::new("witness")
            .entry("kind", "curve")
            .entry("curve", curve)
            .entry("parametrization", parametrization)
            .entry("row", row.to_string())
            .entry("target-order", target_order.to_string())
            .entry(
                "module-order",
                module_order
                    .map(|o| o.to_string())
                    .unwrap_or_else(|| "none".to_string()),
            ),
        Witness::Multiplicity { e_sub, e_total } => ReportNode::new("witness")
            .entry("kind", "multiplicity")
            .entry("e-sub", e_sub.to_string())
            .entry("e-total", e_total.to_string()),
        Witness::InfiniteColength { description } => ReportNode::new("witness")
            .entry("kind", "infinite-colength")
            .entry("description", description),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportNode {
        let v = Verdict::new(
            "h integrally dependent on M",
            Status::Refuted {
                witness: Witness::Curve {
                    curve: "probe-3".into(),
                    parametrization: "(t^2, -t)".into(),
                    row: 0,
                    target_order: 1,
                    module_order: Some(2),
                },
            },
        )
        .step::<&str, String>("valuative", [("probes", "12".into())]);
        ReportNode::new("run")
            .entry("seed", "0")
            .child(ReportNode::from_verdict("icl", &v))
    }

    #[test]
    fn text_rendering_is_stable() {
        let a = sample().render_text();
        let b = sample().render_text();
        assert_eq!(a, b);
        assert_eq!(
            a,
            "run\n  seed = 0\n  icl [REFUTED]\n    claim = h integrally dependent on M\n    \
             witness\n      curve = probe-3\n      kind = curve\n      module-order = 2\n      \
             parametrization = (t^2, -t)\n      row = 0\n      target-order = 1\n    \
             valuative\n      probes = 12\n"
        );
    }

    #[test]
    fn json_rendering_skips_empty_fields() {
        let n = ReportNode::with_status("leaf", "CERTIFIED-TRUE");
        assert_eq!(
            n.render_json(),
            "{\n  \"label\": \"leaf\",\n  \"status\": \"CERTIFIED-TRUE\"\n}\n"
        );
        let parsed: serde_json::Value = serde_json::from_str(&sample().render_json()).unwrap();
        assert_eq!(parsed["children"][0]["status"], "REFUTED");
        assert_eq!(parsed["children"][0]["children"][0]["data"]["kind"], "curve");
    }

    #[test]
    fn inconclusive_reason_is_surfaced() {
        let v = Verdict::new(
            "claim",
            Status::Inconclusive {
                reason: "no probes supplied".into(),
            },
        );
        let n = ReportNode::from_verdict("check", &v);
        assert_eq!(n.data["reason"], "no probes supplied");
        assert_eq!(n.status.as_deref(), Some("INCONCLUSIVE"));
    }
}
