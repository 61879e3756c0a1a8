//! Axiom reports: one entry per checked identity, serializable as JSON lines.

use serde::Serialize;
use serde_json::{json, Value};

use crate::exact_linear::Field;

/// Every `paper_eq` label a report may carry.
pub const LABELS: &[&str] = &[
    // algebras
    "algebra-associative",
    "algebra-nondegenerate",
    "algebra-idempotent",
    "algebra-local-units",
    "algebra-involution",
    "multiplier-algebra",
    "base-embedding",
    "module-action",
    // bialgebroids
    "left-delta-bimodule",
    "right-delta-bimodule",
    "delta-bimodule-extended",
    "delta-takeuchi",
    "delta-multiplicative",
    "delta-coassociative",
    "right-delta-co-associative",
    "compatible",
    "left-counit",
    "right-counit",
    "counit-module",
    "counits-multiplicative",
    "left-galois-maps",
    "right-galois-maps",
    "regularity-subspaces",
    "dg:antipode",
    "antipode-anti-multiplicative",
    "antipode-module",
    "dg:galois-inverse",
    "dg:galois-antipode",
    "dg:left-galois-1",
    "antipode-counits",
    "antipode-derived",
    "base-anti-isomorphism",
    "base-commute",
    "involution",
    "counit-antipode-involution",
    // integration
    "partial-left-deltab",
    "partial-left-deltac",
    "partial-right-deltab",
    "partial-right-deltac",
    "dg:strong-invariance-left",
    "dg:strong-invariance-right",
    "partial-integrals",
    "partial-integrals-bimodule-antipode",
    "orbit-algebra",
    "orbit-antipode",
    "ergodic",
    "proper",
    "proper-composed-partial-integrals",
    "base-weight-faithful",
    "base-weight-antipodal",
    "base-weight-modular",
    "base-weight-positive",
    "base-weight-counital",
    "counit-antipode",
    "counit-kms",
    "counit-functional-factorizations",
    "factorizable",
    "quasi-invariant",
    "full",
    "faithful",
    "lesssim",
    "measured",
    // structure theory
    "convolution",
    "convolution-counit",
    "convolution-2",
    "convolution-right-invariance",
    "convolution-left-invariance",
    "unital-uniqueness-1",
    "modular-automorphism",
    "bphi-phib",
    "cpsi-psic",
    "integrals-modular-base",
    "modular-element-second",
    "integrals-uniqueness",
    "uniqueness-phi-psi",
    "uniqueness-full",
    "projective",
    "integrals-faithful",
    "dual-algebra",
    "dual-product",
    "extension-multipliers",
    "integrals-proper",
    "unital-uniqueness-2",
    // modification
    "theta-base",
    "theta-comultiplication",
    "modified-full",
    "modifier-right",
    "modifier-antipode-base",
    "modifier-self-adjoint",
    "modifier-group",
    "modification",
    "modified-lt-counit",
    "modified-rt-counit",
    "modified-antipode",
    "theta-tl",
    "theta-tr",
    "modified-isomorphism",
    "modification-integrals",
    "left-modifier-characters",
    "radon-nikodym-cocycle",
    "chb-modification",
    "chb-modular",
    "ch-symmetric",
    "chb-action-algebra",
    "chb-action-antipode",
    // examples
    "groupoid-axioms",
    "hopf-axioms",
    "integrals-mha",
    "example-formula",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Computed data, not a check.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub axiom: String,
    pub paper_eq: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, axiom: &str, label: &str, status: Status, witness: Option<Value>, note: Option<String>) {
        debug_assert!(LABELS.contains(&label), "unregistered label {label}");
        self.entries.push(Entry {
            axiom: axiom.to_string(),
            paper_eq: label.to_string(),
            status,
            witness,
            note,
        });
    }

    pub fn pass(&mut self, axiom: &str, label: &str) {
        self.push(axiom, label, Status::Pass, None, None);
    }

    pub fn fail(&mut self, axiom: &str, label: &str, witness: Value) {
        self.push(axiom, label, Status::Fail, Some(witness), None);
    }

    pub fn info(&mut self, axiom: &str, label: &str, data: Value) {
        self.push(axiom, label, Status::Info, Some(data), None);
    }

    /// Records pass or fail from an optional failure witness.
    pub fn record(&mut self, axiom: &str, label: &str, failure: Option<Value>) -> bool {
        match failure {
            None => {
                self.pass(axiom, label);
                true
            }
            Some(w) => {
                self.fail(axiom, label, w);
                false
            }
        }
    }

    pub fn note_last(&mut self, note: &str) {
        if let Some(e) = self.entries.last_mut() {
            e.note = Some(note.to_string());
        }
    }

    /// Checks `f` on every case; the first `Some` is the failure witness.
    pub fn check<T>(
        &mut self,
        axiom: &str,
        label: &str,
        cases: impl IntoIterator<Item = T>,
        mut f: impl FnMut(T) -> Option<Value>,
    ) -> bool {
        let failure = cases.into_iter().find_map(|c| f(c));
        self.record(axiom, label, failure)
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Appends `other` with every axiom name prefixed.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut e in other.entries {
            e.axiom = format!("{prefix}{}", e.axiom);
            self.entries.push(e);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail).collect()
    }

    pub fn get(&self, axiom: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn passed(&self, axiom: &str) -> bool {
        self.get(axiom).is_some_and(|e| e.status == Status::Pass)
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn summary(&self) -> Value {
        json!({
            "summary": true,
            "pass": self.count(Status::Pass),
            "fail": self.count(Status::Fail),
            "info": self.count(Status::Info),
            "ok": self.all_pass(),
        })
    }

    /// One JSON object per line, closed by the summary object.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("serializable"));
            out.push('\n');
        }
        out.push_str(&self.summary().to_string());
        out.push('\n');
        out
    }
}

pub fn scalar_json<F: Field>(x: &F) -> Value {
    Value::String(x.to_string())
}

pub fn vec_json<F: Field>(v: &[F]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn pair_json<F: Field>(lhs: &[F], rhs: &[F]) -> Value {
    json!({ "lhs": vec_json(lhs), "rhs": vec_json(rhs) })
}

/// Compares two vectors; on mismatch returns a witness naming `at`.
pub fn compare<F: Field>(at: Value, lhs: &[F], rhs: &[F]) -> Option<Value> {
    if lhs == rhs {
        None
    } else {
        Some(json!({ "at": at, "lhs": vec_json(lhs), "rhs": vec_json(rhs) }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_lines_end_with_summary() {
        let mut r = Report::new();
        r.pass("a", "left-counit");
        r.fail("b", "right-counit", json!({"at": 1}));
        let text = r.to_json_lines();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        let last: Value = serde_json::from_str(lines[2]).unwrap();
        assert_eq!(last["fail"], 1);
        assert_eq!(last["ok"], false);
        assert!(lines[0].contains("\"status\":\"pass\""));
    }

    #[test]
    fn check_stops_at_first_failure() {
        let mut r = Report::new();
        let ok = r.check("x", "left-counit", 0..10, |i| if i >= 3 { Some(json!(i)) } else { None });
        assert!(!ok);
        assert_eq!(r.entries[0].witness, Some(json!(3)));
    }

    #[test]
    fn labels_unique() {
        let mut v = LABELS.to_vec();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), LABELS.len());
    }
}
