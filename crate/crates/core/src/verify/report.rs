//! Check reports, serialised one JSON object per line, and the tolerance table.

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::{Map, Value};
use std::collections::BTreeMap;

/// Floor under the relative residual denominator.
pub const REL_FLOOR: f64 = 1e-30;

/// A real or complex side of an identity; complex values serialise as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Side {
    Real(f64),
    Complex(Complex64),
}

impl Side {
    pub fn as_complex(&self) -> Complex64 {
        match *self {
            Side::Real(x) => Complex64::new(x, 0.0),
            Side::Complex(z) => z,
        }
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Side::Real(x) => s.serialize_f64(*x),
            Side::Complex(z) => {
                let mut seq = s.serialize_seq(Some(2))?;
                seq.serialize_element(&z.re)?;
                seq.serialize_element(&z.im)?;
                seq.end()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceKind {
    Absolute,
    Relative,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerance {
    pub kind: ToleranceKind,
    pub value: f64,
}

impl Tolerance {
    pub const fn abs(value: f64) -> Self {
        Tolerance { kind: ToleranceKind::Absolute, value }
    }
    pub const fn rel(value: f64) -> Self {
        Tolerance { kind: ToleranceKind::Relative, value }
    }
}

/// Default tolerance per identity name, overridable by key.
#[derive(Debug, Clone, PartialEq)]
pub struct ToleranceTable {
    entries: BTreeMap<String, Tolerance>,
}

impl Default for ToleranceTable {
    fn default() -> Self {
        let mut entries = BTreeMap::new();
        for (name, tol) in [
            ("petersson", Tolerance::abs(1e-6)),
            ("watson_l4_quadrature_vs_spectral", Tolerance::rel(1e-3)),
            ("watson_l4_spectral_vs_lvalue", Tolerance::rel(1e-2)),
            ("watson_l4_quadrature_vs_lvalue", Tolerance::rel(1e-2)),
            ("watson_per_form", Tolerance::rel(1e-2)),
            ("voronoi", Tolerance::rel(1e-3)),
            ("lemma33_ramanujan", Tolerance::abs(1e-10)),
            ("cusp_integral_p", Tolerance::rel(1e-6)),
            ("geodesic_r", Tolerance::rel(1e-6)),
            ("geodesic_i", Tolerance::rel(1e-3)),
            ("l2_norm", Tolerance::abs(1e-3)),
            ("mean_value_diagonal", Tolerance::rel(1e-10)),
            ("mean_value_offdiagonal", Tolerance::rel(1e-8)),
            ("sym2_dirichlet_series", Tolerance::abs(0.0)),
        ] {
            entries.insert(name.to_string(), tol);
        }
        ToleranceTable { entries }
    }
}

impl ToleranceTable {
    pub fn get(&self, identity: &str) -> Tolerance {
        self.entries.get(identity).copied().unwrap_or(Tolerance::rel(1e-6))
    }

    pub fn set(&mut self, identity: &str, tol: Tolerance) {
        self.entries.insert(identity.to_string(), tol);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Tolerance)> {
        self.entries.iter()
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub params: Map<String, Value>,
    pub lhs: Side,
    pub rhs: Side,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub truncation: Map<String, Value>,
    pub tolerance: Tolerance,
    pub passed: bool,
}

impl CheckReport {
    /// Builds the report and decides `passed` from the tolerance.
    pub fn new(identity: &str, params: Value, lhs: Side, rhs: Side, truncation: Value, tolerance: Tolerance) -> Self {
        let (a, b) = (lhs.as_complex(), rhs.as_complex());
        let abs_residual = (a - b).norm();
        let rel_residual = abs_residual / a.norm().max(b.norm()).max(REL_FLOOR);
        let measured = match tolerance.kind {
            ToleranceKind::Absolute => abs_residual,
            ToleranceKind::Relative => rel_residual,
        };
        CheckReport {
            identity: identity.to_string(),
            params: to_map(params),
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            truncation: to_map(truncation),
            tolerance,
            passed: measured <= tolerance.value,
        }
    }

    /// A check whose pass condition is an explicit bound rather than a two-sided identity.
    pub fn with_passed(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }

    /// Sort key: identity, then the canonical parameter JSON.
    pub fn sort_key(&self) -> (String, String) {
        (self.identity.clone(), Value::Object(self.params.clone()).to_string())
    }
}

fn to_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        Value::Null => Map::new(),
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

/// Sorts reports deterministically and renders them as JSON lines.
pub fn to_jsonl(reports: &mut [CheckReport]) -> String {
    reports.sort_by_key(|r| r.sort_key());
    let mut out = String::new();
    for r in reports.iter() {
        out.push_str(&r.to_json_line());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn residuals_and_floor() {
        let r = CheckReport::new("x", json!({}), Side::Real(0.0), Side::Real(0.0), json!({}), Tolerance::rel(1e-6));
        assert_eq!(r.rel_residual, 0.0);
        assert!(r.passed);
        let r = CheckReport::new("x", json!({}), Side::Real(1.0), Side::Real(1.1), json!({}), Tolerance::rel(1e-2));
        assert!((r.rel_residual - 0.1 / 1.1).abs() < 1e-15);
        assert!(!r.passed);
    }

    #[test]
    fn complex_sides_serialise_as_pairs() {
        let r = CheckReport::new(
            "z",
            json!({"b": 2, "a": 1}),
            Side::Complex(Complex64::new(1.0, -2.0)),
            Side::Real(1.0),
            json!(null),
            Tolerance::abs(3.0),
        );
        let line = r.to_json_line();
        assert!(line.contains("\"lhs\":[1.0,-2.0]"), "{line}");
        assert!(line.contains("\"params\":{\"a\":1,\"b\":2}"), "{line}");
    }
}
