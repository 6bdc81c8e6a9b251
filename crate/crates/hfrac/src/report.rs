//! The report every bound-producing subcommand emits.

use hfrac_core::exactq::format_rational;
use hfrac_core::Rational;
use serde::Serialize;

use crate::schema::Certificate;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundValue {
    /// `"num/den"`.
    Exact(String),
    Float(f64),
}

impl BoundValue {
    pub fn exact(r: &Rational) -> Self {
        BoundValue::Exact(format_rational(r))
    }

    pub fn int(k: usize) -> Self {
        BoundValue::Exact(format!("{k}/1"))
    }

    /// Integers print without a denominator.
    pub fn human(&self) -> String {
        match self {
            BoundValue::Exact(s) => s.strip_suffix("/1").unwrap_or(s).to_string(),
            BoundValue::Float(x) => format!("{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub param: String,
    pub graph: String,
    pub lower: BoundValue,
    pub upper: BoundValue,
    /// Paths of witness files, or JSON pointers into `witnesses`.
    pub witness_refs: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Set when a budget or deadline cut a search short.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub interrupted: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl BoundReport {
    pub fn new(param: &str, graph: &str, lower: BoundValue, upper: BoundValue) -> Self {
        BoundReport {
            param: param.into(),
            graph: graph.into(),
            lower,
            upper,
            witness_refs: Vec::new(),
            witnesses: Vec::new(),
            tol: None,
            interrupted: false,
            notes: Vec::new(),
            details: None,
            runtime_ms: None,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    /// `"2"` for a point, `"[2, 5/2]"` for an interval.
    pub fn human_value(&self) -> String {
        if self.is_point() {
            self.lower.human()
        } else {
            format!("[{}, {}]", self.lower.human(), self.upper.human())
        }
    }

    pub fn with_witness(mut self, c: Certificate) -> Self {
        self.witness_refs.push(format!("#/witnesses/{}", self.witnesses.len()));
        self.witnesses.push(c);
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_forms() {
        let r = BoundReport::new("alpha", "cycle:5", BoundValue::int(2), BoundValue::int(2));
        assert_eq!(r.human_value(), "2");
        let r = BoundReport::new("x", "g", BoundValue::int(2), BoundValue::Exact("5/2".into()));
        assert_eq!(r.human_value(), "[2, 5/2]");
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(j, r#"{"param":"x","graph":"g","lower":"2/1","upper":"5/2","witness_refs":[]}"#);
    }
}
