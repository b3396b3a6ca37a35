//! Versioned reports with deterministic (sorted-key) serialization.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rolle_core::{BoundCertificate, ExtNat};
use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "rolle-lab/report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub kind: String,
    pub input: Value,
    pub certificate: Option<BoundCertificate>,
    /// Count produced by an independent oracle, compared against the certificate's bound.
    pub oracle_count: Option<u64>,
    pub oracle: Option<Value>,
    pub results: Map<String, Value>,
    /// Exact identities and theorem checks that must hold.
    pub checks: BTreeMap<String, bool>,
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

impl Report {
    pub fn new(kind: &str, input: Value) -> Self {
        Report {
            kind: kind.to_string(),
            input,
            ..Default::default()
        }
    }

    pub fn result(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(key.to_string(), to_value(&v));
    }

    pub fn check(&mut self, key: &str, holds: bool) {
        self.checks.insert(key.to_string(), holds);
    }

    pub fn bound(&self) -> Option<ExtNat> {
        self.certificate.as_ref().map(|c| c.bound)
    }

    /// `bound >= oracle`, present only when both exist.
    pub fn ok(&self) -> Option<bool> {
        match (self.bound(), self.oracle_count) {
            (Some(b), Some(n)) => Some(b.dominates(n)),
            _ => None,
        }
    }

    /// A bound below its oracle count, or a failed identity.
    pub fn contradiction(&self) -> bool {
        self.ok() == Some(false) || self.checks.values().any(|&c| !c)
    }

    pub fn to_json(&self, seed: u64, timing_ms: Option<u128>) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), SCHEMA.into());
        m.insert("version".into(), SCHEMA_VERSION.into());
        m.insert("tool_version".into(), env!("CARGO_PKG_VERSION").into());
        m.insert("kind".into(), self.kind.clone().into());
        m.insert("seed".into(), seed.to_string().into());
        m.insert("input".into(), self.input.clone());
        if let Some(c) = &self.certificate {
            m.insert("certificate".into(), to_value(c));
            m.insert("bound".into(), c.bound.to_string().into());
        }
        if let Some(n) = self.oracle_count {
            m.insert("oracle_count".into(), n.into());
        }
        if let Some(o) = &self.oracle {
            m.insert("oracle".into(), o.clone());
        }
        if let Some(ok) = self.ok() {
            m.insert("ok".into(), ok.into());
        }
        if !self.results.is_empty() {
            m.insert("results".into(), Value::Object(self.results.clone()));
        }
        if !self.checks.is_empty() {
            m.insert("checks".into(), to_value(&self.checks));
        }
        if let Some(t) = timing_ms {
            m.insert("timing_ms".into(), (t as u64).into());
        }
        Value::Object(m)
    }
}

pub fn render(v: &Value, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(v).expect("json");
        s.push('\n');
        s
    } else {
        let mut out = String::new();
        flatten("", v, &mut out);
        out
    }
}

/// `path = value` lines in key order.
fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if !a.is_empty() && a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix} = {s}");
        }
        other => {
            let _ = writeln!(out, "{prefix} = {other}");
        }
    }
}
