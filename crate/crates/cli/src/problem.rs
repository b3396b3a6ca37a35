//! Problem files: JSON objects whose exact fields are decimal strings.

use std::path::Path;

use num_complex::Complex64;
use rolle_core::algebra::rational::{self, parse_rational, Rational};
use rolle_core::algebra::{ComplexQ, MultiPoly, UniPoly};
use rolle_core::ode::ComplexDomain;
use serde_json::{Map, Value};

use crate::error::CliError;

/// A JSON object together with its location inside the file, for diagnostics.
#[derive(Clone, Debug)]
pub struct Payload {
    path: String,
    map: Map<String, Value>,
}

pub fn read_file(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

impl Payload {
    pub fn root(v: Value) -> Result<Self, CliError> {
        match v {
            Value::Object(map) => Ok(Payload { path: String::new(), map }),
            _ => Err(CliError::field("(root)", "expected a JSON object")),
        }
    }

    pub fn echo(&self) -> Value {
        Value::Object(self.map.clone())
    }

    fn name(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    pub fn has(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    fn get(&self, key: &str) -> Result<&Value, CliError> {
        self.map.get(key).ok_or_else(|| CliError::MissingField(self.name(key)))
    }

    pub fn sub(&self, key: &str) -> Result<Payload, CliError> {
        match self.get(key)? {
            Value::Object(map) => Ok(Payload {
                path: self.name(key),
                map: map.clone(),
            }),
            _ => Err(CliError::field(self.name(key), "expected an object")),
        }
    }

    pub fn string(&self, key: &str) -> Result<String, CliError> {
        match self.get(key)? {
            Value::String(s) => Ok(s.clone()),
            _ => Err(CliError::field(self.name(key), "expected a string")),
        }
    }

    pub fn opt_string(&self, key: &str) -> Result<Option<String>, CliError> {
        if self.has(key) {
            self.string(key).map(Some)
        } else {
            Ok(None)
        }
    }

    fn list(&self, key: &str) -> Result<&Vec<Value>, CliError> {
        match self.get(key)? {
            Value::Array(a) => Ok(a),
            _ => Err(CliError::field(self.name(key), "expected an array")),
        }
    }

    pub fn strings(&self, key: &str) -> Result<Vec<String>, CliError> {
        self.list(key)?
            .iter()
            .enumerate()
            .map(|(i, v)| match v {
                Value::String(s) => Ok(s.clone()),
                _ => Err(CliError::field(format!("{}[{i}]", self.name(key)), "expected a string")),
            })
            .collect()
    }

    pub fn objects(&self, key: &str) -> Result<Vec<Payload>, CliError> {
        self.list(key)?
            .iter()
            .enumerate()
            .map(|(i, v)| match v {
                Value::Object(map) => Ok(Payload {
                    path: format!("{}[{i}]", self.name(key)),
                    map: map.clone(),
                }),
                _ => Err(CliError::field(format!("{}[{i}]", self.name(key)), "expected an object")),
            })
            .collect()
    }

    pub fn rational(&self, key: &str) -> Result<Rational, CliError> {
        exact(&self.name(key), self.get(key)?)
    }

    pub fn opt_rational(&self, key: &str) -> Result<Option<Rational>, CliError> {
        if self.has(key) {
            self.rational(key).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn rationals(&self, key: &str) -> Result<Vec<Rational>, CliError> {
        self.list(key)?
            .iter()
            .enumerate()
            .map(|(i, v)| exact(&format!("{}[{i}]", self.name(key)), v))
            .collect()
    }

    /// A length; a trailing `pi` multiplies by a rational upper bound of pi.
    pub fn length(&self, key: &str) -> Result<Rational, CliError> {
        let name = self.name(key);
        match self.get(key)? {
            Value::String(s) => {
                let t = s.trim();
                match t.strip_suffix("pi") {
                    Some(head) => {
                        let head = head.trim().trim_end_matches('*').trim();
                        let k = if head.is_empty() {
                            Rational::from_integer(1.into())
                        } else {
                            parse_rational(head).map_err(|e| CliError::field(&name, e.to_string()))?
                        };
                        Ok(k * rational::pi_upper())
                    }
                    None => parse_rational(t).map_err(|e| CliError::field(&name, e.to_string())),
                }
            }
            other => exact(&name, other),
        }
    }

    pub fn complex(&self, key: &str) -> Result<ComplexQ, CliError> {
        complex(&self.name(key), self.get(key)?)
    }

    pub fn complexes(&self, key: &str) -> Result<Vec<ComplexQ>, CliError> {
        self.list(key)?
            .iter()
            .enumerate()
            .map(|(i, v)| complex(&format!("{}[{i}]", self.name(key)), v))
            .collect()
    }

    /// Non-certified real parameter: a decimal string or a JSON number.
    pub fn real(&self, key: &str) -> Result<f64, CliError> {
        real(&self.name(key), self.get(key)?)
    }

    pub fn reals(&self, key: &str) -> Result<Vec<f64>, CliError> {
        self.list(key)?
            .iter()
            .enumerate()
            .map(|(i, v)| real(&format!("{}[{i}]", self.name(key)), v))
            .collect()
    }

    pub fn integer(&self, key: &str) -> Result<i64, CliError> {
        let name = self.name(key);
        match self.get(key)? {
            Value::Number(n) => n.as_i64().ok_or_else(|| CliError::field(&name, "expected an integer")),
            Value::String(s) => s.trim().parse().map_err(|_| CliError::field(&name, "expected an integer")),
            _ => Err(CliError::field(name, "expected an integer")),
        }
    }

    pub fn natural(&self, key: &str) -> Result<u64, CliError> {
        let v = self.integer(key)?;
        u64::try_from(v).map_err(|_| CliError::field(self.name(key), "expected a nonnegative integer"))
    }

    pub fn opt_natural(&self, key: &str, default: u64) -> Result<u64, CliError> {
        if self.has(key) {
            self.natural(key)
        } else {
            Ok(default)
        }
    }

    /// A univariate polynomial in `t`: an expression string or a coefficient list, lowest degree first.
    pub fn unipoly(&self, key: &str) -> Result<UniPoly, CliError> {
        let name = self.name(key);
        match self.get(key)? {
            Value::String(s) => unipoly_expr(&name, s),
            Value::Array(_) => Ok(UniPoly::new(self.rationals(key)?)),
            _ => Err(CliError::field(name, "expected an expression or a coefficient list")),
        }
    }

    pub fn unipolys(&self, key: &str) -> Result<Vec<UniPoly>, CliError> {
        let name = self.name(key);
        self.strings(key)?
            .iter()
            .enumerate()
            .map(|(i, s)| unipoly_expr(&format!("{name}[{i}]"), s))
            .collect()
    }

    pub fn multipoly(&self, key: &str, vars: &[&str]) -> Result<MultiPoly, CliError> {
        let s = self.string(key)?;
        MultiPoly::parse(&s, vars).map_err(|e| CliError::field(self.name(key), e.to_string()))
    }

    /// `{"shape": "disk", "center", "radius"}` or `{"shape": "polygon", "vertices"}`.
    pub fn domain(&self, key: &str) -> Result<ComplexDomain, CliError> {
        let d = self.sub(key)?;
        match d.string("shape")?.as_str() {
            "disk" => Ok(ComplexDomain::Disk {
                center: if d.has("center") { d.complex("center")? } else { ComplexQ::zero() },
                radius: d.rational("radius")?,
            }),
            "polygon" => Ok(ComplexDomain::Polygon {
                vertices: d.complexes("vertices")?,
            }),
            "half_plane" => Ok(ComplexDomain::HalfPlane),
            other => Err(CliError::field(d.name("shape"), format!("unknown shape `{other}`"))),
        }
    }
}

fn exact(name: &str, v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| CliError::field(name, e.to_string())),
        Value::Number(_) => Err(CliError::field(
            name,
            "numeric literal in an exact field; write it as a decimal string such as \"0.25\" or \"3/7\"",
        )),
        _ => Err(CliError::field(name, "expected a decimal string")),
    }
}

fn real(name: &str, v: &Value) -> Result<f64, CliError> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| CliError::field(name, "not a finite number")),
        Value::String(s) => parse_rational(s)
            .map(|q| rational::to_f64(&q))
            .map_err(|e| CliError::field(name, e.to_string())),
        _ => Err(CliError::field(name, "expected a number")),
    }
}

fn complex(name: &str, v: &Value) -> Result<ComplexQ, CliError> {
    match v {
        Value::String(s) => ComplexQ::parse(s).map_err(|e| CliError::field(name, e.to_string())),
        Value::Number(_) => Err(CliError::field(name, "numeric literal in an exact field; use a string")),
        _ => Err(CliError::field(name, "expected a complex literal such as \"1-2/3i\"")),
    }
}

fn unipoly_expr(name: &str, s: &str) -> Result<UniPoly, CliError> {
    MultiPoly::parse(s, &["t"])
        .map(|p| p.to_unipoly().expect("one variable"))
        .map_err(|e| CliError::field(name, e.to_string()))
}

pub fn center_c64(domain: &ComplexDomain) -> Option<(Complex64, f64)> {
    match domain {
        ComplexDomain::Disk { center, radius } => Some((center.to_c64(), rational::to_f64(radius))),
        _ => None,
    }
}
