//! The common output of every bounding operation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};

/// A natural number or `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinite => None,
        }
    }

    /// `self >= n`, with `+inf` above everything.
    pub fn dominates(self, n: u64) -> bool {
        match self {
            ExtNat::Finite(b) => b >= n,
            ExtNat::Infinite => true,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
}

impl Relation {
    pub fn eval(self, a: &Rational, b: &Rational) -> bool {
        match self {
            Relation::Lt => a < b,
            Relation::Le => a <= b,
            Relation::Gt => a > b,
            Relation::Ge => a >= b,
            Relation::Eq => a == b,
            Relation::Ne => a != b,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Eq => "==",
            Relation::Ne => "!=",
        }
    }
}

/// One checked inequality, with the exact values that were compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    pub relation: Relation,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
    pub holds: bool,
}

impl Hypothesis {
    pub fn check(name: impl Into<String>, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        let holds = relation.eval(&lhs, &rhs);
        Hypothesis {
            name: name.into(),
            lhs,
            relation,
            rhs,
            holds,
        }
    }

    /// Recomputes the comparison from the stored values.
    pub fn revalidate(&self) -> bool {
        self.relation.eval(&self.lhs, &self.rhs) == self.holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub bound: ExtNat,
    pub method: String,
    pub hypotheses: Vec<Hypothesis>,
    pub trace: Vec<String>,
    /// Named exact quantities (rationals as strings).
    pub quantities: BTreeMap<String, String>,
    pub reference: String,
}

impl BoundCertificate {
    pub fn new(method: impl Into<String>, reference: impl Into<String>) -> Self {
        BoundCertificate {
            bound: ExtNat::Infinite,
            method: method.into(),
            hypotheses: Vec::new(),
            trace: Vec::new(),
            quantities: BTreeMap::new(),
            reference: reference.into(),
        }
    }

    pub fn with_bound(mut self, b: u64) -> Self {
        self.bound = ExtNat::Finite(b);
        self
    }

    pub fn hypothesis(&mut self, h: Hypothesis) -> bool {
        let holds = h.holds;
        self.hypotheses.push(h);
        holds
    }

    pub fn step(&mut self, s: impl Into<String>) {
        self.trace.push(s.into());
    }

    pub fn quantity(&mut self, name: impl Into<String>, q: &Rational) {
        self.quantities.insert(name.into(), q.to_string());
    }

    pub fn get_quantity(&self, name: &str) -> Option<Rational> {
        self.quantities
            .get(name)
            .and_then(|s| rational::parse_rational(s).ok())
    }

    pub fn all_hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn revalidate(&self) -> bool {
        self.hypotheses.iter().all(Hypothesis::revalidate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    #[test]
    fn round_trip_keeps_exact_values() {
        let mut c = BoundCertificate::new("demo", "classical").with_bound(3);
        c.hypothesis(Hypothesis::check("sum", ratio(1, 3), Relation::Lt, int(1)));
        c.quantity("ell", &ratio(7, 5));
        assert!(c.revalidate());
        assert_eq!(c.get_quantity("ell"), Some(ratio(7, 5)));
        assert!(ExtNat::Infinite.dominates(10));
        assert!(!ExtNat::Finite(2).dominates(3));
    }
}
