//! Sparse multivariate polynomials with graded-lex ordered terms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{Interval, IntervalBox};
use super::rational::{self, Rational};
use super::UniPoly;
use crate::error::{Error, Result};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All exponent vectors in `n` variables of total degree `<= k`, ascending graded-lex.
pub fn monomials_up_to(n: usize, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=k {
        let mut layer = Vec::new();
        let mut cur = vec![0u32; n];
        fill_degree(&mut layer, &mut cur, 0, d);
        layer.sort();
        out.extend(layer);
    }
    out
}

fn fill_degree(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, i: usize, left: u32) {
    if cur.is_empty() {
        if left == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if i == cur.len() - 1 {
        cur[i] = left;
        out.push(Monomial(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in 0..=left {
        cur[i] = e;
        fill_degree(out, cur, i + 1, left - e);
    }
    cur[i] = 0;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn term(nvars: usize, exps: &[u32], c: Rational) -> Self {
        Self::from_terms(nvars, [(exps.to_vec(), c)])
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Smallest total degree of a term (order of vanishing at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.mul(m), a * c);
        }
        out
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * rational::int(i64::from(e)));
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars, "point dimension");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                t *= rational::pow(xi, e);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(x)
                    .fold(rational::to_f64(c), |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum()
    }

    /// Interval extension over a box; contains the exact range.
    pub fn interval_eval(&self, b: &IntervalBox) -> Result<Interval> {
        if b.dim() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: b.dim(),
            });
        }
        let mut acc = Interval::point(Rational::zero());
        for (m, c) in &self.terms {
            let mut t = Interval::point(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &b[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// `p(c + x)`: re-expansion at a new center.
    pub fn shift(&self, c: &[Rational]) -> Self {
        let n = self.nvars;
        let lins: Vec<MultiPoly> = (0..n)
            .map(|i| &MultiPoly::var(n, i) + &MultiPoly::constant(n, c[i].clone()))
            .collect();
        let mut out = Self::zero(n);
        for (m, a) in &self.terms {
            let mut t = MultiPoly::constant(n, a.clone());
            for (i, &e) in m.0.iter().enumerate() {
                t = &t * &lins[i].pow(e);
            }
            out = &out + &t;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Drops every term of total degree `> k`.
    pub fn truncate(&self, k: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes univariate polynomials for every variable.
    pub fn compose_uni(&self, xs: &[UniPoly]) -> UniPoly {
        let mut out = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (x, &e) in xs.iter().zip(&m.0) {
                t = &t * &x.pow(e);
            }
            out = &out + &t;
        }
        out
    }

    /// Univariate view of a one-variable polynomial.
    pub fn to_unipoly(&self) -> Option<UniPoly> {
        if self.nvars != 1 {
            return None;
        }
        let d = self.degree().unwrap_or(0) as usize;
        let mut cs = vec![Rational::zero(); d + 1];
        for (m, c) in &self.terms {
            cs[m.0[0] as usize] = c.clone();
        }
        Some(UniPoly::new(cs))
    }

    pub fn from_unipoly(p: &UniPoly) -> Self {
        Self::from_terms(
            1,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as u32], c.clone())),
        )
    }

    /// Parses expressions such as `"x^2*y - 3/7*y + 1"` over the given variable names.
    pub fn parse(s: &str, vars: &[&str]) -> Result<Self> {
        Parser::new(s, vars).parse()
    }

    pub fn display_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&format!("{a}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// Default variable names: `x, y, z` up to three variables, else `x1..xn`.
pub fn default_var_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_var_names(self.nvars)))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, a) in &self.terms {
            for (e, b) in &o.terms {
                out.add_term(m.mul(e), a * b);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct MultiPolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultiPolyRepr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    exp: m.0.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MultiPolyRepr::deserialize(d)?;
        let mut p = MultiPoly::zero(r.nvars);
        for t in r.terms {
            if t.exp.len() != r.nvars {
                return Err(serde::de::Error::custom("exponent length differs from nvars"));
            }
            let c = rational::parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
            p.add_term(Monomial(t.exp), c);
        }
        Ok(p)
    }
}

struct Parser<'a> {
    src: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn new(s: &str, vars: &'a [&'a str]) -> Self {
        Parser {
            src: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            vars,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::InvalidInput(format!("polynomial parse error at column {}: {msg}", self.pos + 1))
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<MultiPoly> {
        let p = self.expr()?;
        if self.pos != self.src.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let n = self.vars.len();
        let mut acc = MultiPoly::zero(n);
        let mut sign = Rational::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.product()?;
            acc = &acc + &t.scale(&sign);
            match self.peek() {
                Some('+') => {
                    sign = Rational::one();
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -Rational::one();
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let e: u32 = self.src[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let n = self.vars.len();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_digit() || c == '.' || c == '/')
                {
                    self.pos += 1;
                }
                let lit: String = self.src[start..self.pos].iter().collect();
                let q = rational::parse_rational(&lit).map_err(|_| self.err("bad number"))?;
                Ok(MultiPoly::constant(n, q))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.src[start..self.pos].iter().collect();
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| self.err(&format!("unknown variable {name:?}")))?;
                Ok(MultiPoly::var(n, i))
            }
            _ => Err(self.err("expected number, variable or '('")),
        }
    }
}
