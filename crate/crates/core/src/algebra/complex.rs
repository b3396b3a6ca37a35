//! Exact complex rationals `re + i im`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexQ {
    #[serde(with = "rational::serde_str")]
    pub re: Rational,
    #[serde(with = "rational::serde_str")]
    pub im: Rational,
}

impl ComplexQ {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexQ { re, im }
    }

    pub fn real(re: Rational) -> Self {
        ComplexQ {
            re,
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn i() -> Self {
        ComplexQ::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexQ::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `|re| + |im|`, an exact upper bound on `|z|`.
    pub fn l1_norm(&self) -> Rational {
        self.re.abs() + self.im.abs()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ComplexQ::new(&self.re * c, &self.im * c)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero("complex zero".into()));
        }
        Ok(ComplexQ::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rational::to_f64(&self.re), rational::to_f64(&self.im))
    }

    /// Parses `"a"`, `"a+bi"`, `"a-bi"`, `"bi"` or `"i"` with rational parts.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("not an exact complex literal: {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return rational::parse_rational(&t)
                .map(Self::real)
                .map_err(|_| bad());
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            x => rational::parse_rational(x).map_err(|_| bad())?,
        };
        let re = rational::parse_rational(re).map_err(|_| bad())?;
        Ok(ComplexQ::new(re, im))
    }
}

impl fmt::Display for ComplexQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -&self.im),
            _ => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

impl Add for &ComplexQ {
    type Output = ComplexQ;
    fn add(self, o: &ComplexQ) -> ComplexQ {
        ComplexQ::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &ComplexQ {
    type Output = ComplexQ;
    fn sub(self, o: &ComplexQ) -> ComplexQ {
        ComplexQ::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &ComplexQ {
    type Output = ComplexQ;
    fn mul(self, o: &ComplexQ) -> ComplexQ {
        ComplexQ::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &ComplexQ {
    type Output = ComplexQ;
    fn neg(self) -> ComplexQ {
        ComplexQ::new(-&self.re, -&self.im)
    }
}
