//! Closed intervals with exact rational endpoints.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rational::serde_str")]
    lo: Rational,
    #[serde(with = "rational::serde_str")]
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval(format!("[{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Largest absolute value on the interval.
    pub fn mag(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// `self^e`, tight for even powers of intervals straddling zero.
    pub fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(rational::int(1));
        }
        let a = rational::pow(&self.lo, e);
        let b = rational::pow(&self.hi, e);
        if e % 2 == 1 {
            return Interval { lo: a, hi: b };
        }
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval {
                lo: Rational::zero(),
                hi: a.max(b),
            }
        } else {
            Interval {
                lo: a.clone().min(b.clone()),
                hi: a.max(b),
            }
        }
    }

    /// Outward rounding to the dyadic grid `2^-bits`; keeps denominators small.
    pub fn round_out(&self, bits: u32) -> Interval {
        let s = Rational::from_integer(num_bigint::BigInt::from(1) << bits);
        Interval {
            lo: (&self.lo * &s).floor() / &s,
            hi: (&self.hi * &s).ceil() / &s,
        }
    }

    /// Widens both endpoints by `r >= 0`.
    pub fn inflate(&self, r: &Rational) -> Interval {
        Interval {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let ps = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = ps.iter().min().unwrap().clone();
        let hi = ps.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

/// Axis-aligned box: one closed interval per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalBox(pub Vec<Interval>);

impl IntervalBox {
    pub fn new(dims: Vec<Interval>) -> Self {
        IntervalBox(dims)
    }

    /// `center ± radius` in every coordinate.
    pub fn around(center: &[Rational], radius: &[Rational]) -> Self {
        IntervalBox(
            center
                .iter()
                .zip(radius)
                .map(|(c, r)| Interval {
                    lo: c - r,
                    hi: c + r,
                })
                .collect(),
        )
    }

    pub fn hull(&self, o: &IntervalBox) -> IntervalBox {
        IntervalBox(self.0.iter().zip(&o.0).map(|(a, b)| a.hull(b)).collect())
    }

    pub fn max_width(&self) -> Rational {
        self.0
            .iter()
            .map(Interval::width)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        x.len() == self.0.len() && self.0.iter().zip(x).all(|(i, v)| i.contains(v))
    }

    /// Float containment with a relative slack for values produced by rounding.
    pub fn contains_f64(&self, x: &[f64]) -> bool {
        x.len() == self.0.len()
            && self.0.iter().zip(x).all(|(i, &v)| {
                let lo = rational::to_f64(i.lo());
                let hi = rational::to_f64(i.hi());
                let slack = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
                v >= lo - slack && v <= hi + slack
            })
    }
}

impl std::ops::Index<usize> for IntervalBox {
    type Output = Interval;
    fn index(&self, i: usize) -> &Interval {
        &self.0[i]
    }
}

/// Interval Horner evaluation of a univariate polynomial (encloses the range).
pub fn horner(p: &super::UniPoly, x: &Interval) -> Interval {
    let mut acc = Interval::point(Rational::zero());
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * x) + &Interval::point(c.clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn even_power_straddling_zero_is_tight() {
        let x = Interval::new(int(-1), int(2)).unwrap();
        assert_eq!(x.pow(2), Interval::new(int(0), int(4)).unwrap());
        assert_eq!(x.pow(3), Interval::new(int(-1), int(8)).unwrap());
    }

    #[test]
    fn rejects_reversed_endpoints() {
        assert!(Interval::new(int(1), int(0)).is_err());
    }
}
