//! Exact rational scalars and the handful of helpers every certified path needs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not an exact rational literal: {:?}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-3/7"` or a decimal string such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    let digits_ok = |p: &str| p.chars().all(|c| c.is_ascii_digit());
    if !digits_ok(whole) || !digits_ok(frac) {
        return Err(err());
    }
    let mut num: BigInt = if whole.is_empty() {
        BigInt::zero()
    } else {
        whole.parse().map_err(|_| err())?
    };
    let mut den = BigInt::one();
    for c in frac.chars() {
        num = num * 10 + BigInt::from(c.to_digit(10).unwrap());
        den *= 10;
    }
    if neg {
        num = -num;
    }
    Ok(Rational::new(num, den))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact binary value of a finite float.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

pub fn pow(q: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= q;
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Smallest integer `>= q`, saturated into `u64` (callers only pass nonnegative values).
pub fn ceil_u64(q: &Rational) -> u64 {
    q.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

pub fn floor_u64(q: &Rational) -> u64 {
    if q.is_negative() {
        return 0;
    }
    q.floor().to_integer().to_u64().unwrap_or(u64::MAX)
}

/// Rational lower bound on pi (14 decimals).
pub fn pi_lower() -> Rational {
    Rational::new(BigInt::from(314_159_265_358_979_i64), BigInt::from(10_i64.pow(14)))
}

/// Rational upper bound on pi (14 decimals).
pub fn pi_upper() -> Rational {
    Rational::new(BigInt::from(314_159_265_358_980_i64), BigInt::from(10_i64.pow(14)))
}

fn isqrt_floor(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    n.sqrt()
}

/// Rational `u >= sqrt(q)` with `u - sqrt(q) <= 2^-bits` (for `q >= 0`).
pub fn sqrt_upper(q: &Rational, bits: u32) -> Rational {
    assert!(!q.is_negative(), "sqrt of a negative rational");
    let scale = BigInt::one() << bits;
    // floor(sqrt(q * 4^bits)) computed on the integer part of a scaled value.
    let scaled = q * Rational::from_integer(&scale * &scale);
    let fl = scaled.floor().to_integer();
    let mut r = isqrt_floor(&fl);
    while Rational::from_integer(&r * &r) < scaled {
        r += 1;
    }
    Rational::new(r, scale)
}

/// Rational `l <= sqrt(q)` with `sqrt(q) - l <= 2^-bits`.
pub fn sqrt_lower(q: &Rational, bits: u32) -> Rational {
    assert!(!q.is_negative(), "sqrt of a negative rational");
    let scale = BigInt::one() << bits;
    let scaled = q * Rational::from_integer(&scale * &scale);
    let fl = scaled.floor().to_integer();
    let r = isqrt_floor(&fl);
    Rational::new(r, scale)
}

/// Sign as -1, 0 or +1.
pub fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Least common multiple of denominators; multiplying by it clears all fractions.
pub fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub mod serde_str {
    //! Serialize rationals as exact strings (`"p/q"`).
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_decimal_forms() {
        assert_eq!(parse_rational("3/7").unwrap(), ratio(3, 7));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn pi_bounds_bracket_pi() {
        assert!(to_f64(&pi_lower()) <= std::f64::consts::PI);
        assert!(to_f64(&pi_upper()) >= std::f64::consts::PI);
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let two = int(2);
        let u = sqrt_upper(&two, 40);
        let l = sqrt_lower(&two, 40);
        assert!(&u * &u >= two);
        assert!(&l * &l <= two);
        assert!(&u - &l <= Rational::new(BigInt::one(), BigInt::one() << 39));
        assert_eq!(sqrt_upper(&ratio(9, 4), 10), ratio(3, 2));
    }
}
