//! Rolle and Descartes bounds for real univariate functions and fewnomials.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::sturm::{count_distinct_closed, count_with_multiplicity_closed, sturm_root_count};
use crate::algebra::UniPoly;
use crate::certificate::{BoundCertificate, Hypothesis, Relation};
use crate::error::{Error, Result};

/// Laurent polynomial `sum c_a t^a` over a finite set of integer exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fewnomial {
    terms: BTreeMap<i64, Rational>,
}

impl Fewnomial {
    /// Sums coefficients of repeated exponents and drops zero terms.
    pub fn new(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Fewnomial { terms: map }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient signs by increasing exponent.
    pub fn sign_sequence(&self) -> Vec<i8> {
        self.terms.values().map(rational::sign).collect()
    }

    pub fn sign_changes(&self) -> usize {
        self.sign_sequence().windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Multiplies by `t^-min` so every exponent is nonnegative; positive roots are unchanged.
    pub fn to_polynomial(&self) -> UniPoly {
        let Some(&lo) = self.terms.keys().next() else {
            return UniPoly::zero();
        };
        let hi = *self.terms.keys().next_back().unwrap();
        let mut cs = vec![Rational::zero(); (hi - lo) as usize + 1];
        for (&e, c) in &self.terms {
            cs[(e - lo) as usize] = c.clone();
        }
        UniPoly::new(cs)
    }
}

impl Serialize for Fewnomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(i64, String)> = self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Fewnomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(i64, String)> = Vec::deserialize(d)?;
        let terms = v
            .into_iter()
            .map(|(e, c)| rational::parse_rational(&c).map(|q| (e, q)))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Fewnomial::new(terms))
    }
}

/// `min(#terms - 1, sign changes)` bounds the positive roots (with multiplicity).
pub fn fewnomial_positive_bound(p: &Fewnomial) -> Result<BoundCertificate> {
    if p.is_empty() {
        return Err(Error::IdenticallyZero);
    }
    let terms = p.len() as u64;
    let changes = p.sign_changes() as u64;
    let bound = (terms - 1).min(changes);
    let mut c = BoundCertificate::new("fewnomial_descartes", "Descartes rule of signs; Khovanskii fewnomial bound")
        .with_bound(bound);
    c.quantity("terms", &Rational::from_integer(terms.into()));
    c.quantity("sign_changes", &Rational::from_integer(changes.into()));
    c.hypothesis(Hypothesis::check(
        "sign changes <= terms - 1",
        Rational::from_integer(changes.into()),
        Relation::Le,
        Rational::from_integer((terms - 1).into()),
    ));
    c.step(format!("support size {terms}, sign sequence {:?}", p.sign_sequence()));
    c.step("each derivation after normalizing the lowest exponent to 0 removes one term");
    Ok(c)
}

/// Distinct positive roots, by Sturm on `(0, M]` with `M` past the Cauchy bound.
pub fn positive_root_count(p: &Fewnomial) -> Result<usize> {
    let q = p.to_polynomial();
    if q.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    sturm_root_count(&q, &Rational::zero(), &q.cauchy_bound())
}

/// Positive roots counted with multiplicity.
pub fn positive_root_count_with_multiplicity(p: &Fewnomial) -> Result<usize> {
    let q = p.to_polynomial();
    if q.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let m = q.cauchy_bound();
    let total = count_with_multiplicity_closed(&q, &Rational::zero(), &m)?;
    let at_zero = q.order_at_zero().unwrap_or(0);
    Ok(total - at_zero)
}

fn phi(f: i8, df: i8) -> u64 {
    u64::from(f != df)
}

/// Endpoint-refined Rolle bound on the zeros of `f` on `[0, 1]` given the zeros of `f'`
/// and the signs of `f, f'` at both ends: `Z(f') + phi(0) - phi(1)`, floored at 0,
/// with `phi = 1` exactly when `f` and `f'` have opposite signs.
pub fn refined_rolle_bound(zf_prime: u64, f0: i8, df0: i8, f1: i8, df1: i8) -> Result<BoundCertificate> {
    if [f0, df0, f1, df1].contains(&0) {
        return Err(Error::ZeroSign);
    }
    let (p0, p1) = (phi(f0.signum(), df0.signum()), phi(f1.signum(), df1.signum()));
    let bound = (zf_prime + p0).saturating_sub(p1);
    let mut c = BoundCertificate::new("refined_rolle", "Rolle theorem with endpoint signs").with_bound(bound);
    c.quantity("phi0", &Rational::from_integer(p0.into()));
    c.quantity("phi1", &Rational::from_integer(p1.into()));
    c.quantity("zeros_of_derivative", &Rational::from_integer(zf_prime.into()));
    c.step("same signs at 0 force a zero of f' before the first zero of f");
    c.step("opposite signs at 1 force a zero of f' after the last zero of f");
    c.step("bound = Z(f') + phi(0) - phi(1), floored at 0");
    Ok(c)
}

/// Signs of `f` and `f'` at a point; `None` if either vanishes.
pub fn endpoint_signs(f: &UniPoly, t: &Rational) -> Option<(i8, i8)> {
    let a = rational::sign(&f.eval(t));
    let b = rational::sign(&f.derivative().eval(t));
    (a != 0 && b != 0).then_some((a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRow {
    pub k: usize,
    /// Distinct zeros of the `k`-th derivative on the closed interval.
    pub distinct: usize,
    /// Zeros counted with multiplicity.
    pub with_multiplicity: usize,
    pub distinct_ok: bool,
    pub multiplicity_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RolleChainReport {
    pub rows: Vec<ChainRow>,
}

impl RolleChainReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.distinct_ok && r.multiplicity_ok)
    }
}

/// Checks `Z(f^(k)) <= Z(f^(k+1)) + 1` and `N(f^(k)) <= N(f^(k+1)) + 1` down the derivative chain.
pub fn rolle_chain_check(f: &UniPoly, a: &Rational, b: &Rational) -> Result<RolleChainReport> {
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let mut chain = vec![f.clone()];
    while !chain.last().unwrap().is_constant() {
        let d = chain.last().unwrap().derivative();
        chain.push(d);
    }
    let counts: Vec<(usize, usize)> = chain
        .iter()
        .map(|g| Ok((count_distinct_closed(g, a, b)?, count_with_multiplicity_closed(g, a, b)?)))
        .collect::<Result<_>>()?;
    let rows = counts
        .iter()
        .enumerate()
        .map(|(k, &(z, n))| {
            let (zn, nn) = counts.get(k + 1).copied().unwrap_or((0, 0));
            ChainRow {
                k,
                distinct: z,
                with_multiplicity: n,
                distinct_ok: z <= zn + 1,
                multiplicity_ok: n <= nn + 1,
            }
        })
        .collect();
    Ok(RolleChainReport { rows })
}

/// `|Z(f) - Z(g)| <= Z(fg) <= Z(f) + Z(g)` and `N(fg) = N(f) + N(g)` on `[a, b]`.
pub fn multiplicative_triangle(f: &UniPoly, g: &UniPoly, a: &Rational, b: &Rational) -> Result<bool> {
    let fg = f * g;
    let (zf, zg, zfg) = (
        count_distinct_closed(f, a, b)?,
        count_distinct_closed(g, a, b)?,
        count_distinct_closed(&fg, a, b)?,
    );
    let (nf, ng, nfg) = (
        count_with_multiplicity_closed(f, a, b)?,
        count_with_multiplicity_closed(g, a, b)?,
        count_with_multiplicity_closed(&fg, a, b)?,
    );
    Ok(zf.abs_diff(zg) <= zfg && zfg <= zf + zg && nfg == nf + ng)
}

/// Largest coefficient magnitude, used for corpus sanity checks.
pub fn height(p: &UniPoly) -> Rational {
    p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
}
