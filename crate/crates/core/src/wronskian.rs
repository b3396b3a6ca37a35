//! Wronskians of polynomial tuples, the multiplicative factorization of the
//! annihilating operator, and its expanded form.

use serde::{Deserialize, Serialize};

use crate::algebra::{RatFunc, UniPoly};
use crate::error::{Error, Result};

/// Determinant of a square polynomial matrix by fraction-free elimination.
pub fn poly_determinant(m: &[Vec<UniPoly>]) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut a: Vec<Vec<UniPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = UniPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return UniPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_div(&prev);
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// `rows[i][j] = f_j^(i)` for `i < k`.
fn wronski_matrix(fs: &[UniPoly], k: usize) -> Vec<Vec<UniPoly>> {
    (0..k)
        .map(|i| fs[..k].iter().map(|f| f.nth_derivative(i)).collect())
        .collect()
}

/// `W_1, ..., W_n`, the Wronskians of the leading subtuples.
pub fn wronskian_chain(fs: &[UniPoly]) -> Vec<UniPoly> {
    (1..=fs.len()).map(|k| poly_determinant(&wronski_matrix(fs, k))).collect()
}

fn check_independent(fs: &[UniPoly]) -> Result<Vec<UniPoly>> {
    if fs.is_empty() {
        return Err(Error::InvalidInput("empty tuple".into()));
    }
    let w = wronskian_chain(fs);
    if w.last().is_some_and(UniPoly::is_zero) {
        return Err(Error::LinearlyDependent);
    }
    Ok(w)
}

/// A differential operator `sum c_k d^k` with rational-function coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatOperator {
    pub coeffs: Vec<RatFunc>,
}

impl RatOperator {
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut out = RatFunc::zero();
        let mut d = f.clone();
        for c in &self.coeffs {
            out = &out + &(c * &d);
            d = d.derivative();
        }
        out
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// `D_k = (W_k / W_{k-1}) d/dt (W_{k-1} / W_k)`, stored as the multiplier `W_k / W_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyaFactorization {
    pub wronskians: Vec<UniPoly>,
    pub multipliers: Vec<RatFunc>,
}

impl PolyaFactorization {
    pub fn new(fs: &[UniPoly]) -> Result<Self> {
        let wronskians = check_independent(fs)?;
        let mut prev = UniPoly::one();
        let mut multipliers = Vec::with_capacity(fs.len());
        for w in &wronskians {
            multipliers.push(RatFunc::new(w.clone(), prev.clone())?);
            prev = w.clone();
        }
        Ok(PolyaFactorization { wronskians, multipliers })
    }

    /// `D_n ... D_1 f`.
    pub fn apply(&self, f: &RatFunc) -> Result<RatFunc> {
        let mut g = f.clone();
        for a in &self.multipliers {
            let inner = &g / a;
            g = a * &inner.derivative();
        }
        Ok(g)
    }

    /// The composition written as `sum c_k d^k` (leading coefficient 1).
    pub fn expanded(&self) -> Result<RatOperator> {
        let mut coeffs = vec![RatFunc::one()];
        for a in &self.multipliers {
            let b = a.inverse()?;
            let ab = a * &b.derivative();
            let mut next = vec![RatFunc::zero(); coeffs.len() + 1];
            for (j, c) in coeffs.iter().enumerate() {
                next[j] = &(&next[j] + &(&ab * c)) + &c.derivative();
                next[j + 1] = &next[j + 1] + c;
            }
            coeffs = next;
        }
        Ok(RatOperator { coeffs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyaVerdict {
    pub order: usize,
    /// `D_n ... D_1 f_i == 0` exactly, per tuple member.
    pub annihilated: Vec<bool>,
    pub wronskians: Vec<UniPoly>,
}

impl PolyaVerdict {
    pub fn all(&self) -> bool {
        self.annihilated.iter().all(|&b| b)
    }
}

/// Applies the factorized operator to every member symbolically.
pub fn polya_verify(fs: &[UniPoly]) -> Result<PolyaVerdict> {
    let p = PolyaFactorization::new(fs)?;
    let annihilated = fs
        .iter()
        .map(|f| p.apply(&RatFunc::from_poly(f.clone())).map(|r| r.is_zero()))
        .collect::<Result<_>>()?;
    Ok(PolyaVerdict {
        order: fs.len(),
        annihilated,
        wronskians: p.wronskians,
    })
}

/// Cofactors `m_0, ..., m_n` of the last column of the order-`(n+1)` Wronski matrix
/// `(f_1, ..., f_n, y)`: `sum m_k y^(k)` annihilates every `f_i`.
pub fn riemann_operator(fs: &[UniPoly]) -> Result<Vec<UniPoly>> {
    check_independent(fs)?;
    let n = fs.len();
    let full: Vec<Vec<UniPoly>> = (0..=n)
        .map(|i| fs.iter().map(|f| f.nth_derivative(i)).collect())
        .collect();
    Ok((0..=n)
        .map(|k| {
            let minor: Vec<Vec<UniPoly>> = (0..=n).filter(|&i| i != k).map(|i| full[i].clone()).collect();
            let d = poly_determinant(&minor);
            if (k + n) % 2 == 1 {
                -&d
            } else {
                d
            }
        })
        .collect())
}

/// `sum m_k f^(k)`, exactly.
pub fn apply_poly_operator(coeffs: &[UniPoly], f: &UniPoly) -> UniPoly {
    let mut out = UniPoly::zero();
    for (k, m) in coeffs.iter().enumerate() {
        out = &out + &(m * &f.nth_derivative(k));
    }
    out
}

/// The Riemann coefficients divided by the leading one.
pub fn riemann_normalized(fs: &[UniPoly]) -> Result<Vec<RatFunc>> {
    let m = riemann_operator(fs)?;
    let lead = m.last().expect("n + 1 coefficients").clone();
    m.into_iter().map(|c| RatFunc::new(c, lead.clone())).collect()
}
