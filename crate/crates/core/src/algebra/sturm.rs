//! Sturm sequences: exact real-root counting, isolation and certified suprema.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{horner, Interval};
use super::rational::{self, Rational};
use super::UniPoly;
use crate::error::{Error, Result};

/// Default number of bisections used by [`certified_sup`].
pub const DEFAULT_SUP_DEPTH: u32 = 32;

/// Sturm chain of a polynomial, built from its square-free part.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<UniPoly>,
}

impl SturmSequence {
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::IdenticallyZero);
        }
        let p0 = p.squarefree_part().primitive();
        let mut chain = vec![p0.clone()];
        let p1 = p0.derivative().primitive();
        if !p1.is_zero() {
            chain.push(p1);
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push((-&r).primitive());
            }
        }
        Ok(SturmSequence { chain })
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.chain
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| rational::sign(&p.eval(x))))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| rational::sign(&p.leading())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = rational::sign(&p.leading());
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn base(&self) -> &UniPoly {
        &self.chain[0]
    }
}

fn check_interval(a: &Rational, b: &Rational) -> Result<()> {
    if a >= b {
        return Err(Error::InvalidInterval(format!("({a}, {b}]")));
    }
    Ok(())
}

/// Exact number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_root_count(p: &UniPoly, a: &Rational, b: &Rational) -> Result<usize> {
    check_interval(a, b)?;
    Ok(SturmSequence::new(p)?.count(a, b))
}

/// Distinct real roots in the closed interval `[a, b]`.
pub fn count_distinct_closed(p: &UniPoly, a: &Rational, b: &Rational) -> Result<usize> {
    let n = sturm_root_count(p, a, b)?;
    Ok(n + usize::from(p.eval(a).is_zero()))
}

/// Distinct real roots in `(a, +inf)`.
pub fn count_distinct_above(p: &UniPoly, a: &Rational) -> Result<usize> {
    let s = SturmSequence::new(p)?;
    Ok(s.variations_at(a).saturating_sub(s.variations_at_pos_inf()))
}

/// Distinct real roots on the whole line.
pub fn count_distinct_real(p: &UniPoly) -> Result<usize> {
    let s = SturmSequence::new(p)?;
    Ok(s.variations_at_neg_inf().saturating_sub(s.variations_at_pos_inf()))
}

/// Real roots in `[a, b]` counted with multiplicity.
pub fn count_with_multiplicity_closed(p: &UniPoly, a: &Rational, b: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    check_interval(a, b)?;
    let mut total = 0;
    for (g, m) in p.squarefree_decomposition() {
        total += m * count_distinct_closed(&g, a, b)?;
    }
    Ok(total)
}

/// Real roots on the whole line counted with multiplicity.
pub fn count_real_with_multiplicity(p: &UniPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let mut total = 0;
    for (g, m) in p.squarefree_decomposition() {
        total += m * count_distinct_real(&g)?;
    }
    Ok(total)
}

/// An isolating interval: either an exact rational root (`lo == hi`) or a
/// half-open interval `(lo, hi]` containing exactly one root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "rational::serde_str")]
    pub lo: Rational,
    #[serde(with = "rational::serde_str")]
    pub hi: Rational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }
}

/// Isolates every distinct root of `p` in `(a, b]` into intervals of width at most
/// `max_width`. Exact rational roots hit by bisection are reported as points.
pub fn isolate_roots(
    p: &UniPoly,
    a: &Rational,
    b: &Rational,
    max_width: &Rational,
) -> Result<Vec<RootInterval>> {
    check_interval(a, b)?;
    let seq = SturmSequence::new(p)?;
    let base = seq.base().clone();
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone(), seq.variations_at(a), seq.variations_at(b))];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        let n = vlo.saturating_sub(vhi);
        if n == 0 {
            continue;
        }
        if base.eval(&hi).is_zero() && n == 1 {
            out.push(RootInterval {
                lo: hi.clone(),
                hi,
            });
            continue;
        }
        if n == 1 && &hi - &lo <= *max_width {
            out.push(RootInterval { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / rational::int(2);
        let vmid = seq.variations_at(&mid);
        stack.push((mid.clone(), hi, vmid, vhi));
        stack.push((lo, mid, vlo, vmid));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Certified enclosure `lo <= max_{[a,b]} |p| <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupBound {
    #[serde(with = "rational::serde_str")]
    pub lo: Rational,
    #[serde(with = "rational::serde_str")]
    pub hi: Rational,
}

impl SupBound {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Upper bound of `|p|` on `[m - r, m + r]` from the exact Taylor expansion at `m`.
fn taylor_magnitude(p: &UniPoly, m: &Rational, r: &Rational) -> Rational {
    let s = p.shift(m);
    let mut acc = Rational::zero();
    let mut rk = Rational::one();
    for c in s.coeffs() {
        acc += c.abs() * &rk;
        rk *= r;
    }
    acc
}

/// Certified sup-norm of a polynomial on `[a, b]`, exact whenever every critical
/// point is hit exactly by bisection; otherwise the gap shrinks with `depth`.
pub fn certified_sup(p: &UniPoly, a: &Rational, b: &Rational, depth: u32) -> Result<SupBound> {
    if a > b {
        return Err(Error::InvalidInterval(format!("[{a}, {b}]")));
    }
    let mut lo = p.eval(a).abs().max(p.eval(b).abs());
    let mut hi = lo.clone();
    if a == b || p.degree().unwrap_or(0) < 2 {
        return Ok(SupBound { lo, hi });
    }
    let dp = p.derivative();
    let width = (b - a) / Rational::from_integer(num_bigint::BigInt::one() << depth);
    for root in isolate_roots(&dp, a, b, &width)? {
        if root.is_exact() {
            let v = p.eval(&root.lo).abs();
            lo = lo.max(v.clone());
            hi = hi.max(v);
            continue;
        }
        let m = root.midpoint();
        let r = (&root.hi - &root.lo) / rational::int(2);
        lo = lo.max(p.eval(&m).abs());
        let bound = taylor_magnitude(p, &m, &r).min(horner(p, &Interval::new(root.lo, root.hi)?).mag());
        hi = hi.max(bound);
    }
    Ok(SupBound { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    #[test]
    fn counts_explicit_roots() {
        let p = UniPoly::from_roots(&[int(1), int(2), int(3)]);
        assert_eq!(sturm_root_count(&p, &int(0), &int(10)).unwrap(), 3);
        assert_eq!(sturm_root_count(&p, &int(1), &int(3)).unwrap(), 2);
        assert_eq!(count_distinct_closed(&p, &int(1), &int(3)).unwrap(), 3);
        let q = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(sturm_root_count(&q, &int(-5), &int(5)).unwrap(), 0);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(
            sturm_root_count(&UniPoly::zero(), &int(0), &int(1)),
            Err(Error::IdenticallyZero)
        );
    }

    #[test]
    fn multiple_roots_counted_once_or_with_multiplicity() {
        let p = UniPoly::from_roots(&[int(1), int(1), int(1), int(2)]);
        assert_eq!(sturm_root_count(&p, &int(0), &int(3)).unwrap(), 2);
        assert_eq!(count_with_multiplicity_closed(&p, &int(0), &int(3)).unwrap(), 4);
    }

    #[test]
    fn certified_sup_examples() {
        let t = UniPoly::x();
        assert_eq!(
            certified_sup(&t, &int(0), &int(1), 32).unwrap(),
            SupBound { lo: int(1), hi: int(1) }
        );
        let p = UniPoly::from_ints(&[0, -1, 1]);
        assert_eq!(
            certified_sup(&p, &int(0), &int(1), 32).unwrap(),
            SupBound { lo: ratio(1, 4), hi: ratio(1, 4) }
        );
        let q = UniPoly::from_ints(&[0, -3, 0, 1]);
        assert_eq!(
            certified_sup(&q, &int(-2), &int(2), 32).unwrap(),
            SupBound { lo: int(2), hi: int(2) }
        );
    }

    #[test]
    fn irrational_critical_point_gap_is_small() {
        // t^3 - 2t on [0, 1]: interior max at sqrt(2/3) beats both endpoints.
        let p = UniPoly::from_ints(&[0, -2, 0, 1]);
        let s = certified_sup(&p, &int(0), &int(1), 32).unwrap();
        let exact = (2.0f64 / 3.0).sqrt() * (2.0 - 2.0 / 3.0);
        assert!(rational::to_f64(&s.lo) <= exact + 1e-15);
        assert!(rational::to_f64(&s.hi) >= exact - 1e-15);
        assert!(rational::to_f64(&(&s.hi - &s.lo)) < 1e-12);
    }
}
