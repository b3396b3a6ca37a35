//! Lower bounds on real zero counts by Sturm isolation or sign changes.

use serde::{Deserialize, Serialize};

use super::sampler::AnalyticSampler;
use crate::algebra::rational::{self, Rational};
use crate::algebra::sturm::{isolate_roots, SturmSequence};
use crate::algebra::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Sturm,
    SignChange,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootCountReport {
    /// Lower bound on the number of distinct zeros (exact for [`CountMethod::Sturm`]).
    pub count: usize,
    pub locations: Vec<f64>,
    pub resolution: f64,
    pub method: CountMethod,
    /// A near-zero without a sign change was seen; the count may be low.
    pub unresolved: bool,
    /// Multiplicities aligned with `locations` (exact polynomials only).
    pub multiplicities: Option<Vec<usize>>,
}

impl RootCountReport {
    pub fn count_with_multiplicity(&self) -> usize {
        self.multiplicities
            .as_ref()
            .map_or(self.count, |m| m.iter().sum())
    }
}

/// Relative size under which an endpoint value is treated as a zero.
pub const ENDPOINT_ZERO_TOL: f64 = 1e-12;
/// Relative size of an interior local minimum flagged as unresolved.
pub const UNRESOLVED_TOL: f64 = 1e-9;

/// Counts zeros of `f` on the closed interval `[a, b]` using `budget` grid cells.
pub fn count_real_zeros(f: &AnalyticSampler, a: f64, b: f64, budget: usize) -> Result<RootCountReport> {
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::InvalidInterval(format!("[{a}, {b}]")));
    }
    if let AnalyticSampler::Poly(p) = f {
        return count_poly_zeros(p, &rational::from_f64(a), &rational::from_f64(b));
    }
    Ok(count_sign_changes(|t| f.eval_real(t), a, b, budget.max(2)))
}

/// Exact distinct-root count of a polynomial on `[a, b]`, with multiplicities.
pub fn count_poly_zeros(p: &UniPoly, a: &Rational, b: &Rational) -> Result<RootCountReport> {
    if a >= b {
        return Err(Error::InvalidInterval(format!("[{a}, {b}]")));
    }
    let seq = SturmSequence::new(p)?;
    let width = (b - a) / Rational::from_integer(num_bigint::BigInt::from(1u64) << 40);
    let mut roots = Vec::new();
    if p.eval(a) == Rational::from_integer(0.into()) {
        roots.push((a.clone(), a.clone()));
    }
    for r in isolate_roots(seq.base(), a, b, &width)? {
        roots.push((r.lo, r.hi));
    }
    let decomposition = p.squarefree_decomposition();
    let mut locations = Vec::new();
    let mut mults = Vec::new();
    for (lo, hi) in &roots {
        let mid = (lo + hi) / rational::int(2);
        locations.push(rational::to_f64(&mid));
        let m = decomposition
            .iter()
            .filter(|(g, _)| {
                if lo == hi {
                    g.eval(lo) == Rational::from_integer(0.into())
                } else {
                    SturmSequence::new(g).map(|s| s.count(lo, hi) > 0).unwrap_or(false)
                }
            })
            .map(|(_, m)| *m)
            .sum();
        mults.push(m);
    }
    let resolution = resolution_of(&locations, rational::to_f64(&width));
    Ok(RootCountReport {
        count: locations.len(),
        locations,
        resolution,
        method: CountMethod::Sturm,
        unresolved: false,
        multiplicities: Some(mults),
    })
}

fn resolution_of(locations: &[f64], cell: f64) -> f64 {
    let min_gap = locations
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    cell.min(0.5 * min_gap)
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, flo: f64) -> f64 {
    let slo = flo.signum();
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign-change scan of a real function on a uniform grid of `cells` cells.
pub fn count_sign_changes(f: impl Fn(f64) -> f64, a: f64, b: f64, cells: usize) -> RootCountReport {
    let h = (b - a) / cells as f64;
    let ts: Vec<f64> = (0..=cells)
        .map(|k| if k == cells { b } else { a + h * k as f64 })
        .collect();
    let vs: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
    let scale = vs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut locations = Vec::new();
    let mut unresolved = false;
    for k in 0..=cells {
        let v = vs[k];
        if v == 0.0 {
            locations.push(ts[k]);
            continue;
        }
        if k < cells && vs[k + 1] != 0.0 && v.signum() != vs[k + 1].signum() {
            locations.push(bisect(&f, ts[k], ts[k + 1], v));
        }
    }
    // Endpoint values lost to rounding (e.g. sin at a float multiple of pi).
    let tiny = ENDPOINT_ZERO_TOL * scale;
    if cells >= 1 {
        if vs[0] != 0.0 && vs[0].abs() <= tiny && vs[1].signum() == vs[0].signum() {
            locations.push(a);
        }
        let n = cells;
        if vs[n] != 0.0 && vs[n].abs() <= tiny && vs[n - 1].signum() == vs[n].signum() {
            locations.push(b);
        }
    }
    for k in 1..cells {
        let (l, m, r) = (vs[k - 1].abs(), vs[k].abs(), vs[k + 1].abs());
        let same_sign = vs[k - 1].signum() == vs[k].signum() && vs[k].signum() == vs[k + 1].signum();
        if same_sign && m <= l && m <= r && m <= UNRESOLVED_TOL * scale {
            unresolved = true;
        }
    }
    locations.sort_by(f64::total_cmp);
    locations.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * (1.0 + y.abs()));
    RootCountReport {
        count: locations.len(),
        resolution: resolution_of(&locations, h),
        locations,
        method: CountMethod::SignChange,
        unresolved,
        multiplicities: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::oracle::sampler::NumericFn;
    use std::f64::consts::PI;

    #[test]
    fn sine_zeros_on_ten_half_periods() {
        let s = AnalyticSampler::Numeric(NumericFn::sin());
        let r = count_real_zeros(&s, 0.0, 10.0 * PI, 4000).unwrap();
        assert_eq!(r.count, 11);
        assert_eq!(r.locations.len(), r.count);
        assert!(r.locations.windows(2).all(|w| w[1] - w[0] > r.resolution));
    }

    #[test]
    fn polynomial_uses_sturm() {
        let p = UniPoly::from_roots(&[int(1), int(2)]);
        let r = count_real_zeros(&AnalyticSampler::Poly(p), 0.0, 3.0, 10).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.method, CountMethod::Sturm);
        let q = UniPoly::from_roots(&[int(1), int(1), int(1)]);
        let r = count_poly_zeros(&q, &int(0), &int(2)).unwrap();
        assert_eq!((r.count, r.count_with_multiplicity()), (1, 3));
    }

    #[test]
    fn double_root_without_sign_change_is_flagged() {
        let r = count_sign_changes(|t| (t - 0.5) * (t - 0.5) + 1e-13, 0.0, 1.0, 100);
        assert_eq!(r.count, 0);
        assert!(r.unresolved);
    }
}
