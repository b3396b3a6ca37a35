//! Zero counts for holomorphic functions: Jensen bounds, Bernstein and Voorhoeve
//! indices, second Bernstein classes and exponential polynomials.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::ComplexQ;
use crate::certificate::{BoundCertificate, ExtNat, Hypothesis, Relation};
use crate::error::{Error, Result};
use crate::ode::ComplexDomain;
use crate::oracle::{phase_variation, AnalyticSampler, Contour};

/// `sum_lambda exp(lambda z) p_lambda(z)` with exact complex rational data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoPolynomial {
    /// `(lambda, coefficients of p_lambda in ascending order)`.
    terms: Vec<(ComplexQ, Vec<ComplexQ>)>,
}

fn trim(mut c: Vec<ComplexQ>) -> Vec<ComplexQ> {
    while c.last().is_some_and(ComplexQ::is_zero) {
        c.pop();
    }
    c
}

impl PseudoPolynomial {
    pub fn new(terms: Vec<(ComplexQ, Vec<ComplexQ>)>) -> Result<Self> {
        let mut out: Vec<(ComplexQ, Vec<ComplexQ>)> = Vec::new();
        for (lambda, p) in terms {
            if out.iter().any(|(l, _)| *l == lambda) {
                return Err(Error::InvalidInput(format!("repeated exponent {lambda}")));
            }
            let p = trim(p);
            if !p.is_empty() {
                out.push((lambda, p));
            }
        }
        if out.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        Ok(PseudoPolynomial { terms: out })
    }

    /// `exp(lambda z)`.
    pub fn exponential(lambda: ComplexQ) -> Self {
        PseudoPolynomial {
            terms: vec![(lambda, vec![ComplexQ::one()])],
        }
    }

    /// `sin z = (exp(iz) - exp(-iz)) / 2i`.
    pub fn sine() -> Self {
        let half_i = ComplexQ::new(Rational::zero(), rational::ratio(1, 2));
        PseudoPolynomial {
            terms: vec![
                (ComplexQ::i(), vec![-&half_i]),
                (-&ComplexQ::i(), vec![half_i]),
            ],
        }
    }

    pub fn terms(&self) -> &[(ComplexQ, Vec<ComplexQ>)] {
        &self.terms
    }

    /// `sum (deg p_lambda + 1)`.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).sum()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(l, p)| {
                let poly = p
                    .iter()
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_c64());
                (l.to_c64() * z).exp() * poly
            })
            .sum()
    }

    /// Exact value at the origin: `sum p_lambda(0)`.
    pub fn at_zero(&self) -> ComplexQ {
        self.terms
            .iter()
            .fold(ComplexQ::zero(), |acc, (_, p)| &acc + &p[0])
    }

    /// `(exp(lambda z) p)' = exp(lambda z) (lambda p + p')`.
    pub fn derivative(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(l, p)| {
                let coeffs = (0..p.len())
                    .map(|k| {
                        let lp = l * &p[k];
                        match p.get(k + 1) {
                            Some(next) => &lp + &next.scale(&rational::int(k as i64 + 1)),
                            None => lp,
                        }
                    })
                    .collect();
                (l.clone(), trim(coeffs))
            })
            .filter(|(_, p): &(ComplexQ, Vec<ComplexQ>)| !p.is_empty())
            .collect::<Vec<_>>();
        if terms.is_empty() {
            PseudoPolynomial {
                terms: vec![(ComplexQ::zero(), vec![ComplexQ::zero()])],
            }
        } else {
            PseudoPolynomial { terms }
        }
    }
}

/// Exact `f(0)` when the sampler carries exact data.
pub fn exact_center_value(f: &AnalyticSampler) -> Option<ComplexQ> {
    match f {
        AnalyticSampler::Poly(p) => Some(ComplexQ::real(p.coeff(0))),
        AnalyticSampler::ComplexPoly(c) => Some(c.first().cloned().unwrap_or_else(ComplexQ::zero)),
        AnalyticSampler::Pseudo(p) => Some(p.at_zero()),
        _ => None,
    }
}

/// Zeros in the closed disk of radius `r` for `f` holomorphic on the closed unit disk
/// with `|f| <= boundary_max` on the unit circle.
///
/// The bound is the largest `N` with `|f(0)|^2 r^(-2N) <= M^2`, decided exactly.
pub fn jensen_zero_bound(f: &AnalyticSampler, r: &Rational, boundary_max: &Rational) -> Result<BoundCertificate> {
    if !r.is_positive() || r >= &Rational::one() {
        return Err(Error::InvalidInput(format!("inner radius {r} outside (0, 1)")));
    }
    let f0_sq = match exact_center_value(f) {
        Some(c) => c.norm_sqr(),
        None => {
            let v = f.eval(Complex64::new(0.0, 0.0)).norm();
            rational::from_f64(v) * rational::from_f64(v)
        }
    };
    if f0_sq.is_zero() {
        return Err(Error::VanishingCenter);
    }
    let m_sq = boundary_max * boundary_max;
    let mut c = BoundCertificate::new("jensen", "Jensen's formula");
    c.quantity("center_modulus_sq", &f0_sq);
    c.quantity("boundary_max", boundary_max);
    c.quantity("inner_radius", r);
    if !c.hypothesis(Hypothesis::check("|f(0)|^2 <= M^2", f0_sq.clone(), Relation::Le, m_sq.clone())) {
        return Err(Error::InvalidInput("boundary maximum below |f(0)|".into()));
    }
    let inv_r2 = Rational::one() / (r * r);
    let fits = |n: u64| &f0_sq * rational::pow(&inv_r2, n as u32) <= m_sq;
    let est = {
        let num = rational::to_f64(&m_sq).ln() - rational::to_f64(&f0_sq).ln();
        (num / rational::to_f64(&inv_r2).ln()).floor().max(0.0) as u64
    };
    let mut n = est.saturating_sub(2);
    while fits(n + 1) {
        n += 1;
    }
    while n > 0 && !fits(n) {
        n -= 1;
    }
    c.hypothesis(Hypothesis::check(
        "|f(0)|^2 r^(-2N) <= M^2",
        &f0_sq * rational::pow(&inv_r2, n as u32),
        Relation::Le,
        m_sq.clone(),
    ));
    c.hypothesis(Hypothesis::check(
        "|f(0)|^2 r^(-2(N+1)) > M^2",
        &f0_sq * rational::pow(&inv_r2, n as u32 + 1),
        Relation::Gt,
        m_sq,
    ));
    c.step("each zero in the r-disk contributes at least ln(1/r) to ln M - ln|f(0)|");
    c.bound = ExtNat::Finite(n);
    Ok(c)
}

/// Nested regions `K` inside `U`, both convex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CPGonPair {
    pub inner: Contour,
    pub outer: Contour,
    pub gap: f64,
}

/// Signed distance from `p` to the boundary of a convex region, positive inside.
fn inside_distance(region: &Contour, p: Complex64) -> f64 {
    match region {
        Contour::Circle { center, radius } => radius - (p - Complex64::new(center[0], center[1])).norm(),
        Contour::Polygon { vertices } => (0..vertices.len())
            .map(|i| {
                let a = vertices[i];
                let b = vertices[(i + 1) % vertices.len()];
                let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
                let len = ex.hypot(ey);
                (ex * (p.im - a[1]) - ey * (p.re - a[0])) / len
            })
            .fold(f64::INFINITY, f64::min),
    }
}

impl CPGonPair {
    /// `gap = max{eps : K + eps D in U}`, for convex `U`.
    pub fn new(inner: Contour, outer: Contour) -> Result<Self> {
        inner.validate()?;
        outer.validate()?;
        let gap = match &inner {
            Contour::Circle { center, radius } => {
                inside_distance(&outer, Complex64::new(center[0], center[1])) - radius
            }
            Contour::Polygon { vertices } => vertices
                .iter()
                .map(|v| inside_distance(&outer, Complex64::new(v[0], v[1])))
                .fold(f64::INFINITY, f64::min),
        };
        if gap.is_nan() || gap <= 0.0 {
            return Err(Error::InvalidInput(format!("inner region not compactly inside outer (gap {gap})")));
        }
        Ok(CPGonPair { inner, outer, gap })
    }

    pub fn disks(r_inner: f64, r_outer: f64) -> Result<Self> {
        let o = Complex64::new(0.0, 0.0);
        Self::new(Contour::circle(o, r_inner), Contour::circle(o, r_outer))
    }
}

pub const BOUNDARY_START: usize = 256;
pub const BOUNDARY_MAX_SAMPLES: usize = 1 << 20;
pub const BOUNDARY_TOL: f64 = 1e-8;

/// Maximum of `|f|` on a contour by refinement until three levels agree.
pub fn boundary_max(f: &AnalyticSampler, contour: &Contour) -> Result<f64> {
    contour.validate()?;
    let mut n = BOUNDARY_START;
    let mut history: Vec<f64> = Vec::new();
    loop {
        let m = (0..n)
            .map(|k| f.eval(contour.point(k as f64 / n as f64)).norm())
            .fold(0.0f64, f64::max);
        if !m.is_finite() {
            return Err(Error::InvalidInput("non-finite sample on boundary".into()));
        }
        history.push(m);
        let h = &history;
        let k = h.len();
        let agree = |a: f64, b: f64| (a - b).abs() <= BOUNDARY_TOL * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        if k >= 3 && agree(h[k - 1], h[k - 2]) && agree(h[k - 2], h[k - 3]) {
            return Ok(m);
        }
        if n >= BOUNDARY_MAX_SAMPLES {
            return Ok(m);
        }
        n *= 2;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BernsteinIndex {
    pub value: f64,
    pub max_inner: f64,
    pub max_outer: f64,
}

/// `ln(max_U |f| / max_K |f|)` with maxima taken on the boundaries.
pub fn bernstein_index(f: &AnalyticSampler, pair: &CPGonPair) -> Result<BernsteinIndex> {
    let max_outer = boundary_max(f, &pair.outer)?;
    let max_inner = boundary_max(f, &pair.inner)?;
    if max_inner <= f64::MIN_POSITIVE * 1e6 || max_outer == 0.0 {
        return Err(Error::IdenticallyZero);
    }
    Ok(BernsteinIndex {
        value: (max_outer / max_inner).ln().max(0.0),
        max_inner,
        max_outer,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RolleDefectReport {
    pub index_f: f64,
    pub index_df: f64,
    /// `B(f) - B(f')`.
    pub defect: f64,
}

/// Bernstein indices of `f` and `f'` for the pair `(K', U)`, with `K' in K in U`.
pub fn bernstein_rolle_report(
    f: &AnalyticSampler,
    innermost: &Contour,
    middle: &Contour,
    outer: &Contour,
) -> Result<RolleDefectReport> {
    CPGonPair::new(innermost.clone(), middle.clone())?;
    CPGonPair::new(middle.clone(), outer.clone())?;
    let pair = CPGonPair::new(innermost.clone(), outer.clone())?;
    let index_f = bernstein_index(f, &pair)?.value;
    let index_df = bernstein_index(&f.derivative(), &pair)?.value;
    Ok(RolleDefectReport {
        index_f,
        index_df,
        defect: index_f - index_df,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VoorhoeveResult {
    /// Absolute variation of the argument, radians.
    pub variation: f64,
    pub winding: i64,
    pub samples: usize,
}

pub fn voorhoeve_index(f: &AnalyticSampler, contour: &Contour) -> Result<VoorhoeveResult> {
    let w = phase_variation(f, contour)?;
    Ok(VoorhoeveResult {
        variation: w.total_variation,
        winding: w.winding,
        samples: w.samples,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexRolleCheck {
    pub variation_f: f64,
    pub variation_df: f64,
    /// `V(f) <= V(f') + 2 pi` (one full turn for a convex boundary).
    pub holds: bool,
}

/// Compares `V(f)` with `V(f') + 2 pi` on a convex contour.
pub fn convex_rolle_check(f: &AnalyticSampler, contour: &Contour, tol: f64) -> Result<ConvexRolleCheck> {
    let variation_f = voorhoeve_index(f, contour)?.variation;
    let variation_df = voorhoeve_index(&f.derivative(), contour)?.variation;
    Ok(ConvexRolleCheck {
        variation_f,
        variation_df,
        holds: variation_f <= variation_df + TAU + tol,
    })
}

/// `c = sup_k |a_k| R^k / max_{k <= nu} |a_k| R^k`.
///
/// `tail` bounds `sup_{k > N} |a_k| R^k` for coefficients beyond the list.
pub fn bernstein_class_params(
    coeffs: &[Rational],
    nu: usize,
    radius: &Rational,
    tail: Option<&Rational>,
) -> Result<Rational> {
    if !radius.is_positive() {
        return Err(Error::InvalidInput(format!("radius {radius} must be positive")));
    }
    let weighted: Vec<Rational> = coeffs
        .iter()
        .enumerate()
        .map(|(k, a)| a.abs() * rational::pow(radius, k as u32))
        .collect();
    let head = weighted
        .iter()
        .take(nu + 1)
        .cloned()
        .max()
        .unwrap_or_else(Rational::zero);
    if head.is_zero() {
        return Err(Error::DivisionByZero("coefficients up to nu all vanish".into()));
    }
    let mut sup = weighted.into_iter().max().unwrap_or_else(Rational::zero);
    if let Some(t) = tail {
        sup = sup.max(t.clone());
    }
    Ok(sup / head)
}

/// Upper bound on the argument variation of `p` along the boundary of a convex domain:
/// `2 pi (n - 1) + 2 L sum (deg p_lambda + 1) |lambda|`.
pub fn pseudopoly_voorhoeve_bound(p: &PseudoPolynomial, domain: &ComplexDomain) -> Result<BoundCertificate> {
    let n = p.degree() as u64;
    if n == 0 {
        return Err(Error::EmptySpectrum);
    }
    let len = domain.perimeter_upper()?;
    let two = rational::int(2);
    let mut weight = Rational::zero();
    for (lambda, q) in p.terms() {
        weight += rational::int(q.len() as i64) * rational::sqrt_upper(&lambda.norm_sqr(), 40);
    }
    let rotation = &two * rational::pi_upper() * rational::int(n as i64 - 1);
    let multiplier = &two * &len * &weight;
    let total = &rotation + &multiplier;
    let zeros = rational::floor_u64(&(&total / (&two * rational::pi_lower())));
    let mut c = BoundCertificate::new("pseudopolynomial_variation", "Voorhoeve index bounds for exponential polynomials");
    c.quantity("degree", &rational::int(n as i64));
    c.quantity("perimeter_upper", &len);
    c.quantity("rotation_term", &rotation);
    c.quantity("multiplier_term", &multiplier);
    c.quantity("variation_upper", &total);
    c.step(format!("{} derivation step(s), each adding at most one full turn (2 pi radians)", n - 1));
    c.step("multiplications by exp(+-mu z) add at most |mu| L each; factor 2 covers both directions");
    c.bound = ExtNat::Finite(zeros);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};
    use crate::algebra::UniPoly;
    use crate::oracle::count_disk_zeros;

    fn origin() -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    #[test]
    fn jensen_examples() {
        let f = AnalyticSampler::Poly(UniPoly::new(vec![ratio(-2, 5), int(1)]));
        let c = jensen_zero_bound(&f, &ratio(1, 2), &ratio(7, 5)).unwrap();
        assert_eq!(c.bound.finite(), Some(1));
        assert!(c.all_hypotheses_hold());
        let g = AnalyticSampler::Poly(UniPoly::new(vec![ratio(-1, 1000), int(0), int(0), int(1)]));
        let c = jensen_zero_bound(&g, &ratio(1, 2), &ratio(1001, 1000)).unwrap();
        assert_eq!(c.bound.finite(), Some(9));
        assert_eq!(count_disk_zeros(&g, origin(), 0.5).unwrap().winding, 3);
        let k = AnalyticSampler::Poly(UniPoly::from_ints(&[3]));
        assert_eq!(jensen_zero_bound(&k, &ratio(1, 2), &int(3)).unwrap().bound.finite(), Some(0));
        let z = AnalyticSampler::Poly(UniPoly::x());
        assert_eq!(jensen_zero_bound(&z, &ratio(1, 2), &int(1)).err(), Some(Error::VanishingCenter));
    }

    #[test]
    fn bernstein_examples() {
        let pair = CPGonPair::disks(0.5, 1.0).unwrap();
        assert!((pair.gap - 0.5).abs() < 1e-15);
        let z3 = AnalyticSampler::Poly(UniPoly::monomial(int(1), 3));
        assert!((bernstein_index(&z3, &pair).unwrap().value - 3.0 * 2f64.ln()).abs() < 1e-8);
        let e = AnalyticSampler::Pseudo(PseudoPolynomial::exponential(ComplexQ::one()));
        assert!((bernstein_index(&e, &pair).unwrap().value - 0.5).abs() < 1e-8);
        let k = AnalyticSampler::Poly(UniPoly::from_ints(&[-2]));
        assert_eq!(bernstein_index(&k, &pair).unwrap().value, 0.0);
        assert!(CPGonPair::disks(1.0, 1.0).is_err());
    }

    #[test]
    fn defect_of_power() {
        let c = |r| Contour::circle(origin(), r);
        let f = AnalyticSampler::Poly(UniPoly::monomial(int(1), 4));
        let rep = bernstein_rolle_report(&f, &c(0.25), &c(0.5), &c(1.0)).unwrap();
        assert!((rep.defect - 4f64.ln()).abs() < 1e-8);
    }

    #[test]
    fn voorhoeve_examples() {
        let f = AnalyticSampler::Poly(UniPoly::from_ints(&[0, 1, 1]));
        let circle = Contour::circle(origin(), 2.0);
        let v = voorhoeve_index(&f, &circle).unwrap();
        assert_eq!(v.winding, 2);
        assert!(v.variation >= 2.0 * TAU - 1e-6);
        assert!(convex_rolle_check(&f, &circle, 1e-6).unwrap().holds);
    }

    #[test]
    fn second_class_examples() {
        assert_eq!(bernstein_class_params(&[int(1), int(2), int(3)], 2, &int(1), None).unwrap(), int(1));
        assert_eq!(bernstein_class_params(&[int(0), int(1), int(0), int(2)], 1, &int(1), None).unwrap(), int(2));
        let geo: Vec<Rational> = (0..20).map(|k| ratio(1, 1 << k)).collect();
        assert_eq!(bernstein_class_params(&geo, 0, &int(1), Some(&ratio(1, 1 << 20))).unwrap(), int(1));
        assert!(bernstein_class_params(&[int(0), int(1)], 0, &int(1), None).is_err());
    }

    #[test]
    fn pseudopolynomial_bounds() {
        let disk = |r: i64| ComplexDomain::Disk {
            center: ComplexQ::zero(),
            radius: int(r),
        };
        let one = PseudoPolynomial::new(vec![(ComplexQ::zero(), vec![ComplexQ::one()])]).unwrap();
        assert_eq!(pseudopoly_voorhoeve_bound(&one, &disk(3)).unwrap().bound.finite(), Some(0));
        let sine = PseudoPolynomial::sine();
        assert_eq!(sine.degree(), 2);
        let s = AnalyticSampler::Pseudo(sine.clone());
        assert!((s.eval(Complex64::new(0.7, 0.2)) - Complex64::new(0.7, 0.2).sin()).norm() < 1e-14);
        assert!((s.derivative().eval(Complex64::new(0.3, 0.0)).re - 0.3f64.cos()).abs() < 1e-14);
        let c = pseudopoly_voorhoeve_bound(&sine, &disk(5)).unwrap();
        let w = count_disk_zeros(&s, origin(), 5.0).unwrap().winding;
        assert_eq!(w, 3);
        assert!(c.bound.dominates(w as u64));
        assert!(PseudoPolynomial::new(vec![]).is_err());
    }
}
