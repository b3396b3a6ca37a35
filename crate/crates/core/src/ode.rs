//! Zero bounds for linear ODEs with bounded coefficients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::sturm::{certified_sup, count_with_multiplicity_closed, SupBound, DEFAULT_SUP_DEPTH};
use crate::algebra::{ComplexQ, UniPoly};
use crate::certificate::{BoundCertificate, Hypothesis, Relation};
use crate::error::{Error, Result};

/// Number of bisections used for admissible lengths.
pub const BISECTIONS: u32 = 64;

/// `1 - 2^-20`: closed-comparison stand-in for the strict `< 1`.
pub fn default_margin() -> Rational {
    Rational::one() - Rational::new(BigInt::one(), BigInt::one() << 20)
}

/// `1/2 - 2^-20`, the margin for argument-variation bounds.
pub fn half_margin() -> Rational {
    rational::ratio(1, 2) - Rational::new(BigInt::one(), BigInt::one() << 20)
}

/// `sum_{k=1..n} A_k l^k / k!`.
pub fn dlvp_sum(bounds: &[Rational], l: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut term = Rational::one();
    for (k, a) in bounds.iter().enumerate() {
        term = term * l / rational::int(k as i64 + 1);
        acc += a * &term;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibleLength {
    Finite(#[serde(with = "rational::serde_str")] Rational),
    Unbounded,
}

impl AdmissibleLength {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            AdmissibleLength::Finite(l) => Some(l),
            AdmissibleLength::Unbounded => None,
        }
    }
}

fn check_bounds(bounds: &[Rational]) -> Result<()> {
    if bounds.is_empty() {
        return Err(Error::InvalidInput("order must be at least 1".into()));
    }
    if bounds.iter().any(Signed::is_negative) {
        return Err(Error::InvalidInput("coefficient bounds must be nonnegative".into()));
    }
    Ok(())
}

/// Largest dyadic `l` (64 bisections) with `sum A_k l^k / k! <= theta`.
/// `theta = 1` is accepted as the closed limit case.
pub fn dlvp_admissible_length(bounds: &[Rational], theta: &Rational) -> Result<AdmissibleLength> {
    check_bounds(bounds)?;
    if !theta.is_positive() || theta > &Rational::one() {
        return Err(Error::InvalidInput(format!("margin {theta} outside (0, 1]")));
    }
    if bounds.iter().all(Zero::is_zero) {
        return Ok(AdmissibleLength::Unbounded);
    }
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    while dlvp_sum(bounds, &hi) <= *theta {
        lo = hi.clone();
        hi = &hi * rational::int(2);
    }
    let two = rational::int(2);
    for _ in 0..BISECTIONS {
        let mid = (&lo + &hi) / &two;
        if dlvp_sum(bounds, &mid) <= *theta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(AdmissibleLength::Finite(lo))
}

fn nat(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

/// Zeros of any nontrivial real solution on a segment of length `length`:
/// at most `m (n - 1)` with `m = ceil(length / l*)` subsegments.
pub fn dlvp_zero_bound(bounds: &[Rational], length: &Rational) -> Result<BoundCertificate> {
    check_bounds(bounds)?;
    if !length.is_positive() {
        return Err(Error::InvalidInterval(format!("length {length} must be positive")));
    }
    let n = bounds.len() as u64;
    let theta = default_margin();
    let mut c = BoundCertificate::new("de_la_vallee_poussin", "de la Vallee Poussin disconjugacy criterion");
    c.step(format!("order n = {n}; sum over k = 1..n of A_k l^k / k!"));
    c.quantity("length", length);
    c.quantity("theta", &theta);
    match dlvp_admissible_length(bounds, &theta)? {
        AdmissibleLength::Unbounded => {
            c.step("all A_k = 0: the whole segment is admissible");
            c.quantity("subsegments", &Rational::one());
            c.bound = crate::certificate::ExtNat::Finite(n - 1);
        }
        AdmissibleLength::Finite(l) => {
            let m = rational::ceil_u64(&(length / &l)).max(1);
            c.quantity("admissible_length", &l);
            c.quantity("subsegments", &nat(m));
            c.hypothesis(Hypothesis::check("sum A_k l^k/k! <= theta", dlvp_sum(bounds, &l), Relation::Le, theta));
            c.hypothesis(Hypothesis::check("m * l >= length", nat(m) * &l, Relation::Ge, length.clone()));
            c.step(format!("{m} closed subsegments of length <= l*, each with at most n - 1 zeros"));
            c.step("shared endpoints are counted twice; the bound stays an upper bound");
            c.bound = crate::certificate::ExtNat::Finite(m * (n - 1));
        }
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplexVerdict {
    pub lhs: SupBound,
    /// `(l^n / n!) * ||f^(n)||`, as an enclosure.
    pub rhs: SupBound,
    /// `lhs.hi <= rhs.lo`: the inequality is certified.
    pub holds: bool,
    pub roots_with_multiplicity: usize,
}

/// `||f|| <= (l^n / n!) ||f^(n)||` on `[0, l]` for `f` with at least `n + 1` roots there.
pub fn symplex_inequality_check(f: &UniPoly, n: u32, l: &Rational) -> Result<SymplexVerdict> {
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    if !l.is_positive() {
        return Err(Error::InvalidInterval(format!("[0, {l}]")));
    }
    let zero = Rational::zero();
    let roots = count_with_multiplicity_closed(f, &zero, l)?;
    if roots < n as usize + 1 {
        return Err(Error::InsufficientRoots {
            found: roots,
            required: n as usize + 1,
        });
    }
    let factor = rational::pow(l, n) / Rational::from_integer(rational::factorial(n));
    let dn = f.nth_derivative(n as usize);
    let mut depth = DEFAULT_SUP_DEPTH;
    loop {
        let lhs = certified_sup(f, &zero, l, depth)?;
        let d = certified_sup(&dn, &zero, l, depth)?;
        let rhs = SupBound {
            lo: &d.lo * &factor,
            hi: &d.hi * &factor,
        };
        let holds = lhs.hi <= rhs.lo;
        if holds || lhs.lo > rhs.hi || depth >= 4 * DEFAULT_SUP_DEPTH {
            return Ok(SymplexVerdict {
                lhs,
                rhs,
                holds,
                roots_with_multiplicity: roots,
            });
        }
        depth *= 2;
    }
}

/// Complex domains for the holomorphic bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ComplexDomain {
    Disk {
        center: ComplexQ,
        #[serde(with = "rational::serde_str")]
        radius: Rational,
    },
    /// Convex polygon.
    Polygon { vertices: Vec<ComplexQ> },
    HalfPlane,
}

impl ComplexDomain {
    /// Rational upper bound on the diameter.
    pub fn diameter_upper(&self) -> Result<Rational> {
        match self {
            ComplexDomain::Disk { radius, .. } => Ok(radius * rational::int(2)),
            ComplexDomain::Polygon { vertices } => {
                let mut d2 = Rational::zero();
                for a in vertices {
                    for b in vertices {
                        d2 = d2.max((a - b).norm_sqr());
                    }
                }
                Ok(rational::sqrt_upper(&d2, 40))
            }
            ComplexDomain::HalfPlane => Err(Error::UnboundedDomain),
        }
    }

    /// Rational upper bound on the boundary length.
    pub fn perimeter_upper(&self) -> Result<Rational> {
        match self {
            ComplexDomain::Disk { radius, .. } => Ok(radius * rational::int(2) * rational::pi_upper()),
            ComplexDomain::Polygon { vertices } => Ok((0..vertices.len())
                .map(|i| {
                    let d = &vertices[(i + 1) % vertices.len()] - &vertices[i];
                    rational::sqrt_upper(&d.norm_sqr(), 40)
                })
                .sum()),
            ComplexDomain::HalfPlane => Err(Error::UnboundedDomain),
        }
    }

    fn bbox(&self) -> Result<(Rational, Rational, Rational, Rational)> {
        match self {
            ComplexDomain::Disk { center, radius } => Ok((
                &center.re - radius,
                &center.re + radius,
                &center.im - radius,
                &center.im + radius,
            )),
            ComplexDomain::Polygon { vertices } if !vertices.is_empty() => {
                let xs = vertices.iter().map(|v| v.re.clone());
                let ys = vertices.iter().map(|v| v.im.clone());
                Ok((
                    xs.clone().min().unwrap(),
                    xs.max().unwrap(),
                    ys.clone().min().unwrap(),
                    ys.max().unwrap(),
                ))
            }
            ComplexDomain::Polygon { .. } => Err(Error::InvalidInput("empty polygon".into())),
            ComplexDomain::HalfPlane => Err(Error::UnboundedDomain),
        }
    }

    /// Whether the closed square cell may meet the domain (exact for disks,
    /// bounding-box over-approximation for polygons).
    fn cell_meets(&self, x0: &Rational, y0: &Rational, s: &Rational) -> bool {
        match self {
            ComplexDomain::Disk { center, radius } => {
                let clamp = |v: &Rational, lo: &Rational, hi: &Rational| v.clone().max(lo.clone()).min(hi.clone());
                let cx = clamp(&center.re, x0, &(x0 + s));
                let cy = clamp(&center.im, y0, &(y0 + s));
                let dx = &cx - &center.re;
                let dy = &cy - &center.im;
                &dx * &dx + &dy * &dy <= radius * radius
            }
            _ => true,
        }
    }
}

/// Holomorphic linear ODE on a bounded convex domain: at most `n - 1` zeros per
/// convex piece of admissible diameter.
pub fn kim_zero_bound(bounds: &[Rational], domain: &ComplexDomain) -> Result<BoundCertificate> {
    check_bounds(bounds)?;
    let n = bounds.len() as u64;
    let diam = domain.diameter_upper()?;
    let mut c = BoundCertificate::new("kim", "Kim's theorem for holomorphic linear equations");
    c.quantity("diameter_upper", &diam);
    let sum = dlvp_sum(bounds, &diam);
    if c.hypothesis(Hypothesis::check("sum A_k l^k/k! < 1", sum, Relation::Lt, Rational::one())) {
        c.step("condition holds on the whole domain");
        c.bound = crate::certificate::ExtNat::Finite(n - 1);
        return Ok(c);
    }
    c.hypotheses.last_mut().unwrap().name = "sum A_k l^k/k! < 1 (fails on the whole domain; covering)".into();
    if n == 1 {
        c.step("first order: solutions never vanish");
        c.bound = crate::certificate::ExtNat::Finite(0);
        return Ok(c);
    }
    let theta = default_margin();
    let l = match dlvp_admissible_length(bounds, &theta)? {
        AdmissibleLength::Finite(l) => l,
        AdmissibleLength::Unbounded => unreachable!("sum >= 1 implies some A_k > 0"),
    };
    // side * sqrt(2) < l keeps every cell (and its convex intersection) admissible
    let side = &l * rational::sqrt_lower(&rational::ratio(1, 2), 30);
    let (x0, x1, y0, y1) = domain.bbox()?;
    let nx = rational::ceil_u64(&((&x1 - &x0) / &side)).max(1);
    let ny = rational::ceil_u64(&((&y1 - &y0) / &side)).max(1);
    let mut cells = 0u64;
    for i in 0..nx {
        let cx = &x0 + &side * nat(i);
        for j in 0..ny {
            let cy = &y0 + &side * nat(j);
            if domain.cell_meets(&cx, &cy, &side) {
                cells += 1;
            }
        }
    }
    c.quantity("admissible_length", &l);
    c.quantity("cell_side", &side);
    c.quantity("cells", &nat(cells));
    c.hypothesis(Hypothesis::check(
        "2 * side^2 < l*^2",
        &side * &side * rational::int(2),
        Relation::Lt,
        &l * &l,
    ));
    c.step(format!("{nx} x {ny} grid of squares over the bounding box, {cells} meet the domain"));
    c.bound = crate::certificate::ExtNat::Finite(cells * (n - 1));
    Ok(c)
}

/// Bound on the argument variation of any solution along a real segment of length `l`,
/// in half-turns: `m (n + 1)` with `m` admissible pieces (`theta = 1/2`).
pub fn complex_variation_bound(bounds: &[Rational], l: &Rational) -> Result<BoundCertificate> {
    check_bounds(bounds)?;
    if !l.is_positive() {
        return Err(Error::InvalidInterval(format!("length {l} must be positive")));
    }
    let n = bounds.len() as u64;
    let mut c = BoundCertificate::new("argument_variation", "variation of argument for linear equations");
    c.quantity("length", l);
    let sum = dlvp_sum(bounds, l);
    let m = if c.hypothesis(Hypothesis::check("sum A_k l^k/k! < 1/2", sum, Relation::Lt, rational::ratio(1, 2))) {
        1
    } else {
        match dlvp_admissible_length(bounds, &half_margin())? {
            AdmissibleLength::Finite(ls) => {
                let m = rational::ceil_u64(&(l / &ls)).max(1);
                c.quantity("admissible_length", &ls);
                c.hypothesis(Hypothesis::check("m * l* >= l", nat(m) * &ls, Relation::Ge, l.clone()));
                m
            }
            AdmissibleLength::Unbounded => 1,
        }
    };
    let half_turns = m * (n + 1);
    c.quantity("subsegments", &nat(m));
    c.quantity("half_turns", &nat(half_turns));
    c.quantity("radians_upper", &(nat(half_turns) * rational::pi_upper()));
    c.step(format!("each of {m} pieces rotates by at most (n + 1) pi"));
    c.bound = crate::certificate::ExtNat::Finite(half_turns);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    #[test]
    fn sqrt_two_from_closed_margin() {
        let l = dlvp_admissible_length(&[int(0), int(1)], &int(1)).unwrap();
        let l = l.finite().unwrap().clone();
        assert!(&l * &l <= int(2));
        let gap = rational::sqrt_upper(&int(2), 80) - &l;
        assert!(gap <= Rational::new(BigInt::one(), BigInt::one() << 60));
        assert_eq!(
            dlvp_admissible_length(&[int(0), int(0)], &ratio(1, 2)).unwrap(),
            AdmissibleLength::Unbounded
        );
    }

    #[test]
    fn oscillator_on_ten_pi() {
        let len = int(10) * rational::pi_upper();
        let c = dlvp_zero_bound(&[int(0), int(1)], &len).unwrap();
        assert_eq!(c.bound.finite(), Some(23));
        assert!(c.all_hypotheses_hold());
        assert_eq!(dlvp_zero_bound(&[int(0)], &len).unwrap().bound.finite(), Some(0));
        assert_eq!(dlvp_zero_bound(&[int(0), int(0)], &len).unwrap().bound.finite(), Some(1));
    }

    #[test]
    fn substitution_check_order_three() {
        let a = [int(1), int(1), int(1)];
        let l = dlvp_admissible_length(&a, &ratio(1, 2)).unwrap().finite().unwrap().clone();
        assert!(dlvp_sum(&a, &l) <= ratio(1, 2));
        let eps = Rational::new(BigInt::one(), BigInt::one() << 60);
        assert!(dlvp_sum(&a, &(&l + eps)) > ratio(1, 2));
    }

    #[test]
    fn symplex_examples() {
        let f = UniPoly::from_roots(&[int(0), int(1)]);
        let v = symplex_inequality_check(&f, 1, &int(1)).unwrap();
        assert_eq!((v.lhs.hi.clone(), v.rhs.lo.clone()), (ratio(1, 4), int(1)));
        assert!(v.holds);
        let g = UniPoly::from_roots(&[int(0), int(1), int(2)]).scale(&ratio(1, 6));
        assert!(symplex_inequality_check(&g, 2, &int(2)).unwrap().holds);
        assert!(matches!(
            symplex_inequality_check(&f, 2, &int(1)),
            Err(Error::InsufficientRoots { found: 2, required: 3 })
        ));
    }

    #[test]
    fn kim_examples() {
        let disk = |r: Rational| ComplexDomain::Disk {
            center: ComplexQ::zero(),
            radius: r,
        };
        let a = [int(0), int(1)];
        assert_eq!(kim_zero_bound(&a, &disk(ratio(1, 2))).unwrap().bound.finite(), Some(1));
        assert_eq!(kim_zero_bound(&[int(7)], &disk(int(9))).unwrap().bound.finite(), Some(0));
        let big = kim_zero_bound(&a, &disk(int(5))).unwrap();
        assert!(big.bound.finite().unwrap() >= 4);
        assert_eq!(kim_zero_bound(&a, &ComplexDomain::HalfPlane).err(), Some(Error::UnboundedDomain));
    }

    #[test]
    fn variation_examples() {
        let c = complex_variation_bound(&[int(1)], &int(1)).unwrap();
        assert_eq!(c.bound.finite(), Some(6));
        assert_eq!(c.get_quantity("subsegments"), Some(int(3)));
        assert_eq!(complex_variation_bound(&[int(0), int(0)], &int(50)).unwrap().bound.finite(), Some(3));
        assert_eq!(complex_variation_bound(&[int(0), int(1)], &ratio(1, 2)).unwrap().bound.finite(), Some(3));
    }
}
