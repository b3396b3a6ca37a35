//! Euler equations `(t d/dt)^n y + b_1 (t d/dt)^(n-1) y + ... + b_n y = 0`, their
//! pseudomonomial solutions, Petrov difference operators, and zero bounds on `(0, 1)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::sturm::{count_real_with_multiplicity, isolate_roots};
use crate::algebra::{ComplexQ, UniPoly};
use crate::certificate::{BoundCertificate, ExtNat};
use crate::error::{Error, Result};
use crate::ode::complex_variation_bound;

/// Monic Euler operator with rational coefficients `b_1, ..., b_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerOperatorSpec {
    #[serde(with = "rational_list")]
    pub coeffs: Vec<Rational>,
}

mod rational_list {
    use super::Rational;
    use crate::algebra::rational::parse_rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|q| q.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl EulerOperatorSpec {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("order must be at least 1".into()));
        }
        Ok(EulerOperatorSpec { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `lambda^n + b_1 lambda^(n-1) + ... + b_n`.
    pub fn characteristic_polynomial(&self) -> UniPoly {
        let n = self.order();
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        for (j, b) in self.coeffs.iter().enumerate() {
            c[n - 1 - j] = b.clone();
        }
        UniPoly::new(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicRoot {
    /// Exact for rational roots, a midpoint of an isolating interval otherwise.
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub multiplicity: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumData {
    pub roots: Vec<CharacteristicRoot>,
}

impl SpectrumData {
    pub fn total(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Basis `t^lambda ln^k t`, `k < multiplicity`, as `(lambda, k)` (exact roots only).
    pub fn basis(&self) -> Vec<(Rational, usize)> {
        self.roots
            .iter()
            .filter(|r| r.exact)
            .flat_map(|r| (0..r.multiplicity).map(move |k| (r.value.clone(), k)))
            .collect()
    }

    pub fn exact_pairs(&self) -> Vec<(Rational, usize)> {
        self.roots
            .iter()
            .filter(|r| r.exact)
            .map(|r| (r.value.clone(), r.multiplicity))
            .collect()
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let limit = n.to_u64().filter(|&v| v <= 1 << 40);
    match limit {
        Some(v) => {
            let mut out = Vec::new();
            let mut d = 1u64;
            while d * d <= v {
                if v % d == 0 {
                    out.push(BigInt::from(d));
                    if d * d != v {
                        out.push(BigInt::from(v / d));
                    }
                }
                d += 1;
            }
            out
        }
        None => vec![BigInt::one(), n],
    }
}

/// Rational roots by the rational root theorem, with multiplicities.
fn rational_roots(p: &UniPoly) -> (Vec<(Rational, usize)>, UniPoly) {
    let mut rest = p.primitive();
    let mut out = Vec::new();
    if rest.is_zero() {
        return (out, rest);
    }
    let zero_mult = rest.order_at_zero().unwrap_or(0);
    if zero_mult > 0 {
        rest = rest.exact_div(&UniPoly::monomial(Rational::one(), zero_mult));
        out.push((Rational::zero(), zero_mult));
    }
    let int_coeffs: Vec<BigInt> = rest.coeffs().iter().map(|c| c.to_integer()).collect();
    if int_coeffs.len() < 2 {
        return (out, rest);
    }
    let c0 = int_coeffs[0].clone();
    let cn = int_coeffs.last().expect("nonconstant").clone();
    let mut candidates: Vec<Rational> = Vec::new();
    for a in divisors(&c0) {
        for b in divisors(&cn) {
            if a.gcd(&b).is_one() {
                let q = Rational::new(a.clone(), b.clone());
                candidates.push(q.clone());
                candidates.push(-q);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    for q in candidates {
        let lin = UniPoly::new(vec![-q.clone(), Rational::one()]);
        let mut m = 0;
        while !rest.is_constant() && rest.rem(&lin).is_zero() {
            rest = rest.exact_div(&lin);
            m += 1;
        }
        if m > 0 {
            out.push((q, m));
        }
    }
    (out, rest)
}

/// Characteristic numbers with multiplicities; the spectrum must be real.
pub fn euler_solve(spec: &EulerOperatorSpec) -> Result<SpectrumData> {
    let chi = spec.characteristic_polynomial();
    if count_real_with_multiplicity(&chi)? != spec.order() {
        return Err(Error::NonRealSpectrum);
    }
    let (exact, rest) = rational_roots(&chi);
    let mut roots: Vec<CharacteristicRoot> = exact
        .into_iter()
        .map(|(value, multiplicity)| CharacteristicRoot {
            value,
            multiplicity,
            exact: true,
        })
        .collect();
    if !rest.is_constant() {
        for (factor, mult) in rest.squarefree_decomposition() {
            if factor.is_constant() {
                continue;
            }
            let bound = factor.cauchy_bound();
            let width = Rational::new(BigInt::one(), BigInt::one() << 50);
            for iv in isolate_roots(&factor, &-&bound, &bound, &width)? {
                roots.push(CharacteristicRoot {
                    value: iv.midpoint(),
                    multiplicity: mult,
                    exact: false,
                });
            }
        }
    }
    roots.sort_by(|a, b| a.value.cmp(&b.value));
    if roots.iter().map(|r| r.multiplicity).sum::<usize>() != spec.order() {
        return Err(Error::UnresolvedRoots);
    }
    Ok(SpectrumData { roots })
}

/// Phase in `[0, 1)`.
fn phase(q: &Rational) -> Rational {
    q - Rational::from_integer(q.floor().to_integer())
}

/// Finite sums `c * pi^p * exp(2 pi i phi)` with `c` exact complex rational.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PetrovCoefficient {
    terms: BTreeMap<(u32, Rational), ComplexQ>,
}

impl PetrovCoefficient {
    pub fn constant(c: ComplexQ) -> Self {
        let mut s = PetrovCoefficient::default();
        s.add(0, &Rational::zero(), c);
        s
    }

    /// Adds `c * pi^p * exp(2 pi i phi)`, folding quarter phases into `c`.
    pub fn add(&mut self, p: u32, phi: &Rational, c: ComplexQ) {
        let mut phi = phase(phi);
        let mut c = c;
        let quarter = rational::ratio(1, 4);
        while phi >= quarter && (&phi * rational::int(4)).is_integer() {
            c = &c * &ComplexQ::i();
            phi -= &quarter;
        }
        let entry = self.terms.entry((p, phi.clone())).or_insert_with(ComplexQ::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&(p, phi));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_c64(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|((p, phi), c)| {
                c.to_c64() * PI.powi(*p as i32) * Complex64::from_polar(1.0, 2.0 * PI * rational::to_f64(phi))
            })
            .sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, Rational), &ComplexQ)> {
        self.terms.iter()
    }
}

/// `sum c_{lambda,k} z^k exp(lambda z)` in the chart `z = ln t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PseudomonomialSum {
    terms: BTreeMap<(Rational, usize), PetrovCoefficient>,
}

impl PseudomonomialSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `sum c * t^lambda * ln^k t` from rational data.
    pub fn from_real(terms: &[(Rational, usize, Rational)]) -> Self {
        let mut s = Self::zero();
        for (l, k, c) in terms {
            s.add_term(l, *k, 0, &Rational::zero(), ComplexQ::real(c.clone()));
        }
        s
    }

    fn add_term(&mut self, lambda: &Rational, k: usize, p: u32, phi: &Rational, c: ComplexQ) {
        let e = self.terms.entry((lambda.clone(), k)).or_default();
        e.add(p, phi, c);
        if e.is_zero() {
            self.terms.remove(&(lambda.clone(), k));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Rational, usize), &PetrovCoefficient)> {
        self.terms.iter()
    }

    /// Value at `z` in the logarithmic chart.
    pub fn eval_z(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|((l, k), c)| c.to_c64() * z.powu(*k as u32) * (z * rational::to_f64(l)).exp())
            .sum()
    }

    /// Value at `t > 0`.
    pub fn eval_t(&self, t: f64) -> Complex64 {
        self.eval_z(Complex64::new(t.ln(), 0.0))
    }

    /// Whether every term lies in the span of `z^k exp(lambda z)`, `k < multiplicity`.
    pub fn in_space(&self, spectrum: &[(Rational, usize)]) -> bool {
        self.terms
            .keys()
            .all(|(l, k)| spectrum.iter().any(|(s, m)| s == l && k < m))
    }
}

/// `P_mu = mu^-1 f(z + 2 pi i) - mu f(z - 2 pi i)` with `mu = exp(2 pi i lambda_op)`.
pub fn petrov_apply(lambda_op: &Rational, f: &PseudomonomialSum) -> PseudomonomialSum {
    let mut out = PseudomonomialSum::zero();
    let two_i = ComplexQ::new(Rational::zero(), rational::int(2));
    for ((lambda, k), coeff) in f.terms() {
        let delta = lambda - lambda_op;
        for r in 0..=*k {
            let binom = Rational::from_integer(rational::binomial(*k as u64, r as u64));
            let factor = two_i.pow(r as u32).scale(&binom);
            let sign = if r % 2 == 0 { -Rational::one() } else { Rational::one() };
            for ((p, phi), c) in coeff.terms() {
                let base = c * &factor;
                out.add_term(lambda, k - r, p + r as u32, &(phi + &delta), base.clone());
                out.add_term(lambda, k - r, p + r as u32, &(phi - &delta), base.scale(&sign));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorVerdict {
    pub in_space: bool,
    pub residual: PseudomonomialSum,
}

impl AnnihilatorVerdict {
    pub fn annihilated(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Applies `prod_j P_{mu_j}^{nu_j}` to `f`.
pub fn annihilator_check(spectrum: &[(Rational, usize)], f: &PseudomonomialSum) -> AnnihilatorVerdict {
    let mut g = f.clone();
    for (l, m) in spectrum {
        for _ in 0..*m {
            g = petrov_apply(l, &g);
        }
    }
    AnnihilatorVerdict {
        in_space: f.in_space(spectrum),
        residual: g,
    }
}

/// Zeros on `(0, 1)` of any real solution: `n (2B + 1)` with `B` the variation bound
/// on vertical segments of length `4 pi` in the logarithmic chart.
pub fn roitman_zero_bound(spec: &EulerOperatorSpec) -> Result<BoundCertificate> {
    let n = spec.order() as u64;
    let chi = spec.characteristic_polynomial();
    if count_real_with_multiplicity(&chi)? != spec.order() {
        return Err(Error::NonRealSpectrum);
    }
    let bounds: Vec<Rational> = spec.coeffs.iter().map(Signed::abs).collect();
    let segment = rational::int(4) * rational::pi_upper();
    let var = complex_variation_bound(&bounds, &segment)?;
    let half_turns = var.bound.finite().expect("finite variation bound");
    let b = rational::int(half_turns as i64) * rational::pi_upper();
    let per_step = rational::floor_u64(&(&b * rational::int(2) + Rational::one()));
    let mut c = BoundCertificate::new("petrov_difference", "Roitman-type bound through Petrov difference operators");
    c.hypotheses = var.hypotheses.clone();
    c.quantity("segment_length", &segment);
    if let Some(l) = var.get_quantity("admissible_length") {
        c.quantity("admissible_length", &l);
    }
    c.quantity("subsegments", &var.get_quantity("subsegments").unwrap_or_else(Rational::one));
    c.quantity("vertical_variation_upper", &b);
    c.quantity("petrov_steps", &rational::int(n as i64));
    c.step("constant-coefficient case: coefficient bounds |b_k| in the logarithmic chart");
    c.step(format!("each of {n} Petrov steps adds at most 2B + 1 = {per_step} zeros"));
    c.bound = ExtNat::Finite(n * per_step);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    fn spec(b: &[i64]) -> EulerOperatorSpec {
        EulerOperatorSpec::new(b.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn spectra() {
        let s = euler_solve(&spec(&[-3, 2])).unwrap();
        assert_eq!(s.basis(), vec![(int(1), 0), (int(2), 0)]);
        assert_eq!(euler_solve(&spec(&[0, 0])).unwrap().basis(), vec![(int(0), 0), (int(0), 1)]);
        assert_eq!(euler_solve(&spec(&[-1, 0])).unwrap().basis(), vec![(int(0), 0), (int(1), 0)]);
        assert_eq!(euler_solve(&spec(&[0, 1])).err(), Some(Error::NonRealSpectrum));
        let irr = euler_solve(&spec(&[0, -2])).unwrap();
        assert!(irr.roots.iter().all(|r| !r.exact) && irr.total() == 2);
    }

    #[test]
    fn petrov_examples() {
        let l = ratio(1, 3);
        let e = PseudomonomialSum::from_real(&[(l.clone(), 0, int(1))]);
        assert!(petrov_apply(&l, &e).is_zero());
        let ze = PseudomonomialSum::from_real(&[(l.clone(), 1, int(1))]);
        let out = petrov_apply(&l, &ze);
        let expected = 4.0 * PI;
        let v = out.eval_z(Complex64::new(0.0, 0.0));
        assert!((v - Complex64::new(0.0, expected)).norm() < 1e-12);
        assert_eq!(out.terms().count(), 1);
        let other = petrov_apply(&l, &PseudomonomialSum::from_real(&[(ratio(1, 2), 0, int(1))]));
        let mu = |x: f64| Complex64::from_polar(1.0, 2.0 * PI * x);
        let want = mu(1.0 / 3.0).inv() * mu(0.5) - mu(1.0 / 3.0) * mu(0.5).inv();
        assert!((other.eval_z(Complex64::new(0.0, 0.0)) - want).norm() < 1e-12);
    }

    #[test]
    fn annihilators() {
        let f = PseudomonomialSum::from_real(&[(int(0), 0, int(1)), (int(0), 1, int(3))]);
        let v = annihilator_check(&[(int(0), 2)], &f);
        assert!(v.in_space && v.annihilated());
        let g = PseudomonomialSum::from_real(&[(int(1), 0, int(1)), (int(2), 0, int(-5))]);
        assert!(annihilator_check(&[(int(1), 1), (int(2), 1)], &g).annihilated());
        let cube = PseudomonomialSum::from_real(&[(int(3), 0, int(1))]);
        assert!(!annihilator_check(&[(int(1), 1), (int(2), 1)], &cube).in_space);
        let root = PseudomonomialSum::from_real(&[(ratio(1, 3), 0, int(1))]);
        let v = annihilator_check(&[(int(1), 1), (int(2), 1)], &root);
        assert!(!v.in_space && !v.annihilated());
    }

    #[test]
    fn roitman_examples() {
        let c = roitman_zero_bound(&spec(&[-3, 2])).unwrap();
        assert!(c.bound.dominates(1));
        assert!(roitman_zero_bound(&spec(&[-2])).is_ok());
        assert_eq!(roitman_zero_bound(&spec(&[0, 1])).err(), Some(Error::NonRealSpectrum));
    }
}
