//! Seeded random instances and their bound-versus-oracle comparisons.
//!
//! Instance `index` under `seed` is regenerated from its own RNG stream, so a
//! sweep can run in any order and any single instance can be replayed.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{ComplexQ, MultiPoly, UniPoly};
use crate::certificate::ExtNat;
use crate::complex_counting::jensen_zero_bound;
use crate::curves::{hyperplane_rotation_bound, CurveSampler};
use crate::error::{Error, Result};
use crate::fuchsian::{annihilator_check, euler_solve, roitman_zero_bound, EulerOperatorSpec, PseudomonomialSum};
use crate::meandering::{chain_stabilize, meandering_bound_from_chain, PolyVectorField, DEFAULT_SLACK};
use crate::multiplicity::{corank_threshold_multiplicity, local_algebra_multiplicity, preimage_count, MapGerm};
use crate::ode::dlvp_zero_bound;
use crate::oracle::{
    count_disk_zeros, count_sign_changes, integrate_field_span, integrate_ode, random_affine_hits, sample_stream,
    AnalyticSampler,
};
use crate::rolle::{
    fewnomial_positive_bound, multiplicative_triangle, positive_root_count_with_multiplicity, rolle_chain_check,
    Fewnomial,
};
use crate::wronskian::{apply_poly_operator, polya_verify, riemann_normalized, riemann_operator, PolyaFactorization};

/// Instance families available for sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusKind {
    Rolle,
    Descartes,
    Dlvp,
    Jensen,
    Polya,
    Meander,
    Mult,
    Fuchs,
    Curve,
}

impl CorpusKind {
    pub const ALL: [CorpusKind; 9] = [
        CorpusKind::Rolle,
        CorpusKind::Descartes,
        CorpusKind::Dlvp,
        CorpusKind::Jensen,
        CorpusKind::Polya,
        CorpusKind::Meander,
        CorpusKind::Mult,
        CorpusKind::Fuchs,
        CorpusKind::Curve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorpusKind::Rolle => "rolle",
            CorpusKind::Descartes => "descartes",
            CorpusKind::Dlvp => "dlvp",
            CorpusKind::Jensen => "jensen",
            CorpusKind::Polya => "polya",
            CorpusKind::Meander => "meander",
            CorpusKind::Mult => "mult",
            CorpusKind::Fuchs => "fuchs",
            CorpusKind::Curve => "curve",
        }
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CorpusKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown corpus kind `{s}`")))
    }
}

/// One instance: the certified bound, the oracle count, and any exact identities checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub index: u64,
    /// `None` when the bound is infinite or the kind has no bound.
    pub bound: Option<u64>,
    pub oracle: Option<u64>,
    pub identities_hold: bool,
    /// No certificate within the caps; not a failure.
    pub inconclusive: bool,
    pub detail: String,
}

impl InstanceOutcome {
    fn new(index: u64) -> Self {
        InstanceOutcome {
            index,
            bound: None,
            oracle: None,
            identities_hold: true,
            inconclusive: false,
            detail: String::new(),
        }
    }

    fn inconclusive(index: u64, why: impl fmt::Display) -> Self {
        InstanceOutcome {
            inconclusive: true,
            detail: why.to_string(),
            ..Self::new(index)
        }
    }

    /// `bound >= oracle` when both exist.
    pub fn majorizes(&self) -> Option<bool> {
        match (self.bound, self.oracle) {
            (Some(b), Some(o)) => Some(b >= o),
            _ => None,
        }
    }

    /// False only on a contradiction: a failed identity or a bound below the oracle.
    pub fn passed(&self) -> bool {
        self.identities_hold && self.majorizes() != Some(false)
    }
}

/// Uniform rational `p / q` in `[-range, range]` with `q <= 4`.
pub fn random_rational(rng: &mut ChaCha8Rng, range: i64) -> Rational {
    let q = rng.random_range(1..=4i64);
    rational::ratio(rng.random_range(-range * q..=range * q), q)
}

/// Random polynomial of degree in `1..=max_degree` with nonzero leading coefficient.
pub fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize, range: i64) -> UniPoly {
    let d = rng.random_range(1..=max_degree);
    let mut c: Vec<Rational> = (0..d).map(|_| random_rational(rng, range)).collect();
    let mut lead = Rational::zero();
    while lead.is_zero() {
        lead = random_rational(rng, range);
    }
    c.push(lead);
    UniPoly::new(c)
}

fn nonzero_int(rng: &mut ChaCha8Rng, range: i64) -> i64 {
    loop {
        let v = rng.random_range(-range..=range);
        if v != 0 {
            return v;
        }
    }
}

/// Up to `max_terms` distinct exponents in `0..=max_exp` with nonzero integer coefficients.
pub fn random_fewnomial(rng: &mut ChaCha8Rng, max_terms: usize, max_exp: i64) -> Fewnomial {
    let k = rng.random_range(1..=max_terms);
    let mut exps: Vec<i64> = Vec::new();
    while exps.len() < k {
        let e = rng.random_range(0..=max_exp);
        if !exps.contains(&e) {
            exps.push(e);
        }
    }
    Fewnomial::new(exps.into_iter().map(|e| (e, rational::int(nonzero_int(rng, 10)))).collect::<Vec<_>>())
}

pub fn rolle_instance(seed: u64, index: u64) -> Result<InstanceOutcome> {
    let mut rng = sample_stream(seed, index);
    let f = random_poly(&mut rng, 8, 10);
    let g = random_poly(&mut rng, 8, 10);
    let m = (&f * &g).cauchy_bound();
    let a = -m.clone();
    let chain = rolle_chain_check(&f, &a, &m)?;
    let triangle = multiplicative_triangle(&f, &g, &a, &m)?;
    let mut out = InstanceOutcome::new(index);
    out.oracle = Some(chain.rows[0].distinct as u64);
    out.bound = Some(chain.rows.get(1).map_or(0, |r| r.distinct) as u64 + 1);
    out.identities_hold = chain.all_ok() && triangle;
    out.detail = format!("degree {}", f.degree().unwrap_or(0));
    Ok(out)
}

pub fn descartes_instance(seed: u64, index: u64) -> Result<InstanceOutcome> {
    let mut rng = sample_stream(seed, index);
    let p = random_fewnomial(&mut rng, 5, 30);
    let mut out = InstanceOutcome::new(index);
    out.bound = fewnomial_positive_bound(&p)?.bound.finite();
    out.oracle = Some(positive_root_count_with_multiplicity(&p)? as u64);
    out.detail = format!("{} terms, {} sign changes", p.len(), p.sign_changes());
    Ok(out)
}

/// Random `y^(n) + a_1(t) y^(n-1) + ... + a_n(t) y = 0` with `|a_k| <= A_k`,
/// integrated numerically from random initial data.
pub fn dlvp_instance(seed: u64, index: u64) -> Result<InstanceOutcome> {
    let mut rng = sample_stream(seed, index);
    let n = rng.random_range(1..=3usize);
    let bounds: Vec<Rational> = (0..n).map(|_| rational::ratio(rng.random_range(0..=8), 4)).collect();
    let length = rational::ratio(rng.random_range(2..=16), 2);
    let waves: Vec<(f64, f64, f64)> = bounds
        .iter()
        .map(|a| {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            (sign * rational::to_f64(a), rng.random_range(0.0..3.0), rng.random_range(0.0..std::f64::consts::TAU))
        })
        .collect();
    let y0: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let rhs = |t: f64, y: &[f64]| {
        let mut dy: Vec<f64> = y[1..].to_vec();
        let top = -(1..=n)
            .map(|k| {
                let (amp, w, ph) = waves[k - 1];
                amp * (w * t + ph).cos() * y[n - k]
            })
            .sum::<f64>();
        dy.push(top);
        dy
    };
    let l = rational::to_f64(&length);
    let sol = integrate_ode(rhs, &y0, 0.0, l, 1e-10);
    let count = count_sign_changes(|t| sol.at(t)[0], 0.0, l, 4000).count;
    let cert = dlvp_zero_bound(&bounds, &length)?;
    let mut out = InstanceOutcome::new(index);
    out.bound = cert.bound.finite();
    out.oracle = Some(count as u64);
    out.detail = format!("order {n}, length {length}");
    Ok(out)
}

/// Random complex rational in the square `|re|, |im| <= 3/5`.
fn small_complex(rng: &mut ChaCha8Rng) -> ComplexQ {
    ComplexQ::new(
        rational::ratio(rng.random_range(-12..=12), 20),
        rational::ratio(rng.random_range(-12..=12), 20),
    )
}

/// Coefficients of `prod (z - r)` for complex rational roots.
pub fn complex_poly_from_roots(roots: &[ComplexQ]) -> Vec<ComplexQ> {
    let mut c = vec![ComplexQ::one()];
    for r in roots {
        let mut next = vec![ComplexQ::zero(); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] = &next[k + 1] + a;
            next[k] = &next[k] - &(a * r);
        }
        c = next;
    }
    c
}

/// `sum |re| + |im|` over the coefficients: an exact upper bound on the unit circle.
pub fn coefficient_l1(c: &[ComplexQ]) -> Rational {
    c.iter().map(ComplexQ::l1_norm).fold(Rational::zero(), |a, b| a + b)
}

pub fn jensen_instance(seed: u64, index: u64) -> Result<InstanceOutcome> {
    let mut rng = sample_stream(seed, index);
    let degree = rng.random_range(1..=6usize);
    let roots: Vec<ComplexQ> = (0..degree)
        .map(|_| loop {
            let r = small_complex(&mut rng);
            if !r.is_zero() {
                break r;
            }
        })
        .collect();
    let coeffs = complex_poly_from_roots(&roots);
    let m = coefficient_l1(&coeffs);
    let f = AnalyticSampler::ComplexPoly(coeffs);
    let r = rational::ratio(9, 10);
    let cert = jensen_zero_bound(&f, &r, &m)?;
    let w = count_disk_zeros(&f, Complex64::new(0.0, 0.0), 0.9)?;
    let mut out = InstanceOutcome::new(index);
    out.bound = cert.bound.finite();
    out.oracle = Some(w.winding.max(0) as u64);
    out.identities_hold = w.total_variation + 1e-9 >= std::f64::consts::TAU * w.winding.unsigned_abs() as f64;
    out.detail = format!("degree {degree}");
    Ok(out)
}

/// Random tuple of `n` linearly independent polynomials of degree at most `max_degree`.
pub fn random_independent_tuple(rng: &mut ChaCha8Rng, n: usize, max_degree: usize) -> Vec<UniPoly> {
    loop {
        let fs: Vec<UniPoly> = (0..n)
            .map(|_| {
                let d = rng.random_range(0..=max_degree);
                UniPoly::new((0..=d).map(|_| rational::int(rng.random_range(-5..=5))).collect())
            })
            .collect();
        if fs.iter().any(UniPoly::is_zero) {
            continue;
        }
        if PolyaFactorization::new(&fs).is_ok() {
            return fs;
        }
    }
}

pub fn polya_instance(seed: u64, index: u64) -> Result<InstanceOutcome> {
    let mut rng = sample_stream(seed, index);
    let fs = random_independent_tuple(&mut rng, 3, 5);
    let verdict = polya_verify(&fs)?;
    let riemann = riemann_operator(&fs)?;
    let riemann_ok = fs.iter().all(|f| apply_poly_operator(&riemann, f).is_zero());
    let expanded = PolyaFactorization::new(&fs)?.expanded()?;
    let same = expanded.coeffs == riemann_normalized(&fs)?;
    let mut out = InstanceOutcome::new(index);
    out.identities_hold = verdict.all() && riemann_ok && same;
    out.detail = format!("wronskian degree {}", verdict.wronskians[2].degree().unwrap_or(0));
    Ok(out)
}

/// Polynomial of degree at most `d` in `n` variables with sparse small integer coefficients.
fn random_multipoly(rng: &mut ChaCha8Rng, n: usize, d: u32, density: f64) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    for m in crate::algebra::multipoly::monomials_up_to(n, d) {
        if rng.random_bool(density) {
            p.add_term(m, rational::int(nonzero_int(rng, 2)));
        }
    }
    p
}

/// Planar field of degree at most 3, an affine function, a base point, and `delta`.
pub struct MeanderInstance {
    pub field: PolyVectorField,
    pub hyperplane: MultiPoly,
    pub point: Vec<Rational>,
    pub delta: Rational,
    pub degree: u32,
}

pub fn random_meander(rng: &mut ChaCha8Rng) -> MeanderInstance {
    loop {
        let d = rng.random_range(1..=3u32);
        let comps: Vec<MultiPoly> = (0..2).map(|_| random_multipoly(rng, 2, d, 0.4)).collect();
        if comps.iter().all(MultiPoly::is_zero) {
            continue;
        }
        let field = PolyVectorField::new(comps).expect("two components in two variables");
        let mut h = MultiPoly::from_terms(
            2,
            [
                (vec![1, 0], rational::int(rng.random_range(-3..=3))),
                (vec![0, 1], rational::int(rng.random_range(-3..=3))),
                (vec![0, 0], rational::int(rng.random_range(-3..=3))),
            ],
        );
        if h.degree().unwrap_or(0) == 0 {
            h = MultiPoly::var(2, 0);
        }
        let point: Vec<Rational> = (0..2).map(|_| rational::ratio(rng.random_range(-4..=4), 4)).collect();
        if field.eval(&point).iter().all(Zero::is_zero) {
            continue;
        }
        return MeanderInstance {
            degree: field.degree(),
            field,
            hyperplane: h,
            point,
            delta: rational::ratio(1, 8),
        };
    }
}

/// Chain length cap used by sweeps.
pub const MEANDER_CAP: usize = 6;

pub fn meander_instance(seed: u64, index: u64) -> Result<InstanceOutcome> {
    let mut rng = sample_stream(seed, index);
    let inst = random_meander(&mut rng);
    let chain = match chain_stabilize(&inst.hyperplane, &inst.field, MEANDER_CAP, DEFAULT_SLACK) {
        Ok(c) => c,
        Err(e @ Error::NoCertificate { .. }) => return Ok(InstanceOutcome::inconclusive(index, e)),
        Err(e) => return Err(e),
    };
    let d = inst.degree.max(1) as i64;
    let degrees_ok = chain
        .chain
        .iter()
        .enumerate()
        .all(|(i, u)| u.degree().is_none_or(|g| i64::from(g) <= 1 + i as i64 * (d - 1)));
    // halve the time span until the Picard enclosure closes
    let mut delta = inst.delta.clone();
    let cert = loop {
        match meandering_bound_from_chain(&inst.field, &chain, &inst.point, &delta) {
            Ok(c) => break c,
            Err(e @ Error::SpanTooLarge) if delta <= rational::ratio(1, 1024) => {
                return Ok(InstanceOutcome::inconclusive(index, e))
            }
            Err(Error::SpanTooLarge) => delta /= rational::int(2),
            Err(e) => return Err(e),
        }
    };
    let dt = rational::to_f64(&delta);
    let traj = integrate_field_span(&inst.field, &inst.point, -dt, dt, 1e-11)?;
    let count = count_sign_changes(|t| inst.hyperplane.eval_f64(&traj.at(t)), -dt, dt, 2000).count;
    let mut out = InstanceOutcome::new(index);
    out.bound = cert.bound.finite();
    out.oracle = Some(count as u64);
    out.identities_hold = chain.verify(&inst.field) && degrees_ok;
    out.detail = format!("degree {}, nu {}, delta {delta}", inst.degree, chain.nu);
    if cert.bound == ExtNat::Infinite {
        out.detail.push_str(", trajectory inside the hyperplane");
    }
    Ok(out)
}

/// Germ with a known quasi-homogeneous principal part `(x^a, y^b)` (or `x^a` in one
/// variable), perturbed by higher weighted-degree terms and an ideal-preserving mix.
pub struct GermInstance {
    pub germ: MapGerm,
    /// `a * b`.
    pub expected: usize,
    pub eps: Vec<Rational>,
    pub radius: f64,
}

/// Ball radius for preimage counts.
pub const PREIMAGE_RADIUS: f64 = 0.3;

/// Picks at most two monomials of weighted degree above 1 for weights `(1/a, 1/b)`.
fn higher_terms(rng: &mut ChaCha8Rng, a: u32, b: u32, n: usize) -> MultiPoly {
    let top = a.max(b) + 1;
    let candidates: Vec<crate::algebra::Monomial> = crate::algebra::multipoly::monomials_up_to(n, top)
        .into_iter()
        .filter(|m| {
            let (i, j) = (m.0[0], m.0.get(1).copied().unwrap_or(0));
            i * b + j * a > a * b
        })
        .collect();
    let mut p = MultiPoly::zero(n);
    for _ in 0..rng.random_range(0..=2) {
        let m = candidates[rng.random_range(0..candidates.len())].clone();
        p.add_term(m, rational::ratio(nonzero_int(rng, 2), 4));
    }
    p
}

pub fn random_germ(rng: &mut ChaCha8Rng) -> GermInstance {
    let k = |rng: &mut ChaCha8Rng| rational::int(rng.random_range(1..=3) * if rng.random_bool(0.5) { 1 } else { -1 });
    if rng.random_bool(0.25) {
        let a = rng.random_range(1..=8u32);
        let f = &MultiPoly::term(1, &[a], Rational::one()) + &higher_terms(rng, a, a, 1);
        let eps = vec![k(rng) / rational::pow(&rational::int(30), a)];
        return GermInstance {
            germ: MapGerm::new(vec![f]).expect("one component"),
            expected: a as usize,
            eps,
            radius: PREIMAGE_RADIUS,
        };
    }
    let (a, b) = loop {
        let a = rng.random_range(1..=8u32);
        let b = rng.random_range(1..=8u32);
        if a * b <= 8 {
            break (a, b);
        }
    };
    let f1 = &MultiPoly::term(2, &[a, 0], Rational::one()) + &higher_terms(rng, a, b, 2);
    let mut f2 = &MultiPoly::term(2, &[0, b], Rational::one()) + &higher_terms(rng, a, b, 2);
    // x ~ 10^-b and y ~ 10^-a, where the higher terms are relatively small
    let t = Rational::one() / (rational::pow(&rational::int(10), a * b) * rational::int(10));
    let mut eps = vec![k(rng) * &t, k(rng) * &t];
    if rng.random_bool(0.5) {
        let mix = MultiPoly::term(2, &[rng.random_range(0..=1), 0], rational::int(nonzero_int(rng, 2)));
        f2 = &f2 + &(&mix * &f1);
        eps[1] = &eps[1] + &mix.constant_term() * &eps[0];
    }
    GermInstance {
        germ: MapGerm::new(vec![f1, f2]).expect("two components in two variables"),
        expected: (a * b) as usize,
        eps,
        radius: PREIMAGE_RADIUS,
    }
}

/// Truncation cap for multiplicity sweeps.
pub const MULT_CAP: u32 = 12;

pub fn mult_instance(seed: u64, index: u64) -> Result<InstanceOutcome> {
    let mut rng = sample_stream(seed, index);
    let inst = random_germ(&mut rng);
    let dual = local_algebra_multiplicity(&inst.germ, MULT_CAP)?;
    let corank = corank_threshold_multiplicity(&inst.germ, MULT_CAP)?;
    let preimages = preimage_count(&inst.germ, &inst.eps, inst.radius)?;
    let mut out = InstanceOutcome::new(index);
    out.identities_hold =
        dual.multiplicity == corank.multiplicity && dual.multiplicity == inst.expected && preimages == dual.multiplicity;
    out.detail = format!(
        "mu {} (dual), {} (corank), {} preimages, expected {}",
        dual.multiplicity, corank.multiplicity, preimages, inst.expected
    );
    Ok(out)
}

/// Real-spectrum Euler operator of order at most `max_order` with rational characteristic numbers.
pub fn random_euler(rng: &mut ChaCha8Rng, max_order: usize) -> EulerOperatorSpec {
    let n = rng.random_range(1..=max_order);
    let mut roots: Vec<Rational> = Vec::with_capacity(n);
    while roots.len() < n {
        let r = if !roots.is_empty() && rng.random_bool(0.3) {
            roots[rng.random_range(0..roots.len())].clone()
        } else {
            rational::ratio(rng.random_range(-6..=6), rng.random_range(1..=3))
        };
        roots.push(r);
    }
    let chi = UniPoly::from_roots(&roots);
    EulerOperatorSpec::new((1..=n).map(|j| chi.coeff(n - j)).collect()).expect("order at least one")
}

/// Cells of the sign scan in the logarithmic chart.
pub const FUCHS_SCAN_CELLS: usize = 20_000;
/// Left end of the scanned interval `(FUCHS_EPS, 1)`.
pub const FUCHS_EPS: f64 = 1e-6;

pub fn fuchs_instance(seed: u64, index: u64) -> Result<InstanceOutcome> {
    let mut rng = sample_stream(seed, index);
    let spec = random_euler(&mut rng, 4);
    let spectrum = euler_solve(&spec)?;
    let pairs = spectrum.exact_pairs();
    let basis = spectrum.basis();
    let annihilated = basis.iter().all(|(l, k)| {
        let v = annihilator_check(&pairs, &PseudomonomialSum::from_real(&[(l.clone(), *k, Rational::one())]));
        v.in_space && v.annihilated()
    });
    let terms: Vec<(Rational, usize, Rational)> = basis
        .iter()
        .map(|(l, k)| (l.clone(), *k, random_rational(&mut rng, 5)))
        .collect();
    let f = PseudomonomialSum::from_real(&terms);
    let cert = roitman_zero_bound(&spec)?;
    let count = if f.is_zero() {
        0
    } else {
        count_sign_changes(|z| f.eval_z(Complex64::new(z, 0.0)).re, FUCHS_EPS.ln(), 0.0, FUCHS_SCAN_CELLS).count
    };
    let mut out = InstanceOutcome::new(index);
    out.bound = cert.bound.finite();
    out.oracle = Some(count as u64);
    out.identities_hold = annihilated;
    out.detail = format!("order {}", spec.order());
    Ok(out)
}

/// Hyperplanes sampled per curve instance.
pub const CURVE_HYPERPLANES: usize = 1000;

pub fn curve_instance(seed: u64, index: u64) -> Result<InstanceOutcome> {
    let mut rng = sample_stream(seed, index);
    let n = rng.random_range(2..=3usize);
    let degree = rng.random_range(1..=3usize);
    let curve = CurveSampler::random_trig(n, degree, seed, index);
    let cert = match hyperplane_rotation_bound(&curve) {
        Ok(c) => c,
        Err(e) => return Ok(InstanceOutcome::inconclusive(index, e)),
    };
    let hits = random_affine_hits(&curve, CURVE_HYPERPLANES, seed ^ index.rotate_left(32));
    let mut out = InstanceOutcome::new(index);
    out.bound = cert.bound.finite();
    out.oracle = Some(hits.max as u64);
    out.detail = format!("dimension {n}, trigonometric degree {degree}");
    Ok(out)
}

/// Runs instance `index` of `kind`.
pub fn run_instance(kind: CorpusKind, seed: u64, index: u64) -> Result<InstanceOutcome> {
    match kind {
        CorpusKind::Rolle => rolle_instance(seed, index),
        CorpusKind::Descartes => descartes_instance(seed, index),
        CorpusKind::Dlvp => dlvp_instance(seed, index),
        CorpusKind::Jensen => jensen_instance(seed, index),
        CorpusKind::Polya => polya_instance(seed, index),
        CorpusKind::Meander => meander_instance(seed, index),
        CorpusKind::Mult => mult_instance(seed, index),
        CorpusKind::Fuchs => fuchs_instance(seed, index),
        CorpusKind::Curve => curve_instance(seed, index),
    }
}
