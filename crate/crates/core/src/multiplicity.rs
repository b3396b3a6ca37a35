//! Multiplicity of isolated zeros of polynomial map germs at the origin.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::jet::jet_space_dim;
use crate::algebra::linalg::{self, Matrix};
use crate::algebra::multipoly::{monomials_up_to, Monomial};
use crate::algebra::rational::{self, Rational};
use crate::algebra::{MultiPoly, UniPoly};
use crate::error::{Error, Result};
use crate::oracle::polynomial_roots;
use crate::wronskian::poly_determinant;

/// Order of vanishing at 0 of a coefficient list (`coeffs[k]` multiplies `z^k`).
pub fn univariate_mult(coeffs: &[Rational]) -> Result<usize> {
    coeffs
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::TruncationOrder { order: coeffs.len() })
}

pub fn univariate_mult_poly(f: &UniPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    univariate_mult(f.coeffs())
}

/// `F = (f_1, ..., f_n)` with `F(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapGerm {
    components: Vec<MultiPoly>,
}

impl MapGerm {
    pub fn new(components: Vec<MultiPoly>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::InvalidInput("germ needs at least one component".into()));
        }
        if let Some(c) = components.iter().find(|c| c.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: c.nvars(),
            });
        }
        if components.iter().any(|c| !c.constant_term().is_zero()) {
            return Err(Error::InvalidInput("components must vanish at the origin".into()));
        }
        Ok(MapGerm { components })
    }

    pub fn parse(components: &[&str]) -> Result<Self> {
        let names = crate::algebra::multipoly::default_var_names(components.len());
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::new(
            components
                .iter()
                .map(|c| MultiPoly::parse(c, &names))
                .collect::<Result<_>>()?,
        )
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }
}

/// Matrix of `(a_1, ..., a_n) -> j^k(sum a_i f_i)` in the graded-lex basis of `J_k`:
/// one row per monomial of degree `<= k`, one column per pair `(i, monomial)`.
pub fn jet_matrix(germ: &MapGerm, k: u32) -> Matrix {
    let n = germ.dim();
    let basis = monomials_up_to(n, k);
    let index = |m: &Monomial| basis.binary_search(m).ok();
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for f in germ.components() {
        for m in &basis {
            let mut col = vec![Rational::zero(); basis.len()];
            for (e, c) in f.terms() {
                let prod = e.mul(m);
                if prod.degree() <= k {
                    if let Some(r) = index(&prod) {
                        col[r] += c;
                    }
                }
            }
            cols.push(col);
        }
    }
    linalg::transpose(&cols)
}

/// `dim J_k - rank` of the jet matrix.
pub fn jet_corank(germ: &MapGerm, k: u32) -> usize {
    let m = jet_matrix(germ, k);
    jet_space_dim(germ.dim(), k) - linalg::rank(&m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicityMethod {
    LocalAlgebra,
    CorankThreshold,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub multiplicity: usize,
    pub method: MultiplicityMethod,
    /// Dimension of the order-`k` dual space, `k = 0, 1, ...`.
    pub history: Vec<usize>,
}

/// Dimension of the local algebra by the dual-space method: stops at the first
/// order where the dual space does not grow.
pub fn local_algebra_multiplicity(germ: &MapGerm, cap: u32) -> Result<MultiplicityReport> {
    let mut history: Vec<usize> = Vec::new();
    for k in 0..=cap {
        let d = jet_corank(germ, k);
        if history.last() == Some(&d) {
            history.push(d);
            return Ok(MultiplicityReport {
                multiplicity: d,
                method: MultiplicityMethod::LocalAlgebra,
                history,
            });
        }
        history.push(d);
    }
    Err(Error::MultiplicityCap { cap: cap as usize })
}

/// The smallest `k` with `corank(k) <= k`.
pub fn corank_threshold_multiplicity(germ: &MapGerm, cap: u32) -> Result<MultiplicityReport> {
    let mut history = Vec::new();
    for k in 0..=cap {
        let c = jet_corank(germ, k);
        history.push(c);
        if c <= k as usize {
            return Ok(MultiplicityReport {
                multiplicity: k as usize,
                method: MultiplicityMethod::CorankThreshold,
                history,
            });
        }
    }
    Err(Error::MultiplicityCap { cap: cap as usize })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorankTest {
    pub order: u32,
    pub jet_dim: usize,
    pub corank: usize,
    /// `corank <= k`: the multiplicity is at most `k`.
    pub bounded: bool,
}

pub fn corank_jet_test(germ: &MapGerm, k: u32) -> CorankTest {
    let corank = jet_corank(germ, k);
    CorankTest {
        order: k,
        jet_dim: jet_space_dim(germ.dim(), k),
        corank,
        bounded: corank <= k as usize,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorSignal {
    /// Every minor of size `dim J_k - k` vanishes (multiplicity exceeds `k`).
    pub all_minors_vanish: bool,
    /// `|det|` of a greedily pivoted minor of that size, 0 when they all vanish.
    #[serde(with = "rational::serde_str")]
    pub magnitude: Rational,
    pub minor_size: usize,
}

/// Minors of the jet matrix, in the coefficient basis.
pub fn multiplicity_operator_signal(germ: &MapGerm, k: u32) -> OperatorSignal {
    let m = jet_matrix(germ, k);
    let dim = jet_space_dim(germ.dim(), k);
    let size = dim.saturating_sub(k as usize);
    let pivots = linalg::pivot_positions(&m);
    if pivots.len() < size {
        return OperatorSignal {
            all_minors_vanish: true,
            magnitude: Rational::zero(),
            minor_size: size,
        };
    }
    let rows: Vec<usize> = pivots[..size].iter().map(|p| p.0).collect();
    let cols: Vec<usize> = pivots[..size].iter().map(|p| p.1).collect();
    let det = linalg::determinant(&linalg::submatrix(&m, &rows, &cols));
    OperatorSignal {
        all_minors_vanish: false,
        magnitude: det.abs(),
        minor_size: size,
    }
}

/// `f(x + c y, y)` for a germ in two variables.
/// Coordinate change from a chart back to the original variables.
type ChartMap = Box<dyn Fn(Complex64, Complex64) -> (Complex64, Complex64)>;

fn shear(f: &MultiPoly, c: &Rational) -> MultiPoly {
    let x = &MultiPoly::var(2, 0) + &MultiPoly::var(2, 1).scale(c);
    let y = MultiPoly::var(2, 1);
    let mut out = MultiPoly::zero(2);
    for (m, a) in f.terms() {
        let t = &x.pow(m.0[0]) * &y.pow(m.0[1]);
        out = &out + &t.scale(a);
    }
    out
}

/// Coefficients in `y` (each a polynomial in `x`) of a two-variable polynomial.
fn y_coefficients(f: &MultiPoly) -> Vec<UniPoly> {
    let d = f.terms().map(|(m, _)| m.0[1] as usize).max().unwrap_or(0);
    let mut cs = vec![vec![Rational::zero(); f.degree().unwrap_or(0) as usize + 1]; d + 1];
    for (m, a) in f.terms() {
        cs[m.0[1] as usize][m.0[0] as usize] += a;
    }
    cs.into_iter().map(UniPoly::new).collect()
}

/// Sylvester resultant in `y`.
fn resultant_y(f: &MultiPoly, g: &MultiPoly) -> UniPoly {
    let a = y_coefficients(f);
    let b = y_coefficients(g);
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return UniPoly::one();
    }
    let mut s = vec![vec![UniPoly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    poly_determinant(&s)
}

/// `f(y, x)`.
fn swap(f: &MultiPoly) -> MultiPoly {
    MultiPoly::from_terms(2, f.terms().map(|(m, a)| (vec![m.0[1], m.0[0]], a.clone())))
}

/// Approximate common zeros with coordinates below `wide`, via the resultant in `y`;
/// `None` when the resultant vanishes identically.
fn eliminate_y(fs: &[MultiPoly], wide: f64) -> Option<Vec<(Complex64, Complex64)>> {
    let res = resultant_y(&fs[0], &fs[1]);
    if res.is_zero() {
        return None;
    }
    let (solve, check) = if y_coefficients(&fs[0]).len() > 1 { (&fs[0], &fs[1]) } else { (&fs[1], &fs[0]) };
    let xc: Vec<Complex64> = res.coeffs().iter().map(|a| Complex64::new(rational::to_f64(a), 0.0)).collect();
    let mut out = Vec::new();
    for x in polynomial_roots(&xc).into_iter().filter(|x| x.norm() < wide) {
        let ys: Vec<Complex64> = y_coefficients(solve).iter().map(|p| p.eval_complex(x)).collect();
        for y in polynomial_roots(&ys) {
            if y.norm() >= wide {
                continue;
            }
            let (r, s) = eval_c(check, x, y);
            if r.norm() <= 1e-6 * s.max(f64::MIN_POSITIVE) {
                out.push((x, y));
            }
        }
    }
    Some(out)
}

/// Newton iteration for a square system in two variables; `None` unless it converges.
fn newton_polish(gs: &[MultiPoly], x: Complex64, y: Complex64) -> Option<(Complex64, Complex64)> {
    let jac: Vec<[MultiPoly; 2]> = gs.iter().map(|g| [g.derivative(0), g.derivative(1)]).collect();
    let (mut x, mut y) = (x, y);
    for _ in 0..50 {
        let (f0, _) = eval_c(&gs[0], x, y);
        let (f1, _) = eval_c(&gs[1], x, y);
        let (a, b) = (eval_c(&jac[0][0], x, y).0, eval_c(&jac[0][1], x, y).0);
        let (c, d) = (eval_c(&jac[1][0], x, y).0, eval_c(&jac[1][1], x, y).0);
        let det = a * d - b * c;
        if det.norm() == 0.0 {
            return None;
        }
        let dx = (d * f0 - b * f1) / det;
        let dy = (a * f1 - c * f0) / det;
        x -= dx;
        y -= dy;
        let size = x.norm().max(y.norm());
        if dx.norm().max(dy.norm()) <= 1e-14 * size.max(f64::MIN_POSITIVE) {
            return Some((x, y));
        }
    }
    None
}

fn eval_c(f: &MultiPoly, x: Complex64, y: Complex64) -> (Complex64, f64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (m, a) in f.terms() {
        let t = x.powu(m.0[0]) * y.powu(m.0[1]) * rational::to_f64(a);
        scale += t.norm();
        v += t;
    }
    (v, scale)
}

/// Solutions of `F = eps` in the ball of radius `rho`, for germs in one or two variables.
pub fn preimage_count(germ: &MapGerm, eps: &[Rational], rho: f64) -> Result<usize> {
    if eps.len() != germ.dim() {
        return Err(Error::DimensionMismatch {
            expected: germ.dim(),
            got: eps.len(),
        });
    }
    match germ.dim() {
        1 => {
            let f = germ.components()[0]
                .to_unipoly()
                .ok_or_else(|| Error::InvalidInput("not univariate".into()))?;
            let g = &f - &UniPoly::constant(eps[0].clone());
            if g.is_zero() {
                return Err(Error::IdenticallyZero);
            }
            let c: Vec<Complex64> = g.coeffs().iter().map(|a| Complex64::new(rational::to_f64(a), 0.0)).collect();
            Ok(polynomial_roots(&c).iter().filter(|z| z.norm() < rho).count())
        }
        2 => {
            let originals: Vec<MultiPoly> = germ
                .components()
                .iter()
                .zip(eps)
                .map(|(f, e)| f - &MultiPoly::constant(2, e.clone()))
                .collect();
            let c = rational::ratio(3, 7);
            let cf = rational::to_f64(&c);
            // eliminate y, eliminate x, and eliminate y after a shear; union of Newton-polished solutions
            let charts: [(Vec<MultiPoly>, ChartMap); 3] = [
                (originals.clone(), Box::new(|x, y| (x, y))),
                (originals.iter().map(swap).collect(), Box::new(|x, y| (y, x))),
                (originals.iter().map(|f| shear(f, &c)).collect(), Box::new(move |x, y| (x + y * cf, y))),
            ];
            let mut found: Vec<(Complex64, Complex64)> = Vec::new();
            let mut eliminated = false;
            for (fs, back) in &charts {
                let Some(candidates) = eliminate_y(fs, rho * 2.0) else {
                    continue;
                };
                eliminated = true;
                for (x, y) in candidates {
                    let (x0, y0) = back(x, y);
                    let Some((xo, yo)) = newton_polish(&originals, x0, y0) else {
                        continue;
                    };
                    if (xo.norm_sqr() + yo.norm_sqr()).sqrt() >= rho {
                        continue;
                    }
                    let close = found
                        .iter()
                        .any(|(a, b)| ((a - xo).norm_sqr() + (b - yo).norm_sqr()).sqrt() < 1e-10 * rho);
                    if !close {
                        found.push((xo, yo));
                    }
                }
            }
            if !eliminated {
                return Err(Error::InvalidInput("components share a factor".into()));
            }
            Ok(found.len())
        }
        _ => Err(Error::InvalidInput("preimage counting supports one or two variables".into())),
    }
}
