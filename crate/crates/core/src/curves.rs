//! Rotation and oscillation of parametrized curves in `R^n`.

use std::f64::consts::{PI, TAU};

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::algebra::rational;
use crate::certificate::{BoundCertificate, ExtNat};
use crate::error::{Error, Result};
use crate::oracle::hyperplane::{random_hyperplane_hits, sample_stream, CURVE_GRID};

/// `cos_coef * cos(freq t) + sin_coef * sin(freq t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub freq: f64,
    #[serde(rename = "cos")]
    pub cos_coef: f64,
    #[serde(rename = "sin")]
    pub sin_coef: f64,
}

/// A coordinate function: polynomial part (ascending powers of `t`) plus harmonics.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Coordinate {
    #[serde(default)]
    pub poly: Vec<f64>,
    #[serde(default)]
    pub trig: Vec<Harmonic>,
}

impl Coordinate {
    pub fn poly(coeffs: &[f64]) -> Self {
        Coordinate {
            poly: coeffs.to_vec(),
            trig: Vec::new(),
        }
    }

    pub fn harmonic(freq: f64, cos_coef: f64, sin_coef: f64) -> Self {
        Coordinate {
            poly: Vec::new(),
            trig: vec![Harmonic { freq, cos_coef, sin_coef }],
        }
    }

    pub fn derivative(&self) -> Coordinate {
        Coordinate {
            poly: self
                .poly
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
            trig: self
                .trig
                .iter()
                .map(|h| Harmonic {
                    freq: h.freq,
                    cos_coef: h.sin_coef * h.freq,
                    sin_coef: -h.cos_coef * h.freq,
                })
                .collect(),
        }
    }

    /// `k`-th derivative at `t`.
    pub fn eval_derivative(&self, k: usize, t: f64) -> f64 {
        let mut poly = 0.0;
        for (j, c) in self.poly.iter().enumerate().skip(k).rev() {
            let falling: f64 = ((j - k + 1)..=j).map(|m| m as f64).product();
            poly = poly * t + c * falling;
        }
        let trig: f64 = self
            .trig
            .iter()
            .map(|h| {
                let w = h.freq;
                let phase = (w * t) + (k as f64) * PI / 2.0;
                w.powi(k as i32) * (h.cos_coef * phase.cos() + h.sin_coef * phase.sin())
            })
            .sum();
        poly + trig
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_derivative(0, t)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSampler {
    coords: Vec<Coordinate>,
    t0: f64,
    t1: f64,
    #[serde(default)]
    closed: bool,
}

const CLOSE_TOL: f64 = 1e-9;

impl CurveSampler {
    pub fn new(coords: Vec<Coordinate>, t0: f64, t1: f64, closed: bool) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("curve needs at least one coordinate".into()));
        }
        if !t0.is_finite() || !t1.is_finite() || t0 >= t1 {
            return Err(Error::InvalidInterval(format!("[{t0}, {t1}]")));
        }
        let c = CurveSampler { coords, t0, t1, closed };
        if closed {
            for k in 0..2 {
                let a = c.derivative_at(k, t0);
                let b = c.derivative_at(k, t1);
                let scale = norm(&a).max(1.0);
                if dist(&a, &b) > CLOSE_TOL * scale {
                    return Err(Error::InvalidInput("closed curve endpoints do not match".into()));
                }
            }
        }
        Ok(c)
    }

    pub fn ellipse(a: f64, b: f64) -> Self {
        Self::new(
            vec![Coordinate::harmonic(1.0, a, 0.0), Coordinate::harmonic(1.0, 0.0, b)],
            0.0,
            TAU,
            true,
        )
        .expect("ellipse is closed")
    }

    pub fn circle(r: f64) -> Self {
        Self::ellipse(r, r)
    }

    /// `(cos t, sin t, c t)` on `[t0, t1]`.
    pub fn helix(c: f64, t0: f64, t1: f64) -> Result<Self> {
        Self::new(
            vec![
                Coordinate::harmonic(1.0, 1.0, 0.0),
                Coordinate::harmonic(1.0, 0.0, 1.0),
                Coordinate::poly(&[0.0, c]),
            ],
            t0,
            t1,
            false,
        )
    }

    /// `p + t (q - p)` on `[0, 1]`.
    pub fn segment(p: &[f64], q: &[f64]) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::DimensionMismatch {
                expected: p.len(),
                got: q.len(),
            });
        }
        Self::new(
            p.iter().zip(q).map(|(a, b)| Coordinate::poly(&[*a, b - a])).collect(),
            0.0,
            1.0,
            false,
        )
    }

    /// Closed trigonometric curve in `R^n` with standard normal coefficients up to `degree`,
    /// plus a normal constant offset.
    pub fn random_trig(n: usize, degree: usize, seed: u64, index: u64) -> Self {
        let mut rng = sample_stream(seed, index);
        let coords = (0..n)
            .map(|_| {
                let mut c = Coordinate::poly(&[StandardNormal.sample(&mut rng)]);
                for k in 1..=degree {
                    c.trig.push(Harmonic {
                        freq: k as f64,
                        cos_coef: StandardNormal.sample(&mut rng),
                        sin_coef: StandardNormal.sample(&mut rng),
                    });
                }
                c
            })
            .collect();
        Self::new(coords, 0.0, TAU, true).expect("trigonometric curves close up")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.t0, self.t1)
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.coords
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        self.derivative_at(0, t)
    }

    pub fn derivative_at(&self, k: usize, t: f64) -> Vec<f64> {
        self.coords.iter().map(|c| c.eval_derivative(k, t)).collect()
    }

    /// The velocity hodograph `t -> x'(t)`.
    pub fn derivative_curve(&self) -> CurveSampler {
        CurveSampler {
            coords: self.coords.iter().map(Coordinate::derivative).collect(),
            ..*self
        }
    }

    pub fn with_interval(&self, t0: f64, t1: f64) -> Result<Self> {
        Self::new(self.coords.clone(), t0, t1, false)
    }

    /// `cells + 1` equally spaced points including both endpoints.
    pub fn grid(&self, cells: usize) -> Vec<Vec<f64>> {
        (0..=cells)
            .map(|k| self.eval(self.t0 + (self.t1 - self.t0) * k as f64 / cells as f64))
            .collect()
    }

    /// Smallest sampled speed relative to the largest.
    pub fn check_regular(&self) -> Result<()> {
        let speeds: Vec<f64> = self
            .derivative_curve()
            .grid(CURVE_GRID)
            .iter()
            .map(|v| norm(v))
            .collect();
        let max = speeds.iter().copied().fold(0.0, f64::max);
        let min = speeds.iter().copied().fold(f64::INFINITY, f64::min);
        if max == 0.0 || min <= 1e-9 * max {
            return Err(Error::InvalidInput("velocity vanishes on the interval".into()));
        }
        Ok(())
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Angle between the directions of `a` and `b`, in `[0, pi]`.
pub fn spherical_distance(a: &[f64], b: &[f64]) -> f64 {
    let c = dot(a, b) / (norm(a) * norm(b));
    c.clamp(-1.0, 1.0).acos()
}

const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

fn gauss_legendre(f: &mut impl FnMut(f64) -> Result<f64>, a: f64, b: f64, panels: usize) -> Result<f64> {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + h * (p as f64 + 0.5);
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            total += w * f(mid + 0.5 * h * x)?;
        }
    }
    Ok(total * 0.5 * h)
}

pub const QUAD_TOL: f64 = 1e-6;
const QUAD_START: usize = 8;
const QUAD_MAX: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub error_estimate: f64,
    pub panels: usize,
    pub converged: bool,
}

/// Composite Gauss-Legendre, doubling panels until three levels agree.
pub fn integrate(mut f: impl FnMut(f64) -> Result<f64>, a: f64, b: f64) -> Result<Quadrature> {
    let mut panels = QUAD_START;
    let mut history: Vec<f64> = Vec::new();
    loop {
        let v = gauss_legendre(&mut f, a, b, panels)?;
        history.push(v);
        let k = history.len();
        let close = |x: f64, y: f64| (x - y).abs() <= QUAD_TOL * x.abs().max(y.abs()) + 1e-14;
        let converged = k >= 3 && close(history[k - 1], history[k - 2]) && close(history[k - 2], history[k - 3]);
        if converged || panels >= QUAD_MAX {
            return Ok(Quadrature {
                value: v,
                error_estimate: if k >= 2 { (history[k - 1] - history[k - 2]).abs() } else { f64::INFINITY },
                panels,
                converged,
            });
        }
        panels *= 2;
    }
}

pub const ORIGIN_TOL: f64 = 1e-9;

/// Length of the radial projection `t -> x(t)/|x(t)|`, radians.
pub fn spherical_length(curve: &CurveSampler) -> Result<Quadrature> {
    let pts = curve.grid(CURVE_GRID);
    let max = pts.iter().map(|p| norm(p)).fold(0.0, f64::max);
    let min = pts.iter().map(|p| norm(p)).fold(f64::INFINITY, f64::min);
    if min <= ORIGIN_TOL * max.max(1.0) {
        return Err(Error::OriginProximity { min_norm: min });
    }
    let (a, b) = curve.interval();
    integrate(
        |t| {
            let x = curve.eval(t);
            let v = curve.derivative_at(1, t);
            let r = norm(&x);
            if r <= ORIGIN_TOL * max.max(1.0) {
                return Err(Error::OriginProximity { min_norm: r });
            }
            let radial = dot(&v, &x) / (r * r);
            let tangential: f64 = v
                .iter()
                .zip(&x)
                .map(|(vi, xi)| (vi - radial * xi).powi(2))
                .sum::<f64>()
                .sqrt();
            Ok(tangential / r)
        },
        a,
        b,
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationReport {
    pub curve_length: f64,
    pub velocity_length: f64,
    pub distance_start: f64,
    pub distance_end: f64,
    /// Right-hand side of the comparison.
    pub bound: f64,
    pub closed: bool,
    pub holds: bool,
}

/// `|S gamma| <= |S gamma'| - dist(S gamma, S gamma')` between the endpoints;
/// for closed curves `|S gamma| <= |S gamma'|`.
pub fn rolle_rn_check(curve: &CurveSampler) -> Result<RotationReport> {
    let l = spherical_length(curve)?;
    let dl = spherical_length(&curve.derivative_curve())?;
    let (a, b) = curve.interval();
    let distance_start = spherical_distance(&curve.eval(a), &curve.derivative_at(1, a));
    let distance_end = spherical_distance(&curve.eval(b), &curve.derivative_at(1, b));
    let bound = if curve.is_closed() {
        dl.value
    } else {
        dl.value - (distance_end - distance_start)
    };
    let tol = QUAD_TOL * dl.value.max(1.0) + l.error_estimate + dl.error_estimate;
    Ok(RotationReport {
        curve_length: l.value,
        velocity_length: dl.value,
        distance_start,
        distance_end,
        bound,
        closed: curve.is_closed(),
        holds: l.value <= bound + tol,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrenetData {
    /// `V_0 = 1, V_1, ..., V_n`; `V_n` carries the orientation sign.
    pub gram: Vec<f64>,
    /// `kappa_1, ..., kappa_{n-1}`.
    pub curvatures: Vec<f64>,
}

fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .expect("nonempty");
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            let f = row[c] / pivot[c];
            for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= f * p;
            }
        }
    }
    d
}

/// Relative threshold below which a Gram volume counts as degenerate.
pub const FRAME_TOL: f64 = 1e-10;

/// Frenet curvatures from Gram determinants of `x', ..., x^(n)`.
pub fn frenet_curvatures(curve: &CurveSampler, t: f64) -> Result<FrenetData> {
    let n = curve.dim();
    let vs: Vec<Vec<f64>> = (1..=n).map(|k| curve.derivative_at(k, t)).collect();
    let mut gram = vec![1.0];
    for k in 1..=n {
        let v = if k == n {
            det(vs.clone())
        } else {
            let g: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| dot(&vs[i], &vs[j])).collect()).collect();
            det(g).max(0.0).sqrt()
        };
        gram.push(v);
    }
    let mut curvatures = Vec::with_capacity(n.saturating_sub(1));
    let mut hadamard = 1.0;
    for k in 1..n {
        hadamard *= norm(&vs[k - 1]);
        if gram[k].abs() <= FRAME_TOL * hadamard {
            return Err(Error::DegenerateFrame { t });
        }
        curvatures.push(gram[k - 1] * gram[k + 1] / (gram[k] * gram[k] * gram[1]));
    }
    if n == 1 && gram[1] == 0.0 {
        return Err(Error::DegenerateFrame { t });
    }
    Ok(FrenetData { gram, curvatures })
}

fn speed(curve: &CurveSampler, t: f64) -> f64 {
    norm(&curve.derivative_at(1, t))
}

/// Sign changes of the last curvature on the scan grid.
fn hyperinflections(curve: &CurveSampler) -> Result<(usize, usize, Vec<f64>)> {
    let n = curve.dim();
    let (a, b) = curve.interval();
    let mut last = 0.0f64;
    let mut changes = 0;
    let mut degenerate = 0;
    let mut values = Vec::with_capacity(CURVE_GRID + 1);
    for k in 0..=CURVE_GRID {
        let t = a + (b - a) * k as f64 / CURVE_GRID as f64;
        match frenet_curvatures(curve, t) {
            Ok(f) => {
                let v = f.curvatures[n - 2];
                values.push(v);
                if v != 0.0 && last != 0.0 && v.signum() != last.signum() {
                    changes += 1;
                }
                if v != 0.0 {
                    last = v;
                }
            }
            Err(_) => degenerate += 1,
        }
    }
    Ok((changes, degenerate, values))
}

/// `#{gamma meets Pi} <= n + (4/pi) sum K_i + #{kappa_{n-1} = 0}` over all affine
/// hyperplanes; the `n` term is dropped for closed curves.
pub fn hyperplane_rotation_bound(curve: &CurveSampler) -> Result<BoundCertificate> {
    let n = curve.dim();
    if n < 2 {
        return Err(Error::InvalidInput("curve must live in dimension at least 2".into()));
    }
    curve.check_regular()?;
    let (a, b) = curve.interval();
    let mut c = BoundCertificate::new("frenet_rotation", "rotation bounds through integral Frenet curvatures");
    let mut sum = 0.0;
    for i in 0..n - 1 {
        let k = integrate(
            |t| Ok(frenet_curvatures(curve, t)?.curvatures[i].abs() * speed(curve, t)),
            a,
            b,
        )?;
        sum += k.value + k.error_estimate;
        c.quantity(format!("integral_curvature_{}", i + 1), &rational::from_f64(k.value));
    }
    let (inflections, degenerate, _) = hyperinflections(curve)?;
    if degenerate > CURVE_GRID / 100 {
        return Err(Error::DegenerateFrame { t: f64::NAN });
    }
    c.quantity("hyperinflections_sampled", &rational::int(inflections as i64));
    let base = if curve.is_closed() { 0.0 } else { n as f64 };
    let total = base + 4.0 / PI * sum + inflections as f64;
    c.quantity("bound_real", &rational::from_f64(total));
    c.step("integral curvatures by adaptive quadrature of |kappa_i| ds");
    c.step("hyperinflections by sign-change scan; tangential zeros may be missed");
    if curve.is_closed() {
        c.step("closed curve: the dimension term is dropped");
    }
    c.bound = ExtNat::Finite((total * (1.0 + 1e-9)).floor() as u64);
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapiroVerdict {
    pub integral: f64,
    pub allowance: f64,
    /// `1 / (n sqrt 2)`.
    pub threshold: f64,
    pub certified: bool,
}

/// Non-oscillation test for hyperconvex curves: `int sqrt(sum kappa_i^2) ds < 1/(n sqrt 2)`.
pub fn shapiro_certificate(curve: &CurveSampler) -> Result<ShapiroVerdict> {
    let n = curve.dim();
    if n < 2 {
        return Err(Error::InvalidInput("curve must live in dimension at least 2".into()));
    }
    let (a, b) = curve.interval();
    let (changes, degenerate, values) = hyperinflections(curve).map_err(|_| Error::NotHyperconvex)?;
    let positive = values.iter().all(|&v| v > 0.0);
    let negative = values.iter().all(|&v| v < 0.0);
    if degenerate > 0 || changes > 0 || !(positive || negative) {
        return Err(Error::NotHyperconvex);
    }
    let q = integrate(
        |t| {
            let f = frenet_curvatures(curve, t)?;
            Ok(f.curvatures.iter().map(|k| k * k).sum::<f64>().sqrt() * speed(curve, t))
        },
        a,
        b,
    )?;
    let allowance = q.error_estimate + QUAD_TOL * q.value.abs();
    let threshold = 1.0 / (n as f64 * 2f64.sqrt());
    Ok(ShapiroVerdict {
        integral: q.value,
        allowance,
        threshold,
        certified: q.value + allowance < threshold,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuffonEstimate {
    pub estimate: f64,
    pub std_err: f64,
    /// 95% normal-approximation interval.
    pub ci: (f64, f64),
    pub samples: usize,
    pub seed: u64,
}

/// `|S gamma| = pi * E #{gamma meets a random linear hyperplane}`.
pub fn buffon_estimate(curve: &CurveSampler, samples: usize, seed: u64) -> BuffonEstimate {
    let hits = random_hyperplane_hits(curve, samples, seed);
    let estimate = PI * hits.mean;
    let std_err = PI * hits.std_err;
    BuffonEstimate {
        estimate,
        std_err,
        ci: (estimate - 1.96 * std_err, estimate + 1.96 * std_err),
        samples,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spherical_lengths() {
        assert!((spherical_length(&CurveSampler::circle(1.0)).unwrap().value - TAU).abs() < 1e-9);
        let ray = CurveSampler::segment(&[1.0, 0.0], &[2.0, 0.0]).unwrap();
        assert!(spherical_length(&ray).unwrap().value.abs() < 1e-12);
        assert!((spherical_length(&CurveSampler::ellipse(2.0, 1.0)).unwrap().value - TAU).abs() < 1e-6);
        let through = CurveSampler::segment(&[-1.0, 0.0], &[1.0, 0.0]).unwrap();
        assert!(matches!(spherical_length(&through), Err(Error::OriginProximity { .. })));
    }

    #[test]
    fn rolle_in_space() {
        let r = rolle_rn_check(&CurveSampler::circle(1.0)).unwrap();
        assert!(r.holds && (r.curve_length - r.bound).abs() < 1e-9);
        let h = CurveSampler::helix(1.0, 0.0, TAU).unwrap();
        assert!(rolle_rn_check(&h).unwrap().holds);
    }

    #[test]
    fn frenet_examples() {
        let f = frenet_curvatures(&CurveSampler::circle(1.0), 0.3).unwrap();
        assert!((f.curvatures[0] - 1.0).abs() < 1e-12);
        let c = 0.5;
        let h = CurveSampler::helix(c, 0.0, 1.0).unwrap();
        let f = frenet_curvatures(&h, 0.7).unwrap();
        assert!((f.curvatures[0] - 1.0 / (1.0 + c * c)).abs() < 1e-12);
        assert!((f.curvatures[1] - c / (1.0 + c * c)).abs() < 1e-12);
        let line = CurveSampler::segment(&[0.0, 0.0, 0.0], &[1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(frenet_curvatures(&line, 0.5), Err(Error::DegenerateFrame { .. })));
    }

    #[test]
    fn rotation_bounds() {
        let c = hyperplane_rotation_bound(&CurveSampler::circle(1.0)).unwrap();
        assert_eq!(c.bound.finite(), Some(8));
        let s = CurveSampler::segment(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(hyperplane_rotation_bound(&s).unwrap().bound.finite(), Some(2));
    }

    #[test]
    fn shapiro_examples() {
        let short = CurveSampler::helix(1.0, 0.0, 0.1).unwrap();
        let v = shapiro_certificate(&short).unwrap();
        assert!(v.certified);
        assert!((v.integral - 0.1).abs() < 1e-9);
        let long = CurveSampler::helix(1.0, 0.0, TAU).unwrap();
        assert!(!shapiro_certificate(&long).unwrap().certified);
        let s = CurveSampler::segment(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(shapiro_certificate(&s).err(), Some(Error::NotHyperconvex));
    }

    #[test]
    fn buffon_on_circles() {
        let e = buffon_estimate(&CurveSampler::circle(1.0), 500, 11);
        assert!((e.estimate - TAU).abs() < 1e-12 && e.std_err == 0.0);
        assert_eq!(buffon_estimate(&CurveSampler::ellipse(2.0, 1.0), 100, 5), buffon_estimate(&CurveSampler::ellipse(2.0, 1.0), 100, 5));
    }
}
