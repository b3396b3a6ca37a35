//! Argument variation along closed contours: winding numbers and absolute variation.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::sampler::AnalyticSampler;
use crate::error::{Error, Result};

/// Closed, positively oriented contour.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Contour {
    Circle { center: [f64; 2], radius: f64 },
    /// Vertices in counterclockwise order.
    Polygon { vertices: Vec<[f64; 2]> },
}

impl Contour {
    pub fn circle(center: Complex64, radius: f64) -> Self {
        Contour::Circle {
            center: [center.re, center.im],
            radius,
        }
    }

    pub fn unit_circle() -> Self {
        Self::circle(Complex64::new(0.0, 0.0), 1.0)
    }

    /// Point at parameter `s` in `[0, 1)`.
    pub fn point(&self, s: f64) -> Complex64 {
        match self {
            Contour::Circle { center, radius } => {
                Complex64::new(center[0], center[1]) + Complex64::from_polar(*radius, TAU * s)
            }
            Contour::Polygon { vertices } => {
                let lens = self.edge_lengths();
                let total: f64 = lens.iter().sum();
                let mut target = s.rem_euclid(1.0) * total;
                for (i, &l) in lens.iter().enumerate() {
                    if target <= l || i == lens.len() - 1 {
                        let a = vertices[i];
                        let b = vertices[(i + 1) % vertices.len()];
                        let u = if l > 0.0 { (target / l).min(1.0) } else { 0.0 };
                        return Complex64::new(a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1]));
                    }
                    target -= l;
                }
                unreachable!("polygon has at least one edge")
            }
        }
    }

    fn edge_lengths(&self) -> Vec<f64> {
        match self {
            Contour::Circle { .. } => Vec::new(),
            Contour::Polygon { vertices } => (0..vertices.len())
                .map(|i| {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % vertices.len()];
                    (b[0] - a[0]).hypot(b[1] - a[1])
                })
                .collect(),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Contour::Circle { radius, .. } => TAU * radius,
            Contour::Polygon { .. } => self.edge_lengths().iter().sum(),
        }
    }

    /// Largest distance from the origin to a contour point.
    pub fn max_abs(&self) -> f64 {
        match self {
            Contour::Circle { center, radius } => center[0].hypot(center[1]) + radius,
            Contour::Polygon { vertices } => vertices
                .iter()
                .map(|v| v[0].hypot(v[1]))
                .fold(0.0, f64::max),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Contour::Circle { radius, .. } if *radius > 0.0 && radius.is_finite() => Ok(()),
            Contour::Circle { .. } => Err(Error::InvalidInput("circle radius must be positive".into())),
            Contour::Polygon { vertices } if vertices.len() >= 3 => Ok(()),
            Contour::Polygon { .. } => Err(Error::InvalidInput("polygon needs at least 3 vertices".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingResult {
    pub winding: i64,
    /// Absolute variation of the argument along the contour, radians.
    pub total_variation: f64,
    pub min_modulus_on_contour: f64,
    pub samples: usize,
    /// Three successive refinements agreed within the tolerance.
    pub converged: bool,
}

pub const START_SAMPLES: usize = 256;
pub const MAX_SAMPLES: usize = 1 << 22;
/// Agreement required between successive refinement levels (relative to `max(1, V)`).
pub const VARIATION_TOL: f64 = 1e-6;

/// Winding number and absolute argument variation of `f` along `contour`.
///
/// The sample count doubles until every phase step is below `pi/2` and three
/// successive levels agree on the variation.
pub fn phase_variation(f: &AnalyticSampler, contour: &Contour) -> Result<WindingResult> {
    contour.validate()?;
    let mut n = START_SAMPLES;
    let mut vals: Vec<Complex64> = (0..n).map(|k| f.eval(contour.point(k as f64 / n as f64))).collect();
    let mut history: Vec<f64> = Vec::new();
    loop {
        let max_mod = vals.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        let min_mod = vals.iter().fold(f64::INFINITY, |m, v| m.min(v.norm()));
        if min_mod == 0.0 || !min_mod.is_finite() {
            return Err(Error::ZeroOnContour { min_modulus: 0.0 });
        }
        let mut total = 0.0;
        let mut signed = 0.0;
        let mut max_step = 0.0f64;
        for k in 0..n {
            let step = (vals[(k + 1) % n] / vals[k]).arg();
            max_step = max_step.max(step.abs());
            total += step.abs();
            signed += step;
        }
        if max_step < PI / 2.0 {
            history.push(total);
            let tol = VARIATION_TOL * total.max(1.0);
            let h = &history;
            if h.len() >= 3
                && (h[h.len() - 1] - h[h.len() - 2]).abs() <= tol
                && (h[h.len() - 2] - h[h.len() - 3]).abs() <= tol
            {
                return Ok(WindingResult {
                    winding: (signed / TAU).round() as i64,
                    total_variation: total,
                    min_modulus_on_contour: min_mod,
                    samples: n,
                    converged: true,
                });
            }
        }
        if n >= MAX_SAMPLES {
            if max_step >= PI / 2.0 || min_mod <= 1e-14 * max_mod {
                return Err(Error::ZeroOnContour { min_modulus: min_mod });
            }
            return Ok(WindingResult {
                winding: (signed / TAU).round() as i64,
                total_variation: total,
                min_modulus_on_contour: min_mod,
                samples: n,
                converged: false,
            });
        }
        let m = 2 * n;
        let mut refined = Vec::with_capacity(m);
        for (k, v) in vals.iter().enumerate() {
            refined.push(*v);
            refined.push(f.eval(contour.point((2 * k + 1) as f64 / m as f64)));
        }
        vals = refined;
        n = m;
    }
}

/// Zeros inside a disk, by the argument principle.
pub fn count_disk_zeros(f: &AnalyticSampler, center: Complex64, radius: f64) -> Result<WindingResult> {
    phase_variation(f, &Contour::circle(center, radius))
}
