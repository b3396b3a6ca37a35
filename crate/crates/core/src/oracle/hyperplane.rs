//! Random hyperplanes against sampled curves.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};
use serde::{Deserialize, Serialize};

use crate::curves::CurveSampler;

/// Grid cells used when scanning a curve for crossings.
pub const CURVE_GRID: usize = 4096;

/// Independent RNG stream for sample `index` under `seed`.
pub fn sample_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform direction on the unit sphere in `R^n`.
pub fn random_unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperplaneHits {
    pub seed: u64,
    pub counts: Vec<usize>,
    pub mean: f64,
    pub std_err: f64,
    pub max: usize,
}

impl HyperplaneHits {
    fn from_counts(seed: u64, counts: Vec<usize>) -> Self {
        let n = counts.len();
        let mean = if n == 0 {
            0.0
        } else {
            counts.iter().sum::<usize>() as f64 / n as f64
        };
        let var = if n < 2 {
            0.0
        } else {
            counts
                .iter()
                .map(|&c| (c as f64 - mean).powi(2))
                .sum::<f64>()
                / (n - 1) as f64
        };
        HyperplaneHits {
            seed,
            max: counts.iter().copied().max().unwrap_or(0),
            std_err: (var / n.max(1) as f64).sqrt(),
            mean,
            counts,
        }
    }
}

fn crossings(values: impl Iterator<Item = f64>) -> usize {
    let mut count = 0;
    let mut last = 0.0f64;
    for v in values {
        if v == 0.0 {
            count += 1;
            last = 0.0;
            continue;
        }
        if last != 0.0 && last.signum() != v.signum() {
            count += 1;
        }
        last = v;
    }
    count
}

/// Intersections with `{x : <xi, x> = c}` along a precomputed point grid.
pub fn hits_on_grid(points: &[Vec<f64>], xi: &[f64], c: f64) -> usize {
    crossings(
        points
            .iter()
            .map(|p| p.iter().zip(xi).map(|(a, b)| a * b).sum::<f64>() - c),
    )
}

/// Hyperplanes through the origin with uniformly random normals.
pub fn random_hyperplane_hits(curve: &CurveSampler, samples: usize, seed: u64) -> HyperplaneHits {
    let points = curve.grid(CURVE_GRID);
    let counts = (0..samples as u64)
        .map(|i| {
            let mut rng = sample_stream(seed, i);
            let xi = random_unit_vector(&mut rng, curve.dim());
            hits_on_grid(&points, &xi, 0.0)
        })
        .collect();
    HyperplaneHits::from_counts(seed, counts)
}

/// Affine hyperplanes: random normal, offset uniform over the curve's projection range.
pub fn random_affine_hits(curve: &CurveSampler, samples: usize, seed: u64) -> HyperplaneHits {
    let points = curve.grid(CURVE_GRID);
    let counts = (0..samples as u64)
        .map(|i| {
            let mut rng = sample_stream(seed, i);
            let xi = random_unit_vector(&mut rng, curve.dim());
            let proj: Vec<f64> = points
                .iter()
                .map(|p| p.iter().zip(&xi).map(|(a, b)| a * b).sum())
                .collect();
            let lo = proj.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = proj.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let c = if hi > lo {
                Uniform::new(lo, hi).expect("nonempty range").sample(&mut rng)
            } else {
                lo
            };
            hits_on_grid(&points, &xi, c)
        })
        .collect();
    HyperplaneHits::from_counts(seed, counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_circle_always_two() {
        let h = random_hyperplane_hits(&CurveSampler::circle(1.0), 200, 7);
        assert!(h.counts.iter().all(|&c| c == 2));
        assert_eq!(h.mean, 2.0);
    }

    #[test]
    fn fixed_seed_is_repeatable() {
        let c = CurveSampler::random_trig(2, 3, 1, 0);
        assert_eq!(random_affine_hits(&c, 50, 3), random_affine_hits(&c, 50, 3));
        assert_ne!(random_affine_hits(&c, 50, 3).counts, random_affine_hits(&c, 50, 4).counts);
    }
}
