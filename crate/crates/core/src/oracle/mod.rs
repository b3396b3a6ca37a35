//! Uncertified numerical ground truth. Every count here is a lower bound.

pub mod contour;
pub mod field;
pub mod hyperplane;
pub mod real;
pub mod roots;
pub mod sampler;

pub use contour::{count_disk_zeros, phase_variation, Contour, WindingResult};
pub use field::{integrate_field, integrate_field_span, integrate_ode, DenseSolution, Trajectory};
pub use hyperplane::{random_affine_hits, random_hyperplane_hits, sample_stream, HyperplaneHits};
pub use real::{count_poly_zeros, count_real_zeros, count_sign_changes, CountMethod, RootCountReport};
pub use roots::polynomial_roots;
pub use sampler::{AnalyticSampler, NumericFn};
