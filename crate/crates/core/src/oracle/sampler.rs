//! Functions with derivative access, evaluated on the real line or in the complex plane.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::algebra::{ComplexQ, UniPoly};
use crate::complex_counting::PseudoPolynomial;

type NumericEval = dyn Fn(usize, Complex64) -> Complex64 + Send + Sync;

/// Black-box evaluator: `eval(k, z)` is the `k`-th derivative at `z`.
#[derive(Clone)]
pub struct NumericFn {
    name: String,
    order: usize,
    eval: Arc<NumericEval>,
}

impl NumericFn {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(usize, Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        NumericFn {
            name: name.into(),
            order: 0,
            eval: Arc::new(eval),
        }
    }

    pub fn sin() -> Self {
        Self::new("sin", |k, z| match k % 4 {
            0 => z.sin(),
            1 => z.cos(),
            2 => -z.sin(),
            _ => -z.cos(),
        })
    }

    pub fn cos() -> Self {
        Self::new("cos", |k, z| match k % 4 {
            0 => z.cos(),
            1 => -z.sin(),
            2 => -z.cos(),
            _ => z.sin(),
        })
    }

    /// `exp(a z)`.
    pub fn exp(a: Complex64) -> Self {
        Self::new(format!("exp({a}*z)"), move |k, z| a.powu(k as u32) * (a * z).exp())
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

/// Every function the oracles and complex bounds accept.
#[derive(Clone)]
pub enum AnalyticSampler {
    /// Exact polynomial with rational coefficients.
    Poly(UniPoly),
    /// Exact polynomial with complex rational coefficients (`coeffs[k]` multiplies `z^k`).
    ComplexPoly(Vec<ComplexQ>),
    /// Exact exponential polynomial.
    Pseudo(PseudoPolynomial),
    /// Truncated power series valid for `|z| < radius`.
    Taylor { coeffs: Vec<Complex64>, radius: f64 },
    Numeric(NumericFn),
}

impl fmt::Debug for AnalyticSampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticSampler::Poly(p) => write!(f, "Poly({p})"),
            AnalyticSampler::ComplexPoly(c) => write!(f, "ComplexPoly({} coeffs)", c.len()),
            AnalyticSampler::Pseudo(p) => write!(f, "Pseudo({p:?})"),
            AnalyticSampler::Taylor { coeffs, radius } => {
                write!(f, "Taylor({} coeffs, radius {radius})", coeffs.len())
            }
            AnalyticSampler::Numeric(n) => write!(f, "Numeric({}, d^{})", n.name, n.order),
        }
    }
}

fn horner_c(cs: impl DoubleEndedIterator<Item = Complex64>, z: Complex64) -> Complex64 {
    cs.rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

impl AnalyticSampler {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            AnalyticSampler::Poly(p) => p.eval_complex(z),
            AnalyticSampler::ComplexPoly(c) => horner_c(c.iter().map(ComplexQ::to_c64), z),
            AnalyticSampler::Pseudo(p) => p.eval(z),
            AnalyticSampler::Taylor { coeffs, .. } => horner_c(coeffs.iter().copied(), z),
            AnalyticSampler::Numeric(n) => (n.eval)(n.order, z),
        }
    }

    pub fn eval_real(&self, t: f64) -> f64 {
        match self {
            AnalyticSampler::Poly(p) => p.eval_f64(t),
            _ => self.eval(Complex64::new(t, 0.0)).re,
        }
    }

    pub fn derivative(&self) -> AnalyticSampler {
        match self {
            AnalyticSampler::Poly(p) => AnalyticSampler::Poly(p.derivative()),
            AnalyticSampler::ComplexPoly(c) => AnalyticSampler::ComplexPoly(
                c.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, a)| a.scale(&crate::algebra::rational::int(k as i64)))
                    .collect(),
            ),
            AnalyticSampler::Pseudo(p) => AnalyticSampler::Pseudo(p.derivative()),
            AnalyticSampler::Taylor { coeffs, radius } => AnalyticSampler::Taylor {
                coeffs: coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, a)| a * k as f64)
                    .collect(),
                radius: *radius,
            },
            AnalyticSampler::Numeric(n) => AnalyticSampler::Numeric(NumericFn {
                name: n.name.clone(),
                order: n.order + 1,
                eval: n.eval.clone(),
            }),
        }
    }

    pub fn nth_derivative(&self, k: usize) -> AnalyticSampler {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// Exact variants evaluate their coefficients without rounding.
    pub fn is_exact(&self) -> bool {
        matches!(
            self,
            AnalyticSampler::Poly(_) | AnalyticSampler::ComplexPoly(_) | AnalyticSampler::Pseudo(_)
        )
    }

    /// Radius of validity around the origin, if limited.
    pub fn radius(&self) -> Option<f64> {
        match self {
            AnalyticSampler::Taylor { radius, .. } => Some(*radius),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        format!("{self:?}")
    }
}
