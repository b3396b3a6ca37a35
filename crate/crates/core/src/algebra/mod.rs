//! Exact algebra: rationals, polynomials, intervals, jets and linear algebra.

pub mod complex;
pub mod interval;
pub mod jet;
pub mod linalg;
pub mod multipoly;
pub mod ratfunc;
pub mod rational;
pub mod sturm;
pub mod unipoly;

pub use complex::ComplexQ;
pub use interval::{Interval, IntervalBox};
pub use jet::TaylorJet;
pub use multipoly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;
pub use rational::{parse_rational, Rational};
pub use sturm::{certified_sup, sturm_root_count, SupBound};
pub use unipoly::UniPoly;

/// Formal derivative of either polynomial kind.
pub trait Differentiate {
    fn differentiate(&self, var: usize) -> Self;
}

impl Differentiate for UniPoly {
    fn differentiate(&self, _var: usize) -> Self {
        self.derivative()
    }
}

impl Differentiate for MultiPoly {
    fn differentiate(&self, var: usize) -> Self {
        self.derivative(var)
    }
}

/// Exact formal derivative in variable `var` (ignored for univariate input).
pub fn differentiate<P: Differentiate>(p: &P, var: usize) -> P {
    p.differentiate(var)
}
