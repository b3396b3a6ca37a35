//! Truncated Taylor expansions (jets) of polynomials at rational points.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::multipoly::{monomials_up_to, Monomial, MultiPoly};
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Dimension of the space of jets of order `k` in `n` variables: `binomial(n + k, n)`.
pub fn jet_space_dim(n: usize, k: u32) -> usize {
    use num_traits::ToPrimitive;
    rational::binomial((n as u64) + u64::from(k), n as u64)
        .to_usize()
        .expect("jet space dimension fits in usize")
}

/// Coefficients up to total degree `order`, in ascending graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaylorJet {
    #[serde(with = "rational_vec")]
    center: Vec<Rational>,
    order: u32,
    #[serde(with = "rational_vec")]
    coeffs: Vec<Rational>,
}

mod rational_vec {
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

impl TaylorJet {
    pub fn of(p: &MultiPoly, center: &[Rational], order: u32) -> Result<Self> {
        if center.len() != p.nvars() {
            return Err(Error::DimensionMismatch {
                expected: p.nvars(),
                got: center.len(),
            });
        }
        let shifted = if center.iter().all(Zero::is_zero) {
            p.clone()
        } else {
            p.shift(center)
        };
        let coeffs = monomials_up_to(p.nvars(), order)
            .iter()
            .map(|m| shifted.coeff(m))
            .collect();
        Ok(TaylorJet {
            center: center.to_vec(),
            order,
            coeffs,
        })
    }

    pub fn center(&self) -> &[Rational] {
        &self.center
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.center.len()
    }

    /// The jet as a polynomial in the local coordinates `x - center`.
    pub fn to_multipoly(&self) -> MultiPoly {
        let n = self.nvars();
        let basis: Vec<Monomial> = monomials_up_to(n, self.order);
        MultiPoly::from_terms(
            n,
            basis
                .into_iter()
                .zip(&self.coeffs)
                .map(|(m, c)| (m.0, c.clone())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn coefficient_count_matches_dimension() {
        let p = MultiPoly::parse("x^3*y + y^2 + 1", &["x", "y"]).unwrap();
        for k in 0..5 {
            let j = TaylorJet::of(&p, &[int(0), int(0)], k).unwrap();
            assert_eq!(j.coeffs().len(), jet_space_dim(2, k));
        }
        assert_eq!(jet_space_dim(2, 5), 21);
        assert_eq!(jet_space_dim(2, 6), 28);
    }

    #[test]
    fn jet_at_shifted_center() {
        let p = MultiPoly::parse("x^2", &["x"]).unwrap();
        let j = TaylorJet::of(&p, &[int(1)], 1).unwrap();
        assert_eq!(j.coeffs(), &[int(1), int(2)]);
        assert_eq!(j.to_multipoly(), MultiPoly::parse("1 + 2*x", &["x"]).unwrap());
    }
}
