//! Certified upper bounds on zero and intersection counts, with numerical oracles
//! that produce matching lower bounds.

pub mod algebra;
pub mod certificate;
pub mod complex_counting;
pub mod corpus;
pub mod curves;
pub mod error;
pub mod fuchsian;
pub mod meandering;
pub mod multiplicity;
pub mod ode;
pub mod oracle;
pub mod rolle;
pub mod wronskian;

pub use certificate::{BoundCertificate, ExtNat, Hypothesis, Relation};
pub use error::{Error, Result};
