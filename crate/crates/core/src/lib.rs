//! Exact Poisson and Schouten calculus on polynomial rings.

pub mod error;
pub mod exactring;
pub mod multivec;
pub mod extender;
pub mod invariants;
pub mod schouten;

pub use error::{Error, Result};
pub use multivec::{Multivector, SkewMonomial};
pub use exactring::{
    AffineExpression, Coefficient, LinearSystem, Monomial, Poly, Polynomial, Scalar, SolveOutcome, Unknown,
    VariableSpace,
};
