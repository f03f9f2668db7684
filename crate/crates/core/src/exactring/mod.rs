//! Exact coefficients, sparse polynomials, parsing and linear solving.

mod affine;
mod coeff;
mod linalg;
mod linsolve;
pub(crate) mod parse;
mod poly;
mod scalar;
mod space;

pub use affine::{AffineExpression, Unknown};
pub use coeff::{CoeffMul, Coefficient};
pub use linalg::{poly_rank, poly_vector, EchelonBasis};
pub use linsolve::{normalize_equation, solve_linear, LinearSystem, Solution, SolveOutcome};
pub use parse::{parse_polynomial, parse_polynomial_inferred};
pub use poly::{Monomial, Poly, Polynomial, TermDisplay};
pub use scalar::Scalar;
pub use space::{is_identifier, Grading, VariableSpace};
