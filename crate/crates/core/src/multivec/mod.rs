//! Skew-commutative multivector fields over polynomial coefficients.

mod multivector;
mod parse;
mod skew;
pub mod threefold;

pub use multivector::{Bivector, Multivector};
pub use parse::{parse_multivector, parse_multivector_extending, parse_multivector_inferred};
pub use skew::SkewMonomial;
pub use threefold::{threefold_op, ThreefoldKind};
