//! The Schouten–Nijenhuis bracket and the checks built on it.

mod bracket;
mod c3;

pub use bracket::{
    bracket_on_forms, graded_cascade, jacobiator, jacobiator_cyclic, schouten_bracket, schouten_bracket_over, w_decompose, CascadeEntry,
};
pub use c3::{c3_base_bivector, c3_extension_criterion, threefold_bracket, C3Criterion};
