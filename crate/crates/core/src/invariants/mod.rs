//! Invariant theory of the Z_n quotient of C², its Hilbert basis and ideal,
//! and the sl₂ representation-theoretic diagnostics on it.

mod action;
mod hilbert;
mod quotient;
mod rep;
mod resonance;

pub use action::{is_invariant, DiagonalAction};
pub use hilbert::{hilbert_basis_zn, rewrite_exponents, rewrite_in_generators, source_space, target_names};
pub use quotient::{
    hamiltonian_weights, kernel_member, lie_poisson_bivector, source_bivector, source_bracket, GeneratorFamily,
    IdealGenerator, MBranch, QuotientPresentation,
};
pub use rep::{
    apply_derivation, gl2_action, rep_diagnose, Decomposition, Gl2, LieAlgebraTable, QuotientModule, Side, Sl2Module,
    StandardModule,
};
pub use resonance::resonant_monomials;
