//! Shared inputs for the criterion benches.

use std::collections::BTreeMap;

use nijenhuis::exactring::{parse_polynomial, AffineExpression, LinearSystem, Polynomial, Scalar, Unknown, VariableSpace};
use nijenhuis::extender::{build_beta, ExtensionSpace};
use nijenhuis::multivec::Multivector;

/// β for Z_n on its generator coordinates.
pub fn beta(n: usize) -> Multivector {
    build_beta(n).expect("n ≥ 2")
}

/// β embedded in the 78-variable extension space.
pub fn beta_on_extension() -> Multivector {
    let ext = ExtensionSpace::new(3).expect("n = 3");
    beta(3).embed(&ext.space).expect("target is a prefix")
}

/// (1 + Σ xᵢ)^d expanded, a dense operand for multiplication.
pub fn dense_poly(nvars: usize, d: u32) -> Polynomial {
    let names: Vec<String> = (0..nvars).map(|i| format!("x{i}")).collect();
    let space = VariableSpace::new(names.clone()).expect("valid names");
    let sum = format!("1 + {}", names.join(" + "));
    parse_polynomial(&sum, &space).expect("valid").pow(d)
}

/// A dense square system with a unique solution: Σⱼ (i+j+1)^{-1}·(1 + [i=j]) Kⱼ = i.
pub fn square_system(n: usize) -> LinearSystem {
    let ks: Vec<Unknown> = (0..n).map(|j| Unknown::new(&format!("K{j}"))).collect();
    let eqs = (0..n)
        .map(|i| {
            let mut e = AffineExpression::constant(Scalar::from_int(-(i as i64)));
            for (j, k) in ks.iter().enumerate() {
                let c = Scalar::from_ratio(1 + (i == j) as i64, (i + j + 1) as i64);
                e.add_term(k, &c);
            }
            e
        })
        .collect();
    LinearSystem::new(eqs)
}

pub fn zero_values(sys: &LinearSystem) -> BTreeMap<Unknown, Scalar> {
    sys.unknowns().into_iter().map(|u| (u, Scalar::zero())).collect()
}
