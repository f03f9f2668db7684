use crate::exactring::{Monomial, Polynomial};

/// Diagonal action by integer weights, either of the cyclic group Z_n or of
/// a torus (weights over Z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalAction {
    /// `None` for a torus action.
    pub modulus: Option<u64>,
    pub weights: Vec<i64>,
}

impl DiagonalAction {
    pub fn cyclic(n: u64, weights: Vec<i64>) -> Self {
        assert!(n >= 2, "cyclic modulus must be at least 2");
        DiagonalAction { modulus: Some(n), weights }
    }

    pub fn torus(weights: Vec<i64>) -> Self {
        DiagonalAction { modulus: None, weights }
    }

    /// ζ·(z, z̄, w, w̄) = (ζz, ζ⁻¹z̄, ζw, ζ⁻¹w̄).
    pub fn standard(n: u64) -> Self {
        Self::cyclic(n, vec![1, -1, 1, -1])
    }

    pub fn weight(&self, m: &Monomial) -> i64 {
        m.weight(&self.weights)
    }

    pub fn monomial_invariant(&self, m: &Monomial) -> bool {
        let w = self.weight(m);
        match self.modulus {
            Some(n) => w.rem_euclid(n as i64) == 0,
            None => w == 0,
        }
    }
}

/// True iff every monomial of `p` has weight ≡ 0 (mod n), or 0 for a torus.
pub fn is_invariant(action: &DiagonalAction, p: &Polynomial) -> bool {
    assert_eq!(action.weights.len(), p.space().len(), "weight vector length");
    p.terms().all(|(m, _)| action.monomial_invariant(m))
}
