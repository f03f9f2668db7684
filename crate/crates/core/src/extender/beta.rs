use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactring::{Monomial, Polynomial, Scalar, VariableSpace};
use crate::invariants::QuotientPresentation;
use crate::multivec::Multivector;

/// a0^p a1^q a2^r a3^s with a0 a1 traded for a2 a3 as often as possible,
/// i.e. the normal form modulo C = a0 a1 − a2 a3.
fn reduced_a_monomial(space: &Arc<VariableSpace>, [p, q, r, s]: [u32; 4]) -> Monomial {
    let m = p.min(q);
    let mut e = vec![0; space.len()];
    e[..4].copy_from_slice(&[p - m, q - m, r + m, s + m]);
    Monomial::from_exponents(e)
}

/// β^{n−1}(dx_i, dy_j) reduced modulo C.
pub fn beta_nonlinear_entry(space: &Arc<VariableSpace>, n: usize, i: usize, j: usize) -> Polynomial {
    let (lo, hi) = (i.min(j) as u32, i.max(j) as u32);
    let n = n as u32;
    let (ii, jj) = (i as i64, j as i64);
    let nn = n as i64;
    // a3 carries the excess when i ≥ j, a2 when i < j
    let shift = |e: [u32; 4]| if i >= j { [e[0], e[1], 0, e[3] + hi - lo] } else { [e[0], e[1], e[2] + hi - lo, 0] };
    let mut out = Polynomial::zero(space);
    let c1 = (nn - ii) * (nn - jj);
    if c1 != 0 {
        out.add_term(reduced_a_monomial(space, shift([lo, n - hi - 1, 0, 0])), Scalar::from_int(c1));
    }
    let c2 = ii * jj;
    if c2 != 0 {
        out.add_term(reduced_a_monomial(space, shift([lo - 1, n - hi, 0, 0])), Scalar::from_int(c2));
    }
    out
}

/// The nonlinear summand β^{n−1}, supported on dx_i ∧ dy_j.
pub fn beta_nonlinear(q: &QuotientPresentation) -> Multivector {
    let n = q.n;
    let space = &q.target;
    let mut b = Multivector::zero(space, 2);
    for i in 0..=n {
        for j in 0..=n {
            let p = beta_nonlinear_entry(space, n, i, j);
            if !p.is_zero() {
                b.add_assign(&Multivector::term(p, &[4 + i, 5 + n + j]));
            }
        }
    }
    b
}

/// β = β¹ + β^{n−1} on the target coordinates.
pub fn build_beta(n: usize) -> Result<Multivector> {
    if n < 2 {
        return Err(Error::Invalid(format!("cyclic order must be at least 2, got {n}")));
    }
    let q = QuotientPresentation::new(n)?;
    beta_of(&q)
}

pub(crate) fn beta_of(q: &QuotientPresentation) -> Result<Multivector> {
    q.lie_poisson.try_add(&beta_nonlinear(q))
}
