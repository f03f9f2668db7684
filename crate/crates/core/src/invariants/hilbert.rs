use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactring::{Monomial, Polynomial, Scalar, VariableSpace};

/// Coordinates (z, z̄, w, w̄) of the symplectic vector space, with the
/// t- and H-weights of f ↦ {f, zz̄ ± ww̄}.
pub fn source_space() -> Arc<VariableSpace> {
    VariableSpace::with_gradings(
        ["z", "zb", "w", "wb"],
        [("t".to_string(), vec![1, -1, 1, -1]), ("H".to_string(), vec![1, -1, -1, 1])],
    )
    .expect("static names")
}

/// a0..a3, x0..xn, y0..yn.
pub fn target_names(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (0..4).map(|i| format!("a{i}")).collect();
    v.extend((0..=n).map(|k| format!("x{k}")));
    v.extend((0..=n).map(|k| format!("y{k}")));
    v
}

pub(crate) fn x_index(k: usize) -> usize {
    4 + k
}

pub(crate) fn y_index(n: usize, k: usize) -> usize {
    5 + n + k
}

fn mono(src: &Arc<VariableSpace>, e: [u32; 4]) -> Polynomial {
    Polynomial::monomial(src, Monomial::from_exponents(e.to_vec()), Scalar::one())
}

/// {zz̄, ww̄, z̄w, zw̄, wⁿ, zwⁿ⁻¹, …, zⁿ, w̄ⁿ, z̄w̄ⁿ⁻¹, …, z̄ⁿ}, in the order of
/// the target coordinates a0..a3, x0..xn, y0..yn.
pub fn hilbert_basis_zn(n: usize) -> Result<Vec<Polynomial>> {
    if n < 2 {
        return Err(Error::Invalid(format!("cyclic order must be at least 2, got {n}")));
    }
    let s = source_space();
    let n32 = n as u32;
    let mut out = vec![mono(&s, [1, 1, 0, 0]), mono(&s, [0, 0, 1, 1]), mono(&s, [0, 1, 1, 0]), mono(&s, [1, 0, 0, 1])];
    for k in 0..=n32 {
        out.push(mono(&s, [k, 0, n32 - k, 0]));
    }
    for k in 0..=n32 {
        out.push(mono(&s, [0, k, 0, n32 - k]));
    }
    Ok(out)
}

/// Factor an invariant monomial z^a z̄^b w^c w̄^d into Hilbert-basis
/// generators; returns the exponent vector over a0..a3, x0..xn, y0..yn.
pub fn rewrite_exponents(e: [u32; 4], n: usize) -> Result<Vec<u32>> {
    let [a, b, c, d] = e;
    let nn = n as i64;
    if (a as i64 - b as i64 + c as i64 - d as i64).rem_euclid(nn) != 0 {
        return Err(Error::NotInvariant);
    }
    let mut out = vec![0u32; 6 + 2 * n];
    let n32 = n as u32;
    // pair off zz̄ and ww̄
    let m0 = a.min(b);
    let m1 = c.min(d);
    out[0] = m0;
    out[1] = m1;
    let (a, b, c, d) = (a - m0, b - m0, c - m1, d - m1);
    match (a > 0 || b == 0, c > 0 || d == 0) {
        // z^a with w̄^d: (zw̄)^min times zⁿ or w̄ⁿ powers
        (true, false) => {
            let m = a.min(d);
            out[3] = m;
            out[x_index(n)] += (a - m) / n32;
            out[y_index(n, 0)] += (d - m) / n32;
        }
        // z̄^b with w^c
        (false, true) if b > 0 => {
            let m = b.min(c);
            out[2] = m;
            out[x_index(0)] += (c - m) / n32;
            out[y_index(n, n)] += (b - m) / n32;
        }
        // z^a w^c: zⁿ, wⁿ and one mixed x_r
        (true, true) => {
            let (ka, ra) = (a / n32, a % n32);
            let (kc, rc) = (c / n32, c % n32);
            out[x_index(n)] += ka;
            out[x_index(0)] += kc;
            if ra + rc == n32 {
                out[x_index(ra as usize)] += 1;
            }
        }
        // z̄^b w̄^d
        _ => {
            let (kb, rb) = (b / n32, b % n32);
            let (kd, rd) = (d / n32, d % n32);
            out[y_index(n, n)] += kb;
            out[y_index(n, 0)] += kd;
            if rb + rd == n32 {
                out[y_index(n, rb as usize)] += 1;
            }
        }
    }
    Ok(out)
}

/// Rewrite an invariant source monomial as a monomial in the target
/// coordinates (coefficient 1).
pub fn rewrite_in_generators(m: &Monomial, n: usize, target: &Arc<VariableSpace>) -> Result<Polynomial> {
    let e = m.exponents();
    if e.len() != 4 {
        return Err(Error::Arity { expected: 4, found: e.len() });
    }
    let ex = rewrite_exponents([e[0], e[1], e[2], e[3]], n)?;
    if target.len() < ex.len() {
        return Err(Error::Arity { expected: ex.len(), found: target.len() });
    }
    let mut full = vec![0u32; target.len()];
    full[..ex.len()].copy_from_slice(&ex);
    Ok(Polynomial::monomial(target, Monomial::from_exponents(full), Scalar::one()))
}
