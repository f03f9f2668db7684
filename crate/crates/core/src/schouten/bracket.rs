use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactring::{CoeffMul, Coefficient, Polynomial, Scalar, VariableSpace};
use crate::multivec::Multivector;

/// Right ξ-derivatives of `a` for every variable, built in one pass.
fn odd_partials<C: Coefficient>(a: &Multivector<C>) -> Vec<Option<Multivector<C>>> {
    let n = a.space().len();
    let mut out: Vec<Option<Multivector<C>>> = vec![None; n];
    for (k, p) in a.terms() {
        let d = k.degree();
        for (pos, &i) in k.indices().iter().enumerate() {
            let slot = out[i as usize].get_or_insert_with(|| Multivector::zero(a.space(), d - 1));
            let q = if (d - pos - 1) % 2 == 1 { p.neg() } else { p.clone() };
            slot.add_term(k.remove_at(pos), q);
        }
    }
    out
}

/// [α,β] = Σᵢ ∂α/∂ξᵢ ∂β/∂xᵢ − (−1)^{(a−1)(b−1)} ∂β/∂ξᵢ ∂α/∂xᵢ, with right
/// ξ-derivatives.  The second product is reordered so that only
/// `C × D` coefficient products occur, which lets a concrete multivector be
/// bracketed with a template one.
pub fn schouten_bracket<C, D>(a: &Multivector<C>, b: &Multivector<D>) -> Result<Multivector<<C as CoeffMul<D>>::Output>>
where
    C: CoeffMul<D>,
    D: Coefficient,
{
    schouten_bracket_over(a, b, None)
}

/// The same sum restricted to the coordinates flagged in `over` (all of them
/// for `None`).  A partial sum is not a Lie bracket; it exists to replay
/// computations that only summed over part of the coordinates.
pub fn schouten_bracket_over<C, D>(
    a: &Multivector<C>,
    b: &Multivector<D>,
    over: Option<&[bool]>,
) -> Result<Multivector<<C as CoeffMul<D>>::Output>>
where
    C: CoeffMul<D>,
    D: Coefficient,
{
    if !VariableSpace::same(a.space(), b.space()) {
        return Err(Error::SpaceMismatch);
    }
    let space = a.space();
    let deg = (a.degree() + b.degree()).saturating_sub(1);
    if a.degree() + b.degree() == 0 {
        return Ok(Multivector::zero(space, 0));
    }
    let da = odd_partials(a);
    let db = odd_partials(b);
    let a_vars = a.coefficient_support();
    let b_vars = b.coefficient_support();
    let mut a_dep = vec![false; space.len()];
    let mut b_dep = vec![false; space.len()];
    a_vars.iter().for_each(|&i| a_dep[i] = true);
    b_vars.iter().for_each(|&i| b_dep[i] = true);
    // ∂α/∂xᵢ ∧ ∂β/∂ξᵢ carries (−1)^b after reordering
    let second_sign = if b.degree() % 2 == 0 { Scalar::one() } else { -Scalar::one() };

    let parts: Vec<Multivector<<C as CoeffMul<D>>::Output>> = (0..space.len())
        .into_par_iter()
        .filter(|&i| over.is_none_or(|m| m.get(i).copied().unwrap_or(false)))
        .filter_map(|i| {
            let mut acc: Option<Multivector<<C as CoeffMul<D>>::Output>> = None;
            if let (Some(pa), true) = (&da[i], b_dep[i]) {
                let t = pa.wedge(&b.coefficient_derivative(i)).expect("same space");
                acc = Some(t);
            }
            if let (Some(pb), true) = (&db[i], a_dep[i]) {
                let t = a.coefficient_derivative(i).wedge(pb).expect("same space").scale(&second_sign);
                match acc.as_mut() {
                    Some(x) => x.add_assign(&t),
                    None => acc = Some(t),
                }
            }
            acc
        })
        .collect();
    let mut r = Multivector::zero(space, deg);
    for p in parts {
        r.add_assign(&p);
    }
    Ok(r.with_degree(deg))
}

/// [π,π] for a bivector π.
pub fn jacobiator(pi: &Multivector) -> Result<Multivector> {
    if pi.degree() != 2 && !pi.is_zero() {
        return Err(Error::Degree { expected: 2, found: pi.degree() });
    }
    schouten_bracket(pi, pi)
}

/// {f,g} = π(df, dg).
pub fn bracket_on_forms(pi: &Multivector, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    Ok(pi.contract(&[f.clone(), g.clone()])?.scalar_part())
}

/// 2({f,{g,h}} + {g,{h,f}} + {h,{f,g}}): the trivector side of the jacobiator
/// evaluated through iterated brackets.
pub fn jacobiator_cyclic(pi: &Multivector, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Result<Polynomial> {
    let one = |x: &Polynomial, y: &Polynomial, z: &Polynomial| -> Result<Polynomial> {
        bracket_on_forms(pi, x, &bracket_on_forms(pi, y, z)?)
    };
    let mut s = one(f, g, h)?;
    s.add_assign(&one(g, h, f)?);
    s.add_assign(&one(h, f, g)?);
    Ok(s.scale(&Scalar::from_int(2)))
}

/// Σ_{i+j=k+1} [πⁱ, πʲ] for one k, where πⁱ is the part of total degree i.
#[derive(Clone, Debug, PartialEq)]
pub struct CascadeEntry {
    pub k: u32,
    pub value: Multivector,
}

/// The degree cascade of [π,π] = 0 for k = 1..=kmax (default: every degree
/// that can occur).
pub fn graded_cascade(pi: &Multivector, kmax: Option<u32>) -> Result<Vec<CascadeEntry>> {
    if pi.degree() != 2 && !pi.is_zero() {
        return Err(Error::Degree { expected: 2, found: pi.degree() });
    }
    if !pi.homogeneous_part(0).is_zero() {
        return Err(Error::ConstantPart);
    }
    let top = pi.total_degree().unwrap_or(1);
    let kmax = kmax.unwrap_or(2 * top - 1);
    let parts: BTreeMap<u32, Multivector> =
        (1..=top).map(|d| (d, pi.homogeneous_part(d))).filter(|(_, p)| !p.is_zero()).collect();
    // [πⁱ,πʲ] = [πʲ,πⁱ] for bivectors, so only i ≤ j is computed
    let keys: Vec<u32> = parts.keys().copied().collect();
    let mut pairs = Vec::new();
    for (x, &i) in keys.iter().enumerate() {
        for &j in &keys[x..] {
            if i + j - 1 <= kmax {
                pairs.push((i, j));
            }
        }
    }
    let brackets: Vec<((u32, u32), Multivector)> = pairs
        .into_iter()
        .map(|(i, j)| {
            let b = schouten_bracket(&parts[&i], &parts[&j]).expect("same space");
            ((i, j), if i == j { b } else { b.scale(&Scalar::from_int(2)) })
        })
        .collect();
    let mut out = Vec::new();
    for k in 1..=kmax {
        let mut v = Multivector::zero(pi.space(), 3);
        for ((i, j), b) in &brackets {
            if i + j == k + 1 {
                v.add_assign(b);
            }
        }
        out.push(CascadeEntry { k, value: v });
    }
    Ok(out)
}

/// Split by W-degree: coefficient weight minus the weight of each ∂ factor.
pub fn w_decompose<C: Coefficient>(x: &Multivector<C>, grading: &str) -> Result<BTreeMap<i64, Multivector<C>>> {
    x.weighted_parts(grading, true)
}
