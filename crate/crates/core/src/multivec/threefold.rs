//! Vector calculus on a three-variable space (u, v, w), with multivectors
//! identified with vectors through
//!   ∂u ↔ ∂v∧∂w,  ∂v ↔ ∂w∧∂u,  ∂w ↔ ∂u∧∂v,  1 ↔ ∂u∧∂v∧∂w.

use super::multivector::Multivector;
use crate::error::{Error, Result};
use crate::exactring::Polynomial;

/// Which operation to run through [`threefold_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreefoldKind {
    Div,
    Curl,
    Grad3,
    Star,
}

fn require_three(x: &Multivector) -> Result<()> {
    if x.space().len() != 3 {
        return Err(Error::Arity { expected: 3, found: x.space().len() });
    }
    Ok(())
}

fn require_degree(x: &Multivector, d: usize) -> Result<()> {
    require_three(x)?;
    if x.degree() != d && !x.is_zero() {
        return Err(Error::Degree { expected: d, found: x.degree() });
    }
    Ok(())
}

/// The three components attached to a 1- or 2-vector through the
/// identification above.
pub fn components(x: &Multivector) -> Result<[Polynomial; 3]> {
    require_three(x)?;
    match x.degree() {
        1 => Ok([x.component(&[0]), x.component(&[1]), x.component(&[2])]),
        2 => Ok([x.component(&[1, 2]), x.component(&[2, 0]), x.component(&[0, 1])]),
        d => Err(Error::Degree { expected: 1, found: d }),
    }
}

pub fn vector_field(c: &[Polynomial; 3]) -> Multivector {
    let mut r = Multivector::zero(c[0].space(), 1);
    for (i, p) in c.iter().enumerate() {
        r.add_assign(&Multivector::term(p.clone(), &[i]));
    }
    r
}

pub fn bivector_field(c: &[Polynomial; 3]) -> Multivector {
    let mut r = Multivector::zero(c[0].space(), 2);
    r.add_assign(&Multivector::term(c[0].clone(), &[1, 2]));
    r.add_assign(&Multivector::term(c[1].clone(), &[2, 0]));
    r.add_assign(&Multivector::term(c[2].clone(), &[0, 1]));
    r
}

/// div(f∂u + g∂v + h∂w) = f_u + g_v + h_w, as a degree-0 multivector.
pub fn div(x: &Multivector) -> Result<Multivector> {
    require_degree(x, 1)?;
    let c = components(&x.clone().with_degree(1))?;
    let mut s = c[0].derivative(0);
    s.add_assign(&c[1].derivative(1));
    s.add_assign(&c[2].derivative(2));
    Ok(Multivector::from_poly(s))
}

/// Curl(f∂u∂v + g∂w∂u + h∂v∂w) = (f_v − g_w)∂u + (h_w − f_u)∂v + (g_u − h_v)∂w.
pub fn curl(x: &Multivector) -> Result<Multivector> {
    require_degree(x, 2)?;
    let [h, g, f] = components(&x.clone().with_degree(2))?;
    Ok(vector_field(&[
        f.derivative(1).try_sub(&g.derivative(2))?,
        h.derivative(2).try_sub(&f.derivative(0))?,
        g.derivative(0).try_sub(&h.derivative(1))?,
    ]))
}

/// ∇(f∂u∂v∂w) = f_w∂u∂v + f_v∂w∂u + f_u∂v∂w.
pub fn grad3(x: &Multivector) -> Result<Multivector> {
    require_degree(x, 3)?;
    let f = x.component(&[0, 1, 2]);
    Ok(bivector_field(&[f.derivative(0), f.derivative(1), f.derivative(2)]))
}

/// Hodge-type star X^k → X^{3−k}; an involution.
pub fn star(x: &Multivector) -> Result<Multivector> {
    require_three(x)?;
    Ok(match x.degree() {
        0 => Multivector::term(x.scalar_part(), &[0, 1, 2]),
        1 => bivector_field(&components(x)?),
        2 => vector_field(&components(x)?),
        3 => Multivector::from_poly(x.component(&[0, 1, 2])),
        d => return Err(Error::Degree { expected: 3, found: d }),
    })
}

/// Dot product of the vectors attached to two 1- or 2-vectors.
pub fn dot(a: &Multivector, b: &Multivector) -> Result<Polynomial> {
    let (x, y) = (components(a)?, components(b)?);
    let mut s = x[0].mul(&y[0]);
    s.add_assign(&x[1].mul(&y[1]));
    s.add_assign(&x[2].mul(&y[2]));
    Ok(s)
}

pub fn threefold_op(kind: ThreefoldKind, x: &Multivector) -> Result<Multivector> {
    match kind {
        ThreefoldKind::Div => div(x),
        ThreefoldKind::Curl => curl(x),
        ThreefoldKind::Grad3 => grad3(x),
        ThreefoldKind::Star => star(x),
    }
}
