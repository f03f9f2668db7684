use super::bracket::jacobiator;
use crate::error::{Error, Result};
use crate::exactring::Polynomial;
use crate::multivec::threefold::{bivector_field, curl, dot, grad3, star};
use crate::multivec::Multivector;

/// Bracket of two bivectors on three variables through vector calculus:
/// (A·Curl B + Curl A·B) ∂u∧∂v∧∂w.
pub fn threefold_bracket(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    let s = dot(a, &curl(b)?)?.try_add(&dot(&curl(a)?, b)?)?;
    Ok(Multivector::term(s, &[0, 1, 2]))
}

/// The Poisson bivector −∇(*φ) with Casimir φ.
pub fn c3_base_bivector(phi: &Polynomial) -> Result<Multivector> {
    if phi.space().len() != 3 {
        return Err(Error::Arity { expected: 3, found: phi.space().len() });
    }
    Ok(grad3(&star(&Multivector::from_poly(phi.clone()))?)?.neg())
}

#[derive(Clone, Debug)]
pub struct C3Criterion {
    /// π + φ·*α.
    pub candidate: Multivector,
    /// Coefficient of du∧dv∧dw in (dφ − φα)∧dα.
    pub criterion: Polynomial,
    pub jacobiator: Multivector,
    pub holds_by_criterion: bool,
    pub holds_directly: bool,
}

impl C3Criterion {
    pub fn agree(&self) -> bool {
        self.holds_by_criterion == self.holds_directly
    }
}

/// Test whether −∇(*φ) + φ·*α is Poisson, both through the 3-form
/// (dφ − φα)∧dα and through the jacobiator itself.
pub fn c3_extension_criterion(phi: &Polynomial, alpha: &[Polynomial; 3]) -> Result<C3Criterion> {
    let base = c3_base_bivector(phi)?;
    let candidate = base.try_add(&bivector_field(alpha).mul_poly(phi))?;
    // dφ − φα paired with dα (whose vector is curl α)
    let grad = [phi.derivative(0), phi.derivative(1), phi.derivative(2)];
    let mut lhs = Vec::with_capacity(3);
    for i in 0..3 {
        lhs.push(grad[i].try_sub(&alpha[i].mul(phi))?);
    }
    let lhs = bivector_field(&[lhs[0].clone(), lhs[1].clone(), lhs[2].clone()]);
    let dalpha = curl(&bivector_field(alpha))?;
    let criterion = dot(&lhs, &dalpha)?;
    let jac = jacobiator(&candidate)?;
    Ok(C3Criterion {
        holds_by_criterion: criterion.is_zero(),
        holds_directly: jac.is_zero(),
        criterion,
        jacobiator: jac,
        candidate,
    })
}
