use std::fmt::Debug;

use super::scalar::Scalar;

/// Coefficient domain shared by concrete (`Scalar`) and template
/// (`AffineExpression`) polynomials.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, o: &Self);
    fn neg_ref(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn from_scalar(s: Scalar) -> Self;
}

/// Products between coefficient domains.  Concrete times concrete stays
/// concrete; anything times a template is a template.  Template times template
/// is deliberately absent: it would leave the affine world.
pub trait CoeffMul<Rhs: Coefficient>: Coefficient {
    type Output: Coefficient;
    fn cmul(&self, rhs: &Rhs) -> Self::Output;
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
}

impl CoeffMul<Scalar> for Scalar {
    type Output = Scalar;
    fn cmul(&self, rhs: &Scalar) -> Scalar {
        self * rhs
    }
}
