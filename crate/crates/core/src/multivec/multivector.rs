use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::skew::SkewMonomial;
use crate::error::{Error, Result};
use crate::exactring::{CoeffMul, Coefficient, Poly, Polynomial, Scalar, TermDisplay, VariableSpace};

/// Homogeneous multivector field: canonical skew monomials of one degree with
/// polynomial coefficients.  `C = AffineExpression` gives template mode.
#[derive(Clone, Debug)]
pub struct Multivector<C: Coefficient = Scalar> {
    space: Arc<VariableSpace>,
    degree: usize,
    terms: BTreeMap<SkewMonomial, Poly<C>>,
}

pub type Bivector = Multivector<Scalar>;

impl<C: Coefficient> PartialEq for Multivector<C> {
    fn eq(&self, o: &Self) -> bool {
        VariableSpace::same(&self.space, &o.space)
            && (self.degree == o.degree || (self.terms.is_empty() && o.terms.is_empty()))
            && self.terms == o.terms
    }
}

fn sign_scalar(s: i8) -> Scalar {
    Scalar::from_int(s as i64)
}

impl<C: Coefficient> Multivector<C> {
    pub fn zero(space: &Arc<VariableSpace>, degree: usize) -> Self {
        Multivector { space: space.clone(), degree, terms: BTreeMap::new() }
    }

    /// Degree-0 multivector.
    pub fn from_poly(p: Poly<C>) -> Self {
        let mut m = Self::zero(p.space(), 0);
        m.add_term(SkewMonomial::empty(), p);
        m
    }

    /// `coeff · ∂v_{i₁}∧…∧∂v_{i_k}` for an arbitrary (unsorted) index list.
    pub fn term(coeff: Poly<C>, indices: &[usize]) -> Self {
        let space = coeff.space().clone();
        let mut m = Self::zero(&space, indices.len());
        let idx: Vec<u32> = indices.iter().map(|&i| i as u32).collect();
        if let Some((sk, s)) = SkewMonomial::normalize(&idx) {
            m.add_term(sk, coeff.scale(&sign_scalar(s)));
        }
        m
    }

    /// Same as [`Multivector::term`] with variables given by name.
    pub fn term_named(coeff: Poly<C>, names: &[&str]) -> Result<Self> {
        let idx = names.iter().map(|n| coeff.space().require(n)).collect::<Result<Vec<_>>>()?;
        Ok(Self::term(coeff, &idx))
    }

    /// Relabel the degree of a zero multivector; identity otherwise.
    pub fn with_degree(mut self, d: usize) -> Self {
        if self.terms.is_empty() {
            self.degree = d;
        }
        self
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of skew monomials carrying a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of (skew monomial, polynomial monomial) pairs.
    pub fn monomial_count(&self) -> usize {
        self.terms.values().map(|p| p.len()).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SkewMonomial, &Poly<C>)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<SkewMonomial, Poly<C>> {
        self.terms
    }

    pub fn coefficient(&self, sk: &SkewMonomial) -> Poly<C> {
        self.terms.get(sk).cloned().unwrap_or_else(|| Poly::zero(&self.space))
    }

    /// Coefficient of ∂v_{i₁}∧…∧∂v_{i_k} for an unsorted index list, with the
    /// permutation sign applied: for a bivector `component(&[i, j])` is π(dvᵢ, dvⱼ).
    pub fn component(&self, indices: &[usize]) -> Poly<C> {
        let idx: Vec<u32> = indices.iter().map(|&i| i as u32).collect();
        match SkewMonomial::normalize(&idx) {
            Some((sk, s)) if sk.degree() == self.degree => self.coefficient(&sk).scale(&sign_scalar(s)),
            _ => Poly::zero(&self.space),
        }
    }

    pub fn add_term(&mut self, sk: SkewMonomial, p: Poly<C>) {
        assert_eq!(sk.degree(), self.degree, "skew monomial degree mismatch");
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&sk) {
            Some(q) => {
                q.add_assign(&p);
                if q.is_zero() {
                    self.terms.remove(&sk);
                }
            }
            None => {
                self.terms.insert(sk, p);
            }
        }
    }

    fn check(&self, space: &Arc<VariableSpace>) -> Result<()> {
        if VariableSpace::same(&self.space, space) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(&o.space)?;
        if !o.is_zero() && !self.is_zero() && o.degree != self.degree {
            return Err(Error::Degree { expected: self.degree, found: o.degree });
        }
        let mut r = if self.is_zero() { Self::zero(&self.space, o.degree) } else { self.clone() };
        for (k, p) in &o.terms {
            r.add_term(k.clone(), p.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn add_assign(&mut self, o: &Self) {
        *self = self.try_add(o).expect("incompatible multivectors");
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(&self.space, self.degree);
        }
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Multivector<D> {
        let mut r = Multivector::zero(&self.space, self.degree);
        for (k, p) in &self.terms {
            r.add_term(k.clone(), p.map_coeffs(&f));
        }
        r
    }

    /// Apply a map to each coefficient polynomial.
    pub fn map_polys<D: Coefficient>(&self, f: impl Fn(&Poly<C>) -> Poly<D>) -> Multivector<D> {
        let mut r = Multivector::zero(&self.space, self.degree);
        for (k, p) in &self.terms {
            r.add_term(k.clone(), f(p));
        }
        r
    }

    /// Keep only the terms whose skew monomial passes the filter.
    pub fn filter_skew(&self, keep: impl Fn(&SkewMonomial) -> bool) -> Self {
        Multivector {
            space: self.space.clone(),
            degree: self.degree,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, p)| (k.clone(), p.clone())).collect(),
        }
    }

    pub fn wedge<D>(&self, o: &Multivector<D>) -> Result<Multivector<<C as CoeffMul<D>>::Output>>
    where
        C: CoeffMul<D>,
        D: Coefficient,
    {
        self.check(&o.space)?;
        let mut r = Multivector::zero(&self.space, self.degree + o.degree);
        for (k1, p1) in &self.terms {
            for (k2, p2) in &o.terms {
                if let Some((k, s)) = k1.wedge(k2) {
                    let prod = p1.mul(p2);
                    r.add_term(k, if s < 0 { prod.neg() } else { prod });
                }
            }
        }
        Ok(r)
    }

    /// Multiply every coefficient by a polynomial.
    pub fn mul_poly<D>(&self, f: &Poly<D>) -> Multivector<<C as CoeffMul<D>>::Output>
    where
        C: CoeffMul<D>,
        D: Coefficient,
    {
        let mut r = Multivector::zero(&self.space, self.degree);
        for (k, p) in &self.terms {
            r.add_term(k.clone(), p.mul(f));
        }
        r
    }

    fn odd_partial(&self, i: usize, right: bool) -> Self {
        let mut r = Self::zero(&self.space, self.degree.saturating_sub(1));
        for (k, p) in &self.terms {
            if let Some(pos) = k.position(i as u32) {
                let d = k.degree();
                // right: (−1)^{d−k}, left: (−1)^{k−1}, with 1-based k = pos+1
                let odd = if right { (d - pos - 1) % 2 == 1 } else { pos % 2 == 1 };
                r.add_term(k.remove_at(pos), if odd { p.neg() } else { p.clone() });
            }
        }
        r
    }

    /// Right derivative ∂/∂ξᵢ: removing the k-th of d factors costs (−1)^{d−k}.
    pub fn skew_partial(&self, i: usize) -> Self {
        self.odd_partial(i, true)
    }

    /// Left derivative: removing the k-th factor costs (−1)^{k−1}.
    pub fn left_partial(&self, i: usize) -> Self {
        self.odd_partial(i, false)
    }

    pub fn skew_partial_named(&self, v: &str) -> Result<Self> {
        Ok(self.skew_partial(self.space.require(v)?))
    }

    /// ∂/∂xᵢ applied to the coefficients.
    pub fn coefficient_derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(&self.space, self.degree);
        for (k, p) in &self.terms {
            r.add_term(k.clone(), p.derivative(i));
        }
        r
    }

    /// Variables occurring in some skew monomial.
    pub fn skew_support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.space.len()];
        for k in self.terms.keys() {
            for &i in k.indices() {
                seen[i as usize] = true;
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    /// Variables occurring in some coefficient.
    pub fn coefficient_support(&self) -> Vec<usize> {
        (0..self.space.len()).filter(|&i| self.terms.values().any(|p| p.depends_on(i))).collect()
    }

    /// Split by a grading applied to the coefficients only.
    pub fn grade_parts(&self, grading: &str) -> Result<BTreeMap<i64, Self>> {
        self.weighted_parts(grading, false)
    }

    /// Split by a grading where each ∂v factor counts with minus the weight of v.
    pub fn weighted_parts(&self, grading: &str, count_skew: bool) -> Result<BTreeMap<i64, Self>> {
        let w = self.space.grading(grading)?.to_vec();
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (k, p) in &self.terms {
            let shift: i64 = if count_skew { k.indices().iter().map(|&i| w[i as usize]).sum() } else { 0 };
            for (d, part) in p.grade_parts(grading)? {
                out.entry(d - shift).or_insert_with(|| Self::zero(&self.space, self.degree)).add_term(k.clone(), part);
            }
        }
        Ok(out)
    }

    /// Part whose coefficients have the given total degree.
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        let mut r = Self::zero(&self.space, self.degree);
        for (k, p) in &self.terms {
            r.add_term(k.clone(), p.homogeneous_part(deg));
        }
        r
    }

    /// Highest coefficient total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(|p| p.total_degree()).max()
    }

    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(|p| p.min_total_degree()).min()
    }

    /// Re-express over a space containing every variable in use.
    pub fn embed(&self, target: &Arc<VariableSpace>) -> Result<Self> {
        if VariableSpace::same(&self.space, target) {
            return Ok(self.clone());
        }
        let mut r = Self::zero(target, self.degree);
        for (k, p) in &self.terms {
            let idx = k
                .indices()
                .iter()
                .map(|&i| target.require(self.space.name(i as usize)))
                .collect::<Result<Vec<_>>>()?;
            let m = Self::term(p.embed(target)?, &idx);
            r.add_assign(&m);
        }
        Ok(r)
    }
}

impl<C: Coefficient + CoeffMul<Scalar, Output = C>> Multivector<C> {
    /// Interior product ι_{df}: the left derivative weighted by ∂f/∂xⱼ.
    pub fn interior(&self, f: &Polynomial) -> Result<Self> {
        self.check(f.space())?;
        if self.degree == 0 {
            return Err(Error::TooManyForms { forms: 1, degree: 0 });
        }
        let mut r = Self::zero(&self.space, self.degree - 1);
        for j in 0..self.space.len() {
            if !f.depends_on(j) {
                continue;
            }
            let fj = f.derivative(j);
            let lp = self.left_partial(j);
            for (k, p) in lp.terms {
                r.add_term(k, p.mul(&fj));
            }
        }
        Ok(r)
    }

    /// Evaluate on exact forms df₁, df₂, … in order (left interior products);
    /// `contract(∂x∧∂y, [dx, dy]) = 1`.
    pub fn contract(&self, forms: &[Polynomial]) -> Result<Self> {
        if forms.len() > self.degree {
            return Err(Error::TooManyForms { forms: forms.len(), degree: self.degree });
        }
        let mut r = self.clone();
        for f in forms {
            r = r.interior(f)?;
        }
        Ok(r)
    }

    /// The scalar part of a degree-0 multivector.
    pub fn scalar_part(&self) -> Poly<C> {
        if self.degree == 0 {
            self.coefficient(&SkewMonomial::empty())
        } else {
            Poly::zero(&self.space)
        }
    }
}

impl<C: Coefficient> Multivector<C>
where
    Poly<C>: fmt::Display,
{
    /// One term per line, continuation lines prefixed by `+ `.
    pub fn to_listing(&self) -> String {
        if self.terms.is_empty() {
            return "0\n".into();
        }
        let mut s = String::new();
        for (n, (k, p)) in self.terms.iter().enumerate() {
            if n > 0 {
                s.push_str("+ ");
            }
            s.push_str(&self.fmt_term(k, p));
            s.push('\n');
        }
        s
    }

    fn fmt_term(&self, k: &SkewMonomial, p: &Poly<C>) -> String {
        let mut s = format!("({p})");
        for (n, &i) in k.indices().iter().enumerate() {
            s.push(if n == 0 { '*' } else { '^' });
            s.push('d');
            s.push_str(self.space.name(i as usize));
        }
        s
    }
}

impl<C: Coefficient> fmt::Display for Multivector<C>
where
    Poly<C>: fmt::Display,
    C: TermDisplay,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, p)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&self.fmt_term(k, p))?;
        }
        Ok(())
    }
}
