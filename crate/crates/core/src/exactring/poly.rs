use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::coeff::{CoeffMul, Coefficient};
use super::scalar::Scalar;
use super::space::VariableSpace;
use crate::error::{Error, Result};

/// Exponent vector with cached total degree.  Ordered graded-lexicographically
/// by variable position.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { deg: 0, exps: vec![0; nvars].into_boxed_slice() }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { deg, exps: exps.into_boxed_slice() }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.deg
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let exps: Box<[u32]> = self.exps.iter().zip(o.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { deg: self.deg + o.deg, exps }
    }

    /// Divide by the variable `i` once; `None` if absent.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.deg -= 1;
        Some(m)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// Weighted degree: dot product with `weights`.
    pub fn weight(&self, weights: &[i64]) -> i64 {
        self.exps.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| self.exps.cmp(&o.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial over a named variable space.  Terms are kept in a
/// graded-lex ordered map with no zero coefficients.
#[derive(Clone, Debug)]
pub struct Poly<C: Coefficient = Scalar> {
    space: Arc<VariableSpace>,
    terms: BTreeMap<Monomial, C>,
}

pub type Polynomial = Poly<Scalar>;

impl<C: Coefficient> PartialEq for Poly<C> {
    fn eq(&self, o: &Self) -> bool {
        VariableSpace::same(&self.space, &o.space) && self.terms == o.terms
    }
}

const PAR_THRESHOLD: usize = 1 << 14;

impl<C: Coefficient> Poly<C> {
    pub fn zero(space: &Arc<VariableSpace>) -> Self {
        Poly { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(space: &Arc<VariableSpace>, c: C) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Monomial::one(space.len()), c);
        p
    }

    pub fn from_terms(space: &Arc<VariableSpace>, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(space);
        for (m, c) in terms {
            assert_eq!(m.exps.len(), space.len(), "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one(self.space.len()))
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check(&self, o: &Arc<VariableSpace>) -> Result<()> {
        if VariableSpace::same(&self.space, o) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(&o.space)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(&o.space)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg_ref());
        }
        Ok(r)
    }

    pub fn add_assign(&mut self, o: &Self) {
        self.check(&o.space).expect("polynomial spaces differ");
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        Poly { space: self.space.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(&self.space);
        }
        Poly { space: self.space.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(s))).collect() }
    }

    /// Product with a polynomial over another coefficient domain.
    pub fn try_mul<D>(&self, o: &Poly<D>) -> Result<Poly<<C as CoeffMul<D>>::Output>>
    where
        C: CoeffMul<D>,
        D: Coefficient,
    {
        self.check(&o.space)?;
        let space = &self.space;
        if self.terms.len() * o.terms.len() < PAR_THRESHOLD {
            let mut acc = Poly::zero(space);
            for (m1, c1) in &self.terms {
                for (m2, c2) in &o.terms {
                    acc.add_term(m1.mul(m2), c1.cmul(c2));
                }
            }
            return Ok(acc);
        }
        // Partition left terms across workers; exact merge is order independent.
        let left: Vec<(&Monomial, &C)> = self.terms.iter().collect();
        let chunk = (left.len() / rayon::current_num_threads().max(1)).max(1);
        let parts: Vec<BTreeMap<Monomial, <C as CoeffMul<D>>::Output>> = left
            .par_chunks(chunk)
            .map(|ch| {
                let mut acc = Poly::zero(space);
                for (m1, c1) in ch {
                    for (m2, c2) in &o.terms {
                        acc.add_term(m1.mul(m2), c1.cmul(c2));
                    }
                }
                acc.terms
            })
            .collect();
        let mut acc = Poly::zero(space);
        for part in parts {
            for (m, c) in part {
                acc.add_term(m, c);
            }
        }
        Ok(acc)
    }

    pub fn mul<D>(&self, o: &Poly<D>) -> Poly<<C as CoeffMul<D>>::Output>
    where
        C: CoeffMul<D>,
        D: Coefficient,
    {
        self.try_mul(o).expect("polynomial spaces differ")
    }

    /// Partial derivative with respect to variable position `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(&self.space);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e > 0 {
                r.add_term(m.lower(i).unwrap(), c.scale(&Scalar::from_int(e as i64)));
            }
        }
        r
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exps[i] > 0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.deg)
    }

    /// Lowest total degree among the terms; `None` for zero.
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.deg)
    }

    /// Maximum weighted degree under a named grading; `None` for zero.
    pub fn degree(&self, grading: &str) -> Result<Option<i64>> {
        let w = self.space.grading(grading)?;
        Ok(self.terms.keys().map(|m| m.weight(w)).max())
    }

    /// Homogeneous components under a named grading.
    pub fn grade_parts(&self, grading: &str) -> Result<BTreeMap<i64, Self>> {
        let w = self.space.grading(grading)?.to_vec();
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight(&w)).or_insert_with(|| Self::zero(&self.space)).add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Component of a single total degree.
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        Poly {
            space: self.space.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.deg == deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut r = Poly::zero(&self.space);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), f(c));
        }
        r
    }

    /// Re-express over another space that contains every variable used here.
    pub fn embed(&self, target: &Arc<VariableSpace>) -> Result<Self> {
        if VariableSpace::same(&self.space, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.space.names().iter().map(|n| target.index_of(n)).collect();
        let mut r = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, k) in m.support() {
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.space.name(i).to_string()))?;
                e[j] = k;
            }
            r.add_term(Monomial::from_exponents(e), c.clone());
        }
        Ok(r)
    }

    /// Substitute a polynomial over `target` for each source variable in use.
    pub fn substitute_indexed(&self, assign: &[Option<Polynomial>], target: &Arc<VariableSpace>) -> Result<Poly<<C as CoeffMul<Scalar>>::Output>>
    where
        C: CoeffMul<Scalar>,
    {
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(target, Scalar::one());
            for (i, e) in m.support() {
                let base = assign
                    .get(i)
                    .and_then(|a| a.as_ref())
                    .ok_or_else(|| Error::Unassigned(self.space.name(i).to_string()))?;
                base.check(target)?;
                let pw = powers.entry((i, e)).or_insert_with(|| base.pow(e)).clone();
                prod = prod.mul(&pw);
            }
            for (pm, pc) in &prod.terms {
                acc.add_term(pm.clone(), c.cmul(pc));
            }
        }
        Ok(acc)
    }

    /// Substitute by variable name.
    pub fn substitute(&self, assign: &HashMap<String, Polynomial>, target: &Arc<VariableSpace>) -> Result<Poly<<C as CoeffMul<Scalar>>::Output>>
    where
        C: CoeffMul<Scalar>,
    {
        let indexed: Vec<Option<Polynomial>> = self.space.names().iter().map(|n| assign.get(n).cloned()).collect();
        self.substitute_indexed(&indexed, target)
    }
}

impl Poly<Scalar> {
    pub fn one(space: &Arc<VariableSpace>) -> Self {
        Self::constant(space, Scalar::one())
    }

    pub fn var(space: &Arc<VariableSpace>, name: &str) -> Result<Self> {
        let i = space.require(name)?;
        Ok(Self::var_at(space, i))
    }

    pub fn var_at(space: &Arc<VariableSpace>, i: usize) -> Self {
        let mut p = Self::zero(space);
        p.add_term(Monomial::var(space.len(), i), Scalar::one());
        p
    }

    pub fn monomial(space: &Arc<VariableSpace>, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(space);
        p.add_term(m, c);
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.space);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Naive term-by-term product used as an independent cross-check.
    pub fn mul_naive(&self, o: &Self) -> Self {
        let mut flat: Vec<(Monomial, Scalar)> = Vec::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                flat.push((m1.mul(m2), c1 * c2));
            }
        }
        let mut out: Vec<(Monomial, Scalar)> = Vec::new();
        for (m, c) in flat {
            match out.iter_mut().find(|(mm, _)| *mm == m) {
                Some((_, cc)) => *cc += &c,
                None => out.push((m, c)),
            }
        }
        Poly::from_terms(&self.space, out)
    }

    /// Divide every coefficient by `s`.
    pub fn div_scalar(&self, s: &Scalar) -> Self {
        self.scale(&s.inv().expect("division by zero"))
    }
}

impl<C: Coefficient> fmt::Display for Poly<C>
where
    C: TermDisplay,
{
    /// Grammar form, leading (largest) term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(&self.space, m);
            c.write_term(f, mono.as_deref(), k == 0)?;
        }
        Ok(())
    }
}

pub(crate) fn fmt_monomial(space: &VariableSpace, m: &Monomial) -> Option<String> {
    if m.deg == 0 {
        return None;
    }
    let parts: Vec<String> = m
        .support()
        .map(|(i, e)| if e == 1 { space.name(i).to_string() } else { format!("{}^{}", space.name(i), e) })
        .collect();
    Some(parts.join("*"))
}

/// How a coefficient prints next to its monomial.
pub trait TermDisplay {
    fn write_term(&self, f: &mut fmt::Formatter<'_>, mono: Option<&str>, first: bool) -> fmt::Result;
}

impl TermDisplay for Scalar {
    fn write_term(&self, f: &mut fmt::Formatter<'_>, mono: Option<&str>, first: bool) -> fmt::Result {
        let neg = self.is_negative_like();
        let mag = if neg { -self } else { self.clone() };
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
            (true, false) => {}
        }
        match mono {
            None => write!(f, "{}", mag),
            Some(m) if mag.is_one() => f.write_str(m),
            Some(m) => write!(f, "{}*{}", mag, m),
        }
    }
}

impl TermDisplay for super::affine::AffineExpression {
    fn write_term(&self, f: &mut fmt::Formatter<'_>, mono: Option<&str>, first: bool) -> fmt::Result {
        if !first {
            f.write_str(" + ")?;
        }
        match mono {
            None => write!(f, "[{}]", self),
            Some(m) => write!(f, "[{}]*{}", self, m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::parse::parse_polynomial;

    fn sp() -> Arc<VariableSpace> {
        VariableSpace::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let s = sp();
        let a = parse_polynomial("x+y", &s).unwrap();
        let b = parse_polynomial("x-y", &s).unwrap();
        assert_eq!(a.mul(&b).to_string(), "x^2 - y^2");
    }

    #[test]
    fn zero_keeps_space_and_has_no_degree() {
        let s = sp();
        let z = Polynomial::zero(&s);
        assert_eq!(z.total_degree(), None);
        assert!(Arc::ptr_eq(z.space(), &s));
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn mismatched_spaces_error() {
        let a = Polynomial::var(&sp(), "x").unwrap();
        let other = VariableSpace::new(["x", "w"]).unwrap();
        let b = Polynomial::var(&other, "x").unwrap();
        assert_eq!(a.try_add(&b), Err(Error::SpaceMismatch));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn grade_parts_total() {
        let s = VariableSpace::new(["a0", "a1", "x0"]).unwrap();
        let p = parse_polynomial("a0*a1 + x0", &s).unwrap();
        let parts = p.grade_parts("total").unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&2].to_string(), "a0*a1");
        assert_eq!(parts[&1].to_string(), "x0");
        assert!(p.grade_parts("nope").is_err());
    }

    #[test]
    fn substitution_kernel_element() {
        let src = VariableSpace::new(["u", "v", "w"]).unwrap();
        let tgt = VariableSpace::new(["z", "w"]).unwrap();
        let p = parse_polynomial("u*w - v", &src).unwrap();
        let mut a = HashMap::new();
        a.insert("u".to_string(), parse_polynomial("z^3", &tgt).unwrap());
        a.insert("v".to_string(), parse_polynomial("z^3*w", &tgt).unwrap());
        a.insert("w".to_string(), parse_polynomial("w", &tgt).unwrap());
        assert!(p.substitute(&a, &tgt).unwrap().is_zero());
        a.remove("v");
        assert_eq!(p.substitute(&a, &tgt).unwrap_err(), Error::Unassigned("v".into()));
    }

    #[test]
    fn parallel_product_matches_serial() {
        let s = sp();
        let p = parse_polynomial("x + 2*y - 3*z + 1", &s).unwrap().pow(12);
        let q = parse_polynomial("x - y + 5/7*z - 2", &s).unwrap().pow(10);
        assert!(p.len() * q.len() >= PAR_THRESHOLD);
        let fast = p.mul(&q);
        let mut slow = Polynomial::zero(&s);
        for (m1, c1) in p.terms() {
            for (m2, c2) in q.terms() {
                slow.add_term(m1.mul(m2), c1 * c2);
            }
        }
        assert_eq!(fast, slow);
    }
}
