use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::coeff::{CoeffMul, Coefficient};
use super::scalar::Scalar;

/// Named scalar unknown (`K97`, `l0`, `L33`).  Ordered naturally: alphabetic
/// prefix first, then the numeric suffix by value.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Unknown(Arc<str>);

impl Unknown {
    pub fn new(name: &str) -> Self {
        Unknown(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn split(&self) -> (&str, &str) {
        let s: &str = &self.0;
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        s.split_at(cut)
    }
}

impl Ord for Unknown {
    fn cmp(&self, other: &Self) -> Ordering {
        let (pa, na) = self.split();
        let (pb, nb) = other.split();
        pa.cmp(pb)
            .then_with(|| {
                let ta = na.trim_start_matches('0');
                let tb = nb.trim_start_matches('0');
                ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb))
            })
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Unknown {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `constant + sum(coeff * unknown)`, no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AffineExpression {
    constant: Scalar,
    linear: BTreeMap<Unknown, Scalar>,
}

impl AffineExpression {
    pub fn constant(c: Scalar) -> Self {
        AffineExpression { constant: c, linear: BTreeMap::new() }
    }

    pub fn unknown(u: Unknown) -> Self {
        Self::term(u, Scalar::one())
    }

    pub fn term(u: Unknown, c: Scalar) -> Self {
        let mut linear = BTreeMap::new();
        if !c.is_zero() {
            linear.insert(u, c);
        }
        AffineExpression { constant: Scalar::zero(), linear }
    }

    pub fn constant_part(&self) -> &Scalar {
        &self.constant
    }

    pub fn linear_part(&self) -> &BTreeMap<Unknown, Scalar> {
        &self.linear
    }

    pub fn coefficient(&self, u: &Unknown) -> Scalar {
        self.linear.get(u).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.linear.is_empty()
    }

    pub fn unknowns(&self) -> impl Iterator<Item = &Unknown> {
        self.linear.keys()
    }

    pub fn add_term(&mut self, u: &Unknown, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.linear.get_mut(u) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.linear.remove(u);
                }
            }
            None => {
                self.linear.insert(u.clone(), c.clone());
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg_ref())
    }

    /// Replace unknowns by affine expressions; unknowns absent from the map stay.
    pub fn substitute(&self, assign: &BTreeMap<Unknown, AffineExpression>) -> Self {
        let mut r = AffineExpression::constant(self.constant.clone());
        for (u, c) in &self.linear {
            match assign.get(u) {
                Some(e) => r.add_assign_ref(&e.scale(c)),
                None => r.add_term(u, c),
            }
        }
        r
    }

    /// Value under a full assignment; `None` if some unknown is unassigned.
    pub fn evaluate(&self, values: &BTreeMap<Unknown, Scalar>) -> Option<Scalar> {
        let mut acc = self.constant.clone();
        for (u, c) in &self.linear {
            acc += &(c * values.get(u)?);
        }
        Some(acc)
    }

    /// Value with every unknown missing from `values` taken to be zero.
    pub fn evaluate_or_zero(&self, values: &BTreeMap<Unknown, Scalar>) -> Scalar {
        let mut acc = self.constant.clone();
        for (u, c) in &self.linear {
            if let Some(v) = values.get(u) {
                acc += &(c * v);
            }
        }
        acc
    }
}

impl Coefficient for AffineExpression {
    fn zero() -> Self {
        AffineExpression::default()
    }
    fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.is_empty()
    }
    fn add_assign_ref(&mut self, o: &Self) {
        self.constant += &o.constant;
        for (u, c) in &o.linear {
            self.add_term(u, c);
        }
    }
    fn neg_ref(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }
    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        AffineExpression {
            constant: &self.constant * s,
            linear: self.linear.iter().map(|(u, c)| (u.clone(), c * s)).collect(),
        }
    }
    fn from_scalar(s: Scalar) -> Self {
        AffineExpression::constant(s)
    }
}

impl CoeffMul<Scalar> for AffineExpression {
    type Output = AffineExpression;
    fn cmul(&self, r: &Scalar) -> AffineExpression {
        self.scale(r)
    }
}

impl CoeffMul<AffineExpression> for Scalar {
    type Output = AffineExpression;
    fn cmul(&self, r: &AffineExpression) -> AffineExpression {
        r.scale(self)
    }
}

impl From<Scalar> for AffineExpression {
    fn from(s: Scalar) -> Self {
        AffineExpression::constant(s)
    }
}

impl fmt::Display for AffineExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (u, c) in &self.linear {
            write_signed(f, c, Some(u), first)?;
            first = false;
        }
        if !self.constant.is_zero() || first {
            write_signed(f, &self.constant, None, first)?;
        }
        Ok(())
    }
}

fn write_signed(f: &mut fmt::Formatter<'_>, c: &Scalar, u: Option<&Unknown>, first: bool) -> fmt::Result {
    let neg = c.is_negative_like();
    let mag = if neg { -c } else { c.clone() };
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    match u {
        Some(u) if mag.is_one() => write!(f, "{}", u),
        Some(u) => write!(f, "{}*{}", mag, u),
        None => write!(f, "{}", mag),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_unknown_order() {
        let mut v: Vec<Unknown> = ["K10", "K2", "l0", "K100", "L33", "K9"].iter().map(|s| Unknown::new(s)).collect();
        v.sort();
        let names: Vec<&str> = v.iter().map(|u| u.name()).collect();
        assert_eq!(names, ["K2", "K9", "K10", "K100", "L33", "l0"]);
    }

    #[test]
    fn display_and_substitute() {
        let k1 = Unknown::new("K1");
        let k2 = Unknown::new("K2");
        let mut e = AffineExpression::term(k1.clone(), Scalar::from_int(2));
        e.add_term(&k2, &Scalar::from_int(-1));
        e.add_assign_ref(&AffineExpression::constant(Scalar::from_int(-18)));
        assert_eq!(e.to_string(), "2*K1 - K2 - 18");
        let mut a = BTreeMap::new();
        a.insert(k2.clone(), AffineExpression::constant(Scalar::from_int(4)));
        assert_eq!(e.substitute(&a).to_string(), "2*K1 - 22");
    }
}
