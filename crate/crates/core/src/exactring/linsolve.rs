use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::affine::{AffineExpression, Unknown};
use super::coeff::Coefficient;
use super::scalar::Scalar;

/// Equations `expr = 0`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearSystem {
    pub equations: Vec<AffineExpression>,
}

impl LinearSystem {
    pub fn new(equations: Vec<AffineExpression>) -> Self {
        LinearSystem { equations }
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn unknowns(&self) -> BTreeSet<Unknown> {
        self.equations.iter().flat_map(|e| e.unknowns().cloned()).collect()
    }

    /// Replace unknowns in every equation and drop the ones that become `0 = 0`.
    pub fn substitute(&self, assign: &BTreeMap<Unknown, AffineExpression>) -> LinearSystem {
        LinearSystem {
            equations: self.equations.iter().map(|e| e.substitute(assign)).filter(|e| !e.is_zero()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    /// Pivot unknowns expressed through the free ones.
    pub assignments: BTreeMap<Unknown, AffineExpression>,
    pub free: Vec<Unknown>,
}

impl Solution {
    /// Every equation becomes identically zero after substitution.
    pub fn satisfies(&self, sys: &LinearSystem) -> bool {
        sys.equations.iter().all(|e| e.substitute(&self.assignments).is_zero())
    }

    /// Concrete values with all free unknowns set to zero.
    pub fn with_free_zero(&self) -> BTreeMap<Unknown, Scalar> {
        let mut v: BTreeMap<Unknown, Scalar> = self.free.iter().map(|u| (u.clone(), Scalar::zero())).collect();
        for (u, e) in &self.assignments {
            v.insert(u.clone(), e.constant_part().clone());
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    /// Indices of the input equations whose combination yields `c = 0`, `c != 0`.
    Inconsistent { equations: Vec<usize> },
    Solution(Solution),
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Solution(s) => Some(s),
            SolveOutcome::Inconsistent { .. } => None,
        }
    }
}

/// Gaussian integer used inside the fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn mul(&self, o: &GInt) -> GInt {
        GInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn sub(&self, o: &GInt) -> GInt {
        GInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn div_int(&self, g: &BigInt) -> GInt {
        GInt { re: &self.re / g, im: &self.im / g }
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::new(BigRational::from_integer(self.re.clone()), BigRational::from_integer(self.im.clone()))
    }
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: BTreeMap<usize, GInt>,
    constant: GInt,
    origin: BTreeSet<usize>,
}

impl Row {
    fn from_affine(e: &AffineExpression, col: &BTreeMap<Unknown, usize>, idx: usize) -> Row {
        let mut lcm = BigInt::one();
        let mut bump = |r: &BigRational| lcm = lcm.lcm(r.denom());
        bump(e.constant_part().re());
        bump(e.constant_part().im());
        for c in e.linear_part().values() {
            bump(c.re());
            bump(c.im());
        }
        let l = BigRational::from_integer(lcm);
        let conv = |s: &Scalar| GInt { re: (s.re() * &l).to_integer(), im: (s.im() * &l).to_integer() };
        let mut row = Row {
            coeffs: e.linear_part().iter().map(|(u, c)| (col[u], conv(c))).collect(),
            constant: conv(e.constant_part()),
            origin: BTreeSet::from([idx]),
        };
        row.normalize();
        row
    }

    fn normalize(&mut self) {
        let mut g = BigInt::zero();
        for v in self.coeffs.values().chain(std::iter::once(&self.constant)) {
            g = g.gcd(&v.re).gcd(&v.im);
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for v in self.coeffs.values_mut() {
            *v = v.div_int(&g);
        }
        self.constant = self.constant.div_int(&g);
    }

    /// `self := p*self - c*pivot` where `c` is this row's entry in column `col`.
    fn eliminate(&mut self, col: usize, pivot: &Row, p: &GInt) {
        let Some(c) = self.coeffs.remove(&col) else { return };
        let mut next: BTreeMap<usize, GInt> = BTreeMap::new();
        for (k, v) in &self.coeffs {
            next.insert(*k, p.mul(v));
        }
        for (k, v) in &pivot.coeffs {
            if *k == col {
                continue;
            }
            let t = c.mul(v);
            let e = next.entry(*k).or_insert(GInt { re: BigInt::zero(), im: BigInt::zero() });
            *e = e.sub(&t);
        }
        next.retain(|_, v| !v.is_zero());
        self.coeffs = next;
        self.constant = p.mul(&self.constant).sub(&c.mul(&pivot.constant));
        self.origin.extend(pivot.origin.iter().copied());
        self.normalize();
    }
}

/// Exact fraction-free Gauss-Jordan elimination.  The pivot row is the one
/// with the fewest unknowns (ties: lowest position); within it the pivot
/// column is the smallest unknown in natural order.
pub fn solve_linear(sys: &LinearSystem) -> SolveOutcome {
    let unknowns: Vec<Unknown> = sys.unknowns().into_iter().collect();
    let col: BTreeMap<Unknown, usize> = unknowns.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();

    let mut active: Vec<Row> = Vec::new();
    let mut seen: BTreeSet<(Vec<(usize, (BigInt, BigInt))>, (BigInt, BigInt))> = BTreeSet::new();
    for (i, e) in sys.equations.iter().enumerate() {
        let row = Row::from_affine(e, &col, i);
        if row.coeffs.is_empty() {
            if !row.constant.is_zero() {
                return SolveOutcome::Inconsistent { equations: vec![i] };
            }
            continue;
        }
        let key = (
            row.coeffs.iter().map(|(k, v)| (*k, (v.re.clone(), v.im.clone()))).collect(),
            (row.constant.re.clone(), row.constant.im.clone()),
        );
        if seen.insert(key) {
            active.push(row);
        }
    }

    let mut pivots: Vec<(usize, Row)> = Vec::new();
    while !active.is_empty() {
        let (pos, _) = active
            .iter()
            .enumerate()
            .min_by_key(|(i, r)| (r.coeffs.len(), *i))
            .expect("nonempty");
        let row = active.remove(pos);
        let (&pc, p) = row.coeffs.iter().next().expect("row has unknowns");
        let p = p.clone();
        for (_, r) in pivots.iter_mut() {
            if r.coeffs.contains_key(&pc) {
                r.eliminate(pc, &row, &p);
            }
        }
        let mut kept = Vec::with_capacity(active.len());
        for mut r in active.drain(..) {
            if r.coeffs.contains_key(&pc) {
                r.eliminate(pc, &row, &p);
            }
            if r.coeffs.is_empty() {
                if !r.constant.is_zero() {
                    return SolveOutcome::Inconsistent { equations: r.origin.into_iter().collect() };
                }
                continue;
            }
            kept.push(r);
        }
        active = kept;
        pivots.push((pc, row));
    }

    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let mut assignments = BTreeMap::new();
    for (pc, row) in &pivots {
        let p = row.coeffs[pc].to_scalar();
        let inv = p.inv().expect("pivot nonzero");
        let minus_inv = -&inv;
        let mut e = AffineExpression::constant(&row.constant.to_scalar() * &minus_inv);
        for (k, v) in &row.coeffs {
            if k != pc {
                e.add_term(&unknowns[*k], &(&v.to_scalar() * &minus_inv));
            }
        }
        assignments.insert(unknowns[*pc].clone(), e);
    }
    let free = (0..unknowns.len()).filter(|c| !pivot_cols.contains(c)).map(|c| unknowns[c].clone()).collect();
    SolveOutcome::Solution(Solution { assignments, free })
}

/// Rescale an equation so its first nonzero coefficient (unknowns first, then
/// the constant) equals one; used to compare equations up to scale.
pub fn normalize_equation(e: &AffineExpression) -> AffineExpression {
    let lead = e
        .linear_part()
        .values()
        .next()
        .cloned()
        .or_else(|| (!e.constant_part().is_zero()).then(|| e.constant_part().clone()));
    match lead {
        Some(c) => e.scale(&c.inv().expect("nonzero")),
        None => e.clone(),
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn eq(terms: &[(&str, i64)], c: i64) -> AffineExpression {
        let mut e = AffineExpression::constant(Scalar::from_int(c));
        for (n, k) in terms {
            e.add_term(&Unknown::new(n), &Scalar::from_int(*k));
        }
        e
    }

    #[test]
    fn single_equation() {
        let sys = LinearSystem::new(vec![eq(&[("K1", 1)], -2)]);
        let s = solve_linear(&sys);
        let s = s.solution().unwrap();
        assert_eq!(s.assignments[&Unknown::new("K1")].to_string(), "2");
        assert!(s.free.is_empty());
    }

    #[test]
    fn two_by_two() {
        let sys = LinearSystem::new(vec![eq(&[("K1", 1), ("K2", 1)], 0), eq(&[("K1", 1), ("K2", -1)], -2)]);
        let s = solve_linear(&sys);
        let s = s.solution().unwrap();
        assert_eq!(s.assignments[&Unknown::new("K1")].to_string(), "1");
        assert_eq!(s.assignments[&Unknown::new("K2")].to_string(), "-1");
        assert!(s.satisfies(&sys));
    }

    #[test]
    fn free_unknowns_and_inconsistency() {
        let sys = LinearSystem::new(vec![eq(&[("a", 2), ("b", 4), ("c", 1)], 3)]);
        let s = solve_linear(&sys);
        let s = s.solution().unwrap();
        assert_eq!(s.free.len(), 2);
        assert!(s.satisfies(&sys));
        let bad = LinearSystem::new(vec![eq(&[("x", 1), ("y", 1)], -1), eq(&[("x", 2), ("y", 2)], -3), eq(&[("z", 1)], 0)]);
        match solve_linear(&bad) {
            SolveOutcome::Inconsistent { equations } => assert_eq!(equations, vec![0, 1]),
            o => panic!("{o:?}"),
        }
    }
}
