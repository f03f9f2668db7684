use std::collections::BTreeMap;

use super::poly::{Monomial, Polynomial};
use super::scalar::Scalar;

/// Incrementally maintained reduced row-echelon basis of a span of vectors,
/// keyed by sparse column labels.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone> {
    /// pivot column → row with a 1 in that column and 0 in every other pivot column
    rows: BTreeMap<K, BTreeMap<K, Scalar>>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        EchelonBasis { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; the remainder is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if let Some(c) = v.get(p).cloned() {
                for (k, r) in row {
                    let e = v.entry(k.clone()).or_insert_with(Scalar::zero);
                    *e -= &(&c * r);
                }
                v.retain(|_, x| !x.is_zero());
            }
        }
        v
    }

    pub fn contains(&self, v: &BTreeMap<K, Scalar>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Add a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: &BTreeMap<K, Scalar>) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero");
        let r: BTreeMap<K, Scalar> = r.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                for (k, x) in &r {
                    let e = row.entry(k.clone()).or_insert_with(Scalar::zero);
                    *e -= &(&c * x);
                }
                row.retain(|_, x| !x.is_zero());
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn basis(&self) -> impl Iterator<Item = &BTreeMap<K, Scalar>> {
        self.rows.values()
    }
}

/// Coordinates of a polynomial in the monomial basis.
pub fn poly_vector(p: &Polynomial) -> BTreeMap<Monomial, Scalar> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Rank of a list of polynomials.
pub fn poly_rank<'a>(ps: impl IntoIterator<Item = &'a Polynomial>) -> usize {
    let mut b = EchelonBasis::new();
    for p in ps {
        b.insert(&poly_vector(p));
    }
    b.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        let v = |xs: &[i64]| -> BTreeMap<usize, Scalar> {
            xs.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, Scalar::from_int(x))).collect()
        };
        let mut b = EchelonBasis::new();
        assert!(b.insert(&v(&[1, 2, 3])));
        assert!(b.insert(&v(&[0, 1, 1])));
        assert!(!b.insert(&v(&[2, 5, 7])));
        assert!(b.contains(&v(&[1, 3, 4])));
        assert_eq!(b.rank(), 2);
    }
}
