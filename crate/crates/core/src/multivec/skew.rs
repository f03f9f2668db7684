use std::fmt;

/// Canonical wedge ∂v_{i₁}∧…∧∂v_{i_k} with strictly increasing positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewMonomial(Box<[u32]>);

impl SkewMonomial {
    pub fn empty() -> Self {
        SkewMonomial(Box::new([]))
    }

    /// Sort an arbitrary index list.  Returns the canonical monomial and the
    /// sign of the sorting permutation, or `None` when an index repeats.
    pub fn normalize(indices: &[u32]) -> Option<(SkewMonomial, i8)> {
        let mut v = indices.to_vec();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((SkewMonomial(v.into_boxed_slice()), sign))
    }

    /// Construct from an already strictly increasing list.
    pub fn from_sorted(indices: Vec<u32>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        SkewMonomial(indices.into_boxed_slice())
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// 0-based position of variable `i`, if present.
    pub fn position(&self, i: u32) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.position(i).is_some()
    }

    pub fn remove_at(&self, k: usize) -> SkewMonomial {
        let mut v = self.0.to_vec();
        v.remove(k);
        SkewMonomial(v.into_boxed_slice())
    }

    /// Product of two canonical monomials: `None` if they share a factor,
    /// otherwise the merged monomial and the shuffle sign.
    pub fn wedge(&self, o: &SkewMonomial) -> Option<(SkewMonomial, i8)> {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut odd = false;
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // b[j] jumps over the a[i..] still pending
                    if (a.len() - i) % 2 == 1 {
                        odd = !odd;
                    }
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((SkewMonomial(out.into_boxed_slice()), if odd { -1 } else { 1 }))
    }
}

impl fmt::Display for SkewMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_signs() {
        assert_eq!(SkewMonomial::normalize(&[2, 1]).unwrap().1, -1);
        assert_eq!(SkewMonomial::normalize(&[3, 1, 2]).unwrap().1, 1);
        assert!(SkewMonomial::normalize(&[1, 2, 1]).is_none());
    }

    #[test]
    fn wedge_matches_normalize() {
        let a = SkewMonomial::from_sorted(vec![1, 4, 6]);
        let b = SkewMonomial::from_sorted(vec![0, 5]);
        let (m, s) = a.wedge(&b).unwrap();
        let (n, t) = SkewMonomial::normalize(&[1, 4, 6, 0, 5]).unwrap();
        assert_eq!((m, s), (n, t));
    }
}
