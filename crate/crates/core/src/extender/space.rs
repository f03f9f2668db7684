use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactring::{Polynomial, Scalar, VariableSpace};
use crate::invariants::QuotientPresentation;

/// Family of a wedge pair of target coordinates, in the order the Z-block
/// is laid out: aa, ax, ay, xx, yy, xy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairKind {
    AA,
    AX,
    AY,
    XX,
    YY,
    XY,
}

impl PairKind {
    pub fn prefix(self) -> &'static str {
        match self {
            PairKind::AA => "aa",
            PairKind::AX => "ax",
            PairKind::AY => "ay",
            PairKind::XX => "xx",
            PairKind::YY => "yy",
            PairKind::XY => "xy",
        }
    }
}

/// The target coordinates g = (a, x, y) together with one coordinate
/// (uv)_{ij} for every wedge pair u∧v, u < v.
#[derive(Clone, Debug)]
pub struct ExtensionSpace {
    pub quotient: QuotientPresentation,
    pub space: Arc<VariableSpace>,
    /// Z coordinate k (at position g_len + k) stands for g_u ∧ g_v.
    pub pairs: Vec<(usize, usize)>,
    pub kinds: Vec<PairKind>,
    pair_index: HashMap<(usize, usize), usize>,
}

impl ExtensionSpace {
    pub fn new(n: usize) -> Result<Self> {
        let quotient = QuotientPresentation::new(n)?;
        let t = &quotient.target;
        let glen = t.len();
        let a: Vec<usize> = (0..4).collect();
        let x: Vec<usize> = (0..=n).map(|k| 4 + k).collect();
        let y: Vec<usize> = (0..=n).map(|k| 5 + n + k).collect();
        let wide = n >= 10;
        let label = |kind: PairKind, i: usize, j: usize| {
            if wide {
                format!("{}_{i}_{j}", kind.prefix())
            } else {
                format!("{}{i}{j}", kind.prefix())
            }
        };
        let mut pairs = Vec::new();
        let mut kinds = Vec::new();
        let mut names: Vec<String> = t.names().to_vec();
        let mut push = |kind, (i, u): (usize, usize), (j, v): (usize, usize)| {
            pairs.push((u, v));
            kinds.push(kind);
            names.push(label(kind, i, j));
        };
        let ix = |v: &[usize], i: usize| (i, v[i]);
        for i in 0..4 {
            for j in i + 1..4 {
                push(PairKind::AA, ix(&a, i), ix(&a, j));
            }
        }
        for (kind, other) in [(PairKind::AX, &x), (PairKind::AY, &y)] {
            for i in 0..4 {
                for j in 0..=n {
                    push(kind, ix(&a, i), ix(other, j));
                }
            }
        }
        for (kind, v) in [(PairKind::XX, &x), (PairKind::YY, &y)] {
            for i in 0..=n {
                for j in i + 1..=n {
                    push(kind, ix(v, i), ix(v, j));
                }
            }
        }
        for i in 0..=n {
            for j in 0..=n {
                push(PairKind::XY, ix(&x, i), ix(&y, j));
            }
        }
        let gradings = t
            .gradings()
            .iter()
            .filter(|g| g.name != "total")
            .map(|g| {
                let mut w = g.weights.clone();
                w.extend(pairs.iter().map(|&(u, v)| g.weights[u] + g.weights[v]));
                (g.name.clone(), w)
            })
            .collect::<Vec<_>>();
        let space = VariableSpace::with_gradings(names, gradings)?;
        let pair_index = pairs.iter().enumerate().map(|(k, &p)| (p, glen + k)).collect();
        Ok(ExtensionSpace { quotient, space, pairs, kinds, pair_index })
    }

    pub fn n(&self) -> usize {
        self.quotient.n
    }

    /// Number of target (non-Z) coordinates.
    pub fn g_len(&self) -> usize {
        self.quotient.target.len()
    }

    pub fn is_z(&self, i: usize) -> bool {
        i >= self.g_len()
    }

    /// Position of the Z coordinate for g_u ∧ g_v and the sign relating them.
    pub fn z_index(&self, u: usize, v: usize) -> Option<(usize, i64)> {
        if u < v {
            self.pair_index.get(&(u, v)).map(|&k| (k, 1))
        } else {
            self.pair_index.get(&(v, u)).map(|&k| (k, -1))
        }
    }

    /// The pair (u, v) behind Z coordinate `i`.
    pub fn pair_of(&self, i: usize) -> Option<(usize, usize)> {
        i.checked_sub(self.g_len()).and_then(|k| self.pairs.get(k).copied())
    }

    /// g_u ∧ g_v as a linear polynomial in the Z coordinates.
    pub fn wedge_var(&self, u: usize, v: usize) -> Polynomial {
        match self.z_index(u, v) {
            Some((k, s)) => Polynomial::var_at(&self.space, k).scale(&Scalar::from_int(s)),
            None => Polynomial::zero(&self.space),
        }
    }

    /// Bilinear extension of [`ExtensionSpace::wedge_var`] to linear forms in g.
    pub fn wedge_linear(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.space);
        for (u, a) in linear_coords(p)? {
            for (v, b) in linear_coords(q)? {
                out.add_assign(&self.wedge_var(u, v).scale(&(&a * &b)));
            }
        }
        Ok(out)
    }

    pub fn embed_target(&self, p: &Polynomial) -> Result<Polynomial> {
        p.embed(&self.space)
    }

    /// Substitution sending g to the Hilbert map and every Z coordinate to 0.
    pub fn full_map(&self) -> Vec<Option<Polynomial>> {
        let zero = Polynomial::zero(&self.quotient.source);
        let mut m: Vec<Option<Polynomial>> = self.quotient.hilbert_map.iter().cloned().map(Some).collect();
        m.extend(self.pairs.iter().map(|_| Some(zero.clone())));
        m
    }

    pub fn pullback(&self, p: &Polynomial) -> Result<Polynomial> {
        p.substitute_indexed(&self.full_map(), &self.quotient.source)
    }
}

/// (index, coefficient) pairs of a homogeneous linear polynomial.
pub(crate) fn linear_coords(p: &Polynomial) -> Result<Vec<(usize, Scalar)>> {
    p.terms()
        .map(|(m, c)| {
            let mut s = m.support();
            match (s.next(), s.next()) {
                (Some((i, 1)), None) => Ok((i, c.clone())),
                _ => Err(Error::NotLinear),
            }
        })
        .collect()
}
