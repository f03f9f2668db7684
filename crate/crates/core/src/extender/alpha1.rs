use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactring::{AffineExpression, Coefficient, Monomial, Poly, Polynomial, Scalar, Unknown};
use crate::multivec::Multivector;

use super::space::{linear_coords, ExtensionSpace, PairKind};

/// α¹_ρ: the coadjoint derivation of β¹ extended to Λ²g,
/// α¹(dw, d(u∧v)) = {w,u}∧v + u∧{w,v}.
pub fn alpha1_rho(ext: &ExtensionSpace) -> Result<Multivector> {
    let lp = ext.quotient.lie_poisson.embed(&ext.space)?;
    let g = ext.g_len();
    let var = |i| Polynomial::var_at(&ext.space, i);
    let bracket = |w: usize, u: usize| lp.component(&[w, u]);
    let mut out = Multivector::zero(&ext.space, 2);
    for w in 0..g {
        for (k, &(u, v)) in ext.pairs.iter().enumerate() {
            let img = ext.wedge_linear(&bracket(w, u), &var(v))?.try_add(&ext.wedge_linear(&var(u), &bracket(w, v))?)?;
            if !img.is_zero() {
                out.add_assign(&Multivector::term(img, &[w, g + k]));
            }
        }
    }
    Ok(out)
}

/// Partition of the Z coordinates into blocks, each carrying one scalar of
/// the cocycle α¹_c(du, dv) = λ_{uv}·(uv).
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleBlocks {
    /// block name → Z coordinate indices (into the big space)
    pub blocks: BTreeMap<String, Vec<usize>>,
}

impl CocycleBlocks {
    /// One block per Z coordinate, named after it.
    pub fn per_pair(ext: &ExtensionSpace) -> Self {
        let g = ext.g_len();
        let blocks = (0..ext.pairs.len()).map(|k| (ext.space.name(g + k).to_string(), vec![g + k])).collect();
        CocycleBlocks { blocks }
    }

    /// Blocks by pair family, restricted to the families listed.
    pub fn by_kind(ext: &ExtensionSpace, kinds: &[(PairKind, &str)]) -> Self {
        let g = ext.g_len();
        let mut blocks: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (k, kind) in ext.kinds.iter().enumerate() {
            if let Some((_, name)) = kinds.iter().find(|(kk, _)| kk == kind) {
                blocks.entry(name.to_string()).or_default().push(g + k);
            }
        }
        CocycleBlocks { blocks }
    }

    /// Symbolic scalars: every block gets the unknown of its own name.
    pub fn unknowns(&self) -> BTreeMap<String, AffineExpression> {
        self.blocks.keys().map(|b| (b.clone(), AffineExpression::unknown(Unknown::new(b)))).collect()
    }
}

/// α¹_c for the given block scalars; a block without a scalar is an error.
pub fn alpha1_c(
    ext: &ExtensionSpace,
    blocks: &CocycleBlocks,
    scalars: &BTreeMap<String, AffineExpression>,
) -> Result<Multivector<AffineExpression>> {
    let mut out = Multivector::zero(&ext.space, 2);
    for (name, zs) in &blocks.blocks {
        let lambda = scalars.get(name).ok_or_else(|| Error::MissingBlockScalar(name.clone()))?;
        if lambda.is_zero() {
            continue;
        }
        for &z in zs {
            let (u, v) = ext.pair_of(z).ok_or_else(|| Error::Invalid(format!("`{}` is not a pair coordinate", ext.space.name(z))))?;
            let c = Poly::from_terms(&ext.space, [(Monomial::var(ext.space.len(), z), lambda.clone())]);
            out.add_assign(&Multivector::term(c, &[u, v]));
        }
    }
    Ok(out)
}

/// Per-pair scalars λ_{uv} read off a bivector whose (du, dv) entry contains
/// λ_{uv}·(uv); entries with no such term get 0.
pub fn cocycle_scalars_of(ext: &ExtensionSpace, pi: &Multivector) -> Result<BTreeMap<String, Scalar>> {
    let g = ext.g_len();
    let mut out = BTreeMap::new();
    for (k, &(u, v)) in ext.pairs.iter().enumerate() {
        let entry = pi.component(&[u, v]);
        let lin = entry.homogeneous_part(1);
        let c = linear_coords(&lin)?.into_iter().find(|(i, _)| *i == g + k).map(|(_, c)| c).unwrap_or_else(Scalar::zero);
        out.insert(ext.space.name(g + k).to_string(), c);
    }
    Ok(out)
}

/// Per-pair scalars that are constant on each of the xx, xy and yy families
/// and zero on the rest.
pub fn uniform_cocycle(ext: &ExtensionSpace, xx: &Scalar, xy: &Scalar, yy: &Scalar) -> BTreeMap<String, Scalar> {
    (ext.g_len()..ext.space.len())
        .filter_map(|i| {
            let s = match ext.kinds[i - ext.g_len()] {
                PairKind::XX => xx,
                PairKind::XY => xy,
                PairKind::YY => yy,
                _ => return None,
            };
            Some((ext.space.name(i).to_string(), s.clone()))
        })
        .collect()
}
