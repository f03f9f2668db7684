use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactring::{LinearSystem, Polynomial, Scalar, Unknown};
use crate::invariants::source_bivector;
use crate::multivec::Multivector;
use crate::schouten::{graded_cascade, jacobiator, w_decompose};

use super::equations::{format_triple, support_triples};
use super::space::{linear_coords, ExtensionSpace};

/// The four conditions under which g ⊕ Z with brackets from π¹ is a Lie
/// algebra: (1) Jacobi for [·,·]_Z, (2) ρ(u) derives [·,·]_Z, (3) ρ is a
/// representation up to ad∘c, (4) the cocycle equation for c.  Each entry
/// counts violated basis instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degree1Report {
    pub z_jacobi: usize,
    pub derivation: usize,
    pub representation: usize,
    pub cocycle: usize,
    /// Jacobi failures of the g-bracket itself.
    pub base_jacobi: usize,
    /// [π¹, π¹] = 0 computed directly.
    pub direct_zero: bool,
}

impl Degree1Report {
    pub fn all_hold(&self) -> bool {
        self.z_jacobi == 0 && self.derivation == 0 && self.representation == 0 && self.cocycle == 0 && self.base_jacobi == 0
    }

    /// The conditions and the direct computation agree.
    pub fn consistent(&self) -> bool {
        self.all_hold() == self.direct_zero
    }
}

/// Check the four conditions for π¹ = β¹ + α¹ with `z` the coordinates of the
/// ideal Z (every other coordinate spans g).
pub fn degree1_conditions(beta1: &Multivector, alpha1: &Multivector, z: &[usize]) -> Result<Degree1Report> {
    let pi = beta1.try_add(alpha1)?;
    if pi.degree() != 2 || pi.terms().any(|(_, p)| p.terms().any(|(m, _)| m.total_degree() != 1)) {
        return Err(Error::NotLinear);
    }
    let space = pi.space().clone();
    let n = space.len();
    let in_z: Vec<bool> = (0..n).map(|i| z.contains(&i)).collect();
    let g: Vec<usize> = (0..n).filter(|&i| !in_z[i]).collect();
    let zero = Polynomial::zero(&space);
    let br = |u: usize, v: usize| -> Polynomial { if u == v { zero.clone() } else { pi.component(&[u, v]) } };
    let part = |p: &Polynomial, want_z: bool| -> Polynomial {
        Polynomial::from_terms(&space, p.terms().filter(|(m, _)| m.support().all(|(i, _)| in_z[i] == want_z)).map(|(m, c)| (m.clone(), c.clone())))
    };
    for &w in &g {
        for &zz in z {
            if !part(&br(w, zz), false).is_zero() {
                return Err(Error::Invalid("Z is not an ideal: some bracket [g, Z] leaves Z".into()));
            }
        }
    }
    // extend u ↦ [u, ·] linearly to linear polynomials
    let ad = |u: usize, p: &Polynomial| -> Result<Polynomial> {
        let mut out = zero.clone();
        for (i, c) in linear_coords(p)? {
            out.add_assign(&br(u, i).scale(&c));
        }
        Ok(out)
    };
    let ad_poly = |p: &Polynomial, q: &Polynomial| -> Result<Polynomial> {
        let mut out = zero.clone();
        for (i, c) in linear_coords(p)? {
            out.add_assign(&ad(i, q)?.scale(&c));
        }
        Ok(out)
    };
    let var = |i: usize| Polynomial::var_at(&space, i);
    let count = |items: Vec<Result<bool>>| -> Result<usize> {
        items.into_iter().try_fold(0, |acc, r| r.map(|bad| acc + bad as usize))
    };
    let bg = |u: usize, v: usize| part(&br(u, v), false);
    let c = |u: usize, v: usize| part(&br(u, v), true);

    let mut z_jac = Vec::new();
    for (a, &z1) in z.iter().enumerate() {
        for (b, &z2) in z.iter().enumerate().skip(a + 1) {
            for &z3 in &z[b + 1..] {
                z_jac.push((|| {
                    let s = ad_poly(&br(z1, z2), &var(z3))?
                        .try_add(&ad_poly(&br(z2, z3), &var(z1))?)?
                        .try_add(&ad_poly(&br(z3, z1), &var(z2))?)?;
                    Ok(!s.is_zero())
                })());
            }
        }
    }
    let mut deriv = Vec::new();
    for &w in &g {
        for (a, &z1) in z.iter().enumerate() {
            for &z2 in &z[a + 1..] {
                deriv.push((|| {
                    let lhs = ad(w, &br(z1, z2))?;
                    let rhs = ad_poly(&ad(w, &var(z1))?, &var(z2))?.try_add(&ad_poly(&var(z1), &ad(w, &var(z2))?)?)?;
                    Ok(lhs != rhs)
                })());
            }
        }
    }
    let mut rep = Vec::new();
    for (a, &u) in g.iter().enumerate() {
        for &v in &g[a + 1..] {
            for &zz in z {
                rep.push((|| {
                    let uv = ad(u, &ad(v, &var(zz))?)?.try_sub(&ad(v, &ad(u, &var(zz))?)?)?;
                    let mut expect = zero.clone();
                    for (i, k) in linear_coords(&bg(u, v))? {
                        expect.add_assign(&ad(i, &var(zz))?.scale(&k));
                    }
                    expect.add_assign(&ad_poly(&c(u, v), &var(zz))?);
                    Ok(uv != expect)
                })());
            }
        }
    }
    let mut coc = Vec::new();
    let mut base = Vec::new();
    for (a, &u) in g.iter().enumerate() {
        for (b, &v) in g.iter().enumerate().skip(a + 1) {
            for &w in &g[b + 1..] {
                let cyc = [(u, v, w), (v, w, u), (w, u, v)];
                coc.push((|| {
                    let mut s = zero.clone();
                    for &(p, q, r) in &cyc {
                        s.add_assign(&ad(p, &c(q, r))?);
                        for (i, k) in linear_coords(&bg(q, r))? {
                            s.add_assign(&c(p, i).scale(&k));
                        }
                    }
                    Ok(!s.is_zero())
                })());
                base.push((|| {
                    let mut s = zero.clone();
                    for &(p, q, r) in &cyc {
                        for (i, k) in linear_coords(&bg(q, r))? {
                            s.add_assign(&bg(p, i).scale(&k));
                        }
                    }
                    Ok(!s.is_zero())
                })());
            }
        }
    }
    Ok(Degree1Report {
        z_jacobi: count(z_jac)?,
        derivation: count(deriv)?,
        representation: count(rep)?,
        cocycle: count(coc)?,
        base_jacobi: count(base)?,
        direct_zero: jacobiator(&pi)?.is_zero(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CascadeSummary {
    pub k: u32,
    pub zero: bool,
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtensionReport {
    pub jacobiator_zero: bool,
    /// Wedge triples on which [π, π] is nonzero (as coordinate names).
    pub jacobiator_support: Vec<String>,
    pub pullback_compatible: bool,
    /// π(da2, da3) pulled back over {pb a2, pb a3}.
    pub scale: Option<String>,
    pub pairs_checked: usize,
    /// Coordinate pairs whose pulled-back bracket disagrees.
    pub pullback_failures: Vec<(String, String)>,
    pub cascade: Vec<CascadeSummary>,
    pub solved_unknowns: usize,
    pub free_unknowns: Vec<String>,
}

impl ExtensionReport {
    /// jacobiator_zero ⇒ every cascade entry zero, and conversely.
    pub fn consistent(&self) -> bool {
        self.jacobiator_zero == self.cascade.iter().all(|c| c.zero)
    }

    pub fn passed(&self) -> bool {
        self.jacobiator_zero && self.pullback_compatible
    }
}

/// Outcome of comparing a bivector with a source bracket through a map.
#[derive(Clone, Debug, PartialEq)]
pub struct PullbackCheck {
    /// The global factor λ with pb π(du, dv) = λ·{pb u, pb v}; `None` if no
    /// single factor fits the first nonzero pair.
    pub scale: Option<Scalar>,
    pub pairs: usize,
    pub failures: Vec<(usize, usize)>,
}

impl PullbackCheck {
    pub fn passed(&self) -> bool {
        self.scale.is_some() && self.failures.is_empty()
    }
}

/// Compare π(du, dv) under `map` (`None` = maps to 0) with the source bracket
/// of the images, for every coordinate pair.  With `normalize`, the global
/// factor is read off the first pair `scale_pair` (or the first pair with a
/// nonzero source bracket); otherwise it is 1.
pub fn pullback_check(
    pi: &Multivector,
    source_pi: &Multivector,
    map: &[Option<Polynomial>],
    normalize: bool,
    scale_pair: Option<(usize, usize)>,
) -> Result<PullbackCheck> {
    let n = pi.space().len();
    if map.len() != n {
        return Err(Error::Arity { expected: n, found: map.len() });
    }
    let src = source_pi.space().clone();
    let zero = Polynomial::zero(&src);
    let image = |i: usize| map[i].as_ref().unwrap_or(&zero);
    let sides = |u: usize, v: usize| -> Result<(Polynomial, Polynomial)> {
        let lhs = pi.component(&[u, v]).substitute_indexed(map, &src)?;
        let rhs = source_pi.contract(&[image(u).clone(), image(v).clone()])?.scalar_part();
        Ok((lhs, rhs))
    };
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let scale = if !normalize {
        Some(Scalar::one())
    } else {
        let mut found = None;
        for &(u, v) in scale_pair.iter().chain(pairs.iter()) {
            let (lhs, rhs) = sides(u, v)?;
            let lead = rhs.terms().next().map(|(m, c)| &lhs.coefficient(m) * &c.inv().expect("nonzero"));
            if let Some(lam) = lead {
                found = (!lam.is_zero()).then_some(lam);
                break;
            }
        }
        found
    };
    let Some(lam) = scale.clone() else {
        return Ok(PullbackCheck { scale, pairs: pairs.len(), failures: Vec::new() });
    };
    let failures = pairs
        .par_iter()
        .map(|&(u, v)| sides(u, v).map(|(l, r)| (l != r.scale(&lam)).then_some((u, v))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(PullbackCheck { scale, pairs: pairs.len(), failures })
}

/// Poisson and pullback checks for a concrete bivector on the big space;
/// the pullback is normalized by the (da2, da3) entry.
pub fn verify_extension(ext: &ExtensionSpace, pi: &Multivector) -> Result<ExtensionReport> {
    verify_extension_with(ext, pi, true)
}

pub fn verify_extension_with(ext: &ExtensionSpace, pi: &Multivector, normalize: bool) -> Result<ExtensionReport> {
    if **pi.space() != *ext.space {
        return Err(Error::SpaceMismatch);
    }
    let j = jacobiator(pi)?;
    let jacobiator_support = support_triples(&j).iter().map(|t| format_triple(&ext.space, t)).collect();
    let cascade = graded_cascade(pi, None)?
        .into_iter()
        .map(|e| CascadeSummary { k: e.k, zero: e.value.is_zero(), terms: e.value.len() })
        .collect();
    let src_pi = source_bivector(&ext.quotient.source);
    let pb = pullback_check(pi, &src_pi, &ext.full_map(), normalize, Some((2, 3)))?;
    let mut failures: Vec<(String, String)> =
        pb.failures.iter().map(|&(u, v)| (ext.space.name(u).to_string(), ext.space.name(v).to_string())).collect();
    if pb.scale.is_none() {
        failures.push(("a2".into(), "a3".into()));
    }
    Ok(ExtensionReport {
        jacobiator_zero: j.is_zero(),
        jacobiator_support,
        pullback_compatible: failures.is_empty(),
        scale: pb.scale.map(|l| l.to_string()),
        pairs_checked: pb.pairs,
        pullback_failures: failures,
        cascade,
        solved_unknowns: 0,
        free_unknowns: Vec::new(),
    })
}

/// The three facts about α² = π² − β^{n−1}, as violation counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactsReport {
    /// nonzero α²(da_i, da_j)
    pub gl2_pairs: usize,
    /// nonzero α²_d(dt, dw) for d ∈ {−2, −1, 0}
    pub t_pairs: usize,
    /// α²_{−2}(dw_i, dw_j) not of the form p(a)·C
    pub c_multiples: usize,
}

impl FactsReport {
    pub fn all_hold(&self) -> bool {
        self.gl2_pairs == 0 && self.t_pairs == 0 && self.c_multiples == 0
    }
}

pub fn check_facts(ext: &ExtensionSpace, alpha2: &Multivector) -> Result<FactsReport> {
    let g = ext.g_len();
    let radical: Vec<usize> = (4..g).collect();
    let mut gl2_pairs = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            gl2_pairs += !alpha2.component(&[i, j]).is_zero() as usize;
        }
    }
    let parts = w_decompose(alpha2, "W")?;
    let t = Polynomial::var_at(&ext.space, 0).try_add(&Polynomial::var_at(&ext.space, 1))?;
    let mut t_pairs = 0;
    for d in [-2, -1, 0] {
        if let Some(a) = parts.get(&d) {
            for &w in &radical {
                t_pairs += !a.contract(&[t.clone(), Polynomial::var_at(&ext.space, w)])?.scalar_part().is_zero() as usize;
            }
        }
    }
    let c = ext.quotient.generator("C").ok_or_else(|| Error::Invalid("ideal has no C".into()))?.poly.embed(&ext.space)?;
    let mut c_multiples = 0;
    if let Some(a) = parts.get(&-2) {
        for (x, &u) in radical.iter().enumerate() {
            for &v in &radical[x + 1..] {
                let e = a.component(&[u, v]);
                if !e.is_zero() && !is_gl2_multiple_of(&e, &c) {
                    c_multiples += 1;
                }
            }
        }
    }
    Ok(FactsReport { gl2_pairs, t_pairs, c_multiples })
}

/// p = q·C with q a polynomial in a0..a3 only.
fn is_gl2_multiple_of(p: &Polynomial, c: &Polynomial) -> bool {
    if p.terms().any(|(m, _)| m.support().any(|(i, _)| i >= 4)) {
        return false;
    }
    // C is monic in a0 a1 under division by its a0·a1 term
    let mut rem = p.clone();
    let lead = crate::exactring::Monomial::from_exponents({
        let mut e = vec![0; p.space().len()];
        e[0] = 1;
        e[1] = 1;
        e
    });
    loop {
        let Some((m, k)) = rem.terms().find(|(m, _)| lead.divides(m)).map(|(m, k)| (m.clone(), k.clone())) else {
            break;
        };
        let mut e = m.exponents().to_vec();
        e[0] -= 1;
        e[1] -= 1;
        let q = Polynomial::monomial(p.space(), crate::exactring::Monomial::from_exponents(e), k);
        rem = rem.try_sub(&q.mul(c)).expect("same space");
    }
    rem.is_zero()
}

/// For every system, the equations that do not vanish at `values`
/// (unknowns missing from `values` count as 0).
pub fn membership_violations(systems: &[&LinearSystem], values: &BTreeMap<Unknown, Scalar>) -> Vec<usize> {
    systems.iter().map(|s| s.equations.iter().filter(|e| !e.evaluate_or_zero(values).is_zero()).count()).collect()
}
