use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::quotient::{source_bivector, QuotientPresentation};
use crate::error::{Error, Result};
use crate::exactring::{poly_vector, EchelonBasis, Monomial, Polynomial, Scalar, VariableSpace};
use crate::multivec::Multivector;

/// Basis of gl₂ = span{t} ⊕ sl₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gl2 {
    T,
    H,
    E,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// f ↦ {f, s} on C[z, z̄, w, w̄] with s ∈ {zz̄+ww̄, zz̄−ww̄, z̄w, zw̄}.
    Source,
    /// f ↦ {s, f}₁ on the target with s ∈ {a0+a1, a0−a1, a2, a3}.
    Target,
}

/// Apply the derivation sending coordinate i to `images[i]`.
pub fn apply_derivation(p: &Polynomial, images: &[Polynomial]) -> Result<Polynomial> {
    let mut out = Polynomial::zero(p.space());
    for (i, img) in images.iter().enumerate() {
        if img.is_zero() || !p.depends_on(i) {
            continue;
        }
        out.add_assign(&p.derivative(i).try_mul(img)?);
    }
    Ok(out)
}

/// A polynomial ring on which gl₂ acts by derivations, with H diagonal on
/// the coordinates.
pub trait Sl2Module {
    fn space(&self) -> &Arc<VariableSpace>;
    /// Image of every coordinate under `g`.
    fn coordinate_images(&self, g: Gl2) -> &[Polynomial];
    /// The operator that raises H-weights by 2.
    fn raising(&self) -> Gl2;

    fn act(&self, g: Gl2, p: &Polynomial) -> Result<Polynomial> {
        if !VariableSpace::same(p.space(), self.space()) && **p.space() != **self.space() {
            return Err(Error::SpaceMismatch);
        }
        apply_derivation(p, self.coordinate_images(g))
    }

    /// H-weight of every coordinate, read off from the action of H.
    fn h_weights(&self) -> Result<Vec<i64>> {
        let sp = self.space();
        self.coordinate_images(Gl2::H)
            .iter()
            .enumerate()
            .map(|(i, img)| {
                let m = Monomial::var(sp.len(), i);
                let c = img.coefficient(&m);
                if img.len() > usize::from(!c.is_zero()) || !c.is_integer() || !c.is_real() {
                    return Err(Error::Invalid(format!("H is not diagonal on `{}`", sp.name(i))));
                }
                num_traits::ToPrimitive::to_i64(&c.re().to_integer())
                    .ok_or_else(|| Error::Invalid("weight out of range".into()))
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
struct Images {
    t: Vec<Polynomial>,
    h: Vec<Polynomial>,
    e: Vec<Polynomial>,
    f: Vec<Polynomial>,
}

impl Images {
    fn get(&self, g: Gl2) -> &[Polynomial] {
        match g {
            Gl2::T => &self.t,
            Gl2::H => &self.h,
            Gl2::E => &self.e,
            Gl2::F => &self.f,
        }
    }

    fn from_fn(space: &Arc<VariableSpace>, mut f: impl FnMut(Gl2, &Polynomial) -> Result<Polynomial>) -> Result<Self> {
        let mut one = |g| (0..space.len()).map(|i| f(g, &Polynomial::var_at(space, i))).collect::<Result<Vec<_>>>();
        Ok(Images { t: one(Gl2::T)?, h: one(Gl2::H)?, e: one(Gl2::E)?, f: one(Gl2::F)? })
    }
}

/// gl₂ acting on either side of the Hilbert map.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    space: Arc<VariableSpace>,
    side: Side,
    images: Images,
}

impl QuotientModule {
    pub fn new(q: &QuotientPresentation, side: Side) -> Result<Self> {
        let (space, bivector, gens) = match side {
            Side::Source => {
                let s = &q.source;
                let m = |i: usize, j: usize| Polynomial::var_at(s, i).mul(&Polynomial::var_at(s, j));
                let gens = [m(0, 1).try_add(&m(2, 3))?, m(0, 1).try_sub(&m(2, 3))?, m(1, 2), m(0, 3)];
                (s.clone(), source_bivector(s), gens)
            }
            Side::Target => {
                let t = &q.target;
                let v = |i: usize| Polynomial::var_at(t, i);
                let gens = [v(0).try_add(&v(1))?, v(0).try_sub(&v(1))?, v(2), v(3)];
                (t.clone(), q.lie_poisson.clone(), gens)
            }
        };
        let idx = |g| match g {
            Gl2::T => 0,
            Gl2::H => 1,
            Gl2::E => 2,
            Gl2::F => 3,
        };
        let images = Images::from_fn(&space, |g, x| {
            let s = gens[idx(g)].clone();
            let forms = match side {
                Side::Source => [x.clone(), s],
                Side::Target => [s, x.clone()],
            };
            Ok(bivector.contract(&forms)?.scalar_part())
        })?;
        Ok(QuotientModule { space, side, images })
    }

    pub fn side(&self) -> Side {
        self.side
    }
}

impl Sl2Module for QuotientModule {
    fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    fn coordinate_images(&self, g: Gl2) -> &[Polynomial] {
        self.images.get(g)
    }

    fn raising(&self) -> Gl2 {
        // the source action is the negative of the pulled-back target action
        match self.side {
            Side::Source => Gl2::F,
            Side::Target => Gl2::E,
        }
    }
}

/// One-shot form of [`QuotientModule::act`].
pub fn gl2_action(q: &QuotientPresentation, g: Gl2, p: &Polynomial, side: Side) -> Result<Polynomial> {
    QuotientModule::new(q, side)?.act(g, p)
}

/// `copies` independent copies of V_n with coordinates v{c}_{k}, acted on by
/// H v_k = (n−2k) v_k, E v_k = (n−k) v_{k+1}, F v_k = k v_{k−1} and t = n·Id.
/// With these formulas E lowers the H-weight, so F is the raising operator.
#[derive(Clone, Debug)]
pub struct StandardModule {
    pub n: usize,
    pub copies: usize,
    space: Arc<VariableSpace>,
    images: Images,
}

impl StandardModule {
    pub fn new(n: usize, copies: usize) -> Result<Self> {
        let names: Vec<String> = (0..copies).flat_map(|c| (0..=n).map(move |k| format!("v{c}_{k}"))).collect();
        let space = VariableSpace::new(names)?;
        let ni = n as i64;
        let v = |c: usize, k: usize| Polynomial::var_at(&space, c * (n + 1) + k);
        let images = Images::from_fn(&space, |g, x| {
            let i = x.terms().next().map(|(m, _)| m.support().next().unwrap().0).unwrap();
            let (c, k) = (i / (n + 1), i % (n + 1));
            let ki = k as i64;
            Ok(match g {
                Gl2::T => x.scale(&Scalar::from_int(ni)),
                Gl2::H => x.scale(&Scalar::from_int(ni - 2 * ki)),
                Gl2::E if k < n => v(c, k + 1).scale(&Scalar::from_int(ni - ki)),
                Gl2::F if k > 0 => v(c, k - 1).scale(&Scalar::from_int(ki)),
                _ => Polynomial::zero(&space),
            })
        })?;
        Ok(StandardModule { n, copies, space, images })
    }

    pub fn vector(&self, copy: usize, k: usize) -> Polynomial {
        Polynomial::var_at(&self.space, copy * (self.n + 1) + k)
    }

    /// {v0_i · v1_j}: a basis of V_n ⊗ V_n (needs two copies).
    pub fn tensor_square_span(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for i in 0..=self.n {
            for j in 0..=self.n {
                out.push(self.vector(0, i).mul(&self.vector(1, j)));
            }
        }
        out
    }

    /// {v0_i v1_j − v0_j v1_i, i < j}: a basis of V_n ∧ V_n.
    pub fn wedge_square_span(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for i in 0..=self.n {
            for j in i + 1..=self.n {
                let a = self.vector(0, i).mul(&self.vector(1, j));
                let b = self.vector(0, j).mul(&self.vector(1, i));
                out.push(a.try_sub(&b).expect("same space"));
            }
        }
        out
    }
}

impl Sl2Module for StandardModule {
    fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    fn coordinate_images(&self, g: Gl2) -> &[Polynomial] {
        self.images.get(g)
    }

    fn raising(&self) -> Gl2 {
        Gl2::F
    }
}

/// Multiset of irreducibles V_d, keyed by the highest weight d.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition(pub BTreeMap<u32, usize>);

impl Decomposition {
    pub fn from_labels(ds: impl IntoIterator<Item = u32>) -> Self {
        let mut m = BTreeMap::new();
        for d in ds {
            *m.entry(d).or_insert(0) += 1;
        }
        Decomposition(m)
    }

    /// Highest weights in decreasing order, with repetition.
    pub fn labels(&self) -> Vec<u32> {
        self.0.iter().rev().flat_map(|(&d, &k)| std::iter::repeat(d).take(k)).collect()
    }

    pub fn dimension(&self) -> usize {
        self.0.iter().map(|(&d, &k)| (d as usize + 1) * k).sum()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.labels().iter().map(|d| format!("V{d}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Decompose the span of `span` into sl₂-irreducibles.  Multiplicities come
/// from weight-space dimensions (dim W_d − dim W_{d+2}) and are confirmed by
/// the dimension of the kernel of the raising operator on each W_d.
pub fn rep_diagnose(module: &dyn Sl2Module, span: &[Polynomial]) -> Result<Decomposition> {
    let weights = module.h_weights()?;
    let mut basis = EchelonBasis::new();
    for p in span {
        if **p.space() != **module.space() {
            return Err(Error::SpaceMismatch);
        }
        basis.insert(&poly_vector(p));
    }
    let mut weight_spaces: BTreeMap<i64, EchelonBasis<Monomial>> = BTreeMap::new();
    for row in basis.basis() {
        let mut parts: BTreeMap<i64, BTreeMap<Monomial, Scalar>> = BTreeMap::new();
        for (m, c) in row {
            parts.entry(m.weight(&weights)).or_default().insert(m.clone(), c.clone());
        }
        for (w, part) in parts {
            if !basis.contains(&part) {
                return Err(Error::NotHStable);
            }
            weight_spaces.entry(w).or_default().insert(&part);
        }
    }
    let raise = module.raising();
    let dim = |w: i64| weight_spaces.get(&w).map_or(0, |b| b.rank());
    let mut out = BTreeMap::new();
    for (&w, ws) in &weight_spaces {
        if dim(-w) != ws.rank() {
            return Err(Error::Invalid(format!("weight spaces {w} and {} differ in dimension", -w)));
        }
        if w < 0 {
            continue;
        }
        let mult = ws.rank() as i64 - dim(w + 2) as i64;
        if mult < 0 {
            return Err(Error::Invalid(format!("weight space {} is larger than weight space {w}", w + 2)));
        }
        let mut images = EchelonBasis::new();
        for v in ws.basis() {
            let p = Polynomial::from_terms(module.space(), v.clone());
            let r = module.act(raise, &p)?;
            let rv = poly_vector(&r);
            if !basis.contains(&rv) {
                return Err(Error::Invalid("span is not stable under the raising operator".into()));
            }
            images.insert(&rv);
        }
        let kernel = ws.rank() - images.rank();
        if kernel as i64 != mult {
            return Err(Error::Invalid(format!(
                "weight {w}: {mult} highest-weight vectors expected, raising operator has kernel of dimension {kernel}"
            )));
        }
        if mult > 0 {
            out.insert(w as u32, mult as usize);
        }
    }
    Ok(Decomposition(out))
}

/// Structure constants of a Lie algebra read off a linear bivector:
/// [e_i, e_j] = π(de_i, de_j).
#[derive(Clone, Debug)]
pub struct LieAlgebraTable {
    pub names: Vec<String>,
    pub space: Arc<VariableSpace>,
    pub constants: BTreeMap<(usize, usize), Polynomial>,
}

impl LieAlgebraTable {
    pub fn from_linear_bivector(b: &Multivector) -> Result<Self> {
        if b.degree() != 2 {
            return Err(Error::Degree { expected: 2, found: b.degree() });
        }
        if b.terms().any(|(_, p)| p.total_degree() != Some(1) || p.min_total_degree() != Some(1)) {
            return Err(Error::NotLinear);
        }
        let space = b.space().clone();
        let mut constants = BTreeMap::new();
        for i in 0..space.len() {
            for j in 0..space.len() {
                let c = b.component(&[i, j]);
                if !c.is_zero() {
                    constants.insert((i, j), c);
                }
            }
        }
        Ok(LieAlgebraTable { names: space.names().to_vec(), space, constants })
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Polynomial {
        self.constants.get(&(i, j)).cloned().unwrap_or_else(|| Polynomial::zero(&self.space))
    }

    /// Bilinear extension of the table to linear polynomials.
    pub fn bracket(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        let coords = |p: &Polynomial| -> Result<Vec<(usize, Scalar)>> {
            p.terms()
                .map(|(m, c)| {
                    let mut s = m.support();
                    match (s.next(), s.next()) {
                        (Some((i, 1)), None) => Ok((i, c.clone())),
                        _ => Err(Error::NotLinear),
                    }
                })
                .collect()
        };
        let mut out = Polynomial::zero(&self.space);
        for (i, a) in coords(p)? {
            for (j, b) in coords(q)? {
                if let Some(c) = self.constants.get(&(i, j)) {
                    out.add_assign(&c.scale(&(&a * &b)));
                }
            }
        }
        Ok(out)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.space.len()).all(|i| {
            (i..self.space.len()).all(|j| self.bracket_basis(i, j) == self.bracket_basis(j, i).neg())
        })
    }

    /// Basis triples i < j < k with [[e_i,e_j],e_k] + cyclic ≠ 0.
    pub fn jacobi_violations(&self) -> Result<Vec<(usize, usize, usize)>> {
        let n = self.space.len();
        let e = |i: usize| Polynomial::var_at(&self.space, i);
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut s = self.bracket(&self.bracket_basis(i, j), &e(k))?;
                    s.add_assign(&self.bracket(&self.bracket_basis(j, k), &e(i))?);
                    s.add_assign(&self.bracket(&self.bracket_basis(k, i), &e(j))?);
                    if !s.is_zero() {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        Ok(bad)
    }
}
