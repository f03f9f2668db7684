use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactring::{AffineExpression, Monomial, Poly, Polynomial, Unknown, VariableSpace};
use crate::invariants::GeneratorFamily;
use crate::multivec::{parse_multivector_extending, Multivector};

use super::space::{ExtensionSpace, PairKind};

/// One entry α²(du, dv) = Σ unknown·generator of the quadratic template.
#[derive(Clone, Debug, PartialEq)]
pub struct TemplateEntry {
    pub pair: (usize, usize),
    /// (generator symbol, unknown) in template order
    pub terms: Vec<(String, Unknown)>,
}

#[derive(Clone, Debug)]
pub struct Alpha2Template {
    pub entries: Vec<TemplateEntry>,
    pub bivector: Multivector<AffineExpression>,
}

impl Alpha2Template {
    pub fn unknowns(&self) -> Vec<Unknown> {
        self.entries.iter().flat_map(|e| e.terms.iter().map(|(_, u)| u.clone())).collect()
    }
}

/// Generator polynomial times an unknown, embedded in the big space.
pub(crate) fn weighted(ext: &ExtensionSpace, poly: &Polynomial, u: &Unknown) -> Result<Poly<AffineExpression>> {
    Ok(poly.embed(&ext.space)?.map_coeffs(|c| AffineExpression::term(u.clone(), c.clone())))
}

/// The degree-2 ansatz: α²(dx_i, dy_i) = l_i·C, and on (w, uv) with w a
/// radical coordinate and uv a radical wedge pair, a combination of the odd
/// quadratic generators whose (t, H)-degree equals that of the pair.
/// Nothing else: α² vanishes on the gl₂ coordinates and on dx∧dx, dy∧dy.
pub fn alpha2_template(ext: &ExtensionSpace) -> Result<Alpha2Template> {
    let q = &ext.quotient;
    let n = q.n;
    let g = ext.g_len();
    let tw = ext.space.grading("t")?;
    let hw = ext.space.grading("H")?;
    let c = q.generator("C").ok_or_else(|| Error::Invalid("ideal has no C".into()))?;
    let odd: Vec<_> = [GeneratorFamily::A, GeneratorFamily::B, GeneratorFamily::Abar, GeneratorFamily::Bbar]
        .into_iter()
        .flat_map(|f| q.family(f))
        .filter_map(|gen| gen.degrees().map(|d| (d, gen)))
        .collect();
    let mut entries = Vec::new();
    let mut bivector = Multivector::zero(&ext.space, 2);
    for i in 0..=n {
        let u = Unknown::new(&format!("l{i}"));
        let pair = (4 + i, 5 + n + i);
        bivector.add_assign(&Multivector::term(weighted(ext, &c.poly, &u)?, &[pair.0, pair.1]));
        entries.push(TemplateEntry { pair, terms: vec![(c.name.clone(), u)] });
    }
    let mut counter = 0;
    let radical: Vec<usize> = (4..g).collect();
    for &w in &radical {
        for (k, kind) in ext.kinds.iter().enumerate() {
            if !matches!(kind, PairKind::XX | PairKind::YY | PairKind::XY) {
                continue;
            }
            let z = g + k;
            let deg = (tw[w] + tw[z], hw[w] + hw[z]);
            let mut terms = Vec::new();
            for (d, gen) in &odd {
                if *d == deg {
                    counter += 1;
                    let u = Unknown::new(&format!("K{counter}"));
                    bivector.add_assign(&Multivector::term(weighted(ext, &gen.poly, &u)?, &[w, z]));
                    terms.push((gen.listing_symbol(), u));
                }
            }
            if !terms.is_empty() {
                entries.push(TemplateEntry { pair: (w, z), terms });
            }
        }
    }
    Ok(Alpha2Template { entries, bivector })
}

/// Parse a listing whose coefficients mix coordinates, named polynomials
/// (`symbols`, substituted) and unknowns (`is_unknown`, occurring linearly).
pub fn parse_symbolic_multivector(
    text: &str,
    space: &std::sync::Arc<VariableSpace>,
    symbols: &BTreeMap<String, Polynomial>,
    is_unknown: impl Fn(&str) -> bool,
) -> Result<Multivector<AffineExpression>> {
    let raw = parse_multivector_extending(text, space.names())?;
    let rs = raw.space().clone();
    let base = space.len();
    let mut out = Multivector::zero(space, raw.degree());
    for (sk, p) in raw.terms() {
        let mut coeff: Poly<AffineExpression> = Poly::zero(space);
        for (m, c) in p.terms() {
            let mut unknown: Option<Unknown> = None;
            let mut e = m.exponents()[..base].to_vec();
            let mut factor = Polynomial::one(space);
            for (i, k) in m.support().filter(|&(i, _)| i >= base) {
                let name = rs.name(i);
                if is_unknown(name) {
                    if k != 1 || unknown.is_some() {
                        return Err(Error::Invalid(format!("unknowns must occur linearly near `{name}`")));
                    }
                    unknown = Some(Unknown::new(name));
                } else if let Some(s) = symbols.get(name) {
                    factor = factor.mul(&s.embed(space)?.pow(k));
                } else {
                    return Err(Error::UnknownVariable(name.to_string()));
                }
            }
            e.truncate(base);
            let mono = Polynomial::monomial(space, Monomial::from_exponents(e), c.clone()).mul(&factor);
            coeff.add_assign(&mono.map_coeffs(|s| match &unknown {
                Some(u) => AffineExpression::term(u.clone(), s.clone()),
                None => AffineExpression::constant(s.clone()),
            }));
        }
        let idx: Vec<usize> = sk.indices().iter().map(|&i| i as usize).collect();
        if idx.iter().any(|&i| i >= base) {
            return Err(Error::Invalid("differential of a non-coordinate symbol".into()));
        }
        out.add_assign(&Multivector::term(coeff, &idx));
    }
    Ok(out)
}

impl Alpha2Template {
    /// Unknown values reproducing a concrete α² exactly; fails if α² has
    /// support outside the template or is not in its span.
    pub fn values_of(&self, alpha2: &Multivector) -> Result<BTreeMap<Unknown, crate::exactring::Scalar>> {
        use crate::exactring::{solve_linear, LinearSystem, SolveOutcome};
        let diff = self.bivector.try_sub(&alpha2.map_coeffs(|c| AffineExpression::constant(c.clone())))?;
        let eqs = diff.terms().flat_map(|(_, p)| p.terms().map(|(_, c)| c.clone()).collect::<Vec<_>>()).collect();
        match solve_linear(&LinearSystem::new(eqs)) {
            SolveOutcome::Solution(s) => {
                let mut v = s.with_free_zero();
                for u in self.unknowns() {
                    v.entry(u).or_insert_with(crate::exactring::Scalar::zero);
                }
                Ok(v)
            }
            SolveOutcome::Inconsistent { .. } => Err(Error::Invalid("bivector is not an instance of the template".into())),
        }
    }
}
