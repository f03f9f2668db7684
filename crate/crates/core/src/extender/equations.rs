use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactring::{AffineExpression, Coefficient, LinearSystem, Scalar, Unknown, VariableSpace};
use crate::multivec::Multivector;
use crate::schouten::schouten_bracket;

/// Coordinate indices of a wedge triple du∧dv∧dw, increasing.
pub type Triple = [usize; 3];

/// Triples in increasing index order, one per line as three names;
/// `#` starts a comment.
pub fn parse_triples(text: &str, space: &Arc<VariableSpace>) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ix: Vec<usize> = line.split_whitespace().map(|s| space.require(s)).collect::<Result<_>>()?;
        let [a, b, c] = ix[..] else {
            return Err(Error::Invalid(format!("expected three coordinates, got `{line}`")));
        };
        let mut t = [a, b, c];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(Error::Invalid(format!("repeated coordinate in `{line}`")));
        }
        out.push(t);
    }
    Ok(out)
}

pub fn format_triple(space: &VariableSpace, t: &Triple) -> String {
    t.iter().map(|&i| space.name(i)).collect::<Vec<_>>().join(" ")
}

/// Triples on which a trivector has a nonzero coefficient.
pub fn support_triples<C: Coefficient>(m: &Multivector<C>) -> Vec<Triple> {
    m.terms()
        .filter(|(_, p)| !p.is_zero())
        .filter_map(|(sk, _)| match sk.indices() {
            &[a, b, c] => Some([a as usize, b as usize, c as usize]),
            _ => None,
        })
        .collect()
}

/// One equation per monomial of each contracted component.
pub fn equations_on<C: Coefficient + Into<AffineExpression>>(
    trivector: &Multivector<C>,
    triples: &[Triple],
) -> Result<LinearSystem> {
    Ok(equations_traced(trivector, triples)?.0)
}

/// [`equations_on`] together with the triple each equation came from.
pub fn equations_traced<C: Coefficient + Into<AffineExpression>>(
    trivector: &Multivector<C>,
    triples: &[Triple],
) -> Result<(LinearSystem, Vec<Triple>)> {
    let n = trivector.space().len();
    if let Some(t) = triples.iter().find(|t| t.iter().any(|&i| i >= n)) {
        return Err(Error::Invalid(format!("triple {t:?} lies outside the space")));
    }
    let eqs: Vec<Vec<(AffineExpression, Triple)>> = triples
        .par_iter()
        .map(|t| {
            trivector.component(t).terms().map(|(_, c)| (c.clone().into(), *t)).filter(|(e, _): &(AffineExpression, _)| !e.is_zero()).collect()
        })
        .collect();
    let (eqs, origins): (Vec<_>, Vec<_>) = eqs.into_iter().flatten().unzip();
    Ok((LinearSystem::new(eqs), origins))
}

/// Contract [π¹, π²] with each triple and collect the coefficient of every
/// monomial as an equation.
pub fn extract_equations(
    pi1: &Multivector,
    pi2: &Multivector<AffineExpression>,
    triples: &[Triple],
) -> Result<LinearSystem> {
    let b = schouten_bracket(pi1, pi2)?;
    equations_on(&b, triples)
}

/// Every triple of coordinates below `g`, in lexicographic order.
pub fn all_triples(g: usize) -> Vec<Triple> {
    let mut out = Vec::new();
    for a in 0..g {
        for b in a + 1..g {
            for c in b + 1..g {
                out.push([a, b, c]);
            }
        }
    }
    out
}

pub(crate) fn triple_set(ts: &[Triple]) -> BTreeSet<Triple> {
    ts.iter().copied().collect()
}

/// Split a template multivector into its constant part and one concrete
/// multivector per unknown.
pub fn split_by_unknown(m: &Multivector<AffineExpression>) -> (Multivector, Vec<(Unknown, Multivector)>) {
    let constant = m.map_coeffs(|c| c.constant_part().clone());
    let names: BTreeSet<Unknown> = m.terms().flat_map(|(_, p)| p.terms().flat_map(|(_, c)| c.unknowns().cloned()).collect::<Vec<_>>()).collect();
    let parts = names.into_iter().map(|u| {
        let part = m.map_coeffs(|c| c.coefficient(&u));
        (u, part)
    }).collect();
    (constant, parts)
}

/// The product of an affine expression with a further unknown `l`: every
/// product u·l becomes the single unknown `u*l`, constants c become c·l.
pub fn times_unknown(e: &AffineExpression, l: &Unknown) -> AffineExpression {
    let mut out = AffineExpression::term(l.clone(), e.constant_part().clone());
    for (u, c) in e.linear_part() {
        out.add_term(&product_unknown(&[u.name(), l.name()]), c);
    }
    out
}

/// Unknown standing for a product, named by its sorted factors joined with `*`.
pub fn product_unknown(factors: &[&str]) -> Unknown {
    let mut f = factors.to_vec();
    f.sort_unstable();
    Unknown::new(&f.join("*"))
}

/// As [`extract_equations`] with π¹ = fixed + Σ L_b·c_b and the block scalars
/// L_b left symbolic; products with the template unknowns become product
/// unknowns, so the system stays linear in form.
pub fn extract_equations_symbolic(
    pi1_fixed: &Multivector,
    blocks: &[(Unknown, Multivector)],
    pi2: &Multivector<AffineExpression>,
    triples: &[Triple],
) -> Result<LinearSystem> {
    let mut b = schouten_bracket(pi1_fixed, pi2)?;
    for (l, c) in blocks {
        let part = schouten_bracket(c, pi2)?;
        b.add_assign(&part.map_coeffs(|e| times_unknown(e, l)));
    }
    equations_on(&b, triples)
}

/// Parse `expr = 0` (or a bare `expr`) where every term is an optional
/// rational coefficient times unknown factors, e.g. `-2*K8*L33 + l0 - 18`.
pub fn parse_equation(line: &str) -> Result<AffineExpression> {
    let err = |msg: String| Error::Parse { pos: 0, msg };
    let body = match line.split_once('=') {
        Some((lhs, rhs)) if rhs.trim() == "0" => lhs,
        Some(_) => return Err(err(format!("right-hand side must be 0 in `{line}`"))),
        None => line,
    };
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    let mut out = AffineExpression::default();
    for t in terms {
        let (neg, rest) = match t.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        let mut coeff = Scalar::one();
        let mut factors = Vec::new();
        for f in rest.split('*') {
            if f.is_empty() {
                return Err(err(format!("empty factor in `{t}`")));
            }
            if f.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                let (n, d) = f.split_once('/').unwrap_or((f, "1"));
                let n: i64 = n.parse().map_err(|_| err(format!("bad number `{f}`")))?;
                let d: i64 = d.parse().map_err(|_| err(format!("bad number `{f}`")))?;
                if d == 0 {
                    return Err(err(format!("zero denominator in `{f}`")));
                }
                coeff = &coeff * &Scalar::from_ratio(n, d);
            } else {
                factors.push(f);
            }
        }
        if neg {
            coeff = -coeff;
        }
        if factors.is_empty() {
            out = out.add(&AffineExpression::constant(coeff));
        } else {
            out.add_term(&product_unknown(&factors), &coeff);
        }
    }
    Ok(out)
}
