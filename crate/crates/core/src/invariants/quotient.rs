use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::ToPrimitive;

use super::hilbert::{hilbert_basis_zn, source_space, target_names, x_index, y_index};
use crate::error::{Error, Result};
use crate::exactring::{parse_polynomial, Monomial, Polynomial, Scalar, VariableSpace};
use crate::multivec::Multivector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorFamily {
    C,
    A,
    B,
    Abar,
    Bbar,
    D,
    Dbar,
    M,
}

/// The two index branches of the `M_ij` generators (j ≤ i and i ≤ j).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MBranch {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealGenerator {
    pub name: String,
    pub family: GeneratorFamily,
    pub indices: Vec<usize>,
    pub branch: Option<MBranch>,
    pub poly: Polynomial,
}

impl IdealGenerator {
    /// The H-degree column of the generator table, as printed.
    pub fn printed_h_degree(&self, n: usize) -> i64 {
        let n = n as i64;
        let ix: Vec<i64> = self.indices.iter().map(|&i| i as i64).collect();
        match self.family {
            GeneratorFamily::C => 0,
            GeneratorFamily::A | GeneratorFamily::B => 2 * ix[0] - n,
            GeneratorFamily::Abar | GeneratorFamily::Bbar => n - 2 * ix[0],
            GeneratorFamily::D => (ix[0] + ix[1]) - 2 * n,
            GeneratorFamily::Dbar => 2 * n - (ix[0] + ix[1]),
            GeneratorFamily::M => 2 * (ix[1] - ix[0]),
        }
    }

    /// H-degree implied by the coordinate weights (differs from the printed
    /// column only for the D families, where the printed value drops a factor 2).
    pub fn expected_h_degree(&self, n: usize) -> i64 {
        let n = n as i64;
        let ix: Vec<i64> = self.indices.iter().map(|&i| i as i64).collect();
        match self.family {
            GeneratorFamily::D => 2 * (ix[0] + ix[1] - n),
            GeneratorFamily::Dbar => 2 * (n - ix[0] - ix[1]),
            _ => self.printed_h_degree(n as usize),
        }
    }

    /// (t-degree, H-degree) from the target gradings; `None` if inhomogeneous.
    pub fn degrees(&self) -> Option<(i64, i64)> {
        let deg = |gr: &str| -> Option<i64> {
            let parts = self.poly.grade_parts(gr).ok()?;
            (parts.len() == 1).then(|| *parts.keys().next().unwrap())
        };
        deg("t").zip(deg("H"))
    }

    /// Symbol used in the degree-2 listing for n = 3, where the B-families
    /// are numbered from 0.
    pub fn listing_symbol(&self) -> String {
        match self.family {
            GeneratorFamily::B => format!("B{}", self.indices[0] - 1),
            GeneratorFamily::Bbar => format!("Bbar{}", self.indices[0] - 1),
            _ => self.name.clone(),
        }
    }
}

/// V/Z_n embedded by its Hilbert map into a0..a3, x0..xn, y0..yn, with the
/// generators of the defining ideal and the linear (Lie–Poisson) bracket.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub n: usize,
    pub source: Arc<VariableSpace>,
    pub target: Arc<VariableSpace>,
    /// Source polynomial for every target coordinate, in coordinate order.
    pub hilbert_map: Vec<Polynomial>,
    pub ideal: Vec<IdealGenerator>,
    /// Lie–Poisson bivector of the cotangent Lie algebra on the target.
    pub lie_poisson: Multivector,
}

/// {f, g} on the source with {z, z̄} = {w, w̄} = 1.
pub fn source_bivector(source: &Arc<VariableSpace>) -> Multivector {
    let mut b = Multivector::term(Polynomial::one(source), &[0, 1]);
    b.add_assign(&Multivector::term(Polynomial::one(source), &[2, 3]));
    b
}

pub fn source_bracket(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    Ok(source_bivector(f.space()).contract(&[f.clone(), g.clone()])?.scalar_part())
}

/// Lie–Poisson bivector of gl₂ ⋉ (V_n ⊕ V_n) on a space whose first
/// coordinates are a0..a3, x0..xn, y0..yn.
pub fn lie_poisson_bivector(n: usize, space: &Arc<VariableSpace>) -> Multivector {
    let v = |i: usize| Polynomial::var_at(space, i);
    let mut b = Multivector::zero(space, 2);
    let mut put = |i: usize, j: usize, p: Polynomial| b.add_assign(&Multivector::term(p, &[i, j]));
    let s = |c: i64, p: Polynomial| p.scale(&Scalar::from_int(c));
    put(0, 2, v(2));
    put(0, 3, s(-1, v(3)));
    put(1, 2, s(-1, v(2)));
    put(1, 3, v(3));
    put(2, 3, v(0).try_sub(&v(1)).expect("same space"));
    let ni = n as i64;
    for k in 0..=n {
        let ki = k as i64;
        let (xk, yk) = (x_index(k), y_index(n, k));
        put(0, xk, s(-ki, v(xk)));
        put(1, xk, s(-(ni - ki), v(xk)));
        if k > 0 {
            put(2, xk, s(-ki, v(x_index(k - 1))));
            put(3, yk, s(ki, v(y_index(n, k - 1))));
        }
        if k < n {
            put(3, xk, s(-(ni - ki), v(x_index(k + 1))));
            put(2, yk, s(ni - ki, v(y_index(n, k + 1))));
        }
        put(0, yk, s(ki, v(yk)));
        put(1, yk, s(ni - ki, v(yk)));
    }
    b
}

/// Eigenvalue of f ↦ {s, f} on every coordinate; fails if some coordinate is
/// not an eigenvector.
pub fn hamiltonian_weights(lp: &Multivector, s: &Polynomial) -> Result<Vec<i64>> {
    let space = lp.space();
    let mut w = Vec::with_capacity(space.len());
    for i in 0..space.len() {
        let v = Polynomial::var_at(space, i);
        let img = lp.contract(&[s.clone(), v.clone()])?.scalar_part();
        let c = img.coefficient(&Monomial::var(space.len(), i));
        if img.try_sub(&v.scale(&c))? != Polynomial::zero(space) || !c.is_integer() || !c.is_real() {
            return Err(Error::Invalid(format!("coordinate {} is not a weight vector", space.name(i))));
        }
        let r = c.re().to_integer().to_i64().ok_or_else(|| Error::Invalid("weight out of range".into()))?;
        w.push(r);
    }
    Ok(w)
}

fn family_of(name: &str) -> Option<(GeneratorFamily, Vec<usize>)> {
    let (fam, rest) = if name == "C" {
        return Some((GeneratorFamily::C, vec![]));
    } else if let Some(r) = name.strip_prefix("Abar") {
        (GeneratorFamily::Abar, r)
    } else if let Some(r) = name.strip_prefix("Bbar") {
        (GeneratorFamily::Bbar, r)
    } else if let Some(r) = name.strip_prefix("Dbar") {
        (GeneratorFamily::Dbar, r)
    } else if let Some(r) = name.strip_prefix('A') {
        (GeneratorFamily::A, r)
    } else if let Some(r) = name.strip_prefix('B') {
        (GeneratorFamily::B, r)
    } else if let Some(r) = name.strip_prefix('D') {
        (GeneratorFamily::D, r)
    } else if let Some(r) = name.strip_prefix('M') {
        (GeneratorFamily::M, r)
    } else {
        return None;
    };
    let idx = rest.trim_start_matches('_').split('_').map(|s| s.parse().ok()).collect::<Option<Vec<usize>>>()?;
    Some((fam, idx))
}

impl QuotientPresentation {
    pub fn new(n: usize) -> Result<Self> {
        let basis = hilbert_basis_zn(n)?;
        let plain = VariableSpace::new(target_names(n))?;
        let lp = lie_poisson_bivector(n, &plain);
        let a = |i: usize| Polynomial::var_at(&plain, i);
        let t = hamiltonian_weights(&lp, &a(0).try_add(&a(1))?)?;
        let h = hamiltonian_weights(&lp, &a(0).try_sub(&a(1))?)?;
        let w: Vec<i64> = (0..plain.len()).map(|i| if i < 4 { 0 } else { 1 }).collect();
        let target = VariableSpace::with_gradings(
            target_names(n),
            [("t".to_string(), t), ("H".to_string(), h), ("W".to_string(), w)],
        )?;
        let lie_poisson = lp.embed(&target)?;
        let ideal = ideal_generators(n, &target);
        Ok(QuotientPresentation { n, source: source_space(), target, hilbert_map: basis, ideal, lie_poisson })
    }

    pub fn pullback(&self, p: &Polynomial) -> Result<Polynomial> {
        let assign: Vec<Option<Polynomial>> = self.hilbert_map.iter().cloned().map(Some).collect();
        let p = p.embed(&self.target)?;
        p.substitute_indexed(&assign, &self.source)
    }

    pub fn generator(&self, name: &str) -> Option<&IdealGenerator> {
        self.ideal.iter().find(|g| g.name == name)
    }

    pub fn family(&self, f: GeneratorFamily) -> impl Iterator<Item = &IdealGenerator> {
        self.ideal.iter().filter(move |g| g.family == f)
    }

    /// Serialize as a fixture with [source], [map], [ideal] and [gradings] sections.
    pub fn to_fixture(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# quotient presentation of V/Z_{}", self.n);
        let _ = writeln!(s, "[source]\n{}", self.source.names().join(" "));
        s.push_str("[map]\n");
        for (i, p) in self.hilbert_map.iter().enumerate() {
            let _ = writeln!(s, "{} = {}", self.target.name(i), p);
        }
        s.push_str("[ideal]\n");
        for g in &self.ideal {
            let tag = match g.branch {
                Some(MBranch::Lower) => " lower",
                Some(MBranch::Upper) => " upper",
                None => "",
            };
            let _ = writeln!(s, "{}{} = {}", g.name, tag, g.poly);
        }
        s.push_str("[gradings]\n");
        for gr in self.target.gradings().iter().filter(|g| g.name != "total") {
            let ws: Vec<String> = gr.weights.iter().map(|w| w.to_string()).collect();
            let _ = writeln!(s, "{} = {}", gr.name, ws.join(" "));
        }
        s
    }

    /// Parse a fixture written by [`QuotientPresentation::to_fixture`]; the
    /// Lie–Poisson part is rebuilt for the detected order n.
    pub fn from_fixture(text: &str) -> Result<Self> {
        let mut section = "";
        let mut source_names: Vec<String> = Vec::new();
        let mut map: Vec<(String, String)> = Vec::new();
        let mut ideal_lines: Vec<(String, Option<MBranch>, String)> = Vec::new();
        let mut gradings: Vec<(String, Vec<i64>)> = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') && line.ends_with(']') {
                section = match &line[1..line.len() - 1] {
                    "source" => "source",
                    "map" => "map",
                    "ideal" => "ideal",
                    "gradings" => "gradings",
                    other => return Err(Error::Invalid(format!("unknown section [{other}]"))),
                };
                continue;
            }
            let kv = || -> Result<(String, String)> {
                let (k, v) = line.split_once('=').ok_or_else(|| Error::Invalid(format!("expected `name = value`: {line}")))?;
                Ok((k.trim().to_string(), v.trim().to_string()))
            };
            match section {
                "source" => source_names.extend(line.split_whitespace().map(String::from)),
                "map" => map.push(kv()?),
                "ideal" => {
                    let (k, v) = kv()?;
                    let mut parts = k.split_whitespace();
                    let name = parts.next().unwrap_or("").to_string();
                    let branch = match parts.next() {
                        Some("lower") => Some(MBranch::Lower),
                        Some("upper") => Some(MBranch::Upper),
                        None => None,
                        Some(o) => return Err(Error::Invalid(format!("unknown branch tag `{o}`"))),
                    };
                    ideal_lines.push((name, branch, v));
                }
                "gradings" => {
                    let (k, v) = kv()?;
                    let ws = v
                        .split_whitespace()
                        .map(|x| x.parse::<i64>().map_err(|_| Error::Invalid(format!("bad weight `{x}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    gradings.push((k, ws));
                }
                _ => return Err(Error::Invalid(format!("content outside a section: {line}"))),
            }
        }
        let source = source_space();
        if source_names != source.names() {
            return Err(Error::Invalid("source coordinates must be z zb w wb".into()));
        }
        let names: Vec<String> = map.iter().map(|(k, _)| k.clone()).collect();
        if names.len() < 6 || (names.len() - 4) % 2 != 0 {
            return Err(Error::Invalid("map must list a0..a3, x0..xn, y0..yn".into()));
        }
        let n = (names.len() - 4) / 2 - 1;
        if names != target_names(n) {
            return Err(Error::Invalid("map coordinates out of order".into()));
        }
        let target = VariableSpace::with_gradings(names, gradings)?;
        let hilbert_map = map.iter().map(|(_, v)| parse_polynomial(v, &source)).collect::<Result<Vec<_>>>()?;
        let mut ideal = Vec::new();
        for (name, branch, v) in ideal_lines {
            let (family, indices) =
                family_of(&name).ok_or_else(|| Error::Invalid(format!("unknown generator family `{name}`")))?;
            ideal.push(IdealGenerator { name, family, indices, branch, poly: parse_polynomial(&v, &target)? });
        }
        let lie_poisson = lie_poisson_bivector(n, &target);
        Ok(QuotientPresentation { n, source, target, hilbert_map, ideal, lie_poisson })
    }
}

fn ideal_generators(n: usize, t: &Arc<VariableSpace>) -> Vec<IdealGenerator> {
    let v = |i: usize| Polynomial::var_at(t, i);
    let a = |i: usize| v(i);
    let x = |k: i64| if (0..=n as i64).contains(&k) { v(x_index(k as usize)) } else { Polynomial::zero(t) };
    let y = |k: i64| if (0..=n as i64).contains(&k) { v(y_index(n, k as usize)) } else { Polynomial::zero(t) };
    let c = |k: i64, p: Polynomial| p.scale(&Scalar::from_int(k));
    let sub = |p: Polynomial, q: Polynomial| p.try_sub(&q).expect("same space");
    let add = |p: Polynomial, q: Polynomial| p.try_add(&q).expect("same space");
    let ni = n as i64;
    let mut out = Vec::new();
    let mut push = |name: String, family, indices: Vec<usize>, branch, poly: Polynomial| {
        out.push(IdealGenerator { name, family, indices, branch, poly })
    };
    push("C".into(), GeneratorFamily::C, vec![], None, sub(a(0).mul(&a(1)), a(2).mul(&a(3))));
    for k in 0..=ni {
        let p = add(
            c(ni - k, sub(a(0).mul(&y(k)), a(3).mul(&y(k + 1)))),
            c(k, sub(a(1).mul(&y(k)), a(2).mul(&y(k - 1)))),
        );
        push(format!("A{k}"), GeneratorFamily::A, vec![k as usize], None, p);
    }
    for k in 1..ni {
        let p = add(sub(a(0).mul(&y(k)), a(1).mul(&y(k))), sub(a(2).mul(&y(k - 1)), a(3).mul(&y(k + 1))));
        push(format!("B{k}"), GeneratorFamily::B, vec![k as usize], None, p);
    }
    for k in 0..=ni {
        let p = add(
            c(ni - k, sub(a(0).mul(&x(k)), a(2).mul(&x(k + 1)))),
            c(k, sub(a(1).mul(&x(k)), a(3).mul(&x(k - 1)))),
        );
        push(format!("Abar{k}"), GeneratorFamily::Abar, vec![k as usize], None, p);
    }
    for k in 1..ni {
        let p = add(sub(a(0).mul(&x(k)), a(1).mul(&x(k))), sub(a(3).mul(&x(k - 1)), a(2).mul(&x(k + 1))));
        push(format!("Bbar{k}"), GeneratorFamily::Bbar, vec![k as usize], None, p);
    }
    for (fam, name, var) in [(GeneratorFamily::D, "D", &y as &dyn Fn(i64) -> Polynomial), (GeneratorFamily::Dbar, "Dbar", &x)] {
        for i in 0..=ni {
            for j in 0..=ni {
                for k in 0..=ni {
                    let l = i + j - k;
                    if !(0..=ni).contains(&l) {
                        continue;
                    }
                    let p = sub(var(i).mul(&var(j)), var(k).mul(&var(l)));
                    if p.is_zero() {
                        continue;
                    }
                    push(format!("{name}{i}_{j}_{k}"), fam, vec![i as usize, j as usize, k as usize], None, p);
                }
            }
        }
    }
    let pw = |i: usize, e: i64| a(i).pow(e as u32);
    for i in 0..=ni {
        for j in 0..=ni {
            if j <= i {
                let m = pw(0, j).mul(&pw(1, ni - i)).mul(&pw(3, i - j));
                push(format!("M{i}_{j}"), GeneratorFamily::M, vec![i as usize, j as usize], Some(MBranch::Lower), sub(x(i).mul(&y(j)), m));
            }
            if i <= j {
                let m = pw(0, i).mul(&pw(1, ni - j)).mul(&pw(2, j - i));
                push(format!("M{i}_{j}"), GeneratorFamily::M, vec![i as usize, j as usize], Some(MBranch::Upper), sub(x(i).mul(&y(j)), m));
            }
        }
    }
    out
}

/// Kernel membership: the Hilbert-map pullback vanishes.
pub fn kernel_member(q: &QuotientPresentation, p: &Polynomial) -> Result<bool> {
    Ok(q.pullback(p)?.is_zero())
}
