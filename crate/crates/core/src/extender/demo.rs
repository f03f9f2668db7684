use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactring::{parse_polynomial, Polynomial, VariableSpace};
use crate::multivec::{parse_multivector, Multivector};
use crate::schouten::jacobiator;

use super::equations::support_triples;
use super::space::ExtensionSpace;
use super::verify::{pullback_check, verify_extension_with};

macro_rules! fixture {
    ($f:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/", $f))
    };
}

const DEMOS: &[(&str, &str)] = &[
    ("kleinian-an", fixture!("demos/kleinian-an.demo")),
    ("kleinian-d", fixture!("demos/kleinian-d.demo")),
    ("kleinian-e6", fixture!("demos/kleinian-e6.demo")),
    ("kleinian-e7", fixture!("demos/kleinian-e7.demo")),
    ("kleinian-e8", fixture!("demos/kleinian-e8.demo")),
    ("orbifold-2d-zn", fixture!("demos/orbifold-2d-zn.demo")),
    ("resonance-ab", fixture!("demos/resonance-ab.demo")),
    ("z3-beta", fixture!("demos/z3-beta.demo")),
    ("z3-pi78", fixture!("demos/z3-pi78.demo")),
];

const BIVECTORS: &[(&str, &str)] = &[("z3-beta.mv", fixture!("z3-beta.mv")), ("z3-pi78.mv", fixture!("z3-pi78.mv"))];

/// The expected report of every shipped demo (text format, normalization on).
pub const EXPECTED: &[(&str, &str)] = &[
    ("kleinian-an", fixture!("demos/kleinian-an.expected")),
    ("kleinian-d", fixture!("demos/kleinian-d.expected")),
    ("kleinian-e6", fixture!("demos/kleinian-e6.expected")),
    ("kleinian-e7", fixture!("demos/kleinian-e7.expected")),
    ("kleinian-e8", fixture!("demos/kleinian-e8.expected")),
    ("orbifold-2d-zn", fixture!("demos/orbifold-2d-zn.expected")),
    ("resonance-ab", fixture!("demos/resonance-ab.expected")),
    ("z3-beta", fixture!("demos/z3-beta.expected")),
    ("z3-pi78", fixture!("demos/z3-pi78.expected")),
];

pub fn demo_names() -> Vec<&'static str> {
    DEMOS.iter().map(|(n, _)| *n).collect()
}

/// A shipped bivector fixture by file name.
pub fn bivector_fixture(name: &str) -> Option<&'static str> {
    BIVECTORS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// A polynomial map from a symplectic source onto the bivector's coordinates.
#[derive(Clone, Debug)]
pub struct SourceMap {
    pub bivector: Multivector,
    pub map: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub enum CaseKind {
    /// Small embedding with an optional source map and ideal generator.
    Plain { source: Option<SourceMap>, ideal: Option<Polynomial> },
    /// A bivector on the Z_n extension space.
    Zn(Box<ExtensionSpace>),
}

#[derive(Clone, Debug)]
pub struct DemoCase {
    pub name: String,
    pub bivector: Multivector,
    pub kind: CaseKind,
    pub expect_poisson: bool,
}

#[derive(Clone, Debug)]
pub struct Demo {
    pub name: String,
    pub title: String,
    pub cases: Vec<DemoCase>,
}

pub fn load_demo(name: &str) -> Result<Demo> {
    let text = DEMOS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).ok_or_else(|| Error::Invalid(format!("no demo `{name}`")))?;
    parse_demo(name, text)
}

#[derive(Default)]
struct RawCase {
    name: String,
    vars: Vec<String>,
    source: Vec<String>,
    source_bivector: Option<String>,
    map: Vec<(String, String)>,
    ideal: Option<String>,
    embedding: Option<String>,
    fixture: Option<String>,
    bivector: String,
    expect: Option<String>,
}

/// Line format: `[case name]` opens a case; `key: value` lines set fields;
/// everything after `bivector:` up to the next case is the bivector.
pub fn parse_demo(name: &str, text: &str) -> Result<Demo> {
    let mut title = String::new();
    let mut raws: Vec<RawCase> = Vec::new();
    let mut in_bivector = false;
    for (no, line) in text.lines().enumerate() {
        let l = line.trim();
        if let Some(rest) = l.strip_prefix("[case ").and_then(|r| r.strip_suffix(']')) {
            raws.push(RawCase { name: rest.trim().to_string(), ..Default::default() });
            in_bivector = false;
            continue;
        }
        if l.starts_with('#') || l.is_empty() {
            if raws.is_empty() && title.is_empty() {
                title = l.trim_start_matches('#').trim().to_string();
            }
            continue;
        }
        let bad = |msg: &str| Error::Invalid(format!("demo `{name}` line {}: {msg}", no + 1));
        let c = raws.last_mut().ok_or_else(|| bad("content before the first [case]"))?;
        if in_bivector {
            c.bivector.push_str(l);
            c.bivector.push('\n');
            continue;
        }
        let (key, value) = l.split_once(':').ok_or_else(|| bad("expected `key: value`"))?;
        let value = value.trim().to_string();
        match key.trim() {
            "vars" => c.vars = value.split_whitespace().map(String::from).collect(),
            "source" => c.source = value.split_whitespace().map(String::from).collect(),
            "source-bivector" => c.source_bivector = Some(value),
            "map" => {
                let (v, p) = value.split_once('=').ok_or_else(|| bad("expected `map: var = polynomial`"))?;
                c.map.push((v.trim().to_string(), p.trim().to_string()));
            }
            "ideal" => c.ideal = Some(value),
            "embedding" => c.embedding = Some(value),
            "bivector-fixture" => c.fixture = Some(value),
            "expect" => c.expect = Some(value),
            "bivector" => {
                in_bivector = true;
                c.bivector.push_str(&value);
            }
            k => return Err(bad(&format!("unknown key `{k}`"))),
        }
    }
    let cases = raws.into_iter().map(|r| build_case(name, r)).collect::<Result<_>>()?;
    Ok(Demo { name: name.to_string(), title, cases })
}

fn build_case(demo: &str, r: RawCase) -> Result<DemoCase> {
    let bad = |msg: String| Error::Invalid(format!("demo `{demo}` case `{}`: {msg}", r.name));
    let expect_poisson = match r.expect.as_deref() {
        None | Some("poisson") => true,
        Some("not-poisson") => false,
        Some(e) => return Err(bad(format!("unknown expectation `{e}`"))),
    };
    let text = match &r.fixture {
        Some(f) => bivector_fixture(f).ok_or_else(|| bad(format!("no bivector fixture `{f}`")))?.to_string(),
        None => r.bivector.clone(),
    };
    if let Some(e) = &r.embedding {
        let n: usize = e.strip_prefix('z').and_then(|n| n.parse().ok()).ok_or_else(|| bad(format!("bad embedding `{e}`")))?;
        let ext = ExtensionSpace::new(n)?;
        let bivector = parse_multivector(&text, &ext.space)?;
        return Ok(DemoCase { name: r.name, bivector, kind: CaseKind::Zn(Box::new(ext)), expect_poisson });
    }
    let space = VariableSpace::new(r.vars.clone())?;
    let bivector = parse_multivector(&text, &space)?;
    let source = match &r.source_bivector {
        None => None,
        Some(sb) => {
            let src: Arc<VariableSpace> = VariableSpace::new(r.source.clone())?;
            let mut map = vec![None; space.len()];
            for (v, p) in &r.map {
                map[space.require(v)?] = Some(parse_polynomial(p, &src)?);
            }
            let map = map
                .into_iter()
                .enumerate()
                .map(|(i, p)| p.ok_or_else(|| bad(format!("no map entry for `{}`", space.name(i)))))
                .collect::<Result<_>>()?;
            Some(SourceMap { bivector: parse_multivector(sb, &src)?, map })
        }
    };
    let ideal = r.ideal.as_deref().map(|p| parse_polynomial(p, &space)).transpose()?;
    Ok(DemoCase { name: r.name, bivector, kind: CaseKind::Plain { source, ideal }, expect_poisson })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DemoReport {
    pub demo: String,
    pub title: String,
    pub cases: Vec<CaseReport>,
}

impl DemoReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.checks.iter().all(|k| k.passed))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("demo {}: {}\n", self.demo, self.title);
        for c in &self.cases {
            let _ = writeln!(s, "  case {}", c.case);
            for k in &c.checks {
                let _ = writeln!(s, "    {:<10} {}  {}", k.check, if k.passed { "PASS" } else { "FAIL" }, k.detail);
                if let Some(w) = &k.witness {
                    let _ = writeln!(s, "               witness: {w}");
                }
            }
        }
        let _ = writeln!(s, "result: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// First term of a multivector, for witnesses.
pub fn first_term(m: &Multivector) -> Option<String> {
    m.terms().next().map(|(sk, p)| {
        let names: Vec<String> = sk.indices().iter().map(|&i| format!("d{}", m.space().name(i as usize))).collect();
        format!("({p})*{}", names.join("^"))
    })
}

pub fn jacobiator_check(pi: &Multivector, expect_poisson: bool) -> Result<CheckResult> {
    let j = jacobiator(pi)?;
    let zero = j.is_zero();
    let detail = if zero {
        format!("zero ({} vars, {} terms)", pi.space().len(), pi.monomial_count())
    } else {
        format!("nonzero ({} terms on {} wedge-triples)", j.monomial_count(), support_triples(&j).len())
    };
    Ok(CheckResult {
        check: "jacobiator".into(),
        passed: zero == expect_poisson,
        detail: if expect_poisson { detail } else { format!("{detail}, expected nonzero") },
        witness: if zero { None } else { first_term(&j) },
    })
}

fn pair_name(space: &VariableSpace, (u, v): (usize, usize)) -> String {
    format!("({}, {})", space.name(u), space.name(v))
}

pub fn run_case(case: &DemoCase, normalize: bool) -> Result<CaseReport> {
    let mut checks = vec![jacobiator_check(&case.bivector, case.expect_poisson)?];
    let space = case.bivector.space().clone();
    match &case.kind {
        CaseKind::Plain { source, ideal } => {
            if let Some(src) = source {
                let map: Vec<Option<Polynomial>> = src.map.iter().cloned().map(Some).collect();
                let pb = pullback_check(&case.bivector, &src.bivector, &map, normalize, None)?;
                checks.push(CheckResult {
                    check: "pullback".into(),
                    passed: pb.passed(),
                    detail: match &pb.scale {
                        Some(l) => format!("{} of {} pairs agree at scale {l}", pb.pairs - pb.failures.len(), pb.pairs),
                        None => "no global scale fits".into(),
                    },
                    witness: pb.failures.first().map(|&p| pair_name(&space, p)),
                });
                if let Some(f) = ideal {
                    let img = f.substitute_indexed(&map, src.bivector.space())?;
                    checks.push(CheckResult {
                        check: "ideal".into(),
                        passed: img.is_zero(),
                        detail: format!("{f} vanishes on the image"),
                        witness: (!img.is_zero()).then(|| img.to_string()),
                    });
                }
            }
            if let Some(f) = ideal {
                let mut bad = None;
                for i in 0..space.len() {
                    let b = case.bivector.contract(&[f.clone(), Polynomial::var_at(&space, i)])?.scalar_part();
                    if !b.is_zero() {
                        bad = Some(format!("{{f, {}}} = {b}", space.name(i)));
                        break;
                    }
                }
                checks.push(CheckResult {
                    check: "casimir".into(),
                    passed: bad.is_none(),
                    detail: "ideal generator brackets to zero with every coordinate".into(),
                    witness: bad,
                });
            }
        }
        CaseKind::Zn(ext) => {
            let r = verify_extension_with(ext, &case.bivector, normalize)?;
            let cascade: Vec<String> = r.cascade.iter().map(|c| format!("k={}:{}", c.k, c.terms)).collect();
            checks.push(CheckResult {
                check: "cascade".into(),
                passed: r.consistent(),
                detail: format!("{} (consistent with jacobiator)", cascade.join(" ")),
                witness: None,
            });
            checks.push(CheckResult {
                check: "pullback".into(),
                passed: r.pullback_compatible,
                detail: match &r.scale {
                    Some(l) => format!("{} of {} pairs agree at scale {l}", r.pairs_checked - r.pullback_failures.len(), r.pairs_checked),
                    None => "no global scale fits".into(),
                },
                witness: r.pullback_failures.first().map(|(u, v)| format!("({u}, {v})")),
            });
        }
    }
    Ok(CaseReport { case: case.name.clone(), checks })
}

pub fn run_demo(demo: &Demo, normalize: bool) -> Result<DemoReport> {
    let cases = demo.cases.iter().map(|c| run_case(c, normalize)).collect::<Result<_>>()?;
    Ok(DemoReport { demo: demo.name.clone(), title: demo.title.clone(), cases })
}
