use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactring::{solve_linear, AffineExpression, LinearSystem, Scalar, SolveOutcome, Unknown};
use crate::multivec::Multivector;
use crate::schouten::{jacobiator, schouten_bracket};

use super::alpha1::{alpha1_c, alpha1_rho, CocycleBlocks};
use super::beta::beta_of;
use super::equations::{all_triples, equations_traced, support_triples, triple_set, Triple};
use super::space::ExtensionSpace;
use super::template::{alpha2_template, Alpha2Template};

/// β, the first-order extension π¹ = β¹ + α¹ and the quadratic template
/// π² = β^{n−1} + α² on the big space.
#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    pub ext: ExtensionSpace,
    pub beta: Multivector,
    pub beta1: Multivector,
    pub beta_nonlinear: Multivector,
    pub alpha1: Multivector,
    pub template: Alpha2Template,
}

impl ExtensionProblem {
    /// `cocycle` holds one scalar per Z coordinate name; absent names are 0.
    pub fn new(n: usize, cocycle: &BTreeMap<String, Scalar>) -> Result<Self> {
        let ext = ExtensionSpace::new(n)?;
        let blocks = CocycleBlocks::per_pair(&ext);
        let scalars = blocks
            .blocks
            .keys()
            .map(|b| (b.clone(), AffineExpression::constant(cocycle.get(b).cloned().unwrap_or_else(Scalar::zero))))
            .collect();
        if let Some(k) = cocycle.keys().find(|k| !blocks.blocks.contains_key(*k)) {
            return Err(Error::UnknownVariable(k.clone()));
        }
        let c = concrete(&alpha1_c(&ext, &blocks, &scalars)?)?;
        let alpha1 = alpha1_rho(&ext)?.try_add(&c)?;
        Self::with_alpha1(ext, alpha1)
    }

    pub fn with_alpha1(ext: ExtensionSpace, alpha1: Multivector) -> Result<Self> {
        let beta = beta_of(&ext.quotient)?.embed(&ext.space)?;
        let beta1 = beta.homogeneous_part(1);
        let beta_nonlinear = beta.try_sub(&beta1)?;
        let template = alpha2_template(&ext)?;
        Ok(ExtensionProblem { ext, beta, beta1, beta_nonlinear, alpha1, template })
    }

    /// The same problem with every template unknown fixed at 0, so that
    /// π² = β^{n−1}.
    pub fn without_template(mut self) -> Self {
        let space = self.ext.space.clone();
        self.template = Alpha2Template { entries: Vec::new(), bivector: Multivector::zero(&space, 2) };
        self
    }

    pub fn pi1(&self) -> Multivector {
        self.beta1.try_add(&self.alpha1).expect("same space")
    }

    pub fn pi2_template(&self) -> Multivector<AffineExpression> {
        self.beta_nonlinear.map_coeffs(|s| AffineExpression::constant(s.clone())).try_add(&self.template.bivector).expect("same space")
    }

    /// Triples supporting [β, β].
    pub fn beta_support(&self) -> Result<Vec<Triple>> {
        Ok(support_triples(&jacobiator(&self.beta)?))
    }
}

pub(crate) fn concrete(m: &Multivector<AffineExpression>) -> Result<Multivector> {
    if m.terms().any(|(_, p)| p.terms().any(|(_, c)| !c.is_constant())) {
        return Err(Error::UnknownsPresent);
    }
    Ok(m.map_coeffs(|c| c.constant_part().clone()))
}

/// Which triples a wave contracts with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WaveSpec {
    /// Support of [β, β].
    BetaSupport,
    /// Triples of target coordinates not used by an earlier wave.
    Algebra,
    /// Triples involving a Z coordinate.
    Mixed,
    /// An explicit list.
    Triples(Vec<Triple>),
}

impl WaveSpec {
    pub fn standard() -> Vec<WaveSpec> {
        vec![WaveSpec::BetaSupport, WaveSpec::Algebra, WaveSpec::Mixed]
    }

    pub fn label(&self) -> String {
        match self {
            WaveSpec::BetaSupport => "support".into(),
            WaveSpec::Algebra => "algebra".into(),
            WaveSpec::Mixed => "mixed".into(),
            WaveSpec::Triples(t) => format!("explicit({})", t.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WaveOutcome {
    Solved { solved: usize },
    /// Positions (in the wave's system) of equations combining to `c = 0`, c ≠ 0.
    Inconsistent { equations: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct WaveResult {
    pub label: String,
    pub triples: Vec<Triple>,
    /// Equations as extracted, in the unknowns left after earlier waves.
    pub system: LinearSystem,
    /// The triple each equation of `system` came from.
    pub origins: Vec<Triple>,
    pub outcome: WaveOutcome,
}

impl WaveResult {
    pub fn consistent(&self) -> bool {
        matches!(self.outcome, WaveOutcome::Solved { .. })
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionSolution {
    pub waves: Vec<WaveResult>,
    /// Every determined unknown as an expression in the free ones.
    pub assignments: BTreeMap<Unknown, AffineExpression>,
    pub free: Vec<Unknown>,
    /// Free unknowns set to zero.
    pub values: BTreeMap<Unknown, Scalar>,
    /// π¹ + π² at those values; `None` when a wave was inconsistent.
    pub pi: Option<Multivector>,
    /// π¹ + π² with the unknowns determined so far, free ones at zero, even
    /// after an inconsistent wave.
    pub partial: Multivector,
}

impl ExtensionSolution {
    pub fn consistent(&self) -> bool {
        self.pi.is_some()
    }

    /// Label of the first inconsistent wave.
    pub fn failed_wave(&self) -> Option<&WaveResult> {
        self.waves.iter().find(|w| !w.consistent())
    }
}

/// Extract and solve wave by wave, substituting each solution into the
/// template before the next extraction.  Free unknowns end up as 0.  Stops
/// at the first inconsistent wave.
pub fn solve_waves(problem: &ExtensionProblem, waves: &[WaveSpec]) -> Result<ExtensionSolution> {
    let pi1 = problem.pi1();
    let g = problem.ext.g_len();
    let mut pi2 = problem.pi2_template();
    let mut assignments: BTreeMap<Unknown, AffineExpression> = BTreeMap::new();
    let mut used = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut ok = true;
    for spec in waves {
        let bracket = schouten_bracket(&pi1, &pi2)?;
        let triples: Vec<Triple> = match spec {
            WaveSpec::BetaSupport => problem.beta_support()?,
            WaveSpec::Algebra => all_triples(g).into_iter().filter(|t| !used.contains(t)).collect(),
            WaveSpec::Mixed => support_triples(&bracket).into_iter().filter(|t| t[2] >= g && !used.contains(t)).collect(),
            WaveSpec::Triples(t) => t.clone(),
        };
        used.extend(triple_set(&triples));
        let (system, origins) = equations_traced(&bracket, &triples)?;
        let outcome = match solve_linear(&system) {
            SolveOutcome::Solution(sol) => {
                for e in assignments.values_mut() {
                    *e = e.substitute(&sol.assignments);
                }
                assignments.extend(sol.assignments.clone());
                pi2 = pi2.map_coeffs(|c| c.substitute(&sol.assignments));
                WaveOutcome::Solved { solved: sol.assignments.len() }
            }
            SolveOutcome::Inconsistent { equations } => WaveOutcome::Inconsistent { equations },
        };
        let stop = !matches!(outcome, WaveOutcome::Solved { .. });
        out.push(WaveResult { label: spec.label(), triples, system, origins, outcome });
        if stop {
            ok = false;
            break;
        }
    }
    let all: Vec<Unknown> = problem.template.unknowns();
    let free: Vec<Unknown> = all.iter().filter(|u| !assignments.contains_key(*u)).cloned().collect();
    let zero: BTreeMap<Unknown, Scalar> = free.iter().map(|u| (u.clone(), Scalar::zero())).collect();
    let mut values = zero.clone();
    for (u, e) in &assignments {
        values.insert(u.clone(), e.evaluate_or_zero(&zero));
    }
    let pi2 = concrete(&pi2.map_coeffs(|c| AffineExpression::constant(c.evaluate_or_zero(&zero))))?;
    let partial = pi1.try_add(&pi2)?;
    Ok(ExtensionSolution { waves: out, assignments, free, values, pi: ok.then(|| partial.clone()), partial })
}
