mod common;

use std::collections::BTreeMap;

use common::fixture;
use nijenhuis::exactring::{normalize_equation, AffineExpression, Polynomial, Scalar};
use nijenhuis::extender::{
    alpha1_c, alpha1_rho, beta_nonlinear, bivector_fixture, build_beta, check_facts, cocycle_scalars_of,
    degree1_conditions, extract_equations_symbolic, load_demo, parse_equation, parse_symbolic_multivector,
    pullback_check, run_demo, solve_waves, split_by_unknown, uniform_cocycle, CocycleBlocks, ExtensionProblem,
    ExtensionSpace, PairKind, WaveOutcome, WaveSpec, EXPECTED,
};
use nijenhuis::invariants::{source_bivector, QuotientPresentation};
use nijenhuis::multivec::{parse_multivector, Multivector};
use nijenhuis::schouten::{jacobiator, w_decompose};
use nijenhuis::{Error, Monomial};

fn mv(name: &str, ext: &ExtensionSpace) -> Multivector {
    parse_multivector(&fixture(name), &ext.space).unwrap()
}

fn uniform(ext: &ExtensionSpace) -> BTreeMap<String, Scalar> {
    uniform_cocycle(ext, &Scalar::one(), &Scalar::one(), &Scalar::one())
}

#[test]
fn extension_space_shape() {
    let ext = ExtensionSpace::new(3).unwrap();
    assert_eq!(ext.g_len(), 12);
    assert_eq!(ext.space.len(), 78);
    assert_eq!(ext.pairs.len(), 66);
    let aa01 = ext.space.index_of("aa01").unwrap();
    assert!(ext.is_z(aa01));
    assert_eq!(ext.pair_of(aa01), Some((0, 1)));
    assert!(!ext.is_z(ext.space.index_of("y3").unwrap()));
    assert_eq!(ext.kinds.iter().filter(|k| **k == PairKind::XY).count(), 16);
}

#[test]
fn beta_matches_listings() {
    let ext = ExtensionSpace::new(3).unwrap();
    let beta = build_beta(3).unwrap().embed(&ext.space).unwrap();
    let (b1, b2) = (mv("z3_beta1.mv", &ext), mv("z3_beta2.mv", &ext));
    assert_eq!(beta.homogeneous_part(1), b1);
    assert_eq!(beta.homogeneous_part(2), b2);
    assert!(jacobiator(&b1).unwrap().is_zero());
    assert!(jacobiator(&b2).unwrap().is_zero());
    // the typeset copies differ from the listings by one moved term
    let moved = parse_multivector("(3*y2)*da3^dy3", &ext.space).unwrap();
    assert_eq!(b1.try_sub(&mv("z3_beta1_text.mv", &ext)).unwrap(), moved);
    assert_eq!(mv("z3_beta2_text.mv", &ext).try_sub(&b2).unwrap(), moved);
}

#[test]
fn beta_jacobiator_listing_up_to_scale() {
    let ext = ExtensionSpace::new(3).unwrap();
    let beta = build_beta(3).unwrap().embed(&ext.space).unwrap();
    let listed = mv("z3_beta_jacobiator.mv", &ext);
    assert_eq!(jacobiator(&beta).unwrap(), listed.scale(&Scalar::from_int(4)));
}

#[test]
fn beta_nonlinear_has_t_degree_zero() {
    for n in [3usize, 4, 5] {
        let q = QuotientPresentation::new(n).unwrap();
        let parts = w_decompose(&beta_nonlinear(&q), "t").unwrap();
        assert_eq!(parts.into_keys().collect::<Vec<_>>(), vec![0], "n = {n}");
    }
}

#[test]
fn alpha1_parts_match_listings() {
    let ext = ExtensionSpace::new(3).unwrap();
    assert_eq!(alpha1_rho(&ext).unwrap(), mv("z3_alpha1_rho.mv", &ext));
    let blocks = CocycleBlocks::by_kind(&ext, &[(PairKind::XX, "L10"), (PairKind::XY, "L33"), (PairKind::YY, "L14")]);
    let built = alpha1_c(&ext, &blocks, &blocks.unknowns()).unwrap();
    let listed = parse_symbolic_multivector(&fixture("z3_alpha1_c.mv"), &ext.space, &BTreeMap::new(), |s| s.starts_with('L')).unwrap();
    // the listing carries a literal 1 on yy01 instead of the block scalar
    let yy01 = ext.space.index_of("yy01").unwrap();
    let (u, v) = ext.pair_of(yy01).unwrap();
    let diff = listed.try_sub(&built).unwrap();
    assert_eq!(diff.len(), 1);
    let mut want = AffineExpression::constant(Scalar::one());
    want.add_term(&nijenhuis::Unknown::new("L14"), &Scalar::from_int(-1));
    assert_eq!(diff.component(&[u, v]).coefficient(&Monomial::var(ext.space.len(), yy01)), want);
}

#[test]
fn missing_block_scalar_is_an_error() {
    let ext = ExtensionSpace::new(3).unwrap();
    let blocks = CocycleBlocks::by_kind(&ext, &[(PairKind::XX, "L10")]);
    assert!(matches!(alpha1_c(&ext, &blocks, &BTreeMap::new()), Err(Error::MissingBlockScalar(_))));
}

#[test]
fn template_matches_listing() {
    let ext = ExtensionSpace::new(3).unwrap();
    let p = ExtensionProblem::new(3, &BTreeMap::new()).unwrap();
    assert_eq!(p.template.unknowns().len(), 196);
    let symbols: BTreeMap<String, Polynomial> =
        ext.quotient.ideal.iter().map(|g| (g.listing_symbol(), g.poly.clone())).collect();
    let listed = parse_symbolic_multivector(&fixture("z3_alpha2_template.mv"), &ext.space, &symbols, |s| {
        (s.starts_with('K') || s.starts_with('l')) && s[1..].chars().all(|c| c.is_ascii_digit())
    })
    .unwrap();
    assert_eq!(p.template.bivector, listed);
}

#[test]
fn first_wave_reproduces_printed_equations() {
    let ext = ExtensionSpace::new(3).unwrap();
    let c = parse_symbolic_multivector(&fixture("z3_alpha1_c.mv"), &ext.space, &BTreeMap::new(), |s| s.starts_with('L')).unwrap();
    let (c0, blocks) = split_by_unknown(&c);
    let prob = ExtensionProblem::new(3, &BTreeMap::new()).unwrap();
    let fixed = prob.pi1().try_add(&c0).unwrap();
    let trip = prob.beta_support().unwrap();
    let sys = extract_equations_symbolic(&fixed, &blocks, &prob.pi2_template(), &trip).unwrap();
    let ours: Vec<AffineExpression> = sys.equations.iter().map(normalize_equation).collect();
    let printed: Vec<AffineExpression> = fixture("z3_wave1_equations.txt")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| normalize_equation(&parse_equation(l).unwrap()))
        .collect();
    assert_eq!(printed.len(), 21);
    for (i, e) in printed.iter().enumerate() {
        assert!(ours.contains(e), "printed equation {} not extracted", i + 1);
    }
}

#[test]
fn degree1_conditions_on_the_cocycles() {
    let ext = ExtensionSpace::new(3).unwrap();
    let z: Vec<usize> = (ext.g_len()..ext.space.len()).collect();
    let zero = ExtensionProblem::new(3, &BTreeMap::new()).unwrap();
    let r = degree1_conditions(&zero.beta1, &zero.alpha1, &z).unwrap();
    assert!(r.all_hold() && r.direct_zero);

    let uni = ExtensionProblem::new(3, &uniform(&ext)).unwrap();
    let r = degree1_conditions(&uni.beta1, &uni.alpha1, &z).unwrap();
    assert!(r.all_hold() && r.consistent());

    let mut bad = uniform(&ext);
    bad.insert("aa23".into(), Scalar::one());
    let p = ExtensionProblem::new(3, &bad).unwrap();
    let r = degree1_conditions(&p.beta1, &p.alpha1, &z).unwrap();
    assert!(!r.all_hold());
    assert!(r.consistent());
}

#[test]
fn degree1_conditions_on_a_small_nonabelian_example() {
    // g = span{e, f} with [e, f] = e, Z = span{z} with e·z = z, f·z = 0:
    // ρ([e, f]) = ρ(e) ≠ 0 = [ρ(e), ρ(f)]
    let s = nijenhuis::VariableSpace::new(["e", "f", "z"]).unwrap();
    let beta1 = parse_multivector("(e)*de^df", &s).unwrap();
    let alpha1 = parse_multivector("(z)*de^dz", &s).unwrap();
    let r = degree1_conditions(&beta1, &alpha1, &[2]).unwrap();
    assert!(r.representation > 0);
    assert!(!r.direct_zero);
    assert!(r.consistent());
    let quadratic = parse_multivector("(e^2)*de^df", &s).unwrap();
    assert_eq!(degree1_conditions(&quadratic, &alpha1, &[2]).unwrap_err(), Error::NotLinear);
}

#[test]
fn uniform_cocycle_waves() {
    let ext = ExtensionSpace::new(3).unwrap();
    let p = ExtensionProblem::new(3, &uniform(&ext)).unwrap();
    let sol = solve_waves(&p, &[WaveSpec::BetaSupport, WaveSpec::Algebra]).unwrap();
    assert!(sol.consistent());
    let solved: Vec<usize> = sol
        .waves
        .iter()
        .map(|w| match w.outcome {
            WaveOutcome::Solved { solved } => solved,
            _ => unreachable!(),
        })
        .collect();
    assert_eq!(solved, vec![46, 13]);
    // every wave's equations hold at the returned values
    for w in &sol.waves {
        let vals = &sol.values;
        let fixed = w.system.equations.iter().filter(|e| !e.evaluate_or_zero(vals).is_zero()).count();
        assert_eq!(fixed, 0, "wave {}", w.label);
    }
}

#[test]
fn zero_template_is_inconsistent_at_once() {
    let p = ExtensionProblem::new(3, &BTreeMap::new()).unwrap().without_template();
    let sol = solve_waves(&p, &WaveSpec::standard()).unwrap();
    assert!(!sol.consistent());
    assert_eq!(sol.failed_wave().unwrap().label, "support");
}

#[test]
fn published_alpha_satisfies_the_structural_facts() {
    let ext = ExtensionSpace::new(3).unwrap();
    let raw = parse_multivector(bivector_fixture("z3-pi78.mv").unwrap(), &ext.space).unwrap();
    let lam = raw.component(&[2, 3]).coefficient(&Monomial::var(ext.space.len(), 0));
    let pi = raw.scale(&lam.inv().unwrap());
    let coc = cocycle_scalars_of(&ext, &pi).unwrap();
    let p = ExtensionProblem::new(3, &coc).unwrap();
    let alpha2 = pi.try_sub(&p.beta).unwrap().homogeneous_part(2);
    assert!(check_facts(&ext, &alpha2).unwrap().all_hold());
    // and lies in the span of the template
    let vals = p.template.values_of(&alpha2).unwrap();
    assert_eq!(vals.len(), 196);
}

#[test]
fn pullback_check_rejects_short_maps() {
    let q = QuotientPresentation::new(3).unwrap();
    let src = source_bivector(&q.source);
    let map: Vec<Option<Polynomial>> = q.hilbert_map.iter().cloned().map(Some).collect();
    let beta = build_beta(3).unwrap();
    assert!(pullback_check(&beta, &src, &map, true, None).unwrap().passed());
    assert_eq!(
        pullback_check(&beta, &src, &map[..5], true, None).unwrap_err(),
        Error::Arity { expected: 12, found: 5 }
    );
}

#[test]
fn demos_reproduce_expected_reports() {
    for (name, expected) in EXPECTED {
        let demo = load_demo(name).unwrap();
        let report = run_demo(&demo, true).unwrap();
        assert_eq!(report.to_text(), *expected, "demo {name}");
    }
}
