mod common;

use std::collections::BTreeMap;

use common::{poly, poly_nonzero, scalar, space};
use nijenhuis::exactring::{
    normalize_equation, parse_polynomial, solve_linear, AffineExpression, LinearSystem, Monomial, Polynomial, Scalar,
    SolveOutcome, Unknown,
};
use nijenhuis::Error;
use proptest::prelude::*;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg(128))]

    #[test]
    fn ring_axioms(a in poly(space(4), 6, 3), b in poly(space(4), 6, 3), c in poly(space(4), 6, 3)) {
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.try_add(&c).unwrap()), a.mul(&b).try_add(&a.mul(&c)).unwrap());
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.mul(&Polynomial::one(a.space())), a.clone());
    }

    #[test]
    fn mul_matches_schoolbook(a in poly(space(4), 6, 3), b in poly(space(4), 6, 3)) {
        prop_assert_eq!(a.mul(&b), a.mul_naive(&b));
    }

    #[test]
    fn derivative_is_a_derivation(a in poly(space(4), 6, 3), b in poly(space(4), 6, 3), i in 0usize..4) {
        let lhs = a.mul(&b).derivative(i);
        let rhs = a.derivative(i).mul(&b).try_add(&a.mul(&b.derivative(i))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_round_trips(a in poly(space(4), 6, 3)) {
        let back = parse_polynomial(&a.to_string(), a.space()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        match a.inv() {
            Some(inv) => prop_assert!((&a * &inv).is_one()),
            None => prop_assert!(a.is_zero()),
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &a.conj()).re().clone(), a.norm());
    }

    #[test]
    fn substitution_is_a_ring_map(a in poly(space(3), 4, 2), b in poly(space(3), 4, 2), imgs in prop::collection::vec(poly_nonzero(space(3), 3, 2), 3)) {
        let s = a.space().clone();
        let assign: Vec<Option<Polynomial>> = imgs.into_iter().map(Some).collect();
        let sub = |p: &Polynomial| p.substitute_indexed(&assign, &s).unwrap();
        prop_assert_eq!(sub(&a.mul(&b)), sub(&a).mul(&sub(&b)));
        prop_assert_eq!(sub(&a.try_add(&b).unwrap()), sub(&a).try_add(&sub(&b)).unwrap());
    }

    #[test]
    fn solver_solution_satisfies_consistent_systems(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..8),
        point in prop::collection::vec(-5i64..=5, 5),
    ) {
        let us: Vec<Unknown> = (0..5).map(|k| Unknown::new(&format!("K{k}"))).collect();
        let eqs: Vec<AffineExpression> = rows.iter().map(|r| {
            let mut e = AffineExpression::constant(Scalar::zero());
            let mut val = Scalar::zero();
            for (k, c) in r.iter().enumerate() {
                e.add_term(&us[k], &Scalar::from_int(*c));
                val += &Scalar::from_int(c * point[k]);
            }
            e.add(&AffineExpression::constant(-val))
        }).collect();
        let sys = LinearSystem::new(eqs);
        match solve_linear(&sys) {
            SolveOutcome::Solution(sol) => {
                prop_assert!(sol.satisfies(&sys));
                let vals = sol.with_free_zero();
                for e in &sys.equations {
                    prop_assert!(e.evaluate_or_zero(&vals).is_zero());
                }
            }
            SolveOutcome::Inconsistent { .. } => prop_assert!(false, "consistent system reported inconsistent"),
        }
    }
}

#[test]
fn solver_reports_inconsistency() {
    let k = Unknown::new("K0");
    let l = Unknown::new("K1");
    let e1 = AffineExpression::term(k.clone(), Scalar::one()).add(&AffineExpression::term(l.clone(), Scalar::one()));
    let e2 = e1.add(&AffineExpression::constant(Scalar::from_int(-1)));
    let e3 = AffineExpression::term(k, Scalar::from_int(2)).add(&AffineExpression::term(l, Scalar::from_int(2)));
    match solve_linear(&LinearSystem::new(vec![e1, e2, e3])) {
        SolveOutcome::Inconsistent { equations } => assert!(equations.contains(&1)),
        other => panic!("expected inconsistency, got {other:?}"),
    }
}

#[test]
fn solver_leaves_free_unknowns() {
    let k = Unknown::new("K0");
    let l = Unknown::new("K1");
    let e = AffineExpression::term(k.clone(), Scalar::from_int(3))
        .add(&AffineExpression::term(l.clone(), Scalar::from_int(-6)))
        .add(&AffineExpression::constant(Scalar::from_int(9)));
    let sol = solve_linear(&LinearSystem::new(vec![e])).solution().cloned().unwrap();
    assert_eq!(sol.free, vec![l.clone()]);
    let mut expected = AffineExpression::constant(Scalar::from_int(-3));
    expected.add_term(&l, &Scalar::from_int(2));
    assert_eq!(sol.assignments[&k], expected);
    let vals: BTreeMap<Unknown, Scalar> = sol.with_free_zero();
    assert_eq!(vals[&k], Scalar::from_int(-3));
}

#[test]
fn normalized_equations_compare_up_to_scale() {
    let k = Unknown::new("K3");
    let a = AffineExpression::term(k.clone(), Scalar::from_int(-4)).add(&AffineExpression::constant(Scalar::from_int(2)));
    let b = AffineExpression::term(k, Scalar::from_ratio(2, 3)).add(&AffineExpression::constant(Scalar::from_ratio(-1, 3)));
    assert_eq!(normalize_equation(&a), normalize_equation(&b));
}

#[test]
fn parses_gaussian_coefficients() {
    let s = space(3);
    let p = parse_polynomial("(1/2+3i)*u^2*w - v", &s).unwrap();
    let c = &Scalar::from_ratio(1, 2) + &(&Scalar::from_int(3) * &Scalar::i());
    assert_eq!(p.coefficient(&Monomial::from_exponents(vec![2, 0, 1])), c);
    assert_eq!(p.coefficient(&Monomial::var(3, 1)), Scalar::from_int(-1));
    assert_eq!(p.len(), 2);
}

#[test]
fn rejects_foreign_variables_and_mixed_spaces() {
    assert!(parse_polynomial("u*q", &space(3)).is_err());
    let a = Polynomial::var_at(&space(3), 0);
    let b = Polynomial::var_at(&space(4), 0);
    assert!(matches!(a.try_add(&b), Err(Error::SpaceMismatch)));
}
