mod common;

use std::collections::BTreeSet;

use common::{poly, samples};
use nijenhuis::exactring::{Monomial, Polynomial, Scalar};
use nijenhuis::invariants::{
    hilbert_basis_zn, is_invariant, kernel_member, resonant_monomials, rewrite_exponents, rewrite_in_generators,
    rep_diagnose, DiagonalAction, Decomposition, GeneratorFamily, Gl2, LieAlgebraTable, QuotientModule,
    QuotientPresentation, Side, Sl2Module,
};
use nijenhuis::Error;
use proptest::prelude::*;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn source_monomial(q: &QuotientPresentation, e: [u32; 4]) -> Polynomial {
    Polynomial::monomial(&q.source, Monomial::from_exponents(e.to_vec()), Scalar::one())
}

#[test]
fn hilbert_basis_is_invariant() {
    for n in 2..=7usize {
        let basis = hilbert_basis_zn(n).unwrap();
        assert_eq!(basis.len(), 2 * n + 6);
        let act = DiagonalAction::standard(n as u64);
        assert!(basis.iter().all(|p| is_invariant(&act, p)), "n = {n}");
        let distinct: BTreeSet<String> = basis.iter().map(|p| p.to_string()).collect();
        assert_eq!(distinct.len(), basis.len());
    }
    assert!(hilbert_basis_zn(1).is_err());
}

proptest! {
    #![proptest_config(cfg(256))]

    #[test]
    fn rewriting_inverts_the_hilbert_map(n in 2usize..=6, e in prop::array::uniform4(0u32..=9)) {
        let q = QuotientPresentation::new(n).unwrap();
        let invariant = (e[0] as i64 - e[1] as i64 + e[2] as i64 - e[3] as i64).rem_euclid(n as i64) == 0;
        match rewrite_exponents(e, n) {
            Ok(_) => {
                prop_assert!(invariant);
                let m = Monomial::from_exponents(e.to_vec());
                let image = rewrite_in_generators(&m, n, &q.target).unwrap();
                prop_assert_eq!(q.pullback(&image).unwrap(), source_monomial(&q, e));
            }
            Err(err) => {
                prop_assert!(!invariant);
                prop_assert_eq!(err, Error::NotInvariant);
            }
        }
    }

    #[test]
    fn e_and_f_commute_to_h(p in poly(QuotientPresentation::new(3).unwrap().target, 5, 2)) {
        let q = QuotientPresentation::new(3).unwrap();
        let p = p.embed(&q.target).unwrap();
        let m = QuotientModule::new(&q, Side::Target).unwrap();
        let act = |g, p: &Polynomial| m.act(g, p).unwrap();
        let ef = act(Gl2::E, &act(Gl2::F, &p)).try_sub(&act(Gl2::F, &act(Gl2::E, &p))).unwrap();
        prop_assert_eq!(ef, act(Gl2::H, &p));
        let he = act(Gl2::H, &act(Gl2::E, &p)).try_sub(&act(Gl2::E, &act(Gl2::H, &p))).unwrap();
        prop_assert_eq!(he, act(Gl2::E, &p).scale(&Scalar::from_int(2)));
        // T is central
        let te = act(Gl2::T, &act(Gl2::E, &p)).try_sub(&act(Gl2::E, &act(Gl2::T, &p))).unwrap();
        prop_assert!(te.is_zero());
    }

    #[test]
    fn resonances_match_brute_force(lam in prop::collection::vec(-3i64..=3, 1..=5), t in 0usize..5, d in 2u32..=4) {
        let t = t % lam.len();
        let fast: BTreeSet<Vec<u32>> = resonant_monomials(&lam, t, d).into_iter().collect();
        let mut slow = BTreeSet::new();
        let mut e = vec![0u32; lam.len()];
        'outer: loop {
            let deg: u32 = e.iter().sum();
            if (2..=d).contains(&deg) && e.iter().zip(&lam).map(|(&k, &l)| k as i64 * l).sum::<i64>() == lam[t] {
                slow.insert(e.clone());
            }
            for i in 0..e.len() {
                e[i] += 1;
                if e[i] <= d {
                    continue 'outer;
                }
                e[i] = 0;
            }
            break;
        }
        prop_assert_eq!(fast, slow);
    }
}

#[test]
fn source_action_is_opposite_on_commutators() {
    let q = QuotientPresentation::new(3).unwrap();
    let m = QuotientModule::new(&q, Side::Source).unwrap();
    for p in samples(&poly(q.source.clone(), 4, 3), 50) {
        let act = |g, p: &Polynomial| m.act(g, p).unwrap();
        let ef = act(Gl2::E, &act(Gl2::F, &p)).try_sub(&act(Gl2::F, &act(Gl2::E, &p))).unwrap();
        assert_eq!(ef, act(Gl2::H, &p).neg());
    }
}

#[test]
fn ideal_generators_lie_in_the_kernel() {
    for n in [3usize, 5, 7] {
        let q = QuotientPresentation::new(n).unwrap();
        for g in &q.ideal {
            assert!(kernel_member(&q, &g.poly).unwrap(), "{} for n = {n}", g.name);
        }
    }
}

#[test]
fn kernel_membership_examples() {
    let q = QuotientPresentation::new(3).unwrap();
    assert!(kernel_member(&q, &q.generator("C").unwrap().poly).unwrap());
    assert!(kernel_member(&q, &q.generator("M1_1").unwrap().poly).unwrap());
    assert!(!kernel_member(&q, &Polynomial::var_at(&q.target, 0)).unwrap());
    let a0a1 = Polynomial::var_at(&q.target, 0).mul(&Polynomial::var_at(&q.target, 1));
    assert!(!kernel_member(&q, &a0a1).unwrap());
}

#[test]
fn h_degree_columns() {
    for n in [3usize, 4, 5] {
        let q = QuotientPresentation::new(n).unwrap();
        for g in &q.ideal {
            let (_, h) = g.degrees().unwrap_or_else(|| panic!("{} is not homogeneous", g.name));
            assert_eq!(h, g.expected_h_degree(n), "{}", g.name);
            let typo = matches!(g.family, GeneratorFamily::D | GeneratorFamily::Dbar);
            if !typo {
                assert_eq!(h, g.printed_h_degree(n), "{}", g.name);
            }
        }
    }
}

#[test]
fn generator_families_decompose() {
    let q = QuotientPresentation::new(3).unwrap();
    let m = QuotientModule::new(&q, Side::Target).unwrap();
    let span = |f: GeneratorFamily| -> Vec<Polynomial> { q.family(f).map(|g| g.poly.clone()).collect() };
    let d = |ls: &[u32]| Decomposition::from_labels(ls.iter().copied());
    assert_eq!(rep_diagnose(&m, &span(GeneratorFamily::A)).unwrap(), d(&[3]));
    assert_eq!(rep_diagnose(&m, &span(GeneratorFamily::B)).unwrap(), d(&[1]));
    assert_eq!(rep_diagnose(&m, &span(GeneratorFamily::C)).unwrap(), d(&[0]));
    assert_eq!(rep_diagnose(&m, &span(GeneratorFamily::M)).unwrap(), d(&[6, 4, 2, 0]));
    assert_eq!(rep_diagnose(&m, &span(GeneratorFamily::D)).unwrap(), d(&[2]));
    let xs: Vec<Polynomial> = (4..8).map(|i| Polynomial::var_at(&q.target, i)).collect();
    assert_eq!(rep_diagnose(&m, &xs).unwrap(), d(&[3]));
    let mixed = vec![Polynomial::var_at(&q.target, 4).try_add(&Polynomial::var_at(&q.target, 5)).unwrap()];
    assert_eq!(rep_diagnose(&m, &mixed).unwrap_err(), Error::NotHStable);
}

#[test]
fn lie_poisson_table_is_a_lie_algebra() {
    for n in 2..=5usize {
        let q = QuotientPresentation::new(n).unwrap();
        let t = LieAlgebraTable::from_linear_bivector(&q.lie_poisson).unwrap();
        assert!(t.is_antisymmetric());
        assert!(t.jacobi_violations().unwrap().is_empty());
    }
}

#[test]
fn resonance_example() {
    assert_eq!(resonant_monomials(&[1, -1], 0, 3), vec![vec![2, 1]]);
    assert!(resonant_monomials(&[1, 1], 0, 4).is_empty());
    // ±Id: λ and −λ resonate at every odd degree
    let r = resonant_monomials(&[1, -1], 1, 5);
    assert!(r.iter().all(|k| k[1] == k[0] + 1));
    assert_eq!(r.len(), 2);
}
