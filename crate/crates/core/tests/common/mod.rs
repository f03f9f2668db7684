#![allow(dead_code)]

use std::sync::Arc;

use nijenhuis::exactring::{Monomial, Polynomial, Scalar, VariableSpace};
use nijenhuis::multivec::Multivector;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn space(nvars: usize) -> Arc<VariableSpace> {
    let names: Vec<String> = match nvars {
        3 => vec!["u".into(), "v".into(), "w".into()],
        n => (0..n).map(|i| format!("x{i}")).collect(),
    };
    VariableSpace::new(names).unwrap()
}

/// Gaussian rational with |num|, |den| ≤ 20.
pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=20, prop_oneof![3 => Just(0i64), 1 => -20i64..=20], 1i64..=20)
        .prop_map(|(a, b, c, d)| &Scalar::from_ratio(a, b) + &(&Scalar::from_ratio(c, d) * &Scalar::i()))
}

/// Up to `terms` terms, exponents ≤ `max_exp`.
pub fn poly(space: Arc<VariableSpace>, terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let n = space.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), scalar()), 0..=terms).prop_map(move |ts| {
        Polynomial::from_terms(&space, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)))
    })
}

/// Between 1 and `terms` terms, exponents ≤ `max_exp`.
pub fn poly_nonzero(space: Arc<VariableSpace>, terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    poly(space, terms, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

/// A `degree`-vector with 1 to `terms` skew components, each a nonzero
/// polynomial of up to 3 terms with exponents ≤ 2.
pub fn multivector(space: Arc<VariableSpace>, degree: usize, terms: usize) -> impl Strategy<Value = Multivector> {
    let n = space.len();
    let sp = space.clone();
    prop::collection::vec((prop::sample::subsequence((0..n).collect::<Vec<_>>(), degree), poly_nonzero(space, 3, 2)), 1..=terms)
        .prop_map(move |ts| {
            let mut m = Multivector::zero(&sp, degree);
            for (idx, p) in ts {
                m.add_assign(&Multivector::term(p, &idx));
            }
            m
        })
}

/// Multivector of random degree ≤ `max_degree` on up to 4 variables' space.
pub fn any_multivector(space: Arc<VariableSpace>, max_degree: usize) -> impl Strategy<Value = Multivector> {
    let cap = max_degree.min(space.len());
    (0..=cap).prop_flat_map(move |d| multivector(space.clone(), d, 3))
}

/// Deterministic runner for the acceptance suite.
pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

pub fn sign(deg: usize) -> Scalar {
    if deg % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// `n` deterministic draws from a strategy.
pub fn samples<S: Strategy>(strat: &S, n: usize) -> Vec<S::Value> {
    let mut r = runner(n as u32);
    (0..n).map(|_| strat.new_tree(&mut r).expect("strategy draws").current()).collect()
}
