mod common;

use common::{any_multivector, multivector, poly, poly_nonzero, sign, space};
use nijenhuis::exactring::{parse_polynomial, Polynomial};
use nijenhuis::multivec::threefold::{bivector_field, curl, div, dot, grad3, star, vector_field};
use nijenhuis::multivec::{parse_multivector, parse_multivector_inferred, Multivector};
use nijenhuis::Error;
use proptest::prelude::*;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg(96))]

    #[test]
    fn wedge_is_associative(a in any_multivector(space(5), 2), b in any_multivector(space(5), 2), c in any_multivector(space(5), 2)) {
        let l = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let r = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn wedge_is_graded_commutative(a in any_multivector(space(5), 3), b in any_multivector(space(5), 3)) {
        let s = sign(a.degree() * b.degree());
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&s));
    }

    #[test]
    fn listing_and_display_round_trip(a in any_multivector(space(4), 4)) {
        let s = a.space().clone();
        prop_assert_eq!(parse_multivector(&a.to_string(), &s).unwrap(), a.clone());
        prop_assert_eq!(parse_multivector(&a.to_listing(), &s).unwrap(), a);
    }

    #[test]
    fn contraction_is_alternating(a in multivector(space(4), 3, 4), f in poly_nonzero(space(4), 3, 2), g in poly_nonzero(space(4), 3, 2)) {
        let fg = a.contract(&[f.clone(), g.clone()]).unwrap();
        let gf = a.contract(&[g, f.clone()]).unwrap();
        prop_assert_eq!(fg, gf.neg());
        prop_assert!(a.contract(&[f.clone(), f]).unwrap().is_zero());
    }

    #[test]
    fn interior_product_is_a_graded_derivation(a in any_multivector(space(4), 2), b in any_multivector(space(4), 2), f in poly_nonzero(space(4), 3, 2)) {
        prop_assume!(a.degree() + b.degree() >= 1);
        let ab = a.wedge(&b).unwrap();
        let lhs = ab.interior(&f).unwrap();
        let mut rhs = Multivector::zero(a.space(), ab.degree() - 1);
        if a.degree() > 0 {
            rhs.add_assign(&a.interior(&f).unwrap().wedge(&b).unwrap());
        }
        if b.degree() > 0 {
            rhs.add_assign(&a.wedge(&b.interior(&f).unwrap()).unwrap().scale(&sign(a.degree())));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_is_an_involution(a in any_multivector(space(3), 3)) {
        let ss = star(&star(&a).unwrap()).unwrap();
        prop_assert_eq!(ss, a);
    }

    #[test]
    fn div_curl_and_curl_grad_vanish(c in prop::collection::vec(poly(space(3), 4, 3), 3), f in poly(space(3), 5, 3)) {
        let y = bivector_field(&[c[0].clone(), c[1].clone(), c[2].clone()]);
        prop_assert!(div(&curl(&y).unwrap()).unwrap().is_zero());
        let g = grad3(&Multivector::term(f, &[0, 1, 2])).unwrap();
        prop_assert!(curl(&g).unwrap().is_zero());
        let x = vector_field(&[c[0].clone(), c[1].clone(), c[2].clone()]);
        prop_assert_eq!(dot(&x, &y).unwrap(), x.wedge(&y).unwrap().component(&[0, 1, 2]));
    }
}

#[test]
fn grammar_example() {
    let s = space(3);
    let m = parse_multivector("(u^2 - 3/2*v)*du^dv + (2i*w)*dw^dv", &s).unwrap();
    assert_eq!(m.degree(), 2);
    assert_eq!(m.component(&[0, 1]), parse_polynomial("u^2 - 3/2*v", &s).unwrap());
    assert_eq!(m.component(&[1, 2]), parse_polynomial("-2i*w", &s).unwrap());
    assert_eq!(m.component(&[2, 1]), parse_polynomial("2i*w", &s).unwrap());
    assert!(parse_multivector("(u)*du^du", &s).unwrap().is_zero());
}

#[test]
fn contraction_example() {
    let s = space(3);
    let m = parse_multivector("(w)*du^dv", &s).unwrap();
    let u = Polynomial::var_at(&s, 0);
    let v = Polynomial::var_at(&s, 1);
    assert_eq!(m.contract(&[u.clone(), v.clone()]).unwrap().scalar_part(), Polynomial::var_at(&s, 2));
    assert_eq!(m.contract(&[v.clone(), u.clone()]).unwrap().scalar_part(), Polynomial::var_at(&s, 2).neg());
    let uv = u.mul(&v);
    // ι_{d(uv)} (w ∂u∧∂v) = w v ∂v − w u ∂u
    let expected = parse_multivector("(v*w)*dv + (-u*w)*du", &s).unwrap();
    assert_eq!(m.interior(&uv).unwrap(), expected);
    assert!(matches!(m.contract(&[u.clone(), v, u]), Err(Error::TooManyForms { .. })));
}

#[test]
fn inferred_space_and_mixed_degrees() {
    let m = parse_multivector_inferred("(a*b)*da^dc").unwrap();
    assert_eq!(m.space().names(), &["a", "b", "c"]);
    assert!(parse_multivector("(u)*du + (v)*du^dv", &space(3)).is_err());
    assert!(parse_multivector("(u)*dq", &space(3)).is_err());
}

#[test]
fn curl_orientation() {
    let s = space(3);
    let f = |t: &str| parse_polynomial(t, &s).unwrap();
    // Curl(f∂u∂v + g∂w∂u + h∂v∂w) = (f_v − g_w, h_w − f_u, g_u − h_v)
    let x = bivector_field(&[f("v*w"), f("u^2*w"), f("u*v^2")]);
    let expected = vector_field(&[f("2*u*v - u^2"), f("v - v^2"), f("2*u*w - w")]);
    let c = curl(&x).unwrap();
    assert_eq!(c, expected);
}
