use inose_core::field::{big_rational, Field};
use inose_core::inose::{
    build_cubic_model, build_psi_over_u, build_surface, invariants_from_curves, obar_section,
    verify_psi,
};
use inose_core::isogeny::build_family;
use inose_core::ratfunc::RatFunc;
use inose_core::tower::{tower_extend, FieldTower, NFElement};
use inose_core::CasError;
use num_rational::BigRational;
use std::sync::Arc;

fn q(n: i64, d: i64) -> BigRational {
    big_rational(n, d)
}

/// Q(omega), omega^2 + omega + 1 = 0.
fn tower_omega() -> Arc<FieldTower> {
    let base = FieldTower::rationals();
    let minpoly = vec![
        NFElement::from_i64(&base, 1),
        NFElement::from_i64(&base, 1),
        NFElement::from_i64(&base, 1),
    ];
    tower_extend(&base, "omega", &minpoly).unwrap()
}

#[test]
fn invariants_match_family_closed_forms() {
    let (a, b) = (q(1, 1), q(1, 1));
    let pair = build_family(&a, &b).unwrap();
    let inv = invariants_from_curves(&pair.isogeny.source, &pair.isogeny.target).unwrap();
    // A = a a' (a+6b)(a'+6b'), D1 = -16 a^2 b^3 (4a+27b).
    let a_expected = a
        .mul(&pair.a_prime)
        .mul(&a.add(&b.mul(&q(6, 1))))
        .mul(&pair.a_prime.add(&pair.b_prime.mul(&q(6, 1))));
    assert_eq!(inv.a_cap, a_expected);
    assert_eq!(inv.delta1, q(-16 * 31, 1));
    // D2 for the quotient curve: -16 a'^2 b'^3 (4a'+27b').
    let d2_expected = q(-16, 1)
        .mul(&pair.a_prime.pow(2))
        .mul(&pair.b_prime.pow(3))
        .mul(&pair.a_prime.mul(&q(4, 1)).add(&pair.b_prime.mul(&q(27, 1))));
    assert_eq!(inv.delta2, d2_expected);
}

#[test]
fn surface_models() {
    let pair = build_family(&q(1, 1), &q(1, 1)).unwrap();
    let inv = invariants_from_curves(&pair.isogeny.source, &pair.isogeny.target).unwrap();
    for n in 1..=6u32 {
        let s = build_surface(&inv, n, "s").unwrap();
        assert!(s.curve.a2.is_zero());
        // a6 has a pole of order exactly n at s = 0.
        use inose_core::ratfunc::Place;
        let at0 = Place::Finite(inose_core::poly::Poly::new(
            "s",
            vec![q(0, 1), q(1, 1)],
        ));
        assert_eq!(s.curve.a6.valuation(&at0).unwrap(), -(n as i64));
    }
    assert_eq!(
        build_surface(&inv, 0, "s").unwrap_err(),
        CasError::UnsupportedN(0)
    );
    assert_eq!(
        build_surface(&inv, 7, "s").unwrap_err(),
        CasError::UnsupportedN(7)
    );
}

#[test]
fn rescaling_records_transformation() {
    let pair = build_family(&q(1, 1), &q(1, 1)).unwrap();
    let inv = invariants_from_curves(&pair.isogeny.source, &pair.isogeny.target).unwrap();
    let s = build_surface(&inv, 1, "s").unwrap();
    let r = s.rescaled(&q(2, 1), &q(3, 1)).unwrap();
    assert_eq!(r.rescale.lambda, q(2, 1));
    assert_eq!(r.rescale.mu, q(3, 1));
    // a4 scales by lambda^-4.
    assert_eq!(
        r.curve.a4.as_constant().unwrap(),
        s.curve.a4.as_constant().unwrap() / q(16, 1)
    );
    assert_eq!(s.rescaled(&q(0, 1), &q(1, 1)).unwrap_err(), CasError::ZeroScale);
}

#[test]
fn psi_maps_pencil_onto_weierstrass_model() {
    for (a, b) in [(1i64, 1i64), (2, -1)] {
        let pair = build_family(&q(a, 1), &q(b, 1)).unwrap();
        let inv = invariants_from_curves(&pair.isogeny.source, &pair.isogeny.target).unwrap();
        let f6 = build_surface(&inv, 6, "u").unwrap();
        verify_psi(&pair, &f6).unwrap();
    }
}

#[test]
fn tangent_at_origin_and_obar() {
    let t = tower_omega();
    let a = NFElement::from_i64(&t, 1);
    let b = NFElement::from_i64(&t, 1);
    let pair = build_family(&a, &b).unwrap();
    let inv = invariants_from_curves(&pair.isogeny.source, &pair.isogeny.target).unwrap();
    let f6 = build_surface(&inv, 6, "u").unwrap();

    let c = |v: &NFElement| RatFunc::constant("u", v.clone());
    let u = RatFunc::x("u", &a.zero_like());
    let cubic = build_cubic_model(&c(&pair.a), &c(&pair.b), &c(&pair.a_prime), &c(&pair.b_prime), &u)
        .unwrap();

    // Tangent line at the origin: 3u^2 x1 - 3 x2 + a(u^2+3) z = 0 up to scale.
    let (line, third) = cubic.tangent_and_third(&cubic.origin.clone()).unwrap();
    let three_u2 = u.pow(2).mul(&c(&a.from_integer(3)));
    // line proportional to (3u^2, -3, a(u^2+3)).
    let expected = [
        three_u2.clone(),
        c(&a.from_integer(-3)),
        u.pow(2).add(&c(&a.from_integer(3))).mul(&c(&a)),
    ];
    for i in 0..3 {
        for j in (i + 1)..3 {
            assert_eq!(
                line[i].mul(&expected[j]),
                line[j].mul(&expected[i]),
                "tangent line mismatch"
            );
        }
    }
    assert!(cubic.eval(&third).is_zero());

    // Psi is 0/0 at the third tangent point, but the section P_Obar is
    // still defined through the partner origins.
    let psi = build_psi_over_u(&pair, "u");
    assert_eq!(psi.eval(&third).unwrap_err(), CasError::IndeterminateForm);

    let omega = NFElement::gen_by_name(&t, "omega").unwrap();
    let p_obar = obar_section(&f6, &psi, &omega).unwrap();
    f6.curve.check_on_curve(&p_obar).unwrap();
    assert!(!p_obar.is_infinity());
}
