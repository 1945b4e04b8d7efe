use inose_core::field::{big_rational, Field};
use inose_core::tower::{
    numeric_embed, tower_extend, FieldAutomorphism, FieldTower, NFElement,
};
use inose_core::CasError;

fn q(n: i64, d: i64) -> num_rational::BigRational {
    big_rational(n, d)
}

/// Q(sqrt2): x^2 - 2.
fn tower_sqrt2() -> std::sync::Arc<FieldTower> {
    let base = FieldTower::rationals();
    let minpoly = vec![
        NFElement::from_i64(&base, -2),
        NFElement::from_i64(&base, 0),
        NFElement::from_i64(&base, 1),
    ];
    tower_extend(&base, "sqrt2", &minpoly).unwrap()
}

/// Q(sqrt2, i).
fn tower_sqrt2_i() -> std::sync::Arc<FieldTower> {
    let t1 = tower_sqrt2();
    let minpoly = vec![
        NFElement::from_i64(&t1, 1),
        NFElement::from_i64(&t1, 0),
        NFElement::from_i64(&t1, 1),
    ];
    tower_extend(&t1, "i", &minpoly).unwrap()
}

#[test]
fn quadratic_arithmetic() {
    let t = tower_sqrt2();
    let s2 = NFElement::generator(&t, 0);
    let one = s2.one_like();
    // (1 + sqrt2)^2 = 3 + 2 sqrt2
    let x = one.add(&s2);
    let sq = x.mul(&x);
    let expected = NFElement::from_i64(&t, 3).add(&s2.mul(&NFElement::from_i64(&t, 2)));
    assert_eq!(sq, expected);
    // sqrt2 * sqrt2 = 2
    assert_eq!(s2.mul(&s2).as_rational(), Some(q(2, 1)));
    // (1 + sqrt2)^-1 = sqrt2 - 1
    let inv = x.inv().unwrap();
    assert_eq!(inv, s2.sub(&one));
    assert!(x.mul(&inv).is_one());
}

#[test]
fn nested_tower_arithmetic() {
    let t = tower_sqrt2_i();
    let s2 = NFElement::gen_by_name(&t, "sqrt2").unwrap();
    let i = NFElement::gen_by_name(&t, "i").unwrap();
    // (sqrt2 + i)(sqrt2 - i) = 2 + 1 = 3
    let p = s2.add(&i).mul(&s2.sub(&i));
    assert_eq!(p.as_rational(), Some(q(3, 1)));
    // 1/(sqrt2 + i) = (sqrt2 - i)/3
    let inv = s2.add(&i).inv().unwrap();
    let expected = s2.sub(&i).mul(&NFElement::rational(&t, 1, 3));
    assert_eq!(inv, expected);
    // i^2 = -1 even when represented at the top level
    assert_eq!(i.mul(&i).as_rational(), Some(q(-1, 1)));
}

#[test]
fn division_by_zero_is_reported() {
    let t = tower_sqrt2();
    let zero = NFElement::from_i64(&t, 0);
    assert_eq!(zero.inv().unwrap_err(), CasError::DivisionByZero);
}

#[test]
fn reducible_extension_detected_lazily() {
    // x^2 - 4 is reducible over Q; the tower builds fine but inverting
    // g - 2 (a zero divisor) must fail.
    let base = FieldTower::rationals();
    let minpoly = vec![
        NFElement::from_i64(&base, -4),
        NFElement::from_i64(&base, 0),
        NFElement::from_i64(&base, 1),
    ];
    let t = tower_extend(&base, "g", &minpoly).unwrap();
    let g = NFElement::generator(&t, 0);
    let bad = g.sub(&NFElement::from_i64(&t, 2));
    assert_eq!(bad.inv().unwrap_err(), CasError::NotAField("g".into()));
    // Elements outside the ideal still invert fine.
    let good = g.add(&NFElement::from_i64(&t, 1));
    assert!(good.inv().is_ok());
}

#[test]
fn non_monic_and_degree_checks() {
    let base = FieldTower::rationals();
    let non_monic = vec![
        NFElement::from_i64(&base, -2),
        NFElement::from_i64(&base, 0),
        NFElement::from_i64(&base, 3),
    ];
    assert_eq!(
        tower_extend(&base, "g", &non_monic).unwrap_err(),
        CasError::NotMonic
    );
    let linear = vec![NFElement::from_i64(&base, -2), NFElement::from_i64(&base, 1)];
    assert_eq!(
        tower_extend(&base, "g", &linear).unwrap_err(),
        CasError::DegreeTooSmall
    );
}

#[test]
fn flat_coordinates_round_trip() {
    let t = tower_sqrt2_i();
    let s2 = NFElement::gen_by_name(&t, "sqrt2").unwrap();
    let i = NFElement::gen_by_name(&t, "i").unwrap();
    let x = s2
        .mul(&NFElement::rational(&t, 7, 3))
        .add(&i.mul(&s2).mul(&NFElement::rational(&t, -1, 2)))
        .add(&NFElement::from_i64(&t, 5));
    let flat = x.to_flat();
    assert_eq!(flat.len(), 4);
    let back = NFElement::from_flat(&t, &flat).unwrap();
    assert_eq!(back, x);
    // Basis order: earliest generator fastest: [1, sqrt2, i, sqrt2*i].
    assert_eq!(flat[0], q(5, 1));
    assert_eq!(flat[1], q(7, 3));
    assert_eq!(flat[2], q(0, 1));
    assert_eq!(flat[3], q(-1, 2));
}

#[test]
fn automorphism_conjugation() {
    let t = tower_sqrt2_i();
    let s2 = NFElement::gen_by_name(&t, "sqrt2").unwrap();
    let i = NFElement::gen_by_name(&t, "i").unwrap();
    // Complex conjugation: sqrt2 -> sqrt2, i -> -i.
    let gamma = FieldAutomorphism::new(&t, vec![s2.clone(), i.neg()]).unwrap();
    let x = s2.add(&i);
    assert_eq!(gamma.apply(&x), s2.sub(&i));
    // gamma^2 = identity.
    let gg = gamma.compose(&gamma).unwrap();
    assert_eq!(gg.apply(&x), x);
    // A non-root image is rejected.
    assert!(FieldAutomorphism::new(&t, vec![s2.clone(), s2.clone()]).is_err());
}

#[test]
fn numeric_embeddings() {
    let t = tower_sqrt2_i();
    let embs = t.embeddings();
    assert_eq!(embs.len(), 4);
    let s2 = NFElement::gen_by_name(&t, "sqrt2").unwrap();
    for emb in &embs {
        let ball = numeric_embed(&s2, emb, 40).unwrap();
        assert!((ball.value.norm() - 2f64.sqrt()).abs() < 1e-9);
    }
    // Precision beyond double must be refused.
    assert_eq!(
        numeric_embed(&s2, &embs[0], 100).unwrap_err(),
        CasError::PrecisionExhausted
    );
}

#[test]
fn lift_to_larger_tower() {
    let t1 = tower_sqrt2();
    let t2 = tower_sqrt2_i();
    let s2_small = NFElement::generator(&t1, 0);
    let lifted = s2_small.lift_to(&t2);
    let s2_big = NFElement::gen_by_name(&t2, "sqrt2").unwrap();
    assert_eq!(lifted, s2_big);
}
