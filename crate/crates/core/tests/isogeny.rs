use inose_core::field::{big_rational, Field};
use inose_core::isogeny::{build_family, build_j0, two_torsion};
use inose_core::tower::{FieldTower, NFElement};
use inose_core::elliptic::Point;
use inose_core::CasError;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    big_rational(n, d)
}

#[test]
fn family_curves_and_map() {
    let pair = build_family(&q(1, 1), &q(1, 1)).unwrap();
    assert_eq!(pair.a_prime, q(-3, 1));
    assert_eq!(pair.b_prime, q(31, 9));
    pair.isogeny.verify().unwrap();

    // The kernel x = 0 maps to the origin: y^2 = ab^2 = 1 there.
    let kernel_pt = Point::affine(q(0, 1), q(1, 1));
    assert_eq!(pair.isogeny.apply(&kernel_pt).unwrap(), Point::Infinity);

    // A non-curve input is rejected.
    assert_eq!(
        pair.isogeny.apply(&Point::affine(q(5, 1), q(5, 1))).unwrap_err(),
        CasError::PointNotOnCurve
    );
}

#[test]
fn family_map_several_members() {
    for (a, b) in [(1, 1), (2, -1), (3, 2), (6, -1), (-1, 2), (-27, 2)] {
        let pair = build_family(&q(a, 1), &q(b, 1)).unwrap();
        pair.isogeny.verify().unwrap();
    }
}

#[test]
fn degenerate_member_is_rejected() {
    // 4a + 27b = 0 makes E2 singular (b' = 0 with a' != 0 keeps E2 smooth,
    // but the E1 discriminant contains a^3 b^3 (4a+27b)).
    assert_eq!(
        build_family(&q(-27, 4), &q(1, 1)).unwrap_err(),
        CasError::SingularInput
    );
    assert_eq!(
        build_family(&q(0, 1), &q(1, 1)).unwrap_err(),
        CasError::SingularInput
    );
}

#[test]
fn j0_pair() {
    let iso = build_j0(&q(1, 1)).unwrap();
    iso.verify().unwrap();
    assert_eq!(iso.target.a6, q(-27, 1));
    // j = 0 on both sides.
    assert!(iso.source.j_invariant().unwrap().is_zero());
    assert!(iso.target.j_invariant().unwrap().is_zero());
    assert_eq!(build_j0(&q(0, 1)).unwrap_err(), CasError::SingularInput);
    // (x, y) = (2, 3) lies on y^2 = x^3 + 1; its image must lie on the target.
    let img = iso.apply(&Point::affine(q(2, 1), q(3, 1))).unwrap();
    assert!(iso.target.is_on_curve(&img));
    assert_eq!(img, Point::affine(q(3, 1), q(0, 1)));
}

#[test]
fn two_torsion_with_rational_root() {
    // (a, b) = (-1, 2): x^3 - x^2 + 4x - 4 = (x - 1)(x^2 + 4).
    let t0 = FieldTower::rationals();
    let a = NFElement::from_i64(&t0, -1);
    let b = NFElement::from_i64(&t0, 2);
    let tt = two_torsion(&t0, &a, &b, None).unwrap();
    // One rational root and one adjoined quadratic generator.
    assert_eq!(tt.tower.degree(), 2);
    let cubic_at = |x: &NFElement| {
        let al = a.lift_to(&tt.tower);
        let bl = b.lift_to(&tt.tower);
        x.pow(3)
            .add(&al.mul(&x.pow(2)))
            .sub(&al.mul(&bl).mul(&x.from_integer(2)).mul(x))
            .add(&al.mul(&bl).mul(&bl))
    };
    for r in &tt.roots {
        assert!(cubic_at(r).is_zero());
    }
    assert!(tt.roots.iter().any(|r| r.as_rational() == Some(q(1, 1))));
}

#[test]
fn two_torsion_fully_irrational() {
    // (a, b) = (1, 1): the cubic is irreducible over Q, so two generators
    // get adjoined and the tower has degree 6.
    let t0 = FieldTower::rationals();
    let a = NFElement::from_i64(&t0, 1);
    let b = NFElement::from_i64(&t0, 1);
    let tt = two_torsion(&t0, &a, &b, None).unwrap();
    assert_eq!(tt.tower.degree(), 6);
    let al = a.lift_to(&tt.tower);
    let bl = b.lift_to(&tt.tower);
    // Vieta: the roots sum to -a and multiply to -ab^2.
    let sum = tt.roots[0].add(&tt.roots[1]).add(&tt.roots[2]);
    assert_eq!(sum, al.neg());
    let prod = tt.roots[0].mul(&tt.roots[1]).mul(&tt.roots[2]);
    assert_eq!(prod, al.mul(&bl).mul(&bl).neg());
}

#[test]
fn two_torsion_hints_are_verified() {
    let t0 = FieldTower::rationals();
    let a = NFElement::from_i64(&t0, -1);
    let b = NFElement::from_i64(&t0, 2);
    let bogus = [
        NFElement::from_i64(&t0, 1),
        NFElement::from_i64(&t0, 2),
        NFElement::from_i64(&t0, 3),
    ];
    assert_eq!(
        two_torsion(&t0, &a, &b, Some(&bogus)).unwrap_err(),
        CasError::PointNotOnCurve
    );
}
