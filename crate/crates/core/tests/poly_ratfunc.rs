use inose_core::field::{big_rational, Field};
use inose_core::poly::Poly;
use inose_core::ratfunc::{Place, RatFunc};
use inose_core::CasError;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    big_rational(n, d)
}

fn poly(coeffs: &[(i64, i64)]) -> Poly<BigRational> {
    Poly::new("x", coeffs.iter().map(|&(n, d)| q(n, d)).collect())
}

fn ipoly(coeffs: &[i64]) -> Poly<BigRational> {
    Poly::new("x", coeffs.iter().map(|&n| q(n, 1)).collect())
}

#[test]
fn poly_ring_basics() {
    let f = ipoly(&[1, 2, 1]); // (x+1)^2
    let g = ipoly(&[1, 1]);
    assert_eq!(f, g.mul(&g));
    assert_eq!(f.degree(), Some(2));
    assert!(ipoly(&[0]).is_zero());
    assert_eq!(ipoly(&[0]).degree(), None);
    let (quo, rem) = f.divrem(&g).unwrap();
    assert_eq!(quo, g);
    assert!(rem.is_zero());
    let (quo, rem) = ipoly(&[1, 0, 0, 1]).divrem(&ipoly(&[1, 1])).unwrap();
    assert_eq!(quo, ipoly(&[1, -1, 1]));
    assert!(rem.is_zero());
    assert_eq!(
        ipoly(&[1]).divrem(&ipoly(&[0])).unwrap_err(),
        CasError::DivisionByZero
    );
}

#[test]
fn gcd_and_squarefree() {
    // f = (x-1)^2 (x+2), g = (x-1)(x+3)
    let f = ipoly(&[1, -1]).pow(2).mul(&ipoly(&[2, 1]));
    let g = ipoly(&[-1, 1]).mul(&ipoly(&[3, 1]));
    let d = f.gcd(&g).unwrap();
    assert_eq!(d, ipoly(&[-1, 1]));

    let sf = f.squarefree_decomposition().unwrap();
    assert_eq!(sf.len(), 2);
    assert_eq!(sf[0], (ipoly(&[2, 1]), 1));
    assert_eq!(sf[1], (ipoly(&[-1, 1]), 2));
}

#[test]
fn resultants() {
    // res(x^2 - 1, x - 2) = value of x^2-1 at 2 = 3 (up to sign conventions).
    let f = ipoly(&[-1, 0, 1]);
    let g = ipoly(&[-2, 1]);
    assert_eq!(f.resultant(&g).unwrap(), q(3, 1));
    // Shared root makes the resultant vanish.
    let h = ipoly(&[-1, 1]);
    assert_eq!(f.resultant(&h).unwrap(), q(0, 1));
    // res(f, g) with deg 2 each: res(x^2+1, x^2-2) = (i^2-2)((-i)^2-2) = 9.
    assert_eq!(
        ipoly(&[1, 0, 1]).resultant(&ipoly(&[-2, 0, 1])).unwrap(),
        q(9, 1)
    );
}

#[test]
fn ratfunc_canonical_form() {
    // (x^2-1)/(2x-2) reduces to (x+1)/2 with monic denominator.
    let r = RatFunc::new(ipoly(&[-1, 0, 1]), ipoly(&[-2, 2])).unwrap();
    assert_eq!(r, RatFunc::new(poly(&[(1, 2), (1, 2)]), ipoly(&[1])).unwrap());
    assert!(r.is_poly());
    // Structural equality is field equality on normalized forms.
    let a = RatFunc::new(ipoly(&[0, 2]), ipoly(&[0, 0, 4])).unwrap();
    let b = RatFunc::new(ipoly(&[1]), ipoly(&[0, 2])).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        RatFunc::new(ipoly(&[1]), ipoly(&[0])).unwrap_err(),
        CasError::DivisionByZero
    );
}

#[test]
fn valuations() {
    // f = x^2 (x-1) / (x+1)^3
    let f = RatFunc::new(
        ipoly(&[0, 0, -1, 1]),
        ipoly(&[1, 1]).pow(3),
    )
    .unwrap();
    let at_zero = Place::Finite(ipoly(&[0, 1]));
    let at_one = Place::Finite(ipoly(&[-1, 1]));
    let at_minus_one = Place::Finite(ipoly(&[1, 1]));
    assert_eq!(f.valuation(&at_zero).unwrap(), 2);
    assert_eq!(f.valuation(&at_one).unwrap(), 1);
    assert_eq!(f.valuation(&at_minus_one).unwrap(), -3);
    assert_eq!(f.valuation(&Place::Infinity).unwrap(), 0);
    let g = RatFunc::new(ipoly(&[1]), ipoly(&[0, 0, 1])).unwrap();
    assert_eq!(g.valuation(&Place::Infinity).unwrap(), 2);
    let zero = RatFunc::new(ipoly(&[0]), ipoly(&[1])).unwrap();
    assert_eq!(
        zero.valuation(&at_zero).unwrap_err(),
        CasError::ZeroFunction
    );
}

#[test]
fn evaluation_and_substitution() {
    let f = RatFunc::new(ipoly(&[1, 0, 1]), ipoly(&[-1, 1])).unwrap(); // (x^2+1)/(x-1)
    assert_eq!(f.eval(&q(2, 1)).unwrap(), q(5, 1));
    assert_eq!(f.eval(&q(1, 1)).unwrap_err(), CasError::DivisionByZero);
    // Substitute x -> 1/x and compare against the directly built function.
    let inv_x = RatFunc::new(ipoly(&[1]), ipoly(&[0, 1])).unwrap();
    let g = f.substitute(&inv_x).unwrap();
    let expected = RatFunc::new(ipoly(&[1, 0, 1]), ipoly(&[0, -1, 1]).neg()).unwrap();
    assert_eq!(g, expected);
}

#[test]
fn rewrite_in_even_powers() {
    // f = x^6 / (x^4 + 1) is even; with zeta = -1, m = 2 it becomes
    // y^3/(y^2+1).
    let f = RatFunc::new(
        Poly::monomial("x", q(1, 1), 6),
        ipoly(&[1, 0, 0, 0, 1]),
    )
    .unwrap();
    let r = f.rewrite_in_power(2, "y", &q(-1, 1)).unwrap();
    let expected = RatFunc::new(
        Poly::monomial("y", q(1, 1), 3),
        Poly::new("y", vec![q(1, 1), q(0, 1), q(1, 1)]),
    )
    .unwrap();
    assert_eq!(r, expected);

    // Odd shifts that still differ by a multiple of m are handled:
    // x^3/(x - 1/x) = x^4/(x^2-1) -> y^2/(y-1).
    let g = RatFunc::new(
        Poly::monomial("x", q(1, 1), 4),
        ipoly(&[-1, 0, 1]),
    )
    .unwrap();
    let rg = g.rewrite_in_power(2, "y", &q(-1, 1)).unwrap();
    let expected_g = RatFunc::new(
        Poly::monomial("y", q(1, 1), 2),
        Poly::new("y", vec![q(-1, 1), q(1, 1)]),
    )
    .unwrap();
    assert_eq!(rg, expected_g);

    // A non-invariant function is rejected up front.
    let odd = RatFunc::from_poly(ipoly(&[0, 1]));
    assert!(matches!(
        odd.rewrite_in_power(2, "y", &q(-1, 1)).unwrap_err(),
        CasError::NotInSubfield(_)
    ));
}

#[test]
fn bivariate_via_nesting() {
    // K = Q(t), and rational functions in x over K: check that
    // (x + t)(x - t) = x^2 - t^2 and division works.
    type Kt = RatFunc<BigRational>;
    let t: Kt = RatFunc::x("t", &q(0, 1));
    let x: RatFunc<Kt> = RatFunc::x("x", &t.zero_like());
    let tc: RatFunc<Kt> = RatFunc::constant("x", t.clone());
    let lhs = x.add(&tc).mul(&x.sub(&tc));
    let rhs = x.mul(&x).sub(&tc.mul(&tc));
    assert_eq!(lhs, rhs);
    let ratio = lhs.div(&x.add(&tc)).unwrap();
    assert_eq!(ratio, x.sub(&tc));
}
