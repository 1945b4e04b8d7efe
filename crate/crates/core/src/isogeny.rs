//! The one-parameter family of 3-isogenous elliptic curve pairs
//!
//! ```text
//! E1: y^2 = x^3 + a (x - b)^2
//! E2: y^2 = x^3 + a'(x - b')^2,   a' = -3a,  b' = (4a + 27b)/9
//! ```
//!
//! with the explicit degree-3 map `E1 -> E2`, plus its degenerate `j = 0`
//! sibling `y^2 = x^3 + d  ->  y^2 = x^3 - 27 d`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::elliptic::{Point, WeierstrassCurve};
use crate::error::{CasError, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::tower::{tower_extend, FieldTower, NFElement};

/// An explicit 3-isogeny between two short Weierstrass curves, given by
/// `(x, y) -> (phi_x(x), y * phi_y_factor(x))`.
#[derive(Debug, Clone)]
pub struct ThreeIsogeny<K: Field> {
    pub source: WeierstrassCurve<K>,
    pub target: WeierstrassCurve<K>,
    pub phi_x: RatFunc<K>,
    pub phi_y_factor: RatFunc<K>,
}

/// A member of the 3-isogeny family together with its defining parameters.
#[derive(Debug, Clone)]
pub struct FamilyPair<K: Field> {
    pub a: K,
    pub b: K,
    pub a_prime: K,
    pub b_prime: K,
    pub isogeny: ThreeIsogeny<K>,
}

/// `E1` of the family as a short Weierstrass model:
/// `x^3 + a x^2 - 2ab x + ab^2`.
pub fn family_curve<K: Field>(a: &K, b: &K) -> Result<WeierstrassCurve<K>> {
    WeierstrassCurve::short(
        a.clone(),
        a.mul(b).mul(&a.from_integer(-2)),
        a.mul(b).mul(b),
    )
    .map_err(|_| CasError::SingularInput)
}

pub fn build_family<K: Field>(a: &K, b: &K) -> Result<FamilyPair<K>> {
    let a_prime = a.mul(&a.from_integer(-3));
    let b_prime = a
        .from_integer(4)
        .mul(a)
        .add(&a.from_integer(27).mul(b))
        .mul(&a.from_ratio(1, 9));
    let source = family_curve(a, b)?;
    let target = family_curve(&a_prime, &b_prime)?;
    // phi_x = (3x^3 + 4a x^2 - 12ab x + 12ab^2) / (3x^2)
    let num_x = Poly::new(
        "x",
        vec![
            a.from_integer(12).mul(a).mul(b).mul(b),
            a.from_integer(-12).mul(a).mul(b),
            a.from_integer(4).mul(a),
            a.from_integer(3),
        ],
    );
    let phi_x = RatFunc::new(num_x, Poly::monomial("x", a.from_integer(3), 2))?;
    // phi_y = -y (x^3 + 4ab x - 8ab^2) / x^3
    let num_y = Poly::new(
        "x",
        vec![
            a.from_integer(-8).mul(a).mul(b).mul(b),
            a.from_integer(4).mul(a).mul(b),
            a.zero_like(),
            a.one_like(),
        ],
    )
    .neg();
    let phi_y_factor = RatFunc::new(num_y, Poly::monomial("x", a.one_like(), 3))?;
    Ok(FamilyPair {
        a: a.clone(),
        b: b.clone(),
        a_prime,
        b_prime,
        isogeny: ThreeIsogeny {
            source,
            target,
            phi_x,
            phi_y_factor,
        },
    })
}

/// The degenerate `j = 0` pair `y^2 = x^3 + d -> y^2 = x^3 - 27d` with
/// `phi = ((x^3 + 4d)/x^2, y (x^3 - 8d)/x^3)`.
pub fn build_j0<K: Field>(d: &K) -> Result<ThreeIsogeny<K>> {
    if d.is_zero() {
        return Err(CasError::SingularInput);
    }
    let zero = d.zero_like();
    let source = WeierstrassCurve::short(zero.clone(), zero.clone(), d.clone())
        .map_err(|_| CasError::SingularInput)?;
    let target = WeierstrassCurve::short(
        zero.clone(),
        zero.clone(),
        d.mul(&d.from_integer(-27)),
    )
    .map_err(|_| CasError::SingularInput)?;
    let phi_x = RatFunc::new(
        Poly::new(
            "x",
            vec![
                d.from_integer(4).mul(d),
                zero.clone(),
                zero.clone(),
                d.one_like(),
            ],
        ),
        Poly::monomial("x", d.one_like(), 2),
    )?;
    let phi_y_factor = RatFunc::new(
        Poly::new(
            "x",
            vec![
                d.from_integer(-8).mul(d),
                zero.clone(),
                zero.clone(),
                d.one_like(),
            ],
        ),
        Poly::monomial("x", d.one_like(), 3),
    )?;
    Ok(ThreeIsogeny {
        source,
        target,
        phi_x,
        phi_y_factor,
    })
}

impl<K: Field> ThreeIsogeny<K> {
    /// Symbolic verification that the map really lands on the target curve:
    /// with `y^2` replaced by the source right-hand side, the target
    /// equation must vanish identically in `x`.
    pub fn verify(&self) -> Result<()> {
        let var = self.phi_x.var();
        let exemplar = self.source.a2.zero_like();
        let x = RatFunc::x(var, &exemplar);
        let f1 = curve_rhs_ratfunc(&self.source, &x);
        let f2_at_phi = curve_rhs_ratfunc(&self.target, &self.phi_x);
        let lhs = self.phi_y_factor.pow(2).mul(&f1);
        if lhs.sub(&f2_at_phi).is_zero() {
            Ok(())
        } else {
            Err(CasError::ImageOffCurve)
        }
    }

    /// Image of a point of the source curve. Kernel points (where the map
    /// has a pole) go to the origin.
    pub fn apply(&self, p: &Point<K>) -> Result<Point<K>> {
        self.source.check_on_curve(p)?;
        let (x, y) = match p.xy() {
            None => return Ok(Point::Infinity),
            Some(v) => v,
        };
        if self.phi_x.den().eval(x).is_zero() {
            return Ok(Point::Infinity);
        }
        let img = Point::Affine(
            self.phi_x.eval(x)?,
            y.mul(&self.phi_y_factor.eval(x)?),
        );
        if !self.target.is_on_curve(&img) {
            return Err(CasError::ImageOffCurve);
        }
        Ok(img)
    }
}

/// The right-hand side `x^3 + a2 x^2 + a4 x + a6` of a short model, as a
/// rational function of the supplied argument.
fn curve_rhs_ratfunc<K: Field>(
    curve: &WeierstrassCurve<K>,
    arg: &RatFunc<K>,
) -> RatFunc<K> {
    let c = |v: &K| RatFunc::constant(arg.var(), v.clone());
    arg.pow(3)
        .add(&c(&curve.a2).mul(&arg.pow(2)))
        .add(&c(&curve.a4).mul(arg))
        .add(&c(&curve.a6))
}

/// The three 2-torsion x-coordinates of `E1: y^2 = x^3 + a(x-b)^2`, possibly
/// after extending the tower.
#[derive(Debug, Clone)]
pub struct TwoTorsion {
    pub tower: Arc<FieldTower>,
    pub roots: [NFElement; 3],
}

/// Finds the roots of `x^3 + a x^2 - 2ab x + ab^2`.
///
/// With `hints` the supplied roots are verified against the cubic (in the
/// tower they belong to) and returned as-is. Without hints, rational roots
/// are searched first when `a, b` are rational; any remaining factor is
/// handled by adjoining a root of it as a new tower generator (named
/// `theta1`, `theta2`), so the result may live in an extension of the input
/// tower.
pub fn two_torsion(
    tower: &Arc<FieldTower>,
    a: &NFElement,
    b: &NFElement,
    hints: Option<&[NFElement; 3]>,
) -> Result<TwoTorsion> {
    let cubic = Poly::new(
        "x",
        vec![
            a.mul(b).mul(b),
            a.mul(b).mul(&a.from_integer(-2)),
            a.clone(),
            a.one_like(),
        ],
    );
    if let Some(roots) = hints {
        for r in roots {
            if !cubic.eval(r).is_zero() {
                return Err(CasError::PointNotOnCurve);
            }
        }
        if roots[0] == roots[1] || roots[0] == roots[2] || roots[1] == roots[2] {
            return Err(CasError::SingularInput);
        }
        return Ok(TwoTorsion {
            tower: Arc::clone(&roots[0].tower),
            roots: roots.clone(),
        });
    }

    let mut current = Arc::clone(tower);
    let mut poly = cubic;
    let mut roots: Vec<NFElement> = Vec::new();

    // Rational roots first, while the remaining factor has rational
    // coefficients.
    loop {
        if poly.degree() == Some(1) {
            let r = poly.coeff(0).neg();
            roots.push(r);
            break;
        }
        let rational_coeffs: Option<Vec<BigRational>> = poly
            .coeffs()
            .iter()
            .map(|c| c.as_rational())
            .collect();
        let mut found = None;
        if let Some(qc) = rational_coeffs {
            if let Some(r) = rational_root(&qc) {
                found = Some(NFElement::from_rational(&current, r));
            }
        }
        let root = match found {
            Some(r) => r,
            None => {
                // Adjoin a root of the remaining (monic) factor.
                let name = format!("theta{}", roots.len() + 1);
                let minpoly: Vec<NFElement> = poly.coeffs().to_vec();
                let bigger = tower_extend(&current, &name, &minpoly)?;
                let g = NFElement::gen_by_name(&bigger, &name).unwrap();
                // Re-express the factor over the bigger tower before
                // deflating by the new root.
                poly = Poly::new(
                    "x",
                    poly.coeffs().iter().map(|c| c.lift_to(&bigger)).collect(),
                );
                roots = roots.iter().map(|r| r.lift_to(&bigger)).collect();
                current = bigger;
                g
            }
        };
        let linear = Poly::new("x", vec![root.neg(), root.one_like()]);
        poly = poly.div_exact(&linear)?;
        roots.push(root);
        if roots.len() == 3 {
            break;
        }
    }
    if roots.len() != 3 {
        return Err(CasError::SingularInput);
    }
    let roots: [NFElement; 3] = [roots[0].clone(), roots[1].clone(), roots[2].clone()];
    if roots[0] == roots[1] || roots[0] == roots[2] || roots[1] == roots[2] {
        return Err(CasError::SingularInput);
    }
    Ok(TwoTorsion {
        tower: current,
        roots,
    })
}

/// One rational root of a monic cubic/quadratic with rational coefficients,
/// by the rational root theorem after clearing denominators.
fn rational_root(coeffs: &[BigRational]) -> Option<BigRational> {
    let eval = |x: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    if Zero::is_zero(&coeffs[0]) {
        return Some(BigRational::zero());
    }
    // Scale x = y / l with l the lcm of coefficient denominators to get a
    // monic integer polynomial in y; integer roots divide its constant term.
    let mut l = BigInt::from(1);
    for c in coeffs.iter() {
        l = l.lcm(c.denom());
    }
    let n = coeffs.len() - 1;
    let c0 = (&coeffs[0] * BigRational::from_integer(l.pow(n as u32))).to_integer();
    let c0 = c0.abs();
    let mut d = BigInt::from(1);
    while &d * &d <= c0 {
        if (&c0 % &d).is_zero() {
            for cand in [d.clone(), &c0 / &d] {
                for sign in [1, -1] {
                    let y = BigRational::from_integer(&cand * BigInt::from(sign));
                    let x = y / BigRational::from_integer(l.clone());
                    if Zero::is_zero(&eval(&x)) {
                        return Some(x);
                    }
                }
            }
        }
        d += 1;
    }
    None
}
