//! Elliptic surfaces `F^(n)` attached to a pair of 3-isogenous curves.
//!
//! For short models `E: y^2 = x^3 + a2 x^2 + a4 x + a6` and
//! `E': y^2 = x^3 + a2' x^2 + a4' x + a6'` put
//!
//! ```text
//! A  = (a2^2 - 3 a4)(a2'^2 - 3 a4')
//! B  = (32/27)(2 a2^3 - 9 a2 a4 + 27 a6)(2 a2'^3 - 9 a2' a4' + 27 a6')
//! Di = 16 (a2^2 a4^2 - 4 a2^3 a6 + 18 a2 a4 a6 - 4 a4^3 - 27 a6^2)
//! ```
//!
//! and define, over the rational function field in `v`,
//!
//! ```text
//! F^(n):  Y^2 = X^3 - (1/3) A X + (1/64)(D1 v^n + B + D2 v^-n).
//! ```
//!
//! The surface for `n = 6` is isomorphic to a pencil of plane cubics
//! ([`build_cubic_model`]); [`Psi`] is the explicit birational map from the
//! pencil to the Weierstrass model.

use crate::elliptic::{PlaneCubicWithOrigin, Point, WeierstrassCurve};
use crate::error::{CasError, Result};
use crate::field::Field;
use crate::isogeny::FamilyPair;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// The quantities `A`, `B`, `D1`, `D2` attached to a pair of short models.
#[derive(Debug, Clone, PartialEq)]
pub struct InoseInvariants<K: Field> {
    pub a_cap: K,
    pub b_cap: K,
    pub delta1: K,
    pub delta2: K,
}

pub fn invariants_from_curves<K: Field>(
    e1: &WeierstrassCurve<K>,
    e2: &WeierstrassCurve<K>,
) -> Result<InoseInvariants<K>> {
    let part_a = |e: &WeierstrassCurve<K>| {
        e.a2.mul(&e.a2).sub(&e.a2.from_integer(3).mul(&e.a4))
    };
    let part_b = |e: &WeierstrassCurve<K>| {
        e.a2.from_integer(2)
            .mul(&e.a2.pow(3))
            .sub(&e.a2.from_integer(9).mul(&e.a2).mul(&e.a4))
            .add(&e.a2.from_integer(27).mul(&e.a6))
    };
    let delta1 = e1.invariants().disc;
    let delta2 = e2.invariants().disc;
    if delta1.is_zero() || delta2.is_zero() {
        return Err(CasError::SingularInput);
    }
    Ok(InoseInvariants {
        a_cap: part_a(e1).mul(&part_a(e2)),
        b_cap: part_b(e1)
            .mul(&part_b(e2))
            .mul(&e1.a2.from_ratio(32, 27)),
        delta1,
        delta2,
    })
}

/// The coordinate change relating a surface model to a rescaled reference
/// model: `X = lambda^2 X'`, `Y = lambda^3 Y'`, `v = mu v'`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rescale<K: Field> {
    pub lambda: K,
    pub mu: K,
}

impl<K: Field> Rescale<K> {
    pub fn identity(exemplar: &K) -> Self {
        Rescale {
            lambda: exemplar.one_like(),
            mu: exemplar.one_like(),
        }
    }
}

/// An elliptic surface `F^(n)` presented as a Weierstrass curve over the
/// rational function field `K(v)`.
#[derive(Debug, Clone)]
pub struct SurfaceModel<K: Field> {
    pub n: u32,
    pub var: String,
    pub curve: WeierstrassCurve<RatFunc<K>>,
    pub rescale: Rescale<K>,
}

pub fn build_surface<K: Field>(
    inv: &InoseInvariants<K>,
    n: u32,
    var: &str,
) -> Result<SurfaceModel<K>> {
    if n == 0 || n > 6 {
        return Err(CasError::UnsupportedN(n as i64));
    }
    if inv.delta1.is_zero() || inv.delta2.is_zero() {
        return Err(CasError::SingularInput);
    }
    let zero = RatFunc::constant(var, inv.a_cap.zero_like());
    let a4 = RatFunc::constant(var, inv.a_cap.mul(&inv.a_cap.from_ratio(-1, 3)));
    // (D1 v^{2n} + B v^n + D2) / (64 v^n)
    let mut num = vec![inv.a_cap.zero_like(); 2 * n as usize + 1];
    num[0] = inv.delta2.clone();
    num[n as usize] = inv.b_cap.clone();
    num[2 * n as usize] = inv.delta1.clone();
    let a6 = RatFunc::new(
        Poly::new(var, num),
        Poly::monomial(var, inv.a_cap.from_integer(64), n as usize),
    )?;
    let curve =
        WeierstrassCurve::short(zero, a4, a6).map_err(|_| CasError::SingularInput)?;
    Ok(SurfaceModel {
        n,
        var: var.to_string(),
        curve,
        rescale: Rescale::identity(&inv.a_cap),
    })
}

impl<K: Field> SurfaceModel<K> {
    /// Applies `X = lambda^2 X'`, `Y = lambda^3 Y'`, `v = mu v'` and returns
    /// the model in the primed coordinates, recording the transformation.
    pub fn rescaled(&self, lambda: &K, mu: &K) -> Result<SurfaceModel<K>> {
        if lambda.is_zero() || mu.is_zero() {
            return Err(CasError::ZeroScale);
        }
        let lam = RatFunc::constant(&self.var, lambda.clone());
        let curve0 = WeierstrassCurve {
            a1: self.curve.a1.scale_var(mu)?,
            a2: self.curve.a2.scale_var(mu)?,
            a3: self.curve.a3.scale_var(mu)?,
            a4: self.curve.a4.scale_var(mu)?,
            a6: self.curve.a6.scale_var(mu)?,
        };
        let curve = curve0.rescale(&lam)?;
        Ok(SurfaceModel {
            n: self.n,
            var: self.var.clone(),
            curve,
            rescale: Rescale {
                lambda: self.rescale.lambda.mul(lambda),
                mu: self.rescale.mu.mul(mu),
            },
        })
    }

    /// Maps a section through the same rescaling as [`SurfaceModel::rescaled`].
    pub fn rescale_section(
        &self,
        lambda: &K,
        mu: &K,
        p: &Point<RatFunc<K>>,
    ) -> Result<Point<RatFunc<K>>> {
        if lambda.is_zero() || mu.is_zero() {
            return Err(CasError::ZeroScale);
        }
        Ok(match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let l2 = RatFunc::constant(&self.var, lambda.pow(2));
                let l3 = RatFunc::constant(&self.var, lambda.pow(3));
                Point::Affine(
                    x.scale_var(mu)?.div(&l2)?,
                    y.scale_var(mu)?.div(&l3)?,
                )
            }
        })
    }
}

/// The pencil of plane cubics isomorphic to `F^(6)`:
///
/// ```text
/// C_u: x2^3 + a'(x2 - b' z)^2 z = u^6 (x1^3 + a (x1 - b z)^2 z)
/// ```
///
/// with origin `(1 : u^2 : 0)`. Generic over the working field `K`, which in
/// practice is `k(u)` or a further extension; `u` is the element of `K`
/// playing the pencil parameter.
pub fn build_cubic_model<K: Field>(
    a: &K,
    b: &K,
    a_prime: &K,
    b_prime: &K,
    u: &K,
) -> Result<PlaneCubicWithOrigin<K>> {
    let u6 = u.pow(6);
    let terms = vec![
        (0u8, 3u8, 0u8, a.one_like()),
        (0, 2, 1, a_prime.clone()),
        (0, 1, 2, a_prime.mul(b_prime).mul(&a.from_integer(-2))),
        (
            0,
            0,
            3,
            a_prime
                .mul(b_prime)
                .mul(b_prime)
                .sub(&u6.mul(a).mul(b).mul(b)),
        ),
        (3, 0, 0, u6.neg()),
        (2, 0, 1, u6.mul(a).neg()),
        (1, 0, 2, u6.mul(a).mul(b).mul(&a.from_integer(2))),
    ];
    let origin = [a.one_like(), u.pow(2), a.zero_like()];
    PlaneCubicWithOrigin::new(terms, origin)
}

/// The birational map from the cubic pencil to the Weierstrass model of
/// `F^(6)`.
#[derive(Debug, Clone)]
pub struct Psi<K: Field> {
    pub a: K,
    pub b: K,
    pub a_prime: K,
    pub b_prime: K,
    pub u: K,
}

impl<K: Field> Psi<K> {
    pub fn new(a: &K, b: &K, a_prime: &K, b_prime: &K, u: &K) -> Self {
        Psi {
            a: a.clone(),
            b: b.clone(),
            a_prime: a_prime.clone(),
            b_prime: b_prime.clone(),
            u: u.clone(),
        }
    }

    /// `(X, Y)` coordinates of the image of a projective point of the
    /// pencil. Points where the denominator vanishes (the origin among
    /// them) report [`CasError::IndeterminateForm`].
    pub fn eval(&self, p: &[K; 3]) -> Result<(K, K)> {
        let (x1, x2, z) = (&p[0], &p[1], &p[2]);
        let (a, b, ap, bp) = (&self.a, &self.b, &self.a_prime, &self.b_prime);
        let u = &self.u;

        let t1 = x1.from_integer(3).mul(x1).add(&a.mul(z)); // 3 x1 + a z
        let t2 = x2.from_integer(3).mul(x2).add(&ap.mul(z)); // 3 x2 + a' z
        let e1 = a.mul(&a.add(&b.mul(&a.from_integer(6)))); // a (a + 6b)
        let e2 = ap.mul(&ap.add(&bp.mul(&a.from_integer(6)))); // a'(a' + 6b')
        // g1 = a (3(a+3b)^2 - a^2), g2 = a'(3(a'+3b')^2 - a'^2)
        let g1 = {
            let s = a.add(&b.mul(&a.from_integer(3)));
            a.mul(&s.mul(&s).mul(&a.from_integer(3)).sub(&a.mul(a)))
        };
        let g2 = {
            let s = ap.add(&bp.mul(&a.from_integer(3)));
            ap.mul(&s.mul(&s).mul(&a.from_integer(3)).sub(&ap.mul(ap)))
        };

        let c6 = e1
            .mul(&t1)
            .mul(&a.from_integer(2))
            .sub(&g1.mul(z));
        let c4 = e1.mul(&t2);
        let c2 = e2.mul(&t1).neg();
        let c0 = e2
            .mul(&t2)
            .mul(&a.from_integer(-2))
            .add(&g2.mul(z));

        let z2 = z.mul(z);
        let d10 = g1
            .neg()
            .mul(&t1.mul(&t1).add(&e1.mul(&z2).mul(&a.from_integer(2))))
            .add(&e1.pow(2).mul(&t1).mul(z).mul(&a.from_integer(6)));
        let d6 = g1
            .mul(&t2.mul(&t2).add(&e2.mul(&z2).mul(&a.from_integer(2))))
            .sub(&e1.mul(&e2).mul(&t1).mul(z).mul(&a.from_integer(6)));
        let d4 = g2
            .mul(&t1.mul(&t1).add(&e1.mul(&z2).mul(&a.from_integer(2))))
            .sub(&e1.mul(&e2).mul(&t2).mul(z).mul(&a.from_integer(6)));
        let d0 = g2
            .neg()
            .mul(&t2.mul(&t2).add(&e2.mul(&z2).mul(&a.from_integer(2))))
            .add(&e2.pow(2).mul(&t2).mul(z).mul(&a.from_integer(6)));

        let den = t1.mul(&u.pow(2)).sub(&t2);
        if den.is_zero() {
            return Err(CasError::IndeterminateForm);
        }
        let num_x = c6
            .mul(&u.pow(6))
            .add(&c4.mul(&u.pow(4)))
            .add(&c2.mul(&u.pow(2)))
            .add(&c0);
        let big_x = num_x.div(&den.mul(&u.pow(2)).mul(&a.from_integer(3)))?;
        let num_y = d10
            .mul(&u.pow(10))
            .add(&d6.mul(&u.pow(6)))
            .add(&d4.mul(&u.pow(4)))
            .add(&d0);
        let big_y = num_y.div(&den.pow(2).mul(&u.pow(3)).mul(&a.from_integer(6)))?;
        Ok((big_x, big_y))
    }

    /// Same as [`Psi::eval`] but wrapped as a curve point.
    pub fn eval_point(&self, p: &[K; 3]) -> Result<Point<K>> {
        let (x, y) = self.eval(p)?;
        Ok(Point::Affine(x, y))
    }
}

/// Convenience: `Psi` for a family pair over the rational function field
/// `K(u)`, with constants lifted.
pub fn build_psi_over_u<K: Field>(
    pair: &FamilyPair<K>,
    uvar: &str,
) -> Psi<RatFunc<K>> {
    let c = |v: &K| RatFunc::constant(uvar, v.clone());
    Psi::new(
        &c(&pair.a),
        &c(&pair.b),
        &c(&pair.a_prime),
        &c(&pair.b_prime),
        &RatFunc::x(uvar, &pair.a.zero_like()),
    )
}

/// The third intersection of the pencil cubic with its tangent at the
/// origin, mapped to the Weierstrass model: the section `P_Obar` is the sum
/// of the images of the two "partner origins" `(1 : omega^j u^2 : 0)`.
///
/// `omega` must be a primitive cube root of unity in `K`.
pub fn obar_section<K: Field>(
    surface: &SurfaceModel<K>,
    psi: &Psi<RatFunc<K>>,
    omega: &K,
) -> Result<Point<RatFunc<K>>> {
    assert_eq!(surface.n, 6, "the pencil parametrizes the n = 6 surface");
    let var = &surface.var;
    let one = RatFunc::constant(var, omega.one_like());
    let zero = RatFunc::constant(var, omega.zero_like());
    let u2 = RatFunc::from_poly(Poly::monomial(var, omega.one_like(), 2));
    let w = RatFunc::constant(var, omega.clone());
    let o1 = [one.clone(), w.pow(2).mul(&u2), zero.clone()];
    let o2 = [one.clone(), w.mul(&u2), zero.clone()];
    let p1 = psi.eval_point(&o1)?;
    let p2 = psi.eval_point(&o2)?;
    surface.curve.check_on_curve(&p1)?;
    surface.curve.check_on_curve(&p2)?;
    surface.curve.add_points(&p1, &p2)
}

/// Symbolic check that `Psi` maps the pencil onto the Weierstrass model:
/// substituting its coordinates into the Weierstrass equation leaves a
/// rational function whose numerator is divisible by the pencil cubic.
pub fn verify_psi<K: Field>(pair: &FamilyPair<K>, surface: &SurfaceModel<K>) -> Result<()> {
    assert_eq!(surface.n, 6);
    let uvar = &surface.var;
    // Working field: rational functions in x2 over rational functions in x1
    // over K(u).
    type F1<K> = RatFunc<K>; // K(u)
    type F2<K> = RatFunc<F1<K>>; // K(u)(x1)
    type F3<K> = RatFunc<F2<K>>; // K(u)(x1)(x2)
    let ku_zero: F1<K> = RatFunc::constant(uvar, pair.a.zero_like());
    let lift0 = |v: &K| -> F1<K> { RatFunc::constant(uvar, v.clone()) };
    let lift1 = |v: &F1<K>| -> F2<K> { RatFunc::constant("x1", v.clone()) };
    let lift2 = |v: &F2<K>| -> F3<K> { RatFunc::constant("x2", v.clone()) };
    let lift = |v: &K| -> F3<K> { lift2(&lift1(&lift0(v))) };

    let u: F3<K> = lift2(&lift1(&RatFunc::x(uvar, &pair.a.zero_like())));
    let x1: F3<K> = lift2(&RatFunc::x("x1", &ku_zero));
    let x2: F3<K> = RatFunc::x("x2", &RatFunc::constant("x1", ku_zero.clone()));
    let one = x1.one_like();
    let psi: Psi<F3<K>> = Psi::new(
        &lift(&pair.a),
        &lift(&pair.b),
        &lift(&pair.a_prime),
        &lift(&pair.b_prime),
        &u,
    );
    let (bx, by) = psi.eval(&[x1.clone(), x2.clone(), one.clone()])?;
    let a4 = lift2(&lift1(&surface.curve.a4));
    let a6 = lift2(&lift1(&surface.curve.a6));
    let residual = by
        .pow(2)
        .sub(&bx.pow(3).add(&a4.mul(&bx)).add(&a6));
    // The cubic in affine coordinates z = 1, as a polynomial in x2 over
    // K(u)(x1).
    let cubic = build_cubic_model(
        &lift(&pair.a),
        &lift(&pair.b),
        &lift(&pair.a_prime),
        &lift(&pair.b_prime),
        &u,
    )?;
    let mut cubic_x2: Vec<F2<K>> = vec![x1.num().exemplar().zero_like(); 4];
    for (i, j, _k, c) in &cubic.terms {
        // Evaluate the x1/z parts at (x1, 1); collect by the power of x2.
        let coef: F3<K> = c.mul(&x1.pow(*i as u32));
        let coef2: F2<K> = coef
            .as_constant()
            .expect("cubic coefficients are free of x2 after collecting");
        cubic_x2[*j as usize] = cubic_x2[*j as usize].add(&coef2);
    }
    let cubic_poly: Poly<F2<K>> = Poly::new("x2", cubic_x2);
    let num: Poly<F2<K>> = residual.num().clone();
    if num.is_zero() {
        return Ok(());
    }
    let (_, rem) = num.divrem(&cubic_poly)?;
    if rem.is_zero() {
        Ok(())
    } else {
        Err(CasError::ImageOffCurve)
    }
}
