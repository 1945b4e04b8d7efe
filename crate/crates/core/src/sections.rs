//! Explicit Mordell-Weil sections of the surfaces `F^(1)` and `F^(2)` by the
//! conic-through-a-divisor method.
//!
//! On the cubic pencil the graph points `(x1, phi_x(x1))` with
//! `p^{+-}(x1) = (1 -+ u^3) x1^3 + 4ab x1 - 8ab^2 = 0` form a degree-3
//! divisor. A conic through those three points, tangent to the pencil at its
//! origin, meets the cubic in one further point `Q4^{+-}`; pushing the
//! `Q4`'s through the birational map and taking differences produces
//! sections that descend to `F^(1)` (in `s = u^6`) and `F^(2)` (in
//! `t = u^3`). Closed forms of the descended sections are provided for
//! cross-checking.

use crate::elliptic::Point;
use crate::error::{CasError, Result};
use crate::field::Field;
use crate::inose::{
    build_psi_over_u, build_surface, invariants_from_curves, obar_section, SurfaceModel,
};
use crate::isogeny::FamilyPair;
use crate::linalg::kernel;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::tower::{FieldAutomorphism, NFElement};

/// Which of the two graph divisors `p^+` / `p^-` the conic passes through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorSign {
    Plus,
    Minus,
}

/// The cubic `(1 -+ u^3) x1^3 + 4ab x1 - 8ab^2` cutting out the divisor, in
/// the affine chart `z = 1`.
fn divisor_cubic<K: Field>(
    pair: &FamilyPair<K>,
    uvar: &str,
    sign: DivisorSign,
) -> Poly<RatFunc<K>> {
    let a = &pair.a;
    let b = &pair.b;
    let c = |v: &K| RatFunc::constant(uvar, v.clone());
    let u3 = RatFunc::from_poly(Poly::monomial(uvar, a.one_like(), 3));
    let lead = match sign {
        DivisorSign::Plus => c(&a.one_like()).sub(&u3),
        DivisorSign::Minus => c(&a.one_like()).add(&u3),
    };
    Poly::new(
        "x1",
        vec![
            c(&a.from_integer(-8).mul(a).mul(b).mul(b)),
            c(&a.from_integer(4).mul(a).mul(b)),
            c(&a.zero_like()),
            lead,
        ],
    )
}

/// Numerator of `phi_x` cleared of its denominator `3 x1^2`:
/// `3 x1^3 + 4a x1^2 - 12ab x1 + 12ab^2`.
fn phi_numerator<K: Field>(pair: &FamilyPair<K>, uvar: &str) -> Poly<RatFunc<K>> {
    let a = &pair.a;
    let b = &pair.b;
    let c = |v: &K| RatFunc::constant(uvar, v.clone());
    Poly::new(
        "x1",
        vec![
            c(&a.from_integer(12).mul(a).mul(b).mul(b)),
            c(&a.from_integer(-12).mul(a).mul(b)),
            c(&a.from_integer(4).mul(a)),
            c(&a.from_integer(3)),
        ],
    )
}

/// Coefficients `(c1, ..., c6)` of the conic
/// `c1 x1^2 + c2 x1 x2 + c3 x2^2 + c4 x1 z + c5 x2 z + c6 z^2`
/// through the chosen divisor and tangent to the pencil at its origin,
/// normalized so the first nonzero coefficient is 1.
pub fn solve_conic<K: Field>(
    pair: &FamilyPair<K>,
    uvar: &str,
    sign: DivisorSign,
) -> Result<[RatFunc<K>; 6]> {
    let a = &pair.a;
    let c = |v: &K| RatFunc::constant(uvar, v.clone());
    let zero: RatFunc<K> = c(&a.zero_like());
    let one: RatFunc<K> = c(&a.one_like());
    let u2 = RatFunc::from_poly(Poly::monomial(uvar, a.one_like(), 2));

    // Tangent line at the origin, solved for x2: x2 = L x1 + M z.
    let l = u2.clone();
    let m = u2
        .add(&c(&a.from_integer(3)))
        .mul(&c(a))
        .mul(&c(&a.from_ratio(1, 3)));

    // Tangency rows: substituting the line into the conic, the coefficients
    // of x1^2 and x1 z must vanish.
    let row1 = vec![
        one.clone(),
        l.clone(),
        l.mul(&l),
        zero.clone(),
        zero.clone(),
        zero.clone(),
    ];
    let row2 = vec![
        zero.clone(),
        m.clone(),
        l.mul(&m).mul(&one.from_integer(2)),
        one.clone(),
        l.clone(),
        zero.clone(),
    ];

    // Divisibility rows: q(x1, phi_x(x1), 1) * (3 x1^2)^2 must be divisible
    // by the divisor cubic; its remainder has three coefficients.
    let phi_n = phi_numerator(pair, uvar);
    let p_aff = divisor_cubic(pair, uvar, sign);
    let x1 = Poly::x("x1", &zero);
    let nine_x4 = x1.pow(4).scale(&one.from_integer(9));
    let basis_numerators: [Poly<RatFunc<K>>; 6] = [
        x1.pow(6).scale(&one.from_integer(9)),
        x1.pow(3).mul(&phi_n).scale(&one.from_integer(3)),
        phi_n.mul(&phi_n),
        x1.pow(5).scale(&one.from_integer(9)),
        x1.pow(2).mul(&phi_n).scale(&one.from_integer(3)),
        nine_x4,
    ];
    let mut rows = vec![row1, row2];
    let mut rems = Vec::with_capacity(6);
    for n in &basis_numerators {
        let (_, r) = n.divrem(&p_aff)?;
        rems.push(r);
    }
    for k in 0..3 {
        rows.push(rems.iter().map(|r| r.coeff(k)).collect());
    }

    let null = kernel(&rows)?;
    if null.len() != 1 {
        return Err(CasError::DegenerateSystem(format!(
            "conic kernel has dimension {}",
            null.len()
        )));
    }
    let v = &null[0];
    let pivot = v
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| CasError::DegenerateSystem("zero conic".into()))?;
    let scale = v[pivot].inv()?;
    let mut out: Vec<RatFunc<K>> = v.iter().map(|c| c.mul(&scale)).collect();
    let arr: [RatFunc<K>; 6] = [
        out.remove(0),
        out.remove(0),
        out.remove(0),
        out.remove(0),
        out.remove(0),
        out.remove(0),
    ];
    Ok(arr)
}

/// The sixth intersection point of the conic with the pencil cubic, in the
/// affine chart `z = 1` (the other five are the divisor and the doubled
/// origin).
pub fn sixth_point<K: Field>(
    pair: &FamilyPair<K>,
    conic: &[RatFunc<K>; 6],
    uvar: &str,
    sign: DivisorSign,
) -> Result<[RatFunc<K>; 3]> {
    type F<K> = RatFunc<RatFunc<K>>; // K(u)(x1)
    let a = &pair.a;
    let ku_zero: RatFunc<K> = RatFunc::constant(uvar, a.zero_like());
    let lift = |v: &RatFunc<K>| -> F<K> { RatFunc::constant("x1", v.clone()) };
    let c = |v: &K| -> F<K> { lift(&RatFunc::constant(uvar, v.clone())) };
    let x1: F<K> = RatFunc::x("x1", &ku_zero);
    let u: F<K> = lift(&RatFunc::x(uvar, &a.zero_like()));

    // Pencil cubic as a polynomial in x2 over K(u)(x1).
    let rhs1 = x1
        .pow(3)
        .add(&c(&pair.a).mul(&x1.sub(&c(&pair.b)).pow(2)));
    let cubic_x2: Poly<F<K>> = Poly::new(
        "x2",
        vec![
            c(&pair.a_prime)
                .mul(&c(&pair.b_prime).pow(2))
                .sub(&u.pow(6).mul(&rhs1)),
            c(&pair.a_prime)
                .mul(&c(&pair.b_prime))
                .mul(&c(&pair.a.from_integer(-2))),
            c(&pair.a_prime),
            x1.one_like(),
        ],
    );
    let conic_x2: Poly<F<K>> = Poly::new(
        "x2",
        vec![
            lift(&conic[0]).mul(&x1.pow(2)).add(&lift(&conic[3]).mul(&x1)).add(&lift(&conic[5])),
            lift(&conic[1]).mul(&x1).add(&lift(&conic[4])),
            lift(&conic[2]),
        ],
    );
    let res: F<K> = cubic_x2.resultant(&conic_x2)?;
    if res.is_zero() {
        return Err(CasError::DegenerateSystem(
            "conic shares a component with the cubic".into(),
        ));
    }
    let num: Poly<RatFunc<K>> = res.num().clone();
    let p_aff = divisor_cubic(pair, uvar, sign);
    let (quot, rem) = num.divrem(&p_aff)?;
    if !rem.is_zero() {
        return Err(CasError::ResidualNotRational);
    }
    if quot.degree() != Some(1) {
        return Err(CasError::ResidualNotRational);
    }
    let x4 = quot.coeff(0).neg().div(&quot.coeff(1))?;

    // The x2-coordinate: common root of the cubic and the conic at x1 = x4.
    let eval_at = |p: &Poly<F<K>>| -> Result<Poly<RatFunc<K>>> {
        let mut coeffs = Vec::with_capacity(p.coeffs().len());
        for cf in p.coeffs() {
            coeffs.push(cf.eval(&x4)?);
        }
        Ok(Poly::new("x2", coeffs))
    };
    let c_at = eval_at(&cubic_x2)?;
    let q_at = eval_at(&conic_x2)?;
    let g = c_at.gcd(&q_at)?;
    if g.degree() != Some(1) {
        return Err(CasError::ResidualNotRational);
    }
    let x24 = g.coeff(0).neg().div(&g.coeff(1))?;
    Ok([x4, x24, RatFunc::constant(uvar, a.one_like())])
}

/// Everything the conic pipeline produces on the `n = 6` model, before
/// descending to `F^(1)` / `F^(2)`.
#[derive(Debug, Clone)]
pub struct ConicPipeline<K: Field> {
    pub f6: SurfaceModel<K>,
    pub conic_plus: [RatFunc<K>; 6],
    pub conic_minus: [RatFunc<K>; 6],
    pub q4_plus: [RatFunc<K>; 3],
    pub q4_minus: [RatFunc<K>; 3],
    pub psi_q4_plus: Point<RatFunc<K>>,
    pub psi_q4_minus: Point<RatFunc<K>>,
    pub p_obar: Point<RatFunc<K>>,
}

/// Runs the conic construction for both divisors and maps the sixth points
/// to the Weierstrass model. `omega` must be a primitive cube root of unity
/// in the base field.
pub fn run_pipeline<K: Field>(pair: &FamilyPair<K>, omega: &K) -> Result<ConicPipeline<K>> {
    let uvar = "u";
    let inv = invariants_from_curves(&pair.isogeny.source, &pair.isogeny.target)?;
    let f6 = build_surface(&inv, 6, uvar)?;
    let psi = build_psi_over_u(pair, uvar);

    let conic_plus = solve_conic(pair, uvar, DivisorSign::Plus)?;
    let conic_minus = solve_conic(pair, uvar, DivisorSign::Minus)?;
    let q4_plus = sixth_point(pair, &conic_plus, uvar, DivisorSign::Plus)?;
    let q4_minus = sixth_point(pair, &conic_minus, uvar, DivisorSign::Minus)?;

    let psi_q4_plus = psi.eval_point(&q4_plus)?;
    let psi_q4_minus = psi.eval_point(&q4_minus)?;
    f6.curve.check_on_curve(&psi_q4_plus)?;
    f6.curve.check_on_curve(&psi_q4_minus)?;
    let p_obar = obar_section(&f6, &psi, omega)?;
    Ok(ConicPipeline {
        f6,
        conic_plus,
        conic_minus,
        q4_plus,
        q4_minus,
        psi_q4_plus,
        psi_q4_minus,
        p_obar,
    })
}

fn rewrite_point<K: Field>(
    p: &Point<RatFunc<K>>,
    m: usize,
    new_var: &str,
    zeta: &K,
) -> Result<Point<RatFunc<K>>> {
    Ok(match p {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => Point::Affine(
            x.rewrite_in_power(m, new_var, zeta)?,
            y.rewrite_in_power(m, new_var, zeta)?,
        ),
    })
}

/// The section `Psi(Q4^+) - Psi(Q4^-)` of `F^(1)`, in the variable
/// `s = u^6`.
pub fn section_f1<K: Field>(
    pair: &FamilyPair<K>,
    pipeline: &ConicPipeline<K>,
    omega: &K,
) -> Result<(SurfaceModel<K>, Point<RatFunc<K>>)> {
    let inv = invariants_from_curves(&pair.isogeny.source, &pair.isogeny.target)?;
    let f1 = build_surface(&inv, 1, "s")?;
    let p_u = pipeline
        .f6
        .curve
        .sub_points(&pipeline.psi_q4_plus, &pipeline.psi_q4_minus)?;
    let zeta6 = omega.neg();
    let p = rewrite_point(&p_u, 6, "s", &zeta6)?;
    f1.curve.check_on_curve(&p)?;
    Ok((f1, p))
}

/// The section `Psi(Q4^+) - P_Obar` of `F^(2)`, in the variable `t = u^3`.
pub fn section_f2<K: Field>(
    pair: &FamilyPair<K>,
    pipeline: &ConicPipeline<K>,
    omega: &K,
) -> Result<(SurfaceModel<K>, Point<RatFunc<K>>)> {
    let inv = invariants_from_curves(&pair.isogeny.source, &pair.isogeny.target)?;
    let f2 = build_surface(&inv, 2, "t")?;
    let p_u = pipeline
        .f6
        .curve
        .sub_points(&pipeline.psi_q4_plus, &pipeline.p_obar)?;
    let p = rewrite_point(&p_u, 3, "t", omega)?;
    f2.curve.check_on_curve(&p)?;
    Ok((f2, p))
}

/// Sections of `F^(2)` from 2-torsion: `S_ij = Psi(R_ij) - Psi(R_11)` with
/// `R_ij = (alpha_i : phi_x(alpha_j) : 1)`, `alpha_*` the 2-torsion
/// x-coordinates of `E1`. Returns the full 3x3 array (`S_11` is the zero
/// section).
pub fn sections_rij<K: Field>(
    pair: &FamilyPair<K>,
    roots: &[K; 3],
    omega: &K,
) -> Result<(SurfaceModel<K>, Vec<Vec<Point<RatFunc<K>>>>)> {
    let uvar = "u";
    let inv = invariants_from_curves(&pair.isogeny.source, &pair.isogeny.target)?;
    let f6 = build_surface(&inv, 6, uvar)?;
    let f2 = build_surface(&inv, 2, "t")?;
    let psi = build_psi_over_u(pair, uvar);
    let c = |v: &K| RatFunc::constant(uvar, v.clone());
    let betas: Vec<K> = roots
        .iter()
        .map(|al| pair.isogeny.phi_x.eval(al))
        .collect::<Result<_>>()?;
    let point = |i: usize, j: usize| -> [RatFunc<K>; 3] {
        [c(&roots[i]), c(&betas[j]), c(&omega.one_like())]
    };
    let base = psi.eval_point(&point(0, 0))?;
    f6.curve.check_on_curve(&base)?;
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let mut row = Vec::with_capacity(3);
        for j in 0..3 {
            let p_u = if i == 0 && j == 0 {
                Point::Infinity
            } else {
                let pij = psi.eval_point(&point(i, j))?;
                f6.curve.check_on_curve(&pij)?;
                f6.curve.sub_points(&pij, &base)?
            };
            let p = rewrite_point(&p_u, 3, "t", omega)?;
            f2.curve.check_on_curve(&p)?;
            row.push(p);
        }
        out.push(row);
    }
    Ok((f2, out))
}

/// Closed form of the `F^(1)` section, in `s`.
pub fn closed_form_f1<K: Field>(a: &K, b: &K, svar: &str) -> Result<Point<RatFunc<K>>> {
    let ap = a.mul(&a.from_integer(-3));
    let bp = a
        .from_integer(4)
        .mul(a)
        .add(&a.from_integer(27).mul(b))
        .mul(&a.from_ratio(1, 9));
    let c = |v: &K| RatFunc::constant(svar, v.clone());
    let s: RatFunc<K> = RatFunc::x(svar, &a.zero_like());
    // S = (9/2)(b^2 s / 9 + 9 b'^2 / s)
    let big_s = c(&b.mul(b).mul(&a.from_ratio(1, 2)))
        .mul(&s)
        .add(&c(&bp.mul(&bp).mul(&a.from_ratio(81, 2))).div(&s)?);
    let aap = a.mul(&ap);
    let bbp = b.mul(&bp);
    let c2 = a.from_integer(8).mul(&aap).add(&a.from_integer(81).mul(&bbp));
    let c1 = a
        .from_ratio(16, 9)
        .mul(&aap.pow(2))
        .sub(&a.from_integer(144).mul(&aap).mul(&bbp))
        .add(&a.from_integer(729).mul(&bbp.pow(2)));
    let c0 = bbp.mul(
        &a.from_integer(80)
            .mul(&aap.pow(2))
            .sub(&a.from_integer(1944).mul(&aap).mul(&bbp))
            .add(&a.from_integer(2187).mul(&bbp.pow(2))),
    );
    let num_x = big_s
        .pow(3)
        .mul(&c(&a.from_integer(3)))
        .add(&c(&c2).mul(&big_s.pow(2)))
        .add(&c(&c1).mul(&big_s))
        .add(&c(&c0));
    let den_x = c(&a.from_integer(16).mul(&aap))
        .mul(&big_s.sub(&c(&a.from_integer(9).mul(&bbp))));
    let x = num_x.div(&den_x)?.neg();

    let d3 = a
        .from_integer(36)
        .mul(&aap.add(&a.from_integer(9).mul(&bbp)));
    let d2 = a.from_integer(2).mul(
        &a.from_integer(16)
            .mul(&aap.pow(2))
            .sub(&a.from_integer(162).mul(&aap).mul(&bbp))
            .add(&a.from_integer(2187).mul(&bbp.pow(2))),
    );
    let d1 = a.from_integer(-108).mul(&bbp).mul(
        &a.from_integer(8)
            .mul(&aap.pow(2))
            .add(&a.from_integer(135).mul(&aap).mul(&bbp))
            .sub(&a.from_integer(243).mul(&bbp.pow(2))),
    );
    let d0 = a.from_integer(-3).mul(&bbp).mul(
        &a.from_integer(128)
            .mul(&aap.pow(3))
            .sub(&a.from_integer(6912).mul(&aap.pow(2)).mul(&bbp))
            .add(&a.from_integer(26244).mul(&aap).mul(&bbp.pow(2)))
            .sub(&a.from_integer(19683).mul(&bbp.pow(3))),
    );
    let num_y = big_s
        .pow(4)
        .mul(&c(&a.from_integer(9)))
        .add(&c(&d3).mul(&big_s.pow(3)))
        .add(&c(&d2).mul(&big_s.pow(2)))
        .add(&c(&d1).mul(&big_s))
        .add(&c(&d0));
    let front = s.mul(&c(b).mul(&s).add(&c(&bp.mul(&a.from_integer(9)))));
    let den_y = c(&a.pow(3).mul(&a.from_integer(288)))
        .mul(&c(b).mul(&s).sub(&c(&bp.mul(&a.from_integer(9)))).pow(3));
    let y = front.mul(&num_y).div(&den_y)?.neg();
    Ok(Point::Affine(x, y))
}

/// Closed form of the `F^(2)` section, in `t`.
pub fn closed_form_f2<K: Field>(a: &K, b: &K, tvar: &str) -> Result<Point<RatFunc<K>>> {
    // Here bq = 4a + 27b (nine times the quotient-curve parameter b').
    let bq = a.from_integer(4).mul(a).add(&a.from_integer(27).mul(b));
    let c = |v: &K| RatFunc::constant(tvar, v.clone());
    let t: RatFunc<K> = RatFunc::x(tvar, &a.zero_like());
    let big_t = c(b).mul(&t).sub(&c(&bq).div(&t)?);
    let x = big_t
        .pow(2)
        .add(&c(&a.from_integer(4).mul(a)).mul(&big_t))
        .add(&c(&a
            .from_ratio(4, 3)
            .mul(&a.mul(a).add(&a.from_integer(3).mul(b).mul(&bq)))))
        .mul(&c(&a.from_ratio(1, 4)));
    let y = c(b)
        .mul(&t)
        .add(&c(&bq).div(&t)?)
        .mul(
            &big_t
                .pow(2)
                .add(&c(&a.from_integer(6).mul(a)).mul(&big_t))
                .add(&c(&a.from_integer(4).mul(
                    &a.from_integer(2).mul(a).mul(a).add(&b.mul(&bq)),
                ))),
        )
        .mul(&c(&a.from_ratio(1, 8)));
    Ok(Point::Affine(x, y))
}

/// Image of a section under a Galois automorphism of the coefficient tower,
/// checked against the conjugated surface.
pub fn galois_image(
    surface: &SurfaceModel<NFElement>,
    p: &Point<RatFunc<NFElement>>,
    auto: &FieldAutomorphism,
) -> Result<Point<RatFunc<NFElement>>> {
    let conj_rf = |f: &RatFunc<NFElement>| -> Result<RatFunc<NFElement>> {
        let map_poly = |p: &Poly<NFElement>| -> Poly<NFElement> {
            Poly::new(
                &p.var,
                p.coeffs().iter().map(|c| auto.apply(c)).collect(),
            )
        };
        RatFunc::new(map_poly(f.num()), map_poly(f.den()))
    };
    let image = match p {
        Point::Infinity => Point::Infinity,
        Point::Affine(x, y) => Point::Affine(conj_rf(x)?, conj_rf(y)?),
    };
    let conj_curve = crate::elliptic::WeierstrassCurve {
        a1: conj_rf(&surface.curve.a1)?,
        a2: conj_rf(&surface.curve.a2)?,
        a3: conj_rf(&surface.curve.a3)?,
        a4: conj_rf(&surface.curve.a4)?,
        a6: conj_rf(&surface.curve.a6)?,
    };
    if !conj_curve.is_on_curve(&image) {
        return Err(CasError::ImageOffCurve);
    }
    Ok(image)
}
