//! Singular fibers, canonical heights, and Mordell-Weil lattice data for the
//! elliptic surfaces produced by [`crate::inose`].
//!
//! Fiber types are read off from valuations of `(a4, a6, disc)` after a
//! minimalizing coordinate change at each place. Heights use
//! `h(P) = 4 + 2 (P.O) - sum of local correction terms`, with the
//! intersection number `(P.O)` computed from pole orders of the
//! x-coordinate, so no root-finding is ever needed. Pairings are obtained by
//! polarization of the height.

use num_rational::BigRational;

use crate::elliptic::Point;
use crate::error::{CasError, Result};
use crate::field::{big_rational, Field};
use crate::inose::SurfaceModel;
use crate::linalg::det;
use crate::poly::Poly;
use crate::ratfunc::{Place, RatFunc};

/// Kodaira fiber type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KodairaType {
    /// `I_n`; `I_0` is a smooth fiber.
    I(usize),
    /// `I_n^*`.
    IStar(usize),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

impl KodairaType {
    /// Contribution of the fiber to the Euler number.
    pub fn euler(&self) -> i64 {
        match self {
            KodairaType::I(n) => *n as i64,
            KodairaType::IStar(n) => *n as i64 + 6,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    pub fn label(&self) -> String {
        match self {
            KodairaType::I(n) => format!("I{}", n),
            KodairaType::IStar(n) => format!("I{}*", n),
            KodairaType::II => "II".into(),
            KodairaType::III => "III".into(),
            KodairaType::IV => "IV".into(),
            KodairaType::IIStar => "II*".into(),
            KodairaType::IIIStar => "III*".into(),
            KodairaType::IVStar => "IV*".into(),
        }
    }
}

/// A place of the base line carrying a singular fiber.
///
/// A finite place is a squarefree polynomial; its roots all carry fibers of
/// the same type, and `degree` counts them.
#[derive(Debug, Clone)]
pub struct FiberPlace<K: Field> {
    pub place: Place<K>,
    pub degree: usize,
    pub kodaira: KodairaType,
    /// Valuation of the discriminant in the minimal model.
    pub vd: i64,
    /// The minimalizing shift `m`: minimal coordinates are
    /// `X' = pi^{2m} X`, `Y' = pi^{3m} Y`.
    pub shift: i64,
}

/// Fiber configuration of a surface, with the minimalizing shifts at 0 and
/// infinity kept even when the fibers there are smooth.
#[derive(Debug, Clone)]
pub struct FiberTable<K: Field> {
    pub places: Vec<FiberPlace<K>>,
    pub shift_zero: i64,
    pub shift_inf: i64,
}

impl<K: Field> FiberTable<K> {
    /// `sum deg(v) * v(disc)` over all fibers; 24 for a K3 surface.
    pub fn euler_number(&self) -> i64 {
        self.places.iter().map(|p| p.degree as i64 * p.vd).sum()
    }

    fn shift_at(&self, place: &Place<K>) -> i64 {
        match place {
            Place::Infinity => self.shift_inf,
            Place::Finite(f) => {
                if f.degree() == Some(1) && f.coeff(0).is_zero() {
                    self.shift_zero
                } else {
                    0
                }
            }
        }
    }
}

fn ge(v: Option<i64>, k: i64) -> bool {
    v.map_or(true, |x| x >= k)
}

/// The minimalizing shift at a place from the (possibly infinite)
/// valuations of `a4`, `a6` and the finite valuation of the discriminant.
fn minimal_shift(v4: Option<i64>, v6: Option<i64>, vd: i64) -> i64 {
    let need = |v: Option<i64>, w: i64| v.map_or(0, |x| (-x).div_euclid(w) + i64::from((-x).rem_euclid(w) != 0));
    let mut m = need(v4, 4).max(need(v6, 6)).max(0);
    while ge(v4.map(|v| v + 4 * m), 4)
        && ge(v6.map(|v| v + 6 * m), 6)
        && vd + 12 * m >= 12
    {
        m -= 1;
    }
    m
}

/// Kodaira type from minimal-model valuations (`None` = identically zero).
fn kodaira_from_valuations(v4: Option<i64>, v6: Option<i64>, vd: i64) -> Result<KodairaType> {
    let ty = if vd == 0 {
        KodairaType::I(0)
    } else if v4 == Some(0) {
        KodairaType::I(vd as usize)
    } else if ge(v4, 1) && v6 == Some(1) && vd == 2 {
        KodairaType::II
    } else if v4 == Some(1) && ge(v6, 2) && vd == 3 {
        KodairaType::III
    } else if ge(v4, 2) && v6 == Some(2) && vd == 4 {
        KodairaType::IV
    } else if ge(v4, 2) && ge(v6, 3) && vd == 6 {
        KodairaType::IStar(0)
    } else if v4 == Some(2) && v6 == Some(3) && vd > 6 {
        KodairaType::IStar((vd - 6) as usize)
    } else if ge(v4, 3) && v6 == Some(4) && vd == 8 {
        KodairaType::IVStar
    } else if v4 == Some(3) && ge(v6, 5) && vd == 9 {
        KodairaType::IIIStar
    } else if ge(v4, 4) && v6 == Some(5) && vd == 10 {
        KodairaType::IIStar
    } else {
        return Err(CasError::UnhandledType(format!(
            "no Kodaira type for valuations (a4, a6, disc) = ({:?}, {:?}, {})",
            v4, v6, vd
        )));
    };
    Ok(ty)
}

fn val_or_inf<K: Field>(f: &RatFunc<K>, place: &Place<K>) -> Result<Option<i64>> {
    if f.is_zero() {
        Ok(None)
    } else {
        f.valuation(place).map(Some)
    }
}

/// Classifies the fiber at one place, returning `None` for a smooth fiber.
fn classify_place<K: Field>(
    a4: &RatFunc<K>,
    a6: &RatFunc<K>,
    disc: &RatFunc<K>,
    place: &Place<K>,
    degree: usize,
) -> Result<(Option<FiberPlace<K>>, i64)> {
    let v4 = val_or_inf(a4, place)?;
    let v6 = val_or_inf(a6, place)?;
    let vd = disc.valuation(place)?;
    let m = minimal_shift(v4, v6, vd);
    let v4m = v4.map(|v| v + 4 * m);
    let v6m = v6.map(|v| v + 6 * m);
    let vdm = vd + 12 * m;
    let kodaira = kodaira_from_valuations(v4m, v6m, vdm)?;
    let entry = if vdm > 0 {
        Some(FiberPlace {
            place: place.clone(),
            degree,
            kodaira,
            vd: vdm,
            shift: m,
        })
    } else {
        None
    };
    Ok((entry, m))
}

/// Splits a squarefree polynomial into the part sharing roots with `p` and
/// the part coprime to it.
fn split_by<K: Field>(factors: Vec<Poly<K>>, p: &RatFunc<K>) -> Result<Vec<Poly<K>>> {
    if p.is_zero() {
        return Ok(factors);
    }
    let mut out = Vec::new();
    for f in factors {
        let g = f.gcd(p.num())?;
        match g.degree() {
            Some(d) if d > 0 && d < f.degree().unwrap_or(0) => {
                out.push(f.div_exact(&g)?.monic()?);
                out.push(g.monic()?);
            }
            _ => out.push(f),
        }
    }
    Ok(out)
}

/// The discriminant `-16 (4 a4^3 + 27 a6^2)` of a short model over the
/// function field.
pub fn surface_discriminant<K: Field>(surface: &SurfaceModel<K>) -> RatFunc<K> {
    let a4 = &surface.curve.a4;
    let a6 = &surface.curve.a6;
    let four = a4.from_integer(4);
    let c = a4.from_integer(-16);
    a4.pow(3)
        .mul(&four)
        .add(&a6.pow(2).mul(&a4.from_integer(27)))
        .mul(&c)
}

/// Full fiber configuration: the places 0 and infinity, plus the finite
/// places cut out by the discriminant numerator. Verifies that the Euler
/// numbers sum to 24.
pub fn classify_fibers<K: Field>(surface: &SurfaceModel<K>) -> Result<FiberTable<K>> {
    let a4 = &surface.curve.a4;
    let a6 = &surface.curve.a6;
    let disc = surface_discriminant(surface);
    if disc.is_zero() {
        return Err(CasError::SingularInput);
    }
    let var = surface.var.as_str();
    let exemplar = a4.num().exemplar();
    let place_zero = Place::Finite(Poly::x(var, &exemplar.zero_like()));

    let mut places = Vec::new();
    let (entry0, shift_zero) = classify_place(a4, a6, &disc, &place_zero, 1)?;
    places.extend(entry0);
    let (entry_inf, shift_inf) = classify_place(a4, a6, &disc, &Place::Infinity, 1)?;
    places.extend(entry_inf);

    // Finite places away from 0: squarefree factors of the discriminant
    // numerator, refined so each factor has uniform fiber data.
    let x_poly = Poly::x(var, &exemplar.zero_like());
    let mut num = disc.num().clone();
    let k = num.multiplicity(&x_poly)?;
    for _ in 0..k {
        num = num.div_exact(&x_poly)?;
    }
    for (factor, _mult) in num.squarefree_decomposition()? {
        if factor.degree().map_or(true, |d| d == 0) {
            continue;
        }
        let mut parts = vec![factor.monic()?];
        parts = split_by(parts, a4)?;
        parts = split_by(parts, a6)?;
        for f in parts {
            let degree = f.degree().unwrap();
            let place = Place::Finite(f);
            let (entry, _) = classify_place(a4, a6, &disc, &place, degree)?;
            places.extend(entry);
        }
    }
    let table = FiberTable {
        places,
        shift_zero,
        shift_inf,
    };
    if table.euler_number() != 24 {
        return Err(CasError::UnhandledType(format!(
            "fiber Euler numbers sum to {}, not 24",
            table.euler_number()
        )));
    }
    Ok(table)
}

/// Moves a rational function to the chart at infinity (`var -> 1/var`).
fn at_infinity<K: Field>(f: &RatFunc<K>) -> Result<RatFunc<K>> {
    let x: RatFunc<K> = RatFunc::x(f.var(), &f.num().exemplar().zero_like());
    f.substitute(&x.inv()?)
}

/// Local correction term of a section at one singular fiber, times the
/// number of roots of the place.
fn local_contribution<K: Field>(
    surface: &SurfaceModel<K>,
    fiber: &FiberPlace<K>,
    x: &RatFunc<K>,
    y: &RatFunc<K>,
) -> Result<BigRational> {
    let zero = BigRational::from_integer(0.into());
    match &fiber.kodaira {
        KodairaType::I(0) | KodairaType::II | KodairaType::IIStar => return Ok(zero),
        _ => {}
    }

    // Work in the chart where the place is finite.
    let (x, y, a4, a6, place) = match &fiber.place {
        Place::Finite(f) => (
            x.clone(),
            y.clone(),
            surface.curve.a4.clone(),
            surface.curve.a6.clone(),
            f.clone(),
        ),
        Place::Infinity => {
            let var = surface.var.as_str();
            let exemplar = surface.curve.a4.num().exemplar();
            (
                at_infinity(x)?,
                at_infinity(y)?,
                at_infinity(&surface.curve.a4)?,
                at_infinity(&surface.curve.a6)?,
                Poly::x(var, &exemplar.zero_like()),
            )
        }
    };
    let pl = Place::Finite(place.clone());
    let m = fiber.shift;
    let vx = val_or_inf(&x, &pl)?.map(|v| v + 2 * m);
    let vy = val_or_inf(&y, &pl)?.map(|v| v + 3 * m);
    if vx.map_or(false, |v| v < 1) || vy.map_or(false, |v| v < 1) {
        // The section misses the singular point: identity component.
        return Ok(zero);
    }

    match &fiber.kodaira {
        KodairaType::I(n) => {
            // Multiplicative fiber: the singular point is the node
            // x0 = -3 a6 / (2 a4), and only its x-coordinate distinguishes
            // the components we can tell apart.
            let x0 = a6
                .mul(&a6.from_integer(-3))
                .div(&a4.mul(&a4.from_integer(2)))?;
            // Count the roots of the place where the section passes
            // through the node (for reducible places this can be a strict
            // subset).
            let diff = x.sub(&x0);
            let passing = if m != 0 {
                // Shifted chart at 0/infinity: uniform valuation test.
                let v = val_or_inf(&diff, &pl)?.map(|v| v + 2 * m);
                if ge(v, 1) && ge(vy, 1) {
                    fiber.degree
                } else {
                    0
                }
            } else if diff.is_zero() {
                fiber.degree
            } else {
                let g = place.gcd(diff.num())?;
                let g = match y.is_zero() {
                    true => g,
                    false => g.gcd(y.num())?,
                };
                g.degree().unwrap_or(0)
            };
            if passing == 0 {
                Ok(zero)
            } else if *n <= 1 {
                Ok(zero)
            } else if *n == 2 {
                Ok(big_rational(passing as i64, 2))
            } else {
                Err(CasError::UnhandledType(format!(
                    "component of I{} fiber cannot be identified",
                    n
                )))
            }
        }
        KodairaType::IV => Ok(big_rational(2 * fiber.degree as i64, 3)),
        KodairaType::IVStar => {
            if ge(vx, 2) && ge(vy, 2) {
                Ok(big_rational(4 * fiber.degree as i64, 3))
            } else {
                Ok(zero)
            }
        }
        other => Err(CasError::UnhandledType(format!(
            "section through the singular point of a {} fiber",
            other.label()
        ))),
    }
}

/// Canonical height of a section of a K3 elliptic surface:
/// `h(P) = 4 + 2 (P.O) - sum of local corrections`.
pub fn self_height<K: Field>(
    surface: &SurfaceModel<K>,
    table: &FiberTable<K>,
    p: &Point<RatFunc<K>>,
) -> Result<BigRational> {
    let (x, y) = match p {
        Point::Infinity => return Ok(BigRational::from_integer(0.into())),
        Point::Affine(x, y) => (x, y),
    };
    let var = surface.var.as_str();
    let exemplar = x.num().exemplar();
    let x_poly = Poly::x(var, &exemplar.zero_like());

    // 2 (P.O): pole degree of X in minimal coordinates. Away from 0 and
    // infinity the model is already minimal, so the poles there are read
    // off from the denominator degree; 0 and infinity get the shifts.
    let den = x.den();
    let at0 = den.multiplicity(&x_poly)? as i64;
    let finite_part = den.degree().unwrap_or(0) as i64 - at0;
    let v0 = x.valuation(&Place::Finite(x_poly.clone()))?;
    let vinf = x.valuation(&Place::Infinity)?;
    let two_po = finite_part
        + 0.max(-(v0 + 2 * table.shift_zero))
        + 0.max(-(vinf + 2 * table.shift_inf));

    let mut h = BigRational::from_integer((4 + two_po).into());
    for fiber in &table.places {
        // Only fibers at places the recorded shift agrees with: finite
        // fibers away from 0 always have shift 0.
        debug_assert_eq!(fiber.shift, table.shift_at(&fiber.place));
        h -= local_contribution(surface, fiber, x, y)?;
    }
    Ok(h)
}

/// Height pairing by polarization:
/// `<P, Q> = (h(P + Q) - h(P) - h(Q)) / 2`.
pub fn height_pair<K: Field>(
    surface: &SurfaceModel<K>,
    table: &FiberTable<K>,
    p: &Point<RatFunc<K>>,
    q: &Point<RatFunc<K>>,
) -> Result<BigRational> {
    let sum = surface.curve.add_points(p, q)?;
    let h_sum = self_height(surface, table, &sum)?;
    let h_p = self_height(surface, table, p)?;
    let h_q = self_height(surface, table, q)?;
    Ok((h_sum - h_p - h_q) / BigRational::from_integer(2.into()))
}

/// Gram matrix of the height pairing on a list of sections, and its
/// determinant.
pub fn gram_and_det<K: Field>(
    surface: &SurfaceModel<K>,
    table: &FiberTable<K>,
    points: &[Point<RatFunc<K>>],
) -> Result<(Vec<Vec<BigRational>>, BigRational)> {
    let n = points.len();
    let mut gram = vec![vec![BigRational::from_integer(0.into()); n]; n];
    for i in 0..n {
        gram[i][i] = self_height(surface, table, &points[i])?;
        for j in (i + 1)..n {
            let v = height_pair(surface, table, &points[i], &points[j])?;
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
    }
    let d = det(&gram)?;
    Ok((gram, d))
}

/// The compatibility identity between the two lattices: the determinant on
/// `F^(2)` equals `16/9` times the determinant of half the Gram matrix of
/// the corresponding rank-2 sublattice on `F^(1)`.
pub fn check_lattice_identity(det_f2: &BigRational, gram_f1: &[Vec<BigRational>]) -> Result<bool> {
    let half: Vec<Vec<BigRational>> = gram_f1
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v / BigRational::from_integer(2.into()))
                .collect()
        })
        .collect();
    let d = det(&half)?;
    Ok(det_f2 == &(d * big_rational(16, 9)))
}
