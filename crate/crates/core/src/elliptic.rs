//! Weierstrass curves over an arbitrary field, their group law and standard
//! invariants, plus plane cubics with a marked rational point (used as
//! intermediate models before passing to Weierstrass form).

use crate::error::{CasError, Result};
use crate::field::Field;

/// `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassCurve<K: Field> {
    pub a1: K,
    pub a2: K,
    pub a3: K,
    pub a4: K,
    pub a6: K,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Point<K: Field> {
    Infinity,
    Affine(K, K),
}

impl<K: Field> Point<K> {
    pub fn affine(x: K, y: K) -> Self {
        Point::Affine(x, y)
    }
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
    pub fn xy(&self) -> Option<(&K, &K)> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, y) => Some((x, y)),
        }
    }
}

/// The standard `b`- and `c`-invariants and the discriminant.
#[derive(Debug, Clone, PartialEq)]
pub struct Invariants<K: Field> {
    pub b2: K,
    pub b4: K,
    pub b6: K,
    pub b8: K,
    pub c4: K,
    pub c6: K,
    pub disc: K,
}

impl<K: Field> WeierstrassCurve<K> {
    /// A curve `y^2 = x^3 + a2 x^2 + a4 x + a6`; fails on vanishing
    /// discriminant.
    pub fn short(a2: K, a4: K, a6: K) -> Result<Self> {
        let zero = a2.zero_like();
        let c = WeierstrassCurve {
            a1: zero.clone(),
            a3: zero,
            a2,
            a4,
            a6,
        };
        if c.invariants().disc.is_zero() {
            return Err(CasError::SingularCurve);
        }
        Ok(c)
    }

    /// Same as [`WeierstrassCurve::short`] without the smoothness check;
    /// used for reductions of curves at bad places.
    pub fn short_unchecked(a2: K, a4: K, a6: K) -> Self {
        let zero = a2.zero_like();
        WeierstrassCurve {
            a1: zero.clone(),
            a3: zero,
            a2,
            a4,
            a6,
        }
    }

    pub fn invariants(&self) -> Invariants<K> {
        let two = self.a1.from_integer(2);
        let four = self.a1.from_integer(4);
        let b2 = self.a1.mul(&self.a1).add(&four.mul(&self.a2));
        let b4 = two.mul(&self.a4).add(&self.a1.mul(&self.a3));
        let b6 = self.a3.mul(&self.a3).add(&four.mul(&self.a6));
        let b8 = self
            .a1
            .mul(&self.a1)
            .mul(&self.a6)
            .add(&four.mul(&self.a2).mul(&self.a6))
            .sub(&self.a1.mul(&self.a3).mul(&self.a4))
            .add(&self.a2.mul(&self.a3).mul(&self.a3))
            .sub(&self.a4.mul(&self.a4));
        let c4 = b2.mul(&b2).sub(&self.a1.from_integer(24).mul(&b4));
        let c6 = b2
            .pow(3)
            .neg()
            .add(&self.a1.from_integer(36).mul(&b2).mul(&b4))
            .sub(&self.a1.from_integer(216).mul(&b6));
        let disc = b2
            .mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&self.a1.from_integer(8).mul(&b4.pow(3)))
            .sub(&self.a1.from_integer(27).mul(&b6).mul(&b6))
            .add(&self.a1.from_integer(9).mul(&b2).mul(&b4).mul(&b6));
        Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
        }
    }

    pub fn j_invariant(&self) -> Result<K> {
        let inv = self.invariants();
        if inv.disc.is_zero() {
            return Err(CasError::SingularCurve);
        }
        inv.c4.pow(3).div(&inv.disc)
    }

    fn rhs(&self, x: &K) -> K {
        x.pow(3)
            .add(&self.a2.mul(&x.pow(2)))
            .add(&self.a4.mul(x))
            .add(&self.a6)
    }

    pub fn is_on_curve(&self, p: &Point<K>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let lhs = y
                    .pow(2)
                    .add(&self.a1.mul(x).mul(y))
                    .add(&self.a3.mul(y));
                lhs == self.rhs(x)
            }
        }
    }

    pub fn check_on_curve(&self, p: &Point<K>) -> Result<()> {
        if self.is_on_curve(p) {
            Ok(())
        } else {
            Err(CasError::PointNotOnCurve)
        }
    }

    pub fn neg_point(&self, p: &Point<K>) -> Point<K> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(
                x.clone(),
                y.neg().sub(&self.a1.mul(x)).sub(&self.a3),
            ),
        }
    }

    /// Chord-and-tangent addition.
    pub fn add_points(&self, p: &Point<K>, q: &Point<K>) -> Result<Point<K>> {
        let (x1, y1) = match p.xy() {
            None => return Ok(q.clone()),
            Some(v) => v,
        };
        let (x2, y2) = match q.xy() {
            None => return Ok(p.clone()),
            Some(v) => v,
        };
        let (lambda, nu) = if x1 != x2 {
            let dx = x2.sub(x1);
            let lambda = y2.sub(y1).div(&dx)?;
            let nu = y1.mul(x2).sub(&y2.mul(x1)).div(&dx)?;
            (lambda, nu)
        } else {
            let minus_y1 = self.neg_point(p);
            let (_, neg_y) = minus_y1.xy().unwrap();
            if y2 == neg_y {
                return Ok(Point::Infinity);
            }
            // Tangent line at p (now p == q up to equal x with equal y).
            let denom = y1
                .from_integer(2)
                .mul(y1)
                .add(&self.a1.mul(x1))
                .add(&self.a3);
            let lambda = x1
                .from_integer(3)
                .mul(&x1.pow(2))
                .add(&self.a2.from_integer(2).mul(&self.a2).mul(x1))
                .add(&self.a4)
                .sub(&self.a1.mul(y1))
                .div(&denom)?;
            let nu = x1
                .pow(3)
                .neg()
                .add(&self.a4.mul(x1))
                .add(&self.a6.from_integer(2).mul(&self.a6))
                .sub(&self.a3.mul(y1))
                .div(&denom)?;
            (lambda, nu)
        };
        let x3 = lambda
            .pow(2)
            .add(&self.a1.mul(&lambda))
            .sub(&self.a2)
            .sub(x1)
            .sub(x2);
        let y3 = lambda
            .add(&self.a1)
            .mul(&x3)
            .add(&nu)
            .add(&self.a3)
            .neg();
        Ok(Point::Affine(x3, y3))
    }

    pub fn sub_points(&self, p: &Point<K>, q: &Point<K>) -> Result<Point<K>> {
        self.add_points(p, &self.neg_point(q))
    }

    /// `n * p` for any integer `n`.
    pub fn scalar_mul(&self, n: i64, p: &Point<K>) -> Result<Point<K>> {
        let mut acc = Point::Infinity;
        let base = if n < 0 { self.neg_point(p) } else { p.clone() };
        for _ in 0..n.unsigned_abs() {
            acc = self.add_points(&acc, &base)?;
        }
        Ok(acc)
    }

    /// The isomorphic model under `(x, y) = (lambda^2 x', lambda^3 y')`,
    /// i.e. `a_i' = a_i / lambda^i`.
    pub fn rescale(&self, lambda: &K) -> Result<Self> {
        if lambda.is_zero() {
            return Err(CasError::ZeroScale);
        }
        let li = lambda.inv()?;
        Ok(WeierstrassCurve {
            a1: self.a1.mul(&li),
            a2: self.a2.mul(&li.pow(2)),
            a3: self.a3.mul(&li.pow(3)),
            a4: self.a4.mul(&li.pow(4)),
            a6: self.a6.mul(&li.pow(6)),
        })
    }

    /// Image of a point under the rescaling `(x, y) -> (x/lambda^2, y/lambda^3)`.
    pub fn rescale_point(&self, lambda: &K, p: &Point<K>) -> Result<Point<K>> {
        if lambda.is_zero() {
            return Err(CasError::ZeroScale);
        }
        Ok(match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let li = lambda.inv()?;
                Point::Affine(x.mul(&li.pow(2)), y.mul(&li.pow(3)))
            }
        })
    }

    /// Map a point coordinatewise through a field homomorphism.
    pub fn map_point<F: Fn(&K) -> K>(p: &Point<K>, f: F) -> Point<K> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(f(x), f(y)),
        }
    }
}

/// A homogeneous cubic in `(x1, x2, z)` with a marked smooth point.
#[derive(Debug, Clone)]
pub struct PlaneCubicWithOrigin<K: Field> {
    /// Monomial list `(i, j, k, c)` meaning `c * x1^i x2^j z^k`, `i+j+k = 3`.
    pub terms: Vec<(u8, u8, u8, K)>,
    pub origin: [K; 3],
}

impl<K: Field> PlaneCubicWithOrigin<K> {
    pub fn new(terms: Vec<(u8, u8, u8, K)>, origin: [K; 3]) -> Result<Self> {
        for &(i, j, k, _) in &terms {
            assert_eq!(i + j + k, 3, "cubic terms must be homogeneous of degree 3");
        }
        let c = PlaneCubicWithOrigin { terms, origin };
        if !c.eval(&c.origin).is_zero() {
            return Err(CasError::PointNotOnCurve);
        }
        Ok(c)
    }

    pub fn eval(&self, p: &[K; 3]) -> K {
        let mut acc = p[0].zero_like();
        for (i, j, k, c) in &self.terms {
            let t = c
                .mul(&p[0].pow(*i as u32))
                .mul(&p[1].pow(*j as u32))
                .mul(&p[2].pow(*k as u32));
            acc = acc.add(&t);
        }
        acc
    }

    pub fn gradient(&self, p: &[K; 3]) -> [K; 3] {
        let mut g = [p[0].zero_like(), p[0].zero_like(), p[0].zero_like()];
        for (i, j, k, c) in &self.terms {
            let e = [*i as u32, *j as u32, *k as u32];
            for axis in 0..3 {
                if e[axis] == 0 {
                    continue;
                }
                let mut t = c.mul(&c.from_integer(e[axis] as i64));
                let mut ee = e;
                ee[axis] -= 1;
                t = t
                    .mul(&p[0].pow(ee[0]))
                    .mul(&p[1].pow(ee[1]))
                    .mul(&p[2].pow(ee[2]));
                g[axis] = g[axis].add(&t);
            }
        }
        g
    }

    /// Tangent line (as coefficients `l0 x1 + l1 x2 + l2 z`) at a point of
    /// the cubic, and the third intersection point of that line with the
    /// cubic.
    pub fn tangent_and_third(&self, p: &[K; 3]) -> Result<([K; 3], [K; 3])> {
        if !self.eval(p).is_zero() {
            return Err(CasError::PointNotOnCurve);
        }
        let grad = self.gradient(p);
        if grad.iter().all(|c| c.is_zero()) {
            return Err(CasError::SingularPoint);
        }
        let line = grad.clone();
        // A second point spanning the tangent line: solve l . w = 0 with w
        // independent of p.
        let w = independent_point_on_line(&line, p)?;
        // Parametrize as p + tau*w; the restriction of the cubic is a cubic
        // in tau with a double root at tau = 0.
        let taus: Vec<K> = (0..4)
            .map(|t| {
                let tt = p[0].from_integer(t);
                let q = [
                    p[0].add(&tt.mul(&w[0])),
                    p[1].add(&tt.mul(&w[1])),
                    p[2].add(&tt.mul(&w[2])),
                ];
                self.eval(&q)
            })
            .collect();
        // Interpolate the cubic c0 + c1 t + c2 t^2 + c3 t^3 from values at
        // t = 0, 1, 2, 3.
        let c0 = taus[0].clone();
        let six_inv = p[0].from_ratio(1, 6);
        let two_inv = p[0].from_ratio(1, 2);
        let c3 = taus[3]
            .sub(&taus[0])
            .add(&taus[1].sub(&taus[2]).mul(&p[0].from_integer(3)))
            .mul(&six_inv);
        let c2 = taus[2]
            .add(&taus[0])
            .sub(&taus[1].mul(&p[0].from_integer(2)))
            .mul(&two_inv)
            .sub(&c3.mul(&p[0].from_integer(3)));
        let c1 = taus[1]
            .sub(&taus[0])
            .sub(&c2)
            .sub(&c3);
        if !c0.is_zero() || !c1.is_zero() {
            return Err(CasError::SingularPoint);
        }
        if c2.is_zero() && c3.is_zero() {
            return Err(CasError::SingularMember);
        }
        let third = if c3.is_zero() {
            w
        } else {
            let tau = c2.neg().div(&c3)?;
            [
                p[0].add(&tau.mul(&w[0])),
                p[1].add(&tau.mul(&w[1])),
                p[2].add(&tau.mul(&w[2])),
            ]
        };
        Ok((line, third))
    }
}

/// A projective point on the line `l . v = 0` not proportional to `p`.
fn independent_point_on_line<K: Field>(l: &[K; 3], p: &[K; 3]) -> Result<[K; 3]> {
    let zero = l[0].zero_like();
    let one = l[0].one_like();
    let pivot = (0..3)
        .find(|&i| !l[i].is_zero())
        .expect("line has a nonzero coefficient");
    let mut candidates = Vec::new();
    for free in 0..3 {
        if free == pivot {
            continue;
        }
        let mut v = [zero.clone(), zero.clone(), zero.clone()];
        v[free] = one.clone();
        v[pivot] = l[free].neg().div(&l[pivot])?;
        candidates.push(v);
    }
    for v in candidates {
        if !proportional(&v, p) {
            return Ok(v);
        }
    }
    Err(CasError::SingularPoint)
}

fn proportional<K: Field>(a: &[K; 3], b: &[K; 3]) -> bool {
    for i in 0..3 {
        for j in (i + 1)..3 {
            if a[i].mul(&b[j]) != a[j].mul(&b[i]) {
                return false;
            }
        }
    }
    true
}
