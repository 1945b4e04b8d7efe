//! Towers of number fields `Q(g_1)(g_2)...(g_k)`.
//!
//! Each step adjoins a root `g_i` of a monic polynomial with coefficients in
//! the subtower below it. Irreducibility is *not* checked up front: if a
//! defining polynomial is reducible this surfaces lazily as
//! [`CasError::NotAField`] the first time an inversion runs into a zero
//! divisor.
//!
//! Elements are stored as nested dense polynomial remainders. The canonical
//! coordinate vector ([`NFElement::to_flat`]) is taken with respect to the
//! power-product basis `g_1^{e_1} ... g_k^{e_k}` ordered with the *earliest*
//! generator varying fastest.

use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{CasError, Result};
use crate::field::Field;

/// Nested representation of a tower element. A `Rat` is a rational constant,
/// valid at any level; an `Ext` at level `k` holds exactly `deg_k`
/// coefficients, each a representation at level `k - 1`.
#[derive(Debug, Clone)]
pub enum Rep {
    Rat(BigRational),
    Ext(Vec<Rep>),
}

#[derive(Debug, Clone)]
pub struct TowerStep {
    pub name: String,
    /// Monic defining polynomial, length `degree + 1`, coefficients at the
    /// level below this step. The leading coefficient is 1.
    pub minpoly: Vec<Rep>,
}

impl TowerStep {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

#[derive(Debug)]
pub struct FieldTower {
    pub steps: Vec<TowerStep>,
}

impl FieldTower {
    /// The trivial tower: the rational numbers.
    pub fn rationals() -> Arc<FieldTower> {
        Arc::new(FieldTower { steps: vec![] })
    }

    pub fn level(&self) -> usize {
        self.steps.len()
    }

    /// Total degree over Q (product of the step degrees).
    pub fn degree(&self) -> usize {
        self.steps.iter().map(|s| s.degree()).product::<usize>().max(1)
    }

    fn step_degree(&self, level: usize) -> usize {
        self.steps[level - 1].degree()
    }

    /// Degree over Q of the subtower up to `level` steps.
    fn degree_at(&self, level: usize) -> usize {
        self.steps[..level]
            .iter()
            .map(|s| s.degree())
            .product::<usize>()
            .max(1)
    }

    fn zero_rep() -> Rep {
        Rep::Rat(BigRational::zero())
    }

    fn coeffs_at(&self, level: usize, rep: &Rep) -> Vec<Rep> {
        let d = self.step_degree(level);
        match rep {
            Rep::Ext(v) => {
                debug_assert_eq!(v.len(), d);
                v.clone()
            }
            Rep::Rat(_) => {
                let mut v = vec![Self::zero_rep(); d];
                v[0] = rep.clone();
                v
            }
        }
    }

    fn rep_is_zero(&self, rep: &Rep) -> bool {
        match rep {
            Rep::Rat(q) => num_traits::Zero::is_zero(q),
            Rep::Ext(v) => v.iter().all(|c| self.rep_is_zero(c)),
        }
    }

    fn rep_add(&self, level: usize, a: &Rep, b: &Rep) -> Rep {
        match (a, b) {
            (Rep::Rat(x), Rep::Rat(y)) => Rep::Rat(x + y),
            _ => {
                let (av, bv) = (self.coeffs_at(level, a), self.coeffs_at(level, b));
                Rep::Ext(
                    av.iter()
                        .zip(bv.iter())
                        .map(|(x, y)| self.rep_add(level - 1, x, y))
                        .collect(),
                )
            }
        }
    }

    fn rep_neg(&self, rep: &Rep) -> Rep {
        match rep {
            Rep::Rat(q) => Rep::Rat(-q),
            Rep::Ext(v) => Rep::Ext(v.iter().map(|c| self.rep_neg(c)).collect()),
        }
    }

    fn rep_sub(&self, level: usize, a: &Rep, b: &Rep) -> Rep {
        self.rep_add(level, a, &self.rep_neg(b))
    }

    fn rep_mul(&self, level: usize, a: &Rep, b: &Rep) -> Rep {
        match (a, b) {
            (Rep::Rat(x), Rep::Rat(y)) => Rep::Rat(x * y),
            (Rep::Rat(_), Rep::Ext(v)) | (Rep::Ext(v), Rep::Rat(_)) => {
                let scalar = if matches!(a, Rep::Rat(_)) { a } else { b };
                Rep::Ext(
                    v.iter()
                        .map(|c| self.rep_mul(level - 1, scalar, c))
                        .collect(),
                )
            }
            (Rep::Ext(_), Rep::Ext(_)) => {
                let (av, bv) = (self.coeffs_at(level, a), self.coeffs_at(level, b));
                let d = av.len();
                let mut conv = vec![Self::zero_rep(); 2 * d - 1];
                for (i, x) in av.iter().enumerate() {
                    if self.rep_is_zero(x) {
                        continue;
                    }
                    for (j, y) in bv.iter().enumerate() {
                        if self.rep_is_zero(y) {
                            continue;
                        }
                        let t = self.rep_mul(level - 1, x, y);
                        conv[i + j] = self.rep_add(level - 1, &conv[i + j], &t);
                    }
                }
                Rep::Ext(self.reduce_mod_minpoly(level, conv))
            }
        }
    }

    /// Remainder of a coefficient vector (ascending powers of `g_level`)
    /// modulo the monic defining polynomial of the step.
    fn reduce_mod_minpoly(&self, level: usize, mut v: Vec<Rep>) -> Vec<Rep> {
        let minpoly = &self.steps[level - 1].minpoly;
        let d = minpoly.len() - 1;
        while v.len() > d {
            let top = v.pop().unwrap();
            if self.rep_is_zero(&top) {
                continue;
            }
            let shift = v.len() - d;
            for j in 0..d {
                let t = self.rep_mul(level - 1, &top, &minpoly[j]);
                v[shift + j] = self.rep_sub(level - 1, &v[shift + j], &t);
            }
        }
        while v.len() < d {
            v.push(Self::zero_rep());
        }
        v
    }

    fn rep_inv(&self, level: usize, a: &Rep) -> Result<Rep> {
        if self.rep_is_zero(a) {
            return Err(CasError::DivisionByZero);
        }
        match a {
            Rep::Rat(q) => Ok(Rep::Rat(q.recip())),
            Rep::Ext(_) => {
                // Extended Euclid between `a` (as a polynomial in g_level of
                // degree < d) and the defining polynomial, over the subtower.
                let d = self.step_degree(level);
                let modp: Vec<Rep> = self.steps[level - 1].minpoly.clone();
                let mut r0 = modp;
                let mut r1 = self.coeffs_at(level, a);
                trim(self, &mut r1);
                let mut s0 = vec![];
                let mut s1 = vec![Rep::Rat(BigRational::one())];
                while !r1.is_empty() {
                    let (q, r) = self.poly_divrem(level - 1, &r0, &r1)?;
                    let s_new = self.poly_sub(level - 1, &s0, &self.poly_mul(level - 1, &q, &s1));
                    r0 = r1;
                    r1 = r;
                    s0 = s1;
                    s1 = s_new;
                }
                if r0.len() != 1 {
                    return Err(CasError::NotAField(self.steps[level - 1].name.clone()));
                }
                let lead_inv = self.rep_inv(level - 1, &r0[0])?;
                let mut out: Vec<Rep> = s0
                    .iter()
                    .map(|c| self.rep_mul(level - 1, c, &lead_inv))
                    .collect();
                out.resize(d, Self::zero_rep());
                Ok(Rep::Ext(out))
            }
        }
    }

    // -- small helpers on coefficient vectors over the subtower --

    fn poly_sub(&self, level: usize, a: &[Rep], b: &[Rep]) -> Vec<Rep> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).cloned().unwrap_or_else(Self::zero_rep);
            let y = b.get(i).cloned().unwrap_or_else(Self::zero_rep);
            out.push(self.rep_sub(level, &x, &y));
        }
        trim(self, &mut out);
        out
    }

    fn poly_mul(&self, level: usize, a: &[Rep], b: &[Rep]) -> Vec<Rep> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![Self::zero_rep(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let t = self.rep_mul(level, x, y);
                out[i + j] = self.rep_add(level, &out[i + j], &t);
            }
        }
        trim(self, &mut out);
        out
    }

    fn poly_divrem(&self, level: usize, a: &[Rep], b: &[Rep]) -> Result<(Vec<Rep>, Vec<Rep>)> {
        let mut rem = a.to_vec();
        trim(self, &mut rem);
        if b.is_empty() {
            return Err(CasError::DivisionByZero);
        }
        let lead_inv = self.rep_inv(level, b.last().unwrap())?;
        let db = b.len() - 1;
        if rem.len() <= db {
            return Ok((vec![], rem));
        }
        let mut quot = vec![Self::zero_rep(); rem.len() - db];
        while rem.len() > db {
            let c = self.rep_mul(level, rem.last().unwrap(), &lead_inv);
            let shift = rem.len() - 1 - db;
            quot[shift] = c.clone();
            for j in 0..=db {
                let t = self.rep_mul(level, &c, &b[j]);
                rem[shift + j] = self.rep_sub(level, &rem[shift + j], &t);
            }
            rem.pop();
            trim(self, &mut rem);
            if rem.len() <= db {
                break;
            }
        }
        Ok((quot, rem))
    }

    fn rep_to_flat(&self, level: usize, rep: &Rep, out: &mut Vec<BigRational>) {
        if level == 0 {
            match rep {
                Rep::Rat(q) => out.push(q.clone()),
                Rep::Ext(_) => unreachable!("nested coefficient below the base field"),
            }
            return;
        }
        let v = self.coeffs_at(level, rep);
        for c in &v {
            self.rep_to_flat(level - 1, c, out);
        }
    }

    fn rep_from_flat(&self, level: usize, flat: &[BigRational]) -> Rep {
        if level == 0 {
            return Rep::Rat(flat[0].clone());
        }
        let block = self.degree_at(level - 1);
        let d = self.step_degree(level);
        let mut v = Vec::with_capacity(d);
        for j in 0..d {
            v.push(self.rep_from_flat(level - 1, &flat[j * block..(j + 1) * block]));
        }
        Rep::Ext(v)
    }

    fn rep_eval_numeric(&self, level: usize, rep: &Rep, gen_values: &[Complex64]) -> Complex64 {
        match rep {
            Rep::Rat(q) => Complex64::new(
                q.to_f64().expect("rational fits in f64 for numeric embedding"),
                0.0,
            ),
            Rep::Ext(v) => {
                let g = gen_values[level - 1];
                let mut acc = Complex64::new(0.0, 0.0);
                for c in v.iter().rev() {
                    acc = acc * g + self.rep_eval_numeric(level - 1, c, gen_values);
                }
                acc
            }
        }
    }

    /// All complex embeddings of the tower, found by numerically rooting each
    /// defining polynomial over every embedding of the subtower.
    pub fn embeddings(self: &Arc<Self>) -> Vec<Embedding> {
        let mut partial: Vec<Vec<Complex64>> = vec![vec![]];
        for (idx, step) in self.steps.iter().enumerate() {
            let mut next = Vec::new();
            for values in &partial {
                let coeffs: Vec<Complex64> = step
                    .minpoly
                    .iter()
                    .map(|c| self.rep_eval_numeric(idx, c, values))
                    .collect();
                for root in complex_roots(&coeffs) {
                    let mut extended = values.clone();
                    extended.push(root);
                    next.push(extended);
                }
            }
            partial = next;
        }
        partial
            .into_iter()
            .map(|values| Embedding {
                tower: Arc::clone(self),
                values,
            })
            .collect()
    }
}

fn trim(tower: &FieldTower, v: &mut Vec<Rep>) {
    while let Some(last) = v.last() {
        if tower.rep_is_zero(last) {
            v.pop();
        } else {
            break;
        }
    }
}

/// Structural tower equality: same generator names, degrees and defining
/// polynomials (compared through canonical coordinates).
pub fn towers_equal(a: &FieldTower, b: &FieldTower) -> bool {
    if a.steps.len() != b.steps.len() {
        return false;
    }
    for (i, (sa, sb)) in a.steps.iter().zip(b.steps.iter()).enumerate() {
        if sa.name != sb.name || sa.minpoly.len() != sb.minpoly.len() {
            return false;
        }
        for (ca, cb) in sa.minpoly.iter().zip(sb.minpoly.iter()) {
            let mut fa = Vec::new();
            let mut fb = Vec::new();
            a.rep_to_flat(i, ca, &mut fa);
            b.rep_to_flat(i, cb, &mut fb);
            if fa != fb {
                return false;
            }
        }
    }
    true
}

/// An element of a number-field tower.
#[derive(Debug, Clone)]
pub struct NFElement {
    pub tower: Arc<FieldTower>,
    rep: Rep,
}

impl NFElement {
    pub fn from_rational(tower: &Arc<FieldTower>, q: BigRational) -> Self {
        NFElement {
            tower: Arc::clone(tower),
            rep: Rep::Rat(q),
        }
    }

    pub fn from_i64(tower: &Arc<FieldTower>, n: i64) -> Self {
        Self::from_rational(tower, BigRational::from_integer(n.into()))
    }

    pub fn rational(tower: &Arc<FieldTower>, n: i64, d: i64) -> Self {
        Self::from_rational(tower, BigRational::new(n.into(), d.into()))
    }

    /// The generator adjoined at step `idx` (0-based), as an element of the
    /// full tower.
    pub fn generator(tower: &Arc<FieldTower>, idx: usize) -> Self {
        let n = tower.level();
        assert!(idx < n, "generator index out of range");
        let mut rep = {
            let d = tower.step_degree(idx + 1);
            let mut v = vec![FieldTower::zero_rep(); d];
            v[1] = Rep::Rat(BigRational::one());
            Rep::Ext(v)
        };
        for level in (idx + 2)..=n {
            let d = tower.step_degree(level);
            let mut v = vec![FieldTower::zero_rep(); d];
            v[0] = rep;
            rep = Rep::Ext(v);
        }
        NFElement {
            tower: Arc::clone(tower),
            rep,
        }
    }

    /// Named generator lookup.
    pub fn gen_by_name(tower: &Arc<FieldTower>, name: &str) -> Option<Self> {
        tower
            .steps
            .iter()
            .position(|s| s.name == name)
            .map(|i| Self::generator(tower, i))
    }

    /// Canonical coordinates on the power-product basis (earliest generator
    /// fastest); length equals the tower degree.
    pub fn to_flat(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.tower.degree());
        self.tower
            .rep_to_flat(self.tower.level(), &self.rep, &mut out);
        out
    }

    pub fn from_flat(tower: &Arc<FieldTower>, flat: &[BigRational]) -> Result<Self> {
        if flat.len() != tower.degree() {
            return Err(CasError::DegreeTooSmall);
        }
        Ok(NFElement {
            tower: Arc::clone(tower),
            rep: tower.rep_from_flat(tower.level(), flat),
        })
    }

    /// `Some(q)` if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        let flat = self.to_flat();
        if flat[1..].iter().all(|c| num_traits::Zero::is_zero(c)) {
            Some(flat[0].clone())
        } else {
            None
        }
    }

    /// Re-interpret in a larger tower that extends this element's tower.
    pub fn lift_to(&self, tower: &Arc<FieldTower>) -> Self {
        let n_old = self.tower.level();
        let n_new = tower.level();
        assert!(n_new >= n_old, "lift target must extend the source tower");
        let mut rep = self.rep.clone();
        for level in (n_old + 1)..=n_new {
            if matches!(rep, Rep::Rat(_)) {
                continue;
            }
            let d = tower.step_degree(level);
            let mut v = vec![FieldTower::zero_rep(); d];
            v[0] = rep;
            rep = Rep::Ext(v);
        }
        NFElement {
            tower: Arc::clone(tower),
            rep,
        }
    }

    pub fn numeric(&self, emb: &Embedding) -> Complex64 {
        self.tower
            .rep_eval_numeric(self.tower.level(), &self.rep, &emb.values)
    }
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.tower, &other.tower) || towers_equal(&self.tower, &other.tower))
            && self.to_flat() == other.to_flat()
    }
}

impl Field for NFElement {
    fn zero_like(&self) -> Self {
        Self::from_i64(&self.tower, 0)
    }
    fn one_like(&self) -> Self {
        Self::from_i64(&self.tower, 1)
    }
    fn add(&self, rhs: &Self) -> Self {
        NFElement {
            tower: Arc::clone(&self.tower),
            rep: self
                .tower
                .rep_add(self.tower.level(), &self.rep, &rhs.rep),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        NFElement {
            tower: Arc::clone(&self.tower),
            rep: self
                .tower
                .rep_mul(self.tower.level(), &self.rep, &rhs.rep),
        }
    }
    fn neg(&self) -> Self {
        NFElement {
            tower: Arc::clone(&self.tower),
            rep: self.tower.rep_neg(&self.rep),
        }
    }
    fn inv(&self) -> Result<Self> {
        Ok(NFElement {
            tower: Arc::clone(&self.tower),
            rep: self.tower.rep_inv(self.tower.level(), &self.rep)?,
        })
    }
    fn is_zero(&self) -> bool {
        self.tower.rep_is_zero(&self.rep)
    }
    fn from_integer(&self, n: i64) -> Self {
        Self::from_i64(&self.tower, n)
    }
}

/// Extend a tower by one step. The defining polynomial is given by its
/// coefficients in the *current* tower, constant term first, and must be
/// monic of degree at least 2.
pub fn tower_extend(
    tower: &Arc<FieldTower>,
    name: &str,
    minpoly: &[NFElement],
) -> Result<Arc<FieldTower>> {
    if minpoly.len() < 3 {
        return Err(CasError::DegreeTooSmall);
    }
    let lead = minpoly.last().unwrap();
    if !lead.is_one() {
        return Err(CasError::NotMonic);
    }
    let mut steps = tower.steps.clone();
    steps.push(TowerStep {
        name: name.to_string(),
        minpoly: minpoly.iter().map(|c| c.rep.clone()).collect(),
    });
    Ok(Arc::new(FieldTower { steps }))
}

/// A field automorphism of a tower, given by the images of its generators.
#[derive(Debug, Clone)]
pub struct FieldAutomorphism {
    pub tower: Arc<FieldTower>,
    pub images: Vec<NFElement>,
}

impl FieldAutomorphism {
    /// Builds the automorphism sending each generator to the supplied image,
    /// checking that every image satisfies the corresponding defining
    /// polynomial.
    pub fn new(tower: &Arc<FieldTower>, images: Vec<NFElement>) -> Result<Self> {
        assert_eq!(images.len(), tower.level());
        let auto = FieldAutomorphism {
            tower: Arc::clone(tower),
            images,
        };
        for (idx, step) in tower.steps.iter().enumerate() {
            let img = &auto.images[idx];
            let mut acc = img.zero_like();
            for c in step.minpoly.iter().rev() {
                let c_top = auto.apply_rep(idx, c);
                // The defining coefficients live below step idx, so mapping
                // them through the automorphism keeps the check consistent
                // even when lower generators also move.
                acc = acc.mul(img).add(&c_top);
            }
            if !acc.is_zero() {
                return Err(CasError::ImageOffCurve);
            }
        }
        Ok(auto)
    }

    /// The identity automorphism.
    pub fn identity(tower: &Arc<FieldTower>) -> Self {
        let images = (0..tower.level())
            .map(|i| NFElement::generator(tower, i))
            .collect();
        FieldAutomorphism {
            tower: Arc::clone(tower),
            images,
        }
    }

    fn apply_rep(&self, level: usize, rep: &Rep) -> NFElement {
        match rep {
            Rep::Rat(q) => NFElement::from_rational(&self.tower, q.clone()),
            Rep::Ext(v) => {
                let g = &self.images[level - 1];
                let mut acc = g.zero_like();
                for c in v.iter().rev() {
                    acc = acc.mul(g).add(&self.apply_rep(level - 1, c));
                }
                acc
            }
        }
    }

    pub fn apply(&self, x: &NFElement) -> NFElement {
        self.apply_rep(self.tower.level(), &x.rep)
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &FieldAutomorphism) -> Result<Self> {
        let images = other.images.iter().map(|g| self.apply(g)).collect();
        FieldAutomorphism::new(&self.tower, images)
    }
}

/// One complex embedding of a tower: a numeric value for each generator,
/// consistent with the defining polynomials.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub tower: Arc<FieldTower>,
    pub values: Vec<Complex64>,
}

/// A complex number with a rigorous-ish error radius, the result of a
/// floating point evaluation of an exact quantity.
#[derive(Debug, Clone, Copy)]
pub struct ComplexBall {
    pub value: Complex64,
    pub radius: f64,
}

/// Numeric evaluation of a tower element under a chosen embedding.
/// `precision_bits` beyond what double precision supports is refused.
pub fn numeric_embed(x: &NFElement, emb: &Embedding, precision_bits: u32) -> Result<ComplexBall> {
    if precision_bits > 48 {
        return Err(CasError::PrecisionExhausted);
    }
    let value = x.numeric(emb);
    let scale: f64 = x
        .to_flat()
        .iter()
        .map(|q| q.to_f64().unwrap_or(0.0).abs())
        .sum::<f64>()
        .max(1.0);
    Ok(ComplexBall {
        value,
        radius: scale * 1e-12 * (x.tower.degree() as f64),
    })
}

/// All roots of a complex polynomial (ascending coefficients) by
/// Durand-Kerner iteration.
fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while let Some(last) = c.last() {
        if last.norm() < 1e-300 {
            c.pop();
        } else {
            break;
        }
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|x| x.norm())
            .fold(0.0f64, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| radius * seed.powu(k as u32 + 1)).collect();
    for _ in 0..200 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut val = Complex64::new(1.0, 0.0);
            let mut acc = Complex64::new(0.0, 0.0);
            for m in monic.iter().rev() {
                acc = acc * roots[i] + m;
            }
            for j in 0..n {
                if j != i {
                    val *= roots[i] - roots[j];
                }
            }
            let step = acc / val;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 {
            break;
        }
    }
    roots
}
