//! Dense univariate polynomials over any [`Field`].
//!
//! Invariant: the coefficient vector is nonempty and has no trailing zeros
//! unless the polynomial is the zero constant. The variable is a name; all
//! binary operations require matching names.

use crate::error::{CasError, Result};
use crate::field::Field;

#[derive(Debug, Clone)]
pub struct Poly<K: Field> {
    pub var: String,
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn new(var: &str, mut coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty(), "coefficient vector must be nonempty");
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        Poly {
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn constant(var: &str, c: K) -> Self {
        Poly::new(var, vec![c])
    }

    pub fn zero(var: &str, exemplar: &K) -> Self {
        Poly::constant(var, exemplar.zero_like())
    }

    pub fn one(var: &str, exemplar: &K) -> Self {
        Poly::constant(var, exemplar.one_like())
    }

    /// The monomial `x`.
    pub fn x(var: &str, exemplar: &K) -> Self {
        Poly::new(var, vec![exemplar.zero_like(), exemplar.one_like()])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(var: &str, c: K, k: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); k + 1];
        coeffs[k] = c;
        Poly::new(var, coeffs)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> K {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.coeffs[0].zero_like())
    }

    pub fn exemplar(&self) -> &K {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn lead(&self) -> &K {
        self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    fn check_var(&self, rhs: &Self) {
        assert_eq!(self.var, rhs.var, "mixed polynomial variables");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = self.coeffs[0].zero_like();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&z);
            let b = rhs.coeffs.get(i).unwrap_or(&z);
            out.push(a.add(b));
        }
        Poly::new(&self.var, out)
    }

    pub fn neg(&self) -> Self {
        Poly::new(&self.var, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.var, &self.coeffs[0]);
        }
        let mut out = vec![self.coeffs[0].zero_like(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(&self.var, out)
    }

    pub fn scale(&self, c: &K) -> Self {
        Poly::new(&self.var, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::one(&self.var, &self.coeffs[0]);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, rhs: &Self) -> Result<(Self, Self)> {
        self.check_var(rhs);
        if rhs.is_zero() {
            return Err(CasError::DivisionByZero);
        }
        let db = rhs.degree().unwrap();
        let lead_inv = rhs.lead().inv()?;
        let mut rem = self.coeffs.clone();
        let trim = |v: &mut Vec<K>| {
            while v.len() > 1 && v.last().unwrap().is_zero() {
                v.pop();
            }
        };
        trim(&mut rem);
        if rem.len() <= db || (rem.len() == 1 && rem[0].is_zero()) {
            return Ok((Poly::zero(&self.var, &self.coeffs[0]), Poly::new(&self.var, rem)));
        }
        let mut quot = vec![self.coeffs[0].zero_like(); rem.len() - db];
        while rem.len() > db && !(rem.len() == 1 && rem[0].is_zero()) {
            let c = rem.last().unwrap().mul(&lead_inv);
            let shift = rem.len() - 1 - db;
            quot[shift] = c.clone();
            for j in 0..=db {
                rem[shift + j] = rem[shift + j].sub(&c.mul(&rhs.coeffs[j]));
            }
            rem.pop();
            trim(&mut rem);
        }
        if rem.is_empty() {
            rem.push(self.coeffs[0].zero_like());
        }
        Ok((Poly::new(&self.var, quot), Poly::new(&self.var, rem)))
    }

    /// Exact division; panics in debug if the remainder is nonzero.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.divrem(rhs)?;
        debug_assert!(r.is_zero(), "division was not exact");
        if !r.is_zero() {
            return Err(CasError::DivisionByZero);
        }
        Ok(q)
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CasError::DivisionByZero);
        }
        Ok(self.scale(&self.lead().inv()?))
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Result<Self> {
        self.check_var(rhs);
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let b_monic = b.monic()?;
            let (_, r) = a.divrem(&b_monic)?;
            a = b_monic;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Poly::zero(&self.var, &self.coeffs[0]);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&c.from_integer(i as i64)))
            .collect();
        Poly::new(&self.var, out)
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = self.coeffs[0].zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(&g.var, &self.coeffs[0]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(&g.var, c.clone()));
        }
        acc
    }

    /// `f(c*x)`.
    pub fn scale_var(&self, c: &K) -> Self {
        let mut power = c.one_like();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(&power));
            power = power.mul(c);
        }
        Poly::new(&self.var, out)
    }

    /// Multiplicity of the monic factor `p` in `self`.
    pub fn multiplicity(&self, p: &Self) -> Result<usize> {
        if self.is_zero() {
            return Err(CasError::ZeroFunction);
        }
        assert!(
            p.degree().map_or(false, |d| d >= 1),
            "multiplicity requires a nonconstant divisor"
        );
        let mut f = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = f.divrem(p)?;
            if r.is_zero() {
                m += 1;
                f = q;
            } else {
                return Ok(m);
            }
        }
    }

    /// Resultant of `self` and `rhs` by the Euclidean remainder sequence.
    pub fn resultant(&self, rhs: &Self) -> Result<K> {
        self.check_var(rhs);
        let one = self.coeffs[0].one_like();
        fn go<K: Field>(f: &Poly<K>, g: &Poly<K>, one: &K) -> Result<K> {
            if g.is_zero() {
                return Ok(if f.degree() == Some(0) {
                    one.clone()
                } else {
                    one.zero_like()
                });
            }
            let df = match f.degree() {
                None => return Ok(one.zero_like()),
                Some(d) => d,
            };
            let dg = g.degree().unwrap();
            if dg == 0 {
                return Ok(g.coeffs[0].pow(df as u32));
            }
            if df < dg {
                let sign = if (df * dg) % 2 == 1 {
                    one.neg()
                } else {
                    one.clone()
                };
                return Ok(sign.mul(&go(g, f, one)?));
            }
            let (_, r) = f.divrem(g)?;
            let dr = r.degree();
            let sign = if (df * dg) % 2 == 1 {
                one.neg()
            } else {
                one.clone()
            };
            let drop = df - dr.map_or(0, |d| d);
            if r.is_zero() {
                return Ok(one.zero_like());
            }
            Ok(sign
                .mul(&g.lead().pow(drop as u32))
                .mul(&go(g, &r, one)?))
        }
        go(self, rhs, &one)
    }

    /// Squarefree decomposition by Yun's algorithm (characteristic zero):
    /// returns monic pairwise-coprime `(p_i, m_i)` with
    /// `self = lead * prod p_i^{m_i}`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(CasError::ZeroFunction);
        }
        let f = self.monic()?;
        if f.degree() == Some(0) {
            return Ok(vec![]);
        }
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.div_exact(&a0)?;
        let mut c = df.div_exact(&a0)?;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut m = 1;
        while b.degree() != Some(0) {
            let p = b.gcd(&d)?;
            if p.degree() != Some(0) {
                out.push((p.clone(), m));
            }
            b = b.div_exact(&p)?;
            c = d.div_exact(&p)?;
            d = c.sub(&b.derivative());
            m += 1;
        }
        Ok(out)
    }

    /// Renders the polynomial using a caller-supplied coefficient formatter.
    pub fn format_with(&self, fmt: &dyn Fn(&K) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = fmt(c);
            let term = match i {
                0 => cs,
                1 => format!("({})*{}", cs, self.var),
                _ => format!("({})*{}^{}", cs, self.var, i),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl<K: Field> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.coeffs == other.coeffs
    }
}
