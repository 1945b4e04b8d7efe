//! Rational functions in one variable over a [`Field`], stored in canonical
//! form: numerator and monic denominator, coprime. With that normalization
//! the representation is unique, so structural equality is field equality.
//!
//! `RatFunc<K>` itself implements [`Field`], which is how multivariate
//! situations are handled throughout the crate: `RatFunc<RatFunc<K>>` is the
//! field of rational functions in two variables.

use crate::error::{CasError, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc<K: Field> {
    num: Poly<K>,
    den: Poly<K>,
}

/// A place of the rational function field `K(x)`: a finite place given by a
/// monic irreducible polynomial, or the place at infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum Place<K: Field> {
    Finite(Poly<K>),
    Infinity,
}

impl<K: Field> RatFunc<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(CasError::DivisionByZero);
        }
        let mut r = RatFunc { num, den };
        r.normalize()?;
        Ok(r)
    }

    fn normalize(&mut self) -> Result<()> {
        if self.num.is_zero() {
            self.num = Poly::zero(&self.num.var, self.num.exemplar());
            self.den = Poly::one(&self.den.var, self.den.exemplar());
            return Ok(());
        }
        let g = self.num.gcd(&self.den)?;
        if g.degree().map_or(false, |d| d >= 1) {
            self.num = self.num.div_exact(&g)?;
            self.den = self.den.div_exact(&g)?;
        }
        let lead_inv = self.den.lead().inv()?;
        self.den = self.den.scale(&lead_inv);
        self.num = self.num.scale(&lead_inv);
        Ok(())
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        let den = Poly::one(&p.var, p.exemplar());
        RatFunc { num: p, den }
    }

    pub fn constant(var: &str, c: K) -> Self {
        Self::from_poly(Poly::constant(var, c))
    }

    /// The coordinate function `x` itself.
    pub fn x(var: &str, exemplar: &K) -> Self {
        Self::from_poly(Poly::x(var, exemplar))
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    pub fn var(&self) -> &str {
        &self.num.var
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// `Some(p)` when the function is a polynomial.
    pub fn as_poly(&self) -> Option<Poly<K>> {
        if self.den.degree() == Some(0) && self.den.is_monic() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// `Some(c)` when the function is a constant.
    pub fn as_constant(&self) -> Option<K> {
        self.as_poly().and_then(|p| {
            if p.degree().map_or(true, |d| d == 0) {
                Some(p.coeff(0))
            } else {
                None
            }
        })
    }

    /// Order of vanishing at a place (negative at a pole). The finite place
    /// polynomial must be nonconstant; the zero function has no valuation.
    pub fn valuation(&self, place: &Place<K>) -> Result<i64> {
        if self.is_zero() {
            return Err(CasError::ZeroFunction);
        }
        match place {
            Place::Infinity => Ok(self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64),
            Place::Finite(p) => {
                let vn = self.num.multiplicity(p)? as i64;
                let vd = self.den.multiplicity(p)? as i64;
                Ok(vn - vd)
            }
        }
    }

    /// Value at `x = c`; a pole reports [`CasError::DivisionByZero`].
    pub fn eval(&self, c: &K) -> Result<K> {
        let d = self.den.eval(c);
        if d.is_zero() {
            return Err(CasError::DivisionByZero);
        }
        self.num.eval(c).div(&d)
    }

    /// Substitute a rational function for the variable (composition).
    pub fn substitute(&self, g: &RatFunc<K>) -> Result<RatFunc<K>> {
        let mut n = RatFunc::constant(g.var(), self.num.exemplar().zero_like());
        for c in self.num.coeffs().iter().rev() {
            n = n.mul(g).add(&RatFunc::constant(g.var(), c.clone()));
        }
        let mut d = RatFunc::constant(g.var(), self.den.exemplar().zero_like());
        for c in self.den.coeffs().iter().rev() {
            d = d.mul(g).add(&RatFunc::constant(g.var(), c.clone()));
        }
        n.div(&d)
    }

    /// `f(c*x)` for a nonzero scalar `c`.
    pub fn scale_var(&self, c: &K) -> Result<Self> {
        if c.is_zero() {
            return Err(CasError::ZeroScale);
        }
        RatFunc::new(self.num.scale_var(c), self.den.scale_var(c))
    }

    /// Rewrites `f(x)` as `R(y)` with `y = x^m`, if possible. `zeta` must be
    /// a primitive `m`-th root of unity in `K`; invariance of `f` under
    /// `x -> zeta x` is checked first and its failure reports
    /// [`CasError::NotInSubfield`].
    pub fn rewrite_in_power(&self, m: usize, new_var: &str, zeta: &K) -> Result<RatFunc<K>> {
        assert!(m >= 2);
        {
            // zeta really must have exact order m.
            let mut p = zeta.one_like();
            for k in 1..m {
                p = p.mul(zeta);
                assert!(!p.is_one(), "zeta has order {} < {}", k, m);
            }
            p = p.mul(zeta);
            assert!(p.is_one(), "zeta is not an m-th root of unity");
        }
        if self.is_zero() {
            return Ok(RatFunc::constant(new_var, self.num.exemplar().zero_like()));
        }
        if &self.scale_var(zeta)? != self {
            return Err(CasError::NotInSubfield(format!(
                "not invariant under {} -> zeta*{}",
                self.var(),
                self.var()
            )));
        }
        let residue = |p: &Poly<K>| -> Result<usize> {
            let mut r = None;
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match r {
                    None => r = Some(i % m),
                    Some(r0) => {
                        if i % m != r0 {
                            return Err(CasError::NotInSubfield(
                                "mixed exponent residues".to_string(),
                            ));
                        }
                    }
                }
            }
            Ok(r.unwrap())
        };
        let rn = residue(&self.num)?;
        let rd = residue(&self.den)?;
        if rn % m != rd % m {
            return Err(CasError::NotInSubfield(
                "numerator and denominator exponent residues differ".to_string(),
            ));
        }
        let collapse = |p: &Poly<K>, r: usize| -> Poly<K> {
            let mut out = vec![p.exemplar().zero_like(); (p.coeffs().len() - r - 1) / m + 1];
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out[(i - r) / m] = c.clone();
                }
            }
            Poly::new(new_var, out)
        };
        let n_tilde = collapse(&self.num, rn);
        let d_tilde = collapse(&self.den, rd);
        let shift = rn as i64 - rd as i64;
        debug_assert_eq!(shift % m as i64, 0);
        let k = shift / m as i64;
        let y = Poly::x(new_var, self.num.exemplar());
        let result = if k >= 0 {
            RatFunc::new(n_tilde.mul(&y.pow(k as u32)), d_tilde)?
        } else {
            RatFunc::new(n_tilde, d_tilde.mul(&y.pow((-k) as u32)))?
        };
        // Round-trip check: substituting x^m back must reproduce f exactly.
        let xm = RatFunc::from_poly(Poly::monomial(
            self.var(),
            self.num.exemplar().one_like(),
            m,
        ));
        let back = result.substitute(&xm)?;
        if &back != self {
            return Err(CasError::NotInSubfield("round-trip mismatch".to_string()));
        }
        Ok(result)
    }

    pub fn format_with(&self, fmt: &dyn Fn(&K) -> String) -> String {
        if self.is_poly() {
            self.num.format_with(fmt)
        } else {
            format!(
                "({}) / ({})",
                self.num.format_with(fmt),
                self.den.format_with(fmt)
            )
        }
    }
}

impl<K: Field> Field for RatFunc<K> {
    fn zero_like(&self) -> Self {
        RatFunc::constant(self.var(), self.num.exemplar().zero_like())
    }
    fn one_like(&self) -> Self {
        RatFunc::constant(self.var(), self.num.exemplar().one_like())
    }
    fn add(&self, rhs: &Self) -> Self {
        let num = self
            .num
            .mul(&rhs.den)
            .add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero denominator")
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(CasError::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_integer(&self, n: i64) -> Self {
        RatFunc::constant(self.var(), self.num.exemplar().from_integer(n))
    }
}
