use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CasError, Result};

/// Exact field arithmetic with the "context" (which field an element lives
/// in) carried by the elements themselves.
///
/// Constructors like [`Field::zero_like`] take a receiver so that elements of
/// structured fields (number-field towers, rational function fields) can
/// build constants of the *same* field without a separate context handle.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    /// The zero of the field `self` belongs to.
    fn zero_like(&self) -> Self;
    /// The one of the field `self` belongs to.
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Fails with [`CasError::DivisionByZero`] on
    /// zero, or [`CasError::NotAField`] if the ambient "field" turns out not
    /// to be one.
    fn inv(&self) -> Result<Self>;
    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
    /// The image of the integer `n` in the field of `self`.
    fn from_integer(&self, n: i64) -> Self;
    /// The image of the rational `n/d` in the field of `self`.
    fn from_ratio(&self, n: i64, d: i64) -> Self {
        self.from_integer(n)
            .div(&self.from_integer(d))
            .expect("nonzero denominator")
    }
    /// `self^k` for `k >= 0`.
    fn pow(&self, k: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

pub fn big_rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(CasError::DivisionByZero);
        }
        Ok(self.recip())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_integer(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Renders a rational in lowest terms as `p` or `p/q`.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else if x.is_negative() && (-x).denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
