use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ratfunc::RatFunc;

/// Coefficient ring for symmetric-function series.
///
/// Besides ring arithmetic a coefficient carries its own Adams operation:
/// `q -> q^k` for rational functions, the identity for plain rationals.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(c: BigRational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &BigRational) -> Self;
    /// Multiplicative inverse, when it exists in the ring.
    fn inverse(&self) -> Option<Self>;
    fn adams(&self, k: u32) -> Self;

    fn from_int(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(c.into()))
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn from_rational(c: BigRational) -> Self {
        RatFunc::from_rational(c)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn negated(&self) -> Self {
        self.neg_ref()
    }
    fn scaled(&self, c: &BigRational) -> Self {
        self.scale(c)
    }
    fn inverse(&self) -> Option<Self> {
        RatFunc::inverse(self)
    }
    fn adams(&self, k: u32) -> Self {
        self.adams_q(k)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(c: BigRational) -> Self {
        c
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &BigRational) -> Self {
        self * c
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn adams(&self, _k: u32) -> Self {
        self.clone()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}
