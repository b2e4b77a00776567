use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// Reduced rational function in `q`: `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

/// Arithmetic operation selector for [`rf_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(QPoly::one())
    }

    pub fn q() -> Self {
        RatFunc::from_poly(QPoly::q())
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc { num: p, den: QPoly::one() }
    }

    pub fn from_rational(c: BigRational) -> Self {
        RatFunc::from_poly(QPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc::from_poly(QPoly::from_int(c))
    }

    /// `num / den`, reduced. Fails when `den` is zero.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        if den.degree() == Some(0) {
            let c = den.leading().recip();
            return Ok(RatFunc::from_poly(num.scale(&c)));
        }
        let g = QPoly::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let c = den.leading().recip();
        Ok(RatFunc { num: num.scale(&c), den: den.scale(&c) })
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&QPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add_ref(&self, other: &RatFunc) -> RatFunc {
        if self.den.is_one() && other.den.is_one() {
            return RatFunc::from_poly(self.num.add(&other.num));
        }
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone()).unwrap();
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .unwrap()
    }

    pub fn sub_ref(&self, other: &RatFunc) -> RatFunc {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul_ref(&self, other: &RatFunc) -> RatFunc {
        if self.den.is_one() && other.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&other.num));
        }
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inverse(&self) -> Option<RatFunc> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()).unwrap())
        }
    }

    pub fn div_ref(&self, other: &RatFunc) -> Result<RatFunc> {
        let inv = other.inverse().ok_or(Error::DivisionByZero)?;
        Ok(self.mul_ref(&inv))
    }

    /// Substitute `q -> q^k`. Coprimality and monicity survive the substitution.
    pub fn adams_q(&self, k: u32) -> RatFunc {
        assert!(k >= 1, "Adams index must be positive");
        RatFunc { num: self.num.compose_power(k), den: self.den.compose_power(k) }
    }

    pub fn eval(&self, v: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(v.to_string()));
        }
        Ok(self.num.eval(v) / d)
    }
}

/// Exact field arithmetic on reduced rational functions.
pub fn rf_arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc> {
    Ok(match op {
        ArithOp::Add => a.add_ref(b),
        ArithOp::Sub => a.sub_ref(b),
        ArithOp::Mul => a.mul_ref(b),
        ArithOp::Div => a.div_ref(b)?,
    })
}

pub fn rf_adams_q(a: &RatFunc, k: u32) -> RatFunc {
    a.adams_q(k)
}

pub fn rf_eval(a: &RatFunc, v: &BigRational) -> Result<BigRational> {
    a.eval(v)
}

impl From<QPoly> for RatFunc {
    fn from(p: QPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_int(c)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self.add_ref(&rhs)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self.sub_ref(&rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self.mul_ref(&rhs)
    }
}

/// Panics on division by zero; use [`RatFunc::div_ref`] for a checked version.
impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        self.div_ref(&rhs).expect("division by zero rational function")
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::int;

    fn poly(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(QPoly::from_int_coeffs(c))
    }

    #[test]
    fn add_to_two_q() {
        let r = rf_arith(&poly(&[1, 1]), &poly(&[-1, 1]), ArithOp::Add).unwrap();
        assert_eq!(r, poly(&[0, 2]));
    }

    #[test]
    fn exact_cancellation() {
        let r = rf_arith(&poly(&[-1, 0, 1]), &poly(&[-1, 1]), ArithOp::Div).unwrap();
        assert_eq!(r, poly(&[1, 1]));
        assert!(r.is_polynomial());
    }

    #[test]
    fn kisin_lehrer_prefactor_cancels() {
        // 1/(q(q^2-1)) * (q^3 - q) = 1
        let pref = RatFunc::new(QPoly::one(), QPoly::from_int_coeffs(&[0, -1, 0, 1])).unwrap();
        let r = rf_arith(&pref, &poly(&[0, -1, 0, 1]), ArithOp::Mul).unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            rf_arith(&poly(&[1]), &RatFunc::zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn canonical_form_is_monic() {
        let r = RatFunc::new(QPoly::from_int_coeffs(&[2]), QPoly::from_int_coeffs(&[4, 2])).unwrap();
        assert_eq!(r.denom(), &QPoly::from_int_coeffs(&[2, 1]));
        assert_eq!(r.numer(), &QPoly::from_int_coeffs(&[1]));
    }

    #[test]
    fn adams_examples() {
        assert_eq!(rf_adams_q(&poly(&[1, 1]), 2), poly(&[1, 0, 1]));
        assert_eq!(rf_adams_q(&poly(&[0, -1, 1]), 3), poly(&[0, 0, 0, -1, 0, 0, 1]));
        let a = RatFunc::new(QPoly::from_int_coeffs(&[3, 1]), QPoly::from_int_coeffs(&[-1, 1])).unwrap();
        assert_eq!(rf_adams_q(&a, 1), a);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(rf_eval(&poly(&[1, 5, 1]), &int(2)).unwrap(), int(15));
        assert_eq!(rf_eval(&poly(&[1, 1]), &int(1)).unwrap(), int(2));
        let pole = RatFunc::new(QPoly::one(), QPoly::from_int_coeffs(&[-1, 1])).unwrap();
        assert!(matches!(rf_eval(&pole, &int(1)), Err(Error::PoleAtPoint(_))));
    }
}
