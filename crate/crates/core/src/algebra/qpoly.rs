use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial in `q` with rational coefficients.
///
/// Stored as an integer coefficient vector over a common positive
/// denominator, reduced so that the denominator shares no factor with the
/// content of the numerator. Trailing zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    num: Vec<BigInt>,
    den: BigInt,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { num: Vec::new(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        QPoly { num: vec![BigInt::one()], den: BigInt::one() }
    }

    /// The polynomial `q`.
    pub fn q() -> Self {
        QPoly::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        QPoly::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut num = vec![BigInt::zero(); degree + 1];
        num[degree] = c.numer().clone();
        QPoly::normalized(num, c.denom().clone())
    }

    /// Build from rational coefficients, lowest degree first.
    pub fn from_coeffs(coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        QPoly::normalized(num, den)
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        QPoly::normalized(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one())
    }

    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return QPoly::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den /= g;
            }
        }
        QPoly { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.den.is_one() && self.num[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        match self.num.get(i) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading(&self) -> BigRational {
        self.degree().map_or_else(BigRational::zero, |d| self.coeff(d))
    }

    /// Constant value when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeff(0)),
            _ => None,
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.combine(other, true)
    }

    fn combine(&self, other: &QPoly, negate: bool) -> QPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let n = self.num.len().max(other.num.len());
        let (den, fa, fb) = if self.den == other.den {
            (self.den.clone(), BigInt::one(), BigInt::one())
        } else {
            let l = self.den.lcm(&other.den);
            let fa = &l / &self.den;
            let fb = &l / &other.den;
            (l, fa, fb)
        };
        let mut num = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.num.get(i).map_or_else(BigInt::zero, |c| c * &fa);
            let b = other.num.get(i).map_or_else(BigInt::zero, |c| c * &fb);
            num.push(if negate { a - b } else { a + b });
        }
        QPoly::normalized(num, den)
    }

    pub fn neg(&self) -> QPoly {
        QPoly { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut num = vec![BigInt::zero(); self.num.len() + other.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    num[i + j] += a * b;
                }
            }
        }
        QPoly::normalized(num, &self.den * &other.den)
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly::normalized(
            self.num.iter().map(|x| x * c.numer()).collect(),
            &self.den * c.denom(),
        )
    }

    /// Euclidean division over Q. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs();
        let dcoef = divisor.coeffs();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in dcoef.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (QPoly::from_coeffs(&quot), QPoly::from_coeffs(&rem))
    }

    /// Scale so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        // leading coefficient is num_last/den, so dividing gives num/num_last
        let lead = self.num.last().unwrap().clone();
        QPoly::from_coeffs(
            &self
                .num
                .iter()
                .map(|c| BigRational::new(c.clone(), lead.clone()))
                .collect::<Vec<_>>(),
        )
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut x, mut y) = (a.monic(), b.monic());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x
    }

    pub fn eval(&self, v: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.num.iter().rev() {
            acc = acc * v + BigRational::from_integer(c.clone());
        }
        acc / BigRational::from_integer(self.den.clone())
    }

    /// Substitute `q -> q^k`.
    pub fn compose_power(&self, k: u32) -> QPoly {
        if k == 1 || self.num.len() <= 1 {
            return self.clone();
        }
        let k = k as usize;
        let mut num = vec![BigInt::zero(); (self.num.len() - 1) * k + 1];
        for (i, c) in self.num.iter().enumerate() {
            num[i * k] = c.clone();
        }
        QPoly { num, den: self.den.clone() }
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in (0..self.num.len()).rev() {
            let c = self.coeff(d);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let var = match d {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{d}"),
            };
            if d == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{a}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}
