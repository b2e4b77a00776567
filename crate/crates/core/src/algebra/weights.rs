//! Polynomials in symbolic vertex weights `v_{g,n}`.
//!
//! Used to compare rank specializations of the pipeline against graph sums.
//! The Adams operations fix rational constants and send every weight symbol
//! to zero for `k >= 2`: a weight stands for a rank-only input, which has no
//! `p_k` component for `k >= 2`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The symbol `v_{g,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVar {
    pub g: u32,
    pub n: u32,
}

type Monomial = Vec<(WeightVar, u32)>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct WeightPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl WeightPoly {
    pub fn var(g: u32, n: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(WeightVar { g, n }, 1)], BigRational::one());
        WeightPoly { terms }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        WeightPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn insert(&mut self, m: Monomial, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

fn mul_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<WeightVar, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *out.entry(v).or_insert(0) += e;
    }
    out.into_iter().collect()
}

impl super::coeff::Coeff for WeightPoly {
    fn zero() -> Self {
        WeightPoly::default()
    }
    fn one() -> Self {
        WeightPoly::constant(<BigRational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(c: BigRational) -> Self {
        WeightPoly::constant(c)
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), -c);
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = WeightPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(mul_monomials(ma, mb), ca * cb);
            }
        }
        out
    }
    fn negated(&self) -> Self {
        WeightPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn scaled(&self, c: &BigRational) -> Self {
        if Zero::is_zero(c) {
            return WeightPoly::default();
        }
        WeightPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }
    fn inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        (!Zero::is_zero(&c)).then(|| WeightPoly::constant(c.recip()))
    }
    fn adams(&self, k: u32) -> Self {
        if k == 1 {
            return self.clone();
        }
        WeightPoly::constant(self.terms.get(&Vec::new()).cloned().unwrap_or_default())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.insert(m.clone(), c.clone());
        }
    }
}

impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = m
                .iter()
                .map(|(v, e)| {
                    if *e == 1 {
                        format!("v{}_{}", v.g, v.n)
                    } else {
                        format!("v{}_{}^{}", v.g, v.n, e)
                    }
                })
                .collect();
            if m.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", a, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::rat;
    use crate::algebra::Coeff;

    #[test]
    fn arithmetic_and_display() {
        let a = WeightPoly::var(0, 3);
        let b = WeightPoly::var(1, 1);
        let s = a.times(&a).scaled(&rat(1, 2)).plus(&b);
        assert_eq!(s.to_string(), "1/2*v0_3^2 + v1_1");
        assert!(s.minus(&s).is_zero());
    }

    #[test]
    fn adams_kills_symbols() {
        let a = WeightPoly::var(0, 3).plus(&WeightPoly::constant(rat(2, 1)));
        assert_eq!(a.adams(1), a);
        assert_eq!(a.adams(2), WeightPoly::constant(rat(2, 1)));
        assert!(WeightPoly::var(0, 4).inverse().is_none());
    }
}
