use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::partition::Partition;
use crate::algebra::{Coeff, RatFunc};
use crate::error::{Error, Result};

pub(crate) type Component<C> = BTreeMap<Partition, C>;

/// Truncated series in the power sums `p_1, p_2, ...`.
///
/// `bound` is the largest degree through which the series is known exactly.
/// Terms are grouped by degree; no term above the bound and no zero
/// coefficient is ever stored.
#[derive(Clone, PartialEq)]
pub struct SymSeries<C: Coeff = RatFunc> {
    by_degree: Vec<Component<C>>,
    bound: u32,
}

pub(crate) fn add_into<C: Coeff>(map: &mut Component<C>, key: Partition, c: C) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            e.get_mut().add_assign_ref(&c);
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Accumulate `a * b` into `out`.
pub(crate) fn mul_components_into<C: Coeff>(a: &Component<C>, b: &Component<C>, out: &mut Component<C>) {
    for (ka, ca) in a {
        for (kb, cb) in b {
            add_into(out, ka.union(kb), ca.times(cb));
        }
    }
}

impl<C: Coeff> SymSeries<C> {
    pub fn zero(bound: u32) -> Self {
        SymSeries { by_degree: Vec::new(), bound }
    }

    pub fn constant(c: C, bound: u32) -> Self {
        SymSeries::monomial(Partition::empty(), c, bound)
    }

    pub fn one(bound: u32) -> Self {
        SymSeries::constant(C::one(), bound)
    }

    /// The power sum `p_n`.
    pub fn p(n: u32, bound: u32) -> Self {
        SymSeries::monomial(Partition::new(vec![n]), C::one(), bound)
    }

    pub fn monomial(rho: Partition, c: C, bound: u32) -> Self {
        let mut s = SymSeries::zero(bound);
        s.add_term(rho, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, C)>>(terms: I, bound: u32) -> Self {
        let mut s = SymSeries::zero(bound);
        for (rho, c) in terms {
            s.add_term(rho, c);
        }
        s
    }

    /// Add `c * p_rho`; silently ignored above the bound.
    pub fn add_term(&mut self, rho: Partition, c: C) {
        let d = rho.weight();
        if d > self.bound || c.is_zero() {
            return;
        }
        let d = d as usize;
        if self.by_degree.len() <= d {
            self.by_degree.resize_with(d + 1, BTreeMap::new);
        }
        add_into(&mut self.by_degree[d], rho, c);
        self.trim();
    }

    fn trim(&mut self) {
        while self.by_degree.last().is_some_and(|m| m.is_empty()) {
            self.by_degree.pop();
        }
    }

    pub(crate) fn from_components(mut by_degree: Vec<Component<C>>, bound: u32) -> Self {
        by_degree.truncate(bound as usize + 1);
        let mut s = SymSeries { by_degree, bound };
        s.trim();
        s
    }

    pub(crate) fn component(&self, d: u32) -> Option<&Component<C>> {
        self.by_degree.get(d as usize)
    }

    pub(crate) fn components(&self) -> &[Component<C>] {
        &self.by_degree
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Lower the bound to `b` (no-op if already lower), dropping terms above it.
    pub fn truncated(&self, b: u32) -> Self {
        if b >= self.bound {
            return self.clone();
        }
        SymSeries::from_components(self.by_degree.clone(), b)
    }

    pub fn is_zero(&self) -> bool {
        self.by_degree.is_empty()
    }

    pub fn len(&self) -> usize {
        self.by_degree.iter().map(|m| m.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// All stored terms, by increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.by_degree.iter().flat_map(|m| m.iter())
    }

    /// Lowest degree carrying a nonzero term.
    pub fn valuation(&self) -> Option<u32> {
        self.by_degree.iter().position(|m| !m.is_empty()).map(|d| d as u32)
    }

    /// Valuation, or `bound + 1` for a series that vanishes through its bound.
    pub fn effective_valuation(&self) -> u32 {
        self.valuation().unwrap_or(self.bound.saturating_add(1))
    }

    /// Largest degree carrying a nonzero term.
    pub fn max_degree(&self) -> Option<u32> {
        self.by_degree.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn get(&self, rho: &Partition) -> Option<&C> {
        self.by_degree.get(rho.weight() as usize)?.get(rho)
    }

    /// Coefficient of `p_rho`; fails above the bound.
    pub fn coeff(&self, rho: &Partition) -> Result<C> {
        if rho.weight() > self.bound {
            return Err(Error::BeyondBound { requested: rho.weight(), bound: self.bound });
        }
        Ok(self.get(rho).cloned().unwrap_or_else(C::zero))
    }

    pub fn constant_term(&self) -> C {
        self.get(&Partition::empty()).cloned().unwrap_or_else(C::zero)
    }

    /// Degree-`d` part, with the same bound.
    pub fn homogeneous(&self, d: u32) -> Self {
        let mut s = SymSeries::zero(self.bound);
        if let Some(m) = self.component(d) {
            if d <= self.bound {
                s.by_degree.resize_with(d as usize + 1, BTreeMap::new);
                s.by_degree[d as usize] = m.clone();
            }
        }
        s
    }

    /// Terms of degree in `lo..=hi`.
    pub fn degree_range(&self, lo: u32, hi: u32) -> Self {
        let comps = self
            .by_degree
            .iter()
            .enumerate()
            .map(|(d, m)| if (d as u32) >= lo && (d as u32) <= hi { m.clone() } else { BTreeMap::new() })
            .collect();
        SymSeries::from_components(comps, self.bound)
    }

    pub fn add(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        let mut out = self.truncated(bound);
        for (rho, c) in other.terms() {
            out.add_term(rho.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map_coeffs(|x| x.scaled(c))
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.times(c))
    }

    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        let comps = self
            .by_degree
            .iter()
            .map(|m| {
                m.iter()
                    .filter_map(|(k, c)| {
                        let v = f(c);
                        (!v.is_zero()).then(|| (k.clone(), v))
                    })
                    .collect()
            })
            .collect();
        SymSeries::from_components(comps, self.bound)
    }

    /// Bound of a product: the unknown tail of one factor is multiplied by at
    /// least the valuation of the other.
    pub fn product_bound(&self, other: &Self) -> u32 {
        let a = self.bound.saturating_add(other.effective_valuation());
        let b = other.bound.saturating_add(self.effective_valuation());
        a.min(b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, u32::MAX)
    }

    /// Product with the bound additionally capped at `cap`.
    pub fn mul_truncated(&self, other: &Self, cap: u32) -> Self {
        let bound = self.product_bound(other).min(cap);
        let mut comps: Vec<Component<C>> = Vec::new();
        for (da, ma) in self.by_degree.iter().enumerate() {
            if ma.is_empty() {
                continue;
            }
            for (db, mb) in other.by_degree.iter().enumerate() {
                let d = da + db;
                if d as u64 > bound as u64 {
                    break;
                }
                if mb.is_empty() {
                    continue;
                }
                if comps.len() <= d {
                    comps.resize_with(d + 1, BTreeMap::new);
                }
                mul_components_into(ma, mb, &mut comps[d]);
            }
        }
        SymSeries::from_components(comps, bound)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = SymSeries::one(self.bound);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `∂/∂p_m`; the bound drops by `m`.
    pub fn derivative(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Ok(self.clone());
        }
        if self.bound < m {
            return Err(Error::BeyondBound { requested: m, bound: self.bound });
        }
        let mut out = SymSeries::zero(self.bound - m);
        for (rho, c) in self.terms() {
            let k = rho.mult(m);
            if k > 0 {
                let r = rho.without_part(m).unwrap();
                out.add_term(r, c.scaled(&BigRational::from_integer(k.into())));
            }
        }
        Ok(out)
    }

    /// Iterated derivative `∂^{α_1}/∂p_1^{α_1} ∂^{α_2}/∂p_2^{α_2} ...`.
    pub fn derivative_multi(&self, alpha: &[u32]) -> Result<Self> {
        let mut out = self.clone();
        for (i, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                out = out.derivative(i as u32 + 1)?;
            }
        }
        Ok(out)
    }

    /// Adams operation: `p_n -> p_{kn}` together with the coefficient twist.
    pub fn adams(&self, k: u32) -> Self {
        assert!(k >= 1, "Adams index must be positive");
        if k == 1 {
            return self.clone();
        }
        let bound = self.bound.saturating_mul(k);
        let mut out = SymSeries::zero(bound);
        for (rho, c) in self.terms() {
            out.add_term(rho.scaled(k), c.adams(k));
        }
        out
    }

    /// Rank specialization `p_1 = x`, `p_n = 0` for `n >= 2`: entry `n` is the
    /// coefficient of `x^n`.
    pub fn rk(&self) -> Vec<C> {
        (0..=self.bound)
            .map(|n| {
                self.get(&Partition::new(vec![1; n as usize]))
                    .cloned()
                    .unwrap_or_else(C::zero)
            })
            .collect()
    }

    /// `z_ρ` times the coefficient of `p_ρ`.
    pub fn fixed_count(&self, rho: &Partition) -> Result<C> {
        Ok(self.coeff(rho)?.scaled(&BigRational::from_integer(rho.z())))
    }

    /// True when the two series agree through the smaller of their bounds.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let b = self.bound.min(other.bound);
        self.truncated(b).by_degree == other.truncated(b).by_degree
    }
}

fn fmt_monomial(rho: &Partition) -> String {
    rho.mults()
        .into_iter()
        .rev()
        .map(|(i, m)| if m == 1 { format!("p{i}") } else { format!("p{i}^{m}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl<C: Coeff> fmt::Display for SymSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O({})", self.bound + 1);
        }
        let mut first = true;
        for (rho, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let simple = !cs.contains(' ') && !cs.contains('*');
            if rho.is_empty() {
                write!(f, "{cs}")?;
            } else if c.is_one() {
                write!(f, "{}", fmt_monomial(rho))?;
            } else if simple {
                write!(f, "{cs}*{}", fmt_monomial(rho))?;
            } else {
                write!(f, "({cs})*{}", fmt_monomial(rho))?;
            }
        }
        write!(f, " + O({})", self.bound + 1)
    }
}

impl<C: Coeff> fmt::Debug for SymSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymSeries({self})")
    }
}

/// Binary operation selector for [`ss_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

pub fn ss_arith<C: Coeff>(f: &SymSeries<C>, g: &SymSeries<C>, op: SeriesOp) -> SymSeries<C> {
    match op {
        SeriesOp::Add => f.add(g),
        SeriesOp::Sub => f.sub(g),
        SeriesOp::Mul => f.mul(g),
    }
}

pub fn ss_derivative<C: Coeff>(f: &SymSeries<C>, m: u32) -> Result<SymSeries<C>> {
    f.derivative(m)
}

pub fn ss_adams<C: Coeff>(f: &SymSeries<C>, k: u32) -> SymSeries<C> {
    f.adams(k)
}

pub fn z_of(rho: &Partition) -> BigRational {
    BigRational::from_integer(rho.z())
}

pub fn coeff<C: Coeff>(f: &SymSeries<C>, rho: &Partition) -> Result<C> {
    f.coeff(rho)
}

pub fn fixed_count<C: Coeff>(f: &SymSeries<C>, rho: &Partition) -> Result<C> {
    f.fixed_count(rho)
}

pub fn rk<C: Coeff>(f: &SymSeries<C>) -> Vec<C> {
    f.rk()
}
