//! ħ-Laurent series of symmetric functions, truncated by weight.
//!
//! A term `c ħ^{t/2} p_ρ` is keyed by `(t, ρ)` and has weight `|ρ| + t`.
//! Products, Adams operations (up to scaling) and the Laplacian all respect
//! weight, so a single cap `W` is enough to truncate everything.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::algebra::arith::mobius;
use crate::algebra::{Coeff, RatFunc};
use crate::error::{Error, Result};
use crate::symfun::{Partition, SymSeries};

type Key = (i32, Partition);
type Graded<C> = Vec<BTreeMap<Key, C>>;

#[derive(Clone, PartialEq)]
pub struct HbarSeries<C: Coeff = RatFunc> {
    terms: BTreeMap<Key, C>,
    cap: i32,
    floor: i32,
}

fn key_weight(k: &Key) -> i32 {
    k.1.weight() as i32 + k.0
}

fn add_into<C: Coeff>(map: &mut BTreeMap<Key, C>, key: Key, c: C) {
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

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl<C: Coeff> HbarSeries<C> {
    pub fn zero(cap: i32, floor: i32) -> Self {
        HbarSeries { terms: BTreeMap::new(), cap, floor }
    }

    pub fn one(cap: i32, floor: i32) -> Self {
        HbarSeries::monomial(0, Partition::empty(), C::one(), cap, floor)
    }

    /// `c ħ^{twice_e/2} p_ρ`.
    pub fn monomial(twice_e: i32, rho: Partition, c: C, cap: i32, floor: i32) -> Self {
        let mut s = HbarSeries::zero(cap, floor);
        s.add_term(twice_e, rho, c);
        s
    }

    pub fn cap(&self) -> i32 {
        self.cap
    }

    pub fn floor(&self) -> i32 {
        self.floor
    }

    /// Same terms with a different floor; terms below the new floor are dropped.
    pub fn with_floor(&self, floor: i32) -> Self {
        let mut out = HbarSeries::zero(self.cap, floor);
        for ((e, rho), c) in &self.terms {
            out.add_term(*e, rho.clone(), c.clone());
        }
        out
    }

    /// Lower the weight cap.
    pub fn capped(&self, cap: i32) -> Self {
        if cap >= self.cap {
            return self.clone();
        }
        let mut out = HbarSeries::zero(cap, self.floor);
        for ((e, rho), c) in &self.terms {
            out.add_term(*e, rho.clone(), c.clone());
        }
        out
    }

    /// Add `c ħ^{twice_e/2} p_ρ`, ignored when outside the cap or floor.
    pub fn add_term(&mut self, twice_e: i32, rho: Partition, c: C) {
        if twice_e < self.floor || rho.weight() as i32 + twice_e > self.cap {
            return;
        }
        add_into(&mut self.terms, (twice_e, rho), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Partition, &C)> {
        self.terms.iter().map(|((e, r), c)| (*e, r, c))
    }

    pub fn get(&self, twice_e: i32, rho: &Partition) -> Option<&C> {
        self.terms.get(&(twice_e, rho.clone()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest weight among stored terms.
    pub fn min_weight(&self) -> Option<i32> {
        self.terms.keys().map(key_weight).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = HbarSeries::zero(self.cap.min(other.cap), self.floor.min(other.floor));
        for ((e, rho), c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(*e, rho.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map_coeffs(|x| x.scaled(c))
    }

    fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        let mut out = HbarSeries::zero(self.cap, self.floor);
        for ((e, rho), c) in &self.terms {
            out.add_term(*e, rho.clone(), f(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let floor = self.floor.min(other.floor);
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            let wa = key_weight(ka);
            for (kb, cb) in &other.terms {
                let e = ka.0 + kb.0;
                if wa + key_weight(kb) > cap || e < floor {
                    continue;
                }
                add_into(&mut terms, (e, ka.1.union(&kb.1)), ca.times(cb));
            }
        }
        HbarSeries { terms, cap, floor }
    }

    /// Adams operation: `ħ -> ħ^k`, `p_n -> p_{kn}`, coefficient twist.
    pub fn adams(&self, k: u32) -> Self {
        assert!(k >= 1, "Adams index must be positive");
        let ki = k as i32;
        let cap = if self.cap >= 0 { self.cap.saturating_mul(ki) } else { self.cap };
        let floor = if self.floor <= 0 { self.floor.saturating_mul(ki) } else { self.floor };
        let mut out = HbarSeries::zero(cap, floor);
        for ((e, rho), c) in &self.terms {
            out.add_term(e * ki, rho.scaled(k), c.adams(k));
        }
        out
    }

    fn require_f1(&self) -> Result<()> {
        match self.min_weight() {
            Some(w) if w < 1 => Err(Error::FiltrationViolation(w as i64)),
            _ => Ok(()),
        }
    }

    fn adams_sum(&self, w: impl Fn(u32) -> BigRational) -> Self {
        let mut out = HbarSeries::zero(self.cap, self.floor);
        for (key, c) in &self.terms {
            let wt = key_weight(key);
            let mut n = 1u32;
            while wt * n as i32 <= self.cap {
                let wn = w(n);
                if !num_traits::Zero::is_zero(&wn) {
                    out.add_term(key.0 * n as i32, key.1.scaled(n), c.adams(n).scaled(&wn));
                }
                n += 1;
            }
        }
        out
    }

    /// `Ψ(a) = Σ ψ_n(a)/n`; requires every term to have weight ≥ 1.
    pub fn psi(&self) -> Result<Self> {
        self.require_f1()?;
        Ok(self.adams_sum(|n| frac(1, n as i64)))
    }

    pub fn psi_inv(&self) -> Result<Self> {
        self.require_f1()?;
        Ok(self.adams_sum(|n| frac(mobius(n) as i64, n as i64)))
    }

    fn graded(&self) -> Graded<C> {
        let top = self.cap.max(0) as usize;
        let mut g: Graded<C> = vec![BTreeMap::new(); top + 1];
        for (k, c) in &self.terms {
            let w = key_weight(k);
            if w >= 0 {
                g[w as usize].insert(k.clone(), c.clone());
            }
        }
        g
    }

    fn from_graded(g: Graded<C>, cap: i32, floor: i32) -> Self {
        let mut terms = BTreeMap::new();
        for comp in g {
            terms.extend(comp);
        }
        HbarSeries { terms, cap, floor }
    }

    fn mul_graded_into(&self, a: &BTreeMap<Key, C>, b: &BTreeMap<Key, C>, w: &BigRational, out: &mut BTreeMap<Key, C>) {
        for (ka, ca) in a {
            for (kb, cb) in b {
                let e = ka.0 + kb.0;
                if e < self.floor {
                    continue;
                }
                add_into(out, (e, ka.1.union(&kb.1)), ca.times(cb).scaled(w));
            }
        }
    }

    /// Classical exponential of an F¹ series.
    pub fn exp_classical(&self) -> Result<Self> {
        self.require_f1()?;
        let u = self.graded();
        let top = u.len() - 1;
        let mut e: Graded<C> = vec![BTreeMap::new(); top + 1];
        e[0].insert((0, Partition::empty()), C::one());
        for d in 1..=top {
            let mut acc = BTreeMap::new();
            for k in 1..=d {
                if !u[k].is_empty() && !e[d - k].is_empty() {
                    self.mul_graded_into(&u[k], &e[d - k], &frac(k as i64, d as i64), &mut acc);
                }
            }
            e[d] = acc;
        }
        Ok(HbarSeries::from_graded(e, self.cap, self.floor))
    }

    /// Classical logarithm of a series whose weight-0 part is exactly 1.
    pub fn log_classical(&self) -> Result<Self> {
        self.require_unit()?;
        let g = self.graded();
        let top = g.len() - 1;
        let mut l: Graded<C> = vec![BTreeMap::new(); top + 1];
        for d in 1..=top {
            let mut acc = g[d].clone();
            for k in 1..d {
                if !l[k].is_empty() && !g[d - k].is_empty() {
                    self.mul_graded_into(&l[k], &g[d - k], &frac(-(k as i64), d as i64), &mut acc);
                }
            }
            l[d] = acc;
        }
        Ok(HbarSeries::from_graded(l, self.cap, self.floor))
    }

    fn require_unit(&self) -> Result<()> {
        let mut unit = false;
        for (k, c) in &self.terms {
            let w = key_weight(k);
            if w < 0 {
                return Err(Error::UnitConstantRequired);
            }
            if w == 0 {
                if k.0 == 0 && k.1.is_empty() && c.is_one() {
                    unit = true;
                } else {
                    return Err(Error::UnitConstantRequired);
                }
            }
        }
        if unit || self.cap < 0 {
            Ok(())
        } else {
            Err(Error::UnitConstantRequired)
        }
    }

    /// `Exp(a) = exp(Ψ(a))`.
    pub fn exp(&self) -> Result<Self> {
        self.psi()?.exp_classical()
    }

    /// `Log(a) = Ψ^{-1}(log a)`.
    pub fn log(&self) -> Result<Self> {
        self.log_classical()?.psi_inv()
    }

    /// `Δ = Σ_n ħ^n ((n/2) ∂²/∂p_n² + ∂/∂p_{2n})`, termwise.
    pub fn laplacian(&self) -> Self {
        let mut out = HbarSeries::zero(self.cap, self.floor);
        for ((e, rho), c) in &self.terms {
            for (n, m) in rho.mults() {
                if m >= 2 {
                    let w = frac((n * m * (m - 1)) as i64, 2);
                    let r = rho.without_part(n).unwrap().without_part(n).unwrap();
                    out.add_term(e + 2 * n as i32, r, c.scaled(&w));
                }
                if n % 2 == 0 {
                    let r = rho.without_part(n).unwrap();
                    out.add_term(e + n as i32, r, c.scaled(&frac(m as i64, 1)));
                }
            }
        }
        out
    }

    /// `exp(Δ)(a) = Σ_k Δ^k(a)/k!`, together with the number of Δ applications
    /// performed before the iteration vanished.
    pub fn exp_laplacian_counted(&self) -> (Self, u32) {
        let mut total = self.clone();
        let mut cur = self.clone();
        let mut k = 0u32;
        loop {
            if cur.is_zero() {
                return (total, k);
            }
            k += 1;
            cur = cur.laplacian().scale(&frac(1, k as i64));
            total = total.add(&cur);
        }
    }

    pub fn exp_laplacian(&self) -> Self {
        self.exp_laplacian_counted().0
    }

    /// Upper bound on the number of Δ applications before `exp(Δ)` terminates.
    pub fn laplacian_iteration_bound(&self) -> u32 {
        (self.cap - self.floor).max(0) as u32 + 1
    }

    /// Place `f` at `ħ^{twice_i/2}`. The cap is `bound(f) + twice_i`, and the
    /// floor `min(twice_i, -2 cap)`.
    pub fn embed(f: &SymSeries<C>, twice_i: i32) -> Self {
        let cap = f.bound() as i32 + twice_i;
        let floor = twice_i.min(-2 * cap.max(0));
        let mut out = HbarSeries::zero(cap, floor);
        for (rho, c) in f.terms() {
            out.add_term(twice_i, rho.clone(), c.clone());
        }
        out
    }

    /// Coefficient of `ħ^{twice_i/2}`, reliable through degree `cap - twice_i`.
    pub fn extract(&self, twice_i: i32) -> Result<SymSeries<C>> {
        let b = self.cap - twice_i;
        if b < 0 {
            return Err(Error::BeyondBound { requested: 0, bound: 0 });
        }
        Ok(SymSeries::from_terms(
            self.terms
                .iter()
                .filter(|((e, _), _)| *e == twice_i)
                .map(|((_, r), c)| (r.clone(), c.clone())),
            b as u32,
        ))
    }
}

impl<C: Coeff> fmt::Display for HbarSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 [W={}]", self.cap);
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((e, rho), c)| {
                let h = if e % 2 == 0 { format!("h^{}", e / 2) } else { format!("h^({e}/2)") };
                format!("({c})*{h}*p{rho}")
            })
            .collect();
        write!(f, "{} [W={}]", parts.join(" + "), self.cap)
    }
}

impl<C: Coeff> fmt::Debug for HbarSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HbarSeries({self})")
    }
}

/// Binary operation selector for [`hs_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HbarOp {
    Add,
    Sub,
    Mul,
}

pub fn hs_arith<C: Coeff>(a: &HbarSeries<C>, b: &HbarSeries<C>, op: HbarOp) -> HbarSeries<C> {
    match op {
        HbarOp::Add => a.add(b),
        HbarOp::Sub => a.sub(b),
        HbarOp::Mul => a.mul(b),
    }
}

pub fn hs_adams<C: Coeff>(a: &HbarSeries<C>, k: u32) -> HbarSeries<C> {
    a.adams(k)
}

pub fn hs_psi<C: Coeff>(a: &HbarSeries<C>) -> Result<HbarSeries<C>> {
    a.psi()
}

pub fn hs_psi_inv<C: Coeff>(a: &HbarSeries<C>) -> Result<HbarSeries<C>> {
    a.psi_inv()
}

pub fn hs_exp<C: Coeff>(a: &HbarSeries<C>) -> Result<HbarSeries<C>> {
    a.exp()
}

pub fn hs_log<C: Coeff>(a: &HbarSeries<C>) -> Result<HbarSeries<C>> {
    a.log()
}

pub fn hs_laplacian<C: Coeff>(a: &HbarSeries<C>) -> HbarSeries<C> {
    a.laplacian()
}

pub fn hs_exp_laplacian<C: Coeff>(a: &HbarSeries<C>) -> HbarSeries<C> {
    a.exp_laplacian()
}

pub fn hs_embed<C: Coeff>(f: &SymSeries<C>, twice_i: i32) -> HbarSeries<C> {
    HbarSeries::embed(f, twice_i)
}

pub fn hs_extract<C: Coeff>(a: &HbarSeries<C>, twice_i: i32) -> Result<SymSeries<C>> {
    a.extract(twice_i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::rat;

    type H = HbarSeries<RatFunc>;
    type S = SymSeries<RatFunc>;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec())
    }

    fn one() -> RatFunc {
        RatFunc::one()
    }

    fn h3(b: u32) -> S {
        S::from_terms(
            [
                (part(&[1, 1, 1]), RatFunc::from_rational(rat(1, 6))),
                (part(&[2, 1]), RatFunc::from_rational(rat(1, 2))),
                (part(&[3]), RatFunc::from_rational(rat(1, 3))),
            ],
            b,
        )
    }

    fn h2(b: u32) -> S {
        S::from_terms(
            [
                (part(&[1, 1]), RatFunc::from_rational(rat(1, 2))),
                (part(&[2]), RatFunc::from_rational(rat(1, 2))),
            ],
            b,
        )
    }

    #[test]
    fn arith_examples() {
        let a = H::monomial(-2, part(&[1]), one(), 6, -12);
        let b = H::monomial(2, part(&[2]), one(), 6, -12);
        assert_eq!(a.mul(&b), H::monomial(0, part(&[2, 1]), one(), 6, -12));
        let half = H::monomial(1, part(&[]), one(), 4, -8);
        assert_eq!(half.mul(&half), H::monomial(2, part(&[]), one(), 4, -8));
        let x = H::embed(&h3(4), -2);
        assert_eq!(x.cap(), 2);
        let sq = x.mul(&x);
        assert!(sq.extract(-4).unwrap().agrees_with(&h3(6).mul(&h3(6))));
    }

    #[test]
    fn adams_example() {
        let a = H::monomial(-2, part(&[1]), one(), 4, -8);
        assert_eq!(a.adams(2), H::monomial(-4, part(&[2]), one(), 8, -16));
    }

    #[test]
    fn exp_log_roundtrip() {
        let a = H::embed(&h3(6), -2);
        assert_eq!(a.cap(), 4);
        let back = a.exp().unwrap().log().unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn psi_truncates_at_cap() {
        let a = H::monomial(2, part(&[1]), one(), 7, -14);
        let p = a.psi().unwrap();
        let mut expect = H::zero(7, -14);
        expect.add_term(2, part(&[1]), one());
        expect.add_term(4, part(&[2]), RatFunc::from_rational(rat(1, 2)));
        assert_eq!(p, expect);
        assert!(matches!(H::one(4, -8).psi(), Err(Error::FiltrationViolation(0))));
    }

    #[test]
    fn laplacian_examples() {
        let p11 = H::monomial(0, part(&[1, 1]), one(), 4, -8);
        assert_eq!(p11.laplacian(), H::monomial(2, part(&[]), one(), 4, -8));
        let p2 = H::monomial(0, part(&[2]), one(), 4, -8);
        assert_eq!(p2.laplacian(), H::monomial(2, part(&[]), one(), 4, -8));
        let h = H::embed(&h2(4), 0);
        assert_eq!(h.laplacian(), H::monomial(2, part(&[]), one(), 4, -8));
    }

    #[test]
    fn exp_laplacian_examples() {
        assert_eq!(H::one(4, -8).exp_laplacian(), H::one(4, -8));
        let p11 = H::monomial(0, part(&[1, 1]), one(), 4, -8);
        assert_eq!(p11.exp_laplacian(), p11.add(&H::monomial(2, part(&[]), one(), 4, -8)));
        let p1111 = H::monomial(0, part(&[1, 1, 1, 1]), one(), 4, -8);
        let mut expect = p1111.clone();
        expect.add_term(2, part(&[1, 1]), RatFunc::from_int(6));
        expect.add_term(4, part(&[]), RatFunc::from_int(3));
        let (got, iters) = p1111.exp_laplacian_counted();
        assert_eq!(got, expect);
        assert!(iters <= p1111.laplacian_iteration_bound());
    }

    #[test]
    fn embed_extract() {
        let a = H::embed(&h3(5), -2);
        assert_eq!(a.extract(-2).unwrap(), h3(5));
        assert!(a.extract(0).unwrap().is_zero());
        let sq = H::embed(&S::monomial(part(&[1, 1]), one(), 4), 0).exp_laplacian();
        assert_eq!(sq.extract(2).unwrap(), S::one(2));
    }
}
