//! Critical points `q̄_m(p, ħ) = Σ_s c̄_{m,s}(p) ħ^s` of the stationary-phase
//! exponent, solved order by order in `ħ^{1/2}`.
//!
//! The defining system is
//! `c_m(q̄) - p_m = ε_m ħ^{m/2} + Σ_{k|m} Σ_g (m/k) ħ^{k(g-1)+m} ψ_k(∂a_g/∂p_{m/k})(q̄)`
//! over the terms with positive `ħ`-exponent, where `c_m = ψ_m(c_1)` and
//! `c_1 = p_1 - ∂a₀/∂p_1`. Substitution into `q̄` is done by Taylor expansion
//! around `C̄ = (ψ_m(c̄_{1,0}))_m`, where it becomes a plethysm with `c̄_{1,0}`.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::algebra::arith::{factorial, rat};
use crate::algebra::{Coeff, RatFunc};
use crate::error::{Error, Result};
use crate::symfun::{ss_pleth_inverse, ss_plethysm, ss_recip, SymSeries};

/// `ε_m`: 1 for even `m`, 0 for odd `m`.
pub fn epsilon(m: u32) -> u32 {
    u32::from(m.is_multiple_of(2))
}

/// Coefficients `c̄_{m,s}` for `1 ≤ m ≤ bound` and `2s ≤ max_twice_s`, keyed by `(m, 2s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalSolution<C: Coeff = RatFunc> {
    pub coeffs: BTreeMap<(u32, u32), SymSeries<C>>,
    pub max_twice_s: u32,
    pub bound: u32,
}

impl<C: Coeff> CriticalSolution<C> {
    pub fn get(&self, m: u32, twice_s: u32) -> SymSeries<C> {
        self.coeffs.get(&(m, twice_s)).cloned().unwrap_or_else(|| SymSeries::zero(self.bound))
    }
}

/// A series in `ħ^{1/2}`: entry `t` is the coefficient of `ħ^{t/2}`.
type Layers<C> = Vec<SymSeries<C>>;

struct Solver<C: Coeff> {
    d: u32,
    top: u32,
    a0: SymSeries<C>,
    a1: SymSeries<C>,
    c1: SymSeries<C>,
    cbar: SymSeries<C>,
    /// `δ_n = q̄_n - C̄_n`, with `δ_n[0] = 0`.
    delta: BTreeMap<u32, Layers<C>>,
}

impl<C: Coeff> Solver<C> {
    fn zero(&self) -> SymSeries<C> {
        SymSeries::zero(self.d)
    }

    /// `f(C̄)`, i.e. `f ∘ c̄_{1,0}`, to degree `d`.
    fn at_cbar(&self, f: &SymSeries<C>) -> Result<SymSeries<C>> {
        let v = ss_plethysm(&f.truncated(self.d.min(f.bound())), &self.cbar)?;
        if v.bound() < self.d {
            return Err(Error::BeyondBound { requested: self.d, bound: v.bound() });
        }
        Ok(v.truncated(self.d))
    }

    /// Order-`t` coefficient of `δ_{α_1} ⋯ δ_{α_l}`, using layers `≤ upto`.
    fn delta_product(&self, alpha: &[u32], t: u32, upto: u32) -> SymSeries<C> {
        let mut acc: Layers<C> = vec![self.zero(); t as usize + 1];
        acc[0] = SymSeries::one(self.d);
        for n in alpha {
            let dn = &self.delta[n];
            let mut next = vec![self.zero(); t as usize + 1];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 1..=(upto as usize).min(t as usize - i) {
                    if dn[j].is_zero() {
                        continue;
                    }
                    next[i + j] = next[i + j].add(&a.mul(&dn[j]).truncated(self.d));
                }
            }
            acc = next;
        }
        acc.swap_remove(t as usize)
    }

    /// Order-`t` coefficient of `f(q̄)`, with `δ` layers above `upto` treated as 0.
    fn eval(&self, f: &SymSeries<C>, t: u32, upto: u32) -> Result<SymSeries<C>> {
        let active: Vec<u32> = self
            .delta
            .iter()
            .filter(|(_, l)| l.iter().take(upto as usize + 1).any(|s| !s.is_zero()))
            .map(|(n, _)| *n)
            .collect();
        let mut out = if t == 0 { self.at_cbar(f)? } else { self.zero() };
        let mut alpha = Vec::new();
        self.taylor(f, t, upto, &active, 0, &mut alpha, &mut out)?;
        Ok(out)
    }

    /// Adds the Taylor terms `∂^α f(C̄) δ^α / α!` for nonempty multisets `α`
    /// extending `alpha` by indices from `active[from..]`.
    #[allow(clippy::too_many_arguments)]
    fn taylor(
        &self,
        f: &SymSeries<C>,
        t: u32,
        upto: u32,
        active: &[u32],
        from: usize,
        alpha: &mut Vec<u32>,
        out: &mut SymSeries<C>,
    ) -> Result<()> {
        // every δ factor has order ≥ 1
        if alpha.len() as u32 >= t {
            return Ok(());
        }
        for i in from..active.len() {
            alpha.push(active[i]);
            let prod = self.delta_product(alpha, t, upto);
            if !prod.is_zero() {
                let mut df = f.clone();
                for &n in alpha.iter() {
                    df = df.derivative(n)?;
                }
                let mut denom = BigRational::from_integer(1.into());
                let mut j = 0;
                while j < alpha.len() {
                    let k = alpha[j..].iter().take_while(|&&x| x == alpha[j]).count();
                    denom *= BigRational::from_integer(factorial(k as u32));
                    j += k;
                }
                let term = self.at_cbar(&df)?.mul(&prod).truncated(self.d);
                *out = out.add(&term.scale(&denom.recip()));
            }
            self.taylor(f, t, upto, active, i, alpha, out)?;
            alpha.pop();
        }
        Ok(())
    }

    fn c_m(&self, m: u32) -> SymSeries<C> {
        self.c1.adams(m)
    }

    /// Order-`t` coefficient of the right-hand side of the system for index `m`.
    fn rhs(&self, m: u32, t: u32, upto: u32) -> Result<SymSeries<C>> {
        let mut out = self.zero();
        if epsilon(m) == 1 && t == m {
            out = out.add(&SymSeries::one(self.d));
        }
        for k in crate::algebra::arith::divisors(m) {
            for (g, a) in [(0i64, &self.a0), (1, &self.a1)] {
                let e2 = 2 * (k as i64 * (g - 1) + m as i64);
                if e2 <= 0 || e2 > t as i64 {
                    continue;
                }
                let f = a.derivative(m / k)?.adams(k);
                let v = self.eval(&f, t - e2 as u32, upto)?;
                out = out.add(&v.scale(&rat((m / k) as i64, 1)));
            }
        }
        Ok(out)
    }

    fn jacobian(&self, m: u32, r: u32) -> Result<SymSeries<C>> {
        self.at_cbar(&self.c_m(m).derivative(m * r)?)
    }

    fn solve_order(&mut self, t: u32) -> Result<()> {
        for m in (1..=t.min(self.d)).rev() {
            let nonlinear = self.eval(&self.c_m(m), t, t - 1)?;
            let mut r = self.rhs(m, t, t - 1)?.sub(&nonlinear);
            let mut rr = 2;
            while m * rr <= t.min(self.d) {
                let known = self.delta[&(m * rr)][t as usize].clone();
                if !known.is_zero() {
                    r = r.sub(&known.mul(&self.jacobian(m, rr)?).truncated(self.d));
                }
                rr += 1;
            }
            let diag = self.jacobian(m, 1)?;
            if diag.constant_term().is_zero() {
                return Err(Error::SingularSystem(m));
            }
            let sol = r.mul(&ss_recip(&diag)?).truncated(self.d);
            self.delta.get_mut(&m).unwrap()[t as usize] = sol;
        }
        Ok(())
    }

    fn residual(&self) -> Result<Vec<(u32, u32, SymSeries<C>)>> {
        let mut out = Vec::new();
        for m in 1..=self.d {
            for t in 0..=self.top {
                let mut lhs = self.eval(&self.c_m(m), t, self.top)?;
                if t == 0 {
                    lhs = lhs.sub(&SymSeries::p(m, self.d));
                }
                let res = lhs.sub(&self.rhs(m, t, self.top)?);
                if !res.is_zero() {
                    out.push((m, t, res));
                }
            }
        }
        Ok(out)
    }

    fn new(a0: &SymSeries<C>, a1: &SymSeries<C>, d: u32, top: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::BeyondBound { requested: 1, bound: 0 });
        }
        let need = |f: &SymSeries<C>, b: u32| {
            if f.bound() < b {
                Err(Error::BeyondBound { requested: b, bound: f.bound() })
            } else {
                Ok(f.truncated(b))
            }
        };
        let a0 = need(a0, d + 1 + top)?;
        let a1 = if top >= 2 { need(a1, d + 1)? } else { SymSeries::zero(d + 1) };
        let c1 = SymSeries::p(1, a0.bound() - 1).sub(&a0.derivative(1)?);
        let cbar = ss_pleth_inverse(&c1.truncated(d))?;
        let mut delta = BTreeMap::new();
        for n in 1..=d {
            delta.insert(n, vec![SymSeries::zero(d); top as usize + 1]);
        }
        Ok(Solver { d, top, a0, a1, c1, cbar, delta })
    }

    fn solution(&self) -> CriticalSolution<C> {
        let mut coeffs = BTreeMap::new();
        for m in 1..=self.d {
            coeffs.insert((m, 0), self.cbar.adams(m).truncated(self.d));
            for t in 1..=self.top {
                coeffs.insert((m, t), self.delta[&m][t as usize].clone());
            }
        }
        CriticalSolution { coeffs, max_twice_s: self.top, bound: self.d }
    }
}

/// Solves for `c̄_{m,s}`, `2s ≤ max_twice_s ≤ 2`, to degree `d`. Needs `a₀`
/// to `d + 1 + max_twice_s` and, when `max_twice_s = 2`, `a₁` to `d + 1`.
pub fn solve_critical<C: Coeff>(
    a0: &SymSeries<C>,
    a1: &SymSeries<C>,
    d: u32,
    max_twice_s: u32,
) -> Result<CriticalSolution<C>> {
    Ok(solver(a0, a1, d, max_twice_s)?.solution())
}

fn solver<C: Coeff>(a0: &SymSeries<C>, a1: &SymSeries<C>, d: u32, max_twice_s: u32) -> Result<Solver<C>> {
    if max_twice_s > 2 {
        return Err(Error::Schema(format!("max_twice_s must be at most 2, got {max_twice_s}")));
    }
    let mut s = Solver::new(a0, a1, d, max_twice_s)?;
    for t in 1..=max_twice_s {
        s.solve_order(t)?;
    }
    Ok(s)
}

/// Solves as [`solve_critical`] and returns the nonzero residuals
/// `(m, 2s, residual)` of the system through order `ħ^{max_twice_s/2}` and
/// degree `d`, for every `1 ≤ m ≤ d`.
pub fn critical_residual<C: Coeff>(
    a0: &SymSeries<C>,
    a1: &SymSeries<C>,
    d: u32,
    max_twice_s: u32,
) -> Result<Vec<(u32, u32, SymSeries<C>)>> {
    solver(a0, a1, d, max_twice_s)?.residual()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus0::ch0;
    use crate::pipeline::{vm, wm};
    use crate::symfun::Partition;

    fn h2(b: u32) -> SymSeries {
        SymSeries::from_terms(
            [(Partition::new(vec![1, 1]), RatFunc::from_rational(rat(1, 2))), (Partition::new(vec![2]), RatFunc::from_rational(rat(1, 2)))],
            b,
        )
    }

    #[test]
    fn order_zero_is_inverse() {
        let sol = solve_critical(&ch0(5), &SymSeries::zero(5), 2, 0).unwrap();
        assert_eq!(sol.get(1, 0), SymSeries::p(1, 2).add(&h2(2)));
        assert_eq!(sol.get(2, 0), sol.get(1, 0).adams(2).truncated(2));
    }

    #[test]
    fn first_orders_match_closed_forms() {
        let d = 4;
        let a0 = ch0(d + 4);
        let a1 = SymSeries::zero(d + 2);
        let sol = solve_critical(&a0, &a1, d, 2).unwrap();
        let cbar = sol.get(1, 0);
        assert_eq!(sol.get(2, 2), ss_plethysm(&vm(&a0, 2, d).unwrap(), &cbar).unwrap().truncated(d));
        assert_eq!(sol.get(1, 2), ss_plethysm(&wm(&a0, &a1, 1, d).unwrap(), &cbar).unwrap().truncated(d));
        assert!(sol.get(2, 2).agrees_with(&SymSeries::one(1).add(&SymSeries::p(1, 1))));
        for m in 1..=d {
            assert!(sol.get(m, 1).is_zero());
        }
        for m in 3..=d {
            assert!(sol.get(m, 2).is_zero());
        }
        assert!(critical_residual(&a0, &a1, d, 2).unwrap().is_empty());
    }

    #[test]
    fn epsilon_parity() {
        assert_eq!((1..=4).map(epsilon).collect::<Vec<_>>(), vec![0, 1, 0, 1]);
    }
}
