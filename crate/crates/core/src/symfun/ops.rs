//! Plethystic calculus on truncated series.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use super::partition::Partition;
use super::series::{add_into, mul_components_into, Component, SymSeries};
use crate::algebra::arith::mobius;
use crate::algebra::Coeff;
use crate::error::{Error, Result};

fn require_positive_valuation<C: Coeff>(f: &SymSeries<C>) -> Result<()> {
    if f.constant_term().is_zero() {
        Ok(())
    } else {
        Err(Error::PositiveValuationRequired)
    }
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `Σ_n w(n) ψ_n(f)` truncated at the bound of `f`; `w(n) = 0` skips `n`.
fn adams_sum<C: Coeff>(f: &SymSeries<C>, w: impl Fn(u32) -> BigRational) -> SymSeries<C> {
    let b = f.bound();
    let mut out = SymSeries::zero(b);
    for (rho, c) in f.terms() {
        let d = rho.weight();
        let mut n = 1;
        while n * d <= b {
            let wn = w(n);
            if !num_traits::Zero::is_zero(&wn) {
                out.add_term(rho.scaled(n), c.adams(n).scaled(&wn));
            }
            n += 1;
        }
    }
    out
}

/// `Ψ(f) = Σ_{n≥1} ψ_n(f)/n`.
pub fn ss_psi<C: Coeff>(f: &SymSeries<C>) -> Result<SymSeries<C>> {
    require_positive_valuation(f)?;
    Ok(adams_sum(f, |n| frac(1, n as i64)))
}

/// `Ψ^{-1}(f) = Σ_{n≥1} μ(n)/n ψ_n(f)`.
pub fn ss_psi_inv<C: Coeff>(f: &SymSeries<C>) -> Result<SymSeries<C>> {
    require_positive_valuation(f)?;
    Ok(adams_sum(f, |n| frac(mobius(n) as i64, n as i64)))
}

fn components_up_to<C: Coeff>(f: &SymSeries<C>, b: u32) -> Vec<Component<C>> {
    (0..=b).map(|d| f.component(d).cloned().unwrap_or_default()).collect()
}

/// Classical `exp(u)` for `u` of positive valuation, via the graded recurrence
/// `d E_d = Σ_k k U_k E_{d-k}`.
pub fn ss_exp_classical<C: Coeff>(u: &SymSeries<C>) -> Result<SymSeries<C>> {
    require_positive_valuation(u)?;
    let b = u.bound();
    let uc = components_up_to(u, b);
    let mut e: Vec<Component<C>> = vec![BTreeMap::new(); b as usize + 1];
    e[0].insert(Partition::empty(), C::one());
    for d in 1..=b as usize {
        let mut acc = BTreeMap::new();
        for k in 1..=d {
            if uc[k].is_empty() || e[d - k].is_empty() {
                continue;
            }
            let mut prod = BTreeMap::new();
            mul_components_into(&uc[k], &e[d - k], &mut prod);
            let w = frac(k as i64, d as i64);
            for (key, c) in prod {
                add_into(&mut acc, key, c.scaled(&w));
            }
        }
        e[d] = acc;
    }
    Ok(SymSeries::from_components(e, b))
}

/// Classical `log(g)` for `g` with constant term 1, via
/// `L_d = G_d - (1/d) Σ_{k<d} k L_k G_{d-k}`.
pub fn ss_log_classical<C: Coeff>(g: &SymSeries<C>) -> Result<SymSeries<C>> {
    if !g.constant_term().is_one() {
        return Err(Error::UnitConstantRequired);
    }
    let b = g.bound();
    let gc = components_up_to(g, b);
    let mut l: Vec<Component<C>> = vec![BTreeMap::new(); b as usize + 1];
    for d in 1..=b as usize {
        let mut acc = gc[d].clone();
        for k in 1..d {
            if l[k].is_empty() || gc[d - k].is_empty() {
                continue;
            }
            let mut prod = BTreeMap::new();
            mul_components_into(&l[k], &gc[d - k], &mut prod);
            let w = frac(-(k as i64), d as i64);
            for (key, c) in prod {
                add_into(&mut acc, key, c.scaled(&w));
            }
        }
        l[d] = acc;
    }
    Ok(SymSeries::from_components(l, b))
}

/// Plethystic exponential `Exp(f) = exp(Ψ(f))`.
pub fn ss_exp<C: Coeff>(f: &SymSeries<C>) -> Result<SymSeries<C>> {
    ss_exp_classical(&ss_psi(f)?)
}

/// Plethystic logarithm `Log(g) = Ψ^{-1}(log g)`.
pub fn ss_log<C: Coeff>(g: &SymSeries<C>) -> Result<SymSeries<C>> {
    ss_psi_inv(&ss_log_classical(g)?)
}

/// `1/(1 - u)` for `u` of positive valuation.
pub fn ss_geom<C: Coeff>(u: &SymSeries<C>) -> Result<SymSeries<C>> {
    require_positive_valuation(u)?;
    let b = u.bound();
    let uc = components_up_to(u, b);
    let mut g: Vec<Component<C>> = vec![BTreeMap::new(); b as usize + 1];
    g[0].insert(Partition::empty(), C::one());
    for d in 1..=b as usize {
        let mut acc = BTreeMap::new();
        for k in 1..=d {
            if !uc[k].is_empty() && !g[d - k].is_empty() {
                mul_components_into(&uc[k], &g[d - k], &mut acc);
            }
        }
        g[d] = acc;
    }
    Ok(SymSeries::from_components(g, b))
}

/// `log(1 - u)` for `u` of positive valuation.
pub fn ss_log1m<C: Coeff>(u: &SymSeries<C>) -> Result<SymSeries<C>> {
    require_positive_valuation(u)?;
    let one_minus = SymSeries::one(u.bound()).sub(u);
    ss_log_classical(&one_minus)
}

/// Multiplicative inverse of a series whose constant term is invertible.
pub fn ss_recip<C: Coeff>(f: &SymSeries<C>) -> Result<SymSeries<C>> {
    let c = f.constant_term();
    let ci = c.inverse().ok_or(Error::DivisionByZero)?;
    let u = SymSeries::one(f.bound()).sub(&f.scale_by(&ci));
    Ok(ss_geom(&u)?.scale_by(&ci))
}

/// Plethysm `f ∘ g`, substituting `p_n -> ψ_n(g)`.
pub fn ss_plethysm<C: Coeff>(f: &SymSeries<C>, g: &SymSeries<C>) -> Result<SymSeries<C>> {
    require_positive_valuation(g)?;
    let vg = g.effective_valuation();
    // terms of f above its bound are unknown and land in degree ≥ (B_f+1) v_g
    let cap = ((f.bound() as u64 + 1) * vg as u64 - 1).min(u32::MAX as u64) as u32;
    let mut adams_cache: HashMap<u32, SymSeries<C>> = HashMap::new();
    let mut memo: HashMap<Partition, SymSeries<C>> = HashMap::new();
    memo.insert(Partition::empty(), SymSeries::one(cap));
    let mut bound = cap;
    let mut out: Vec<Component<C>> = Vec::new();
    for (rho, c) in f.terms() {
        if (rho.weight() as u64) * (vg as u64) > cap as u64 {
            break;
        }
        let val = monomial_value(rho, g, cap, &mut adams_cache, &mut memo);
        bound = bound.min(val.bound());
        for (d, comp) in val.components().iter().enumerate() {
            if out.len() <= d {
                out.resize_with(d + 1, BTreeMap::new);
            }
            for (k, x) in comp {
                add_into(&mut out[d], k.clone(), x.times(c));
            }
        }
    }
    Ok(SymSeries::from_components(out, bound))
}

fn monomial_value<C: Coeff>(
    rho: &Partition,
    g: &SymSeries<C>,
    cap: u32,
    adams_cache: &mut HashMap<u32, SymSeries<C>>,
    memo: &mut HashMap<Partition, SymSeries<C>>,
) -> SymSeries<C> {
    if let Some(v) = memo.get(rho) {
        return v.clone();
    }
    let k = rho.smallest();
    let rest = rho.without_part(k).unwrap();
    let prev = monomial_value(&rest, g, cap, adams_cache, memo);
    let gk = adams_cache
        .entry(k)
        .or_insert_with(|| g.adams(k).truncated(cap))
        .clone();
    let v = prev.mul_truncated(&gk, cap);
    memo.insert(rho.clone(), v.clone());
    v
}

/// Plethystic inverse of `f = c p_1 + (higher)`.
pub fn ss_pleth_inverse<C: Coeff>(f: &SymSeries<C>) -> Result<SymSeries<C>> {
    require_positive_valuation(f)?;
    let b = f.bound();
    let p1 = Partition::new(vec![1]);
    let c = f.coeff(&p1)?;
    let ci = c.inverse().ok_or(Error::LinearTermNotInvertible)?;
    let mut rest = f.clone();
    rest.add_term(p1.clone(), c.negated());
    let mut g = SymSeries::monomial(p1.clone(), ci.clone(), b);
    // g = (p_1 - rest∘g)/c; each pass fixes one further degree
    for d in 2..=b {
        let gd = g.truncated(d);
        let corr = ss_plethysm(&rest.truncated(d), &gd)?;
        let next = SymSeries::p(1, d).sub(&corr).scale_by(&ci);
        g = next.truncated(d);
        g = SymSeries::from_terms(g.terms().map(|(k, x)| (k.clone(), x.clone())), b);
    }
    Ok(g)
}

/// Legendre transform: `g = (p_1 f' - f) ∘ (f')^{-1}` with `f' = ∂f/∂p_1`.
pub fn ss_legendre<C: Coeff>(f: &SymSeries<C>) -> Result<SymSeries<C>> {
    let r = f.rk();
    if r.len() < 3 || !r[0].is_zero() || !r[1].is_zero() || r[2].is_zero() {
        return Err(Error::NotInLambdaStar);
    }
    let b = f.bound();
    let fp = f.derivative(1)?;
    let inv = ss_pleth_inverse(&fp)?;
    let outer = SymSeries::p(1, b).mul(&fp).sub(f);
    Ok(ss_plethysm(&outer, &inv)?.truncated(b))
}

/// Residual of the Legendre identity `g ∘ f' + f - p_1 f'`.
pub fn legendre_residual<C: Coeff>(f: &SymSeries<C>, g: &SymSeries<C>) -> Result<SymSeries<C>> {
    let fp = f.derivative(1)?;
    let lhs = ss_plethysm(g, &fp)?.add(f);
    let rhs = SymSeries::p(1, f.bound()).mul(&fp);
    Ok(lhs.sub(&rhs))
}
