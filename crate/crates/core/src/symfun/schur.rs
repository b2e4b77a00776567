//! Schur functions in the power-sum basis via Murnaghan–Nakayama.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::partition::{partitions_of, Partition};
use super::series::SymSeries;
use crate::algebra::Coeff;
use crate::error::{Error, Result};

type CharTable = HashMap<(Vec<u32>, Vec<u32>), i64>;

fn char_cache() -> &'static Mutex<CharTable> {
    static CACHE: OnceLock<Mutex<CharTable>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Irreducible character `χ^λ` at cycle type `ρ` (same weight required).
pub fn character(lambda: &Partition, rho: &Partition) -> i64 {
    assert_eq!(lambda.weight(), rho.weight(), "character needs |λ| = |ρ|");
    let key = (lambda.parts().to_vec(), rho.parts().to_vec());
    if let Some(&v) = char_cache().lock().unwrap().get(&key) {
        return v;
    }
    let v = mn(lambda.parts(), rho.parts());
    char_cache().lock().unwrap().insert(key, v);
    v
}

fn mn(lambda: &[u32], rho: &[u32]) -> i64 {
    if rho.is_empty() {
        return 1;
    }
    let r = rho[0];
    let rest = &rho[1..];
    // beta numbers: removing an r-rim hook moves a bead from b to b - r
    let len = lambda.len();
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| l as i64 + (len - 1 - i) as i64)
        .collect();
    let mut total = 0;
    for i in 0..len {
        let target = beta[i] - r as i64;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&b| b > target && b < beta[i]).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let n = nb.len();
        let mu: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(j, &b)| (b - (n - 1 - j) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        let key = (mu.clone(), rest.to_vec());
        let cached = char_cache().lock().unwrap().get(&key).copied();
        let v = match cached {
            Some(v) => v,
            None => {
                let v = mn(&mu, rest);
                char_cache().lock().unwrap().insert(key, v);
                v
            }
        };
        total += sign * v;
    }
    total
}

/// `s_λ = Σ_ρ χ^λ(ρ) p_ρ / z_ρ`.
pub fn schur_to_powersum<C: Coeff>(lambda: &Partition) -> SymSeries<C> {
    let n = lambda.weight();
    let mut out = SymSeries::zero(n);
    for rho in partitions_of(n) {
        let chi = character(lambda, &rho);
        if chi != 0 {
            out.add_term(rho.clone(), C::from_rational(BigRational::new(BigInt::from(chi), rho.z())));
        }
    }
    out
}

/// Expand a degree-`n` homogeneous series in Schur functions, using
/// `<p_ρ, s_λ> = χ^λ(ρ)`. Returns the nonzero coefficients.
pub fn powersum_to_schur<C: Coeff>(f: &SymSeries<C>, n: u32) -> Result<Vec<(Partition, C)>> {
    if f.bound() < n {
        return Err(Error::BeyondBound { requested: n, bound: f.bound() });
    }
    if f.terms().any(|(rho, _)| rho.weight() != n) {
        return Err(Error::NotHomogeneous(n));
    }
    let mut out = Vec::new();
    for lambda in partitions_of(n) {
        let mut acc = C::zero();
        for (rho, c) in f.terms() {
            let chi = character(&lambda, rho);
            if chi != 0 {
                acc.add_assign_ref(&c.scaled(&BigRational::from_integer(chi.into())));
            }
        }
        if !acc.is_zero() {
            out.push((lambda, acc));
        }
    }
    Ok(out)
}
