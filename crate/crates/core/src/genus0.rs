//! Genus-zero input data: necklace polynomials, the generating series of
//! point counts of `M_{0,n}` and the series `c_1`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;

use crate::algebra::arith::{divisors, mobius};
use crate::algebra::{QPoly, RatFunc};
use crate::error::{Error, Result};
use crate::symfun::{ss_exp_classical, Partition, SymSeries};

/// `s_1 = q + 1`, `s_n = Σ_{d|n} μ(n/d) q^d` for `n ≥ 2`.
pub fn necklace(n: u32) -> QPoly {
    assert!(n >= 1, "necklace index must be positive");
    if n == 1 {
        return QPoly::from_int_coeffs(&[1, 1]);
    }
    let mut out = QPoly::zero();
    for d in divisors(n) {
        let mu = mobius(n / d);
        if mu != 0 {
            out = out.add(&QPoly::monomial(BigRational::from_integer(mu.into()), d as usize));
        }
    }
    out
}

fn ratio(num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(QPoly::from_int_coeffs(num), QPoly::from_int_coeffs(den)).unwrap()
}

/// `Σ_{d|n} μ(n/d) q^d` for every `n ≥ 1`; differs from [`necklace`] only at
/// `n = 1`, where it is `q`.
pub fn necklace_plain(n: u32) -> QPoly {
    if n == 1 {
        QPoly::q()
    } else {
        necklace(n)
    }
}

/// `∏_{n ≤ D} (1 + p_n)^{s_n/n}`, computed as `exp(Σ (s_n/n) log(1 + p_n))`.
pub fn necklace_product(d: u32) -> SymSeries {
    power_product(d, necklace)
}

fn power_product(d: u32, exponent: fn(u32) -> QPoly) -> SymSeries {
    let mut u = SymSeries::zero(d);
    for n in 1..=d {
        let sn = RatFunc::from_poly(exponent(n)).scale(&BigRational::new(1.into(), n.into()));
        let mut j = 1;
        while n * j <= d {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            let c = sn.scale(&BigRational::new(sign.into(), j.into()));
            u.add_term(Partition::new(vec![n; j as usize]), c);
            j += 1;
        }
    }
    ss_exp_classical(&u).expect("log series has zero constant term")
}

fn cache() -> &'static Mutex<HashMap<u32, SymSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, SymSeries>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Generating series `Σ_{n≥3} Σ_ρ |M_{0,n}^{ρF}| p_ρ/z_ρ` to degree `d`.
pub fn ch0(d: u32) -> SymSeries {
    if let Some(s) = cache().lock().unwrap().get(&d) {
        return s.clone();
    }
    let prod = necklace_product(d);
    let pm1 = prod.sub(&SymSeries::one(d));
    let mut out = pm1.scale_by(&ratio(&[1], &[0, -1, 0, 1]));
    out.add_term(Partition::new(vec![1, 1]), ratio(&[-1], &[-2, 2]));
    out.add_term(Partition::new(vec![1]), ratio(&[-1], &[0, -1, 1]));
    out.add_term(Partition::new(vec![2]), ratio(&[-1], &[2, 2]));
    debug_assert!(out.valuation().is_none_or(|v| v >= 3));
    cache().lock().unwrap().insert(d, out.clone());
    out
}

/// Closed form `c_1 = q p_1/(q-1) - (∏' - 1)/(q(q-1))` to degree `d`, where
/// `∏'` uses the exponents [`necklace_plain`], i.e. the `n = 1` factor is
/// `(1 + p_1)^q`.
pub fn c1(d: u32) -> SymSeries {
    let prod = power_product(d, necklace_plain);
    let pm1 = prod.sub(&SymSeries::one(d));
    let mut out = pm1.scale_by(&ratio(&[-1], &[0, -1, 1]));
    out.add_term(Partition::new(vec![1]), ratio(&[0, 1], &[-1, 1]));
    out
}

/// `c_1 = p_1 - ∂ch_0/∂p_1`, to degree `d`.
pub fn c1_from_ch0(d: u32) -> SymSeries {
    let dch = ch0(d + 1).derivative(1).expect("bound ≥ 1");
    SymSeries::p(1, d).sub(&dch)
}

/// Every `z_ρ`-scaled coefficient of `f` through its bound is a polynomial in `q`.
pub fn check_polynomial_counts(f: &SymSeries) -> Result<()> {
    for (rho, _) in f.terms() {
        let c = f.fixed_count(rho)?;
        if !c.is_polynomial() {
            return Err(Error::NotPolynomial(format!("{rho}: {c}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::{partitions_of, partitions_up_to};

    fn rf(coeffs: &[i64]) -> RatFunc {
        RatFunc::from_poly(QPoly::from_int_coeffs(coeffs))
    }

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec())
    }

    #[test]
    fn necklace_examples() {
        assert_eq!(necklace(1), QPoly::from_int_coeffs(&[1, 1]));
        assert_eq!(necklace(2), QPoly::from_int_coeffs(&[0, -1, 1]));
        assert_eq!(necklace(6), QPoly::from_int_coeffs(&[0, 1, -1, -1, 0, 0, 1]));
    }

    #[test]
    fn necklace_divisible_by_n() {
        for n in 2..12u32 {
            for q in 2..7i64 {
                let v = necklace(n).eval(&BigRational::from_integer(q.into()));
                assert!(v.is_integer());
                assert_eq!(v.to_integer() % n, 0.into(), "s_{n}({q})");
            }
        }
    }

    #[test]
    fn ch0_low_degrees() {
        let s = ch0(5);
        assert!(s.valuation().unwrap() >= 3);
        for rho in partitions_of(3) {
            assert_eq!(s.fixed_count(&rho).unwrap(), RatFunc::one());
        }
        assert_eq!(s.fixed_count(&part(&[1, 1, 1, 1])).unwrap(), rf(&[-2, 1]));
        assert_eq!(s.fixed_count(&part(&[2, 1, 1])).unwrap(), rf(&[0, 1]));
    }

    #[test]
    fn ch0_counts_polynomial() {
        let s = ch0(7);
        check_polynomial_counts(&s).unwrap();
        for rho in partitions_up_to(7) {
            assert!(s.fixed_count(&rho).unwrap().is_polynomial());
        }
    }

    #[test]
    fn c1_forms_agree() {
        for d in 2..=10 {
            assert_eq!(c1(d), c1_from_ch0(d), "degree {d}");
        }
        let c = c1(3);
        assert_eq!(c.homogeneous(1), SymSeries::p(1, 3));
        let h2 = SymSeries::from_terms(
            [
                (part(&[1, 1]), RatFunc::from_rational(BigRational::new(1.into(), 2.into()))),
                (part(&[2]), RatFunc::from_rational(BigRational::new(1.into(), 2.into()))),
            ],
            3,
        );
        assert_eq!(c.homogeneous(2), h2.neg());
    }

    #[test]
    fn c1_inverse_roundtrip() {
        let c = c1(6);
        let inv = crate::symfun::ss_pleth_inverse(&c).unwrap();
        assert_eq!(crate::symfun::ss_plethysm(&c, &inv).unwrap(), SymSeries::p(1, 6));
    }
}
