#![allow(dead_code)]

use mbar_core::algebra::arith::{factorial, rat};
use mbar_core::hbar::HbarSeries;
use mbar_core::symfun::partitions_up_to;
use mbar_core::{BigRat, Coeff, Partition, QPoly, RatFunc, SymSeries, WeightPoly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Polynomial in `q` of degree ≤ `deg` with small integer coefficients.
pub fn poly(rng: &mut ChaCha8Rng, deg: usize) -> RatFunc {
    let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
    RatFunc::from_poly(QPoly::from_int_coeffs(&c))
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> BigRat {
    let n = loop {
        let n: i64 = rng.gen_range(-4..=4);
        if n != 0 {
            break n;
        }
    };
    rat(n, rng.gen_range(1..=3))
}

/// Random series with terms in degrees `min_deg..=bound`, each partition kept
/// with probability `density`.
pub fn series(rng: &mut ChaCha8Rng, min_deg: u32, bound: u32, density: f64) -> SymSeries {
    let mut s = SymSeries::zero(bound);
    for rho in partitions_up_to(bound) {
        if rho.weight() >= min_deg && rng.gen_bool(density) {
            s.add_term(rho, poly(rng, 3));
        }
    }
    s
}

/// `c p_1 + (random terms of degree ≥ 2)` with `c` a nonzero rational.
pub fn invertible(rng: &mut ChaCha8Rng, bound: u32, density: f64) -> SymSeries {
    let mut s = series(rng, 2, bound, density);
    s.add_term(Partition::new(vec![1]), RatFunc::from_rational(nonzero_rational(rng)));
    s
}

/// An element of Λ_*: nonzero rational `p_1²` coefficient, random `p_2`
/// coefficient, random terms from degree 3 on.
pub fn lambda_star(rng: &mut ChaCha8Rng, bound: u32, density: f64) -> SymSeries {
    let mut s = series(rng, 3, bound, density);
    s.add_term(Partition::new(vec![1, 1]), RatFunc::from_rational(nonzero_rational(rng)));
    s.add_term(Partition::new(vec![2]), poly(rng, 2));
    s
}

pub fn hbar_series(rng: &mut ChaCha8Rng, cap: i32, floor: i32, count: usize) -> HbarSeries {
    let parts = partitions_up_to(6);
    let mut h = HbarSeries::zero(cap, floor);
    for _ in 0..count {
        let rho = parts[rng.gen_range(0..parts.len())].clone();
        let e = rng.gen_range(floor.max(-6)..=4);
        if rho.weight() as i32 + e <= cap && rho.weight() as i32 + e >= 0 {
            h.add_term(e, rho, poly(rng, 2));
        }
    }
    h
}

/// `Σ_{n ≥ min_n} v_{g,n} p_1^n / n!` through degree `bound`.
pub fn symbolic_input(g: u32, min_n: u32, bound: u32) -> SymSeries<WeightPoly> {
    let mut s = SymSeries::zero(bound);
    for n in min_n..=bound {
        let w = WeightPoly::var(g, n).scaled(&BigRat::new(1.into(), factorial(n)));
        s.add_term(Partition::new(vec![1; n as usize]), w);
    }
    s
}
