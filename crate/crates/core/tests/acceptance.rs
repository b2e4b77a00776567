//! Acceptance criteria, one line each. Every comparison is exact.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use mbar_core::algebra::arith::factorial;
use mbar_core::critical::{critical_residual, solve_critical};
use mbar_core::genus0::{ch0, check_polynomial_counts};
use mbar_core::graphs::{symbolic_weights, tree_oracle_equivariant, wick_sum};
use mbar_core::hbar::HbarSeries;
use mbar_core::pipeline::{b0_closed, b1_closed, b2_closed, ch_direct, vm, wm, InputCharacteristics};
use mbar_core::symfun::{
    legendre_residual, partitions_of, ss_exp, ss_legendre, ss_log, ss_pleth_inverse, ss_plethysm,
};
use mbar_core::{BigRat, Coeff, Partition, QPoly, RatFunc, SymSeries, WeightPoly};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn same<C: Coeff>(a: &SymSeries<C>, b: &SymSeries<C>, bound: u32) -> bool {
    a.bound() >= bound && b.bound() >= bound && a.truncated(bound) == b.truncated(bound)
}

fn plethystic_roundtrips() -> Outcome {
    let mut r = rng(1);
    let cases = 20;
    for i in 0..cases {
        let f = series(&mut r, 1, 8, 0.25);
        let back = ss_log(&ss_exp(&f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        check(same(&back, &f, 8), || format!("Log(Exp(f)) != f for case {i}"))?;

        let one_u = SymSeries::one(8).add(&series(&mut r, 1, 8, 0.25));
        let again = ss_exp(&ss_log(&one_u).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        check(same(&again, &one_u, 8), || format!("Exp(Log(1+u)) != 1+u for case {i}"))?;

        let g = invertible(&mut r, 8, 0.25);
        let inv = ss_pleth_inverse(&g).map_err(|e| e.to_string())?;
        let invinv = ss_pleth_inverse(&inv).map_err(|e| e.to_string())?;
        check(same(&invinv, &g, 8), || format!("inverse of inverse != f for case {i}"))?;
        let comp = ss_plethysm(&g, &inv).map_err(|e| e.to_string())?;
        check(same(&comp, &SymSeries::p(1, 8), 8), || format!("f ∘ f^-1 != p1 for case {i}"))?;
    }
    Ok(format!("{cases} random series each, bound 8"))
}

fn legendre() -> Outcome {
    let mut fs = vec![mbar_core_e2(6).sub(&ch0(6))];
    let mut r = rng(2);
    for _ in 0..5 {
        fs.push(lambda_star(&mut r, 6, 0.3));
    }
    for (i, f) in fs.iter().enumerate() {
        let g = ss_legendre(f).map_err(|e| e.to_string())?;
        let res = legendre_residual(f, &g).map_err(|e| e.to_string())?;
        check(res.truncated(6).is_zero() && res.bound() >= 6, || format!("nonzero residual for f #{i}: {res}"))?;
        let gg = ss_legendre(&g).map_err(|e| e.to_string())?;
        check(same(&gg, f, 6), || format!("L(L(f)) != f for f #{i}"))?;
    }
    Ok(format!("{} series (e2 - ch0 and 5 random), bound 6", fs.len()))
}

fn mbar_core_e2(b: u32) -> SymSeries {
    let half = BigRat::new(1.into(), 2.into());
    SymSeries::from_terms(
        [
            (Partition::new(vec![1, 1]), RatFunc::from_rational(half.clone())),
            (Partition::new(vec![2]), RatFunc::from_rational(-half)),
        ],
        b,
    )
}

fn mbar_core_h2(b: u32) -> SymSeries {
    mbar_core_e2(b).add(&SymSeries::p(2, b))
}

fn genus0_legendre() -> Outcome {
    let l = ss_legendre(&mbar_core_e2(6).sub(&ch0(6))).map_err(|e| e.to_string())?;
    let rhs = mbar_core_h2(6).add(&b0_closed(&ch0(7), 6).map_err(|e| e.to_string())?);
    check(same(&l, &rhs, 6), || format!("L(e2 - ch0) - h2 - b0 = {}", l.sub(&rhs)))?;
    Ok("L(e2 - ch0) = h2 + b0 through degree 6".into())
}

fn path_equivalence() -> Outcome {
    let mut inputs = vec![("geometric".to_string(), InputCharacteristics::geometric(8))];
    let mut r = rng(4);
    for k in 0..3 {
        let mut inp = InputCharacteristics::geometric(8);
        inp.a1 = series(&mut r, 1, 8, 0.4);
        inp.a2 = series(&mut r, 0, 8, 0.4);
        inputs.push((format!("random #{k}"), inp));
    }
    for (name, inp) in &inputs {
        let e = |e: mbar_core::Error| format!("{name}: {e}");
        let pairs = [
            (0, 6, b0_closed(&inp.a0, 6).map_err(e)?),
            (1, 5, b1_closed(&inp.a0, &inp.a1, 5).map_err(e)?),
            (2, 4, b2_closed(&inp.a0, &inp.a1, &inp.a2, 4).map_err(e)?),
        ];
        for (g, d, closed) in pairs {
            let direct = ch_direct(inp, g, d).map_err(e)?;
            check(same(&closed, &direct, d), || format!("{name}: g = {g}, closed - direct = {}", closed.sub(&direct)))?;
        }
    }
    Ok("b0 (D=6), b1 (D=5), b2 (D=4) for ch0 and 3 random (a1, a2)".into())
}

fn equivariant_genus0() -> Outcome {
    let b0 = b0_closed(&ch0(7), 6).map_err(|e| e.to_string())?;
    check(b0.valuation().is_none_or(|v| v >= 3), || "b0 has terms below degree 3".into())?;
    let mut count = 0;
    for n in 3..=6 {
        for rho in partitions_of(n) {
            let oracle = tree_oracle_equivariant(n, &rho).map_err(|e| e.to_string())?;
            let got = b0.fixed_count(&rho).map_err(|e| e.to_string())?;
            check(oracle == got, || format!("{rho}: oracle {oracle}, b0 {got}"))?;
            count += 1;
        }
    }
    let q = |c: &[i64]| RatFunc::from_poly(QPoly::from_int_coeffs(c));
    check(b0.fixed_count(&Partition::new(vec![1; 4])).unwrap() == q(&[1, 1]), || "(1^4) != q+1".into())?;
    check(b0.fixed_count(&Partition::new(vec![1; 5])).unwrap() == q(&[1, 5, 1]), || "(1^5) != q^2+5q+1".into())?;
    Ok(format!("{count} cycle types of weight 3..6; (1^4) -> q+1, (1^5) -> q^2+5q+1"))
}

fn wick_agreement() -> Outcome {
    let a0 = symbolic_input(0, 3, 9);
    let a1 = symbolic_input(1, 1, 7);
    let a2 = symbolic_input(2, 0, 5);
    let inputs = InputCharacteristics { a0: a0.clone(), a1: a1.clone(), a2: a2.clone() };
    for (g, n) in [(0u32, 4u32), (0, 5), (1, 1), (1, 2), (2, 0), (2, 1)] {
        let d = n.max(1);
        let e = |e: mbar_core::Error| format!("({g},{n}): {e}");
        let b = match g {
            0 => b0_closed(&a0, d),
            1 => b1_closed(&a0, &a1, d),
            _ => b2_closed(&a0, &a1, &a2, d),
        }
        .map_err(e)?;
        let direct = ch_direct(&inputs, g, d).map_err(e)?;
        let nfact = BigRat::from_integer(factorial(n));
        let from_series = b.rk()[n as usize].scaled(&nfact);
        let from_direct = direct.rk()[n as usize].scaled(&nfact);
        let graphs = wick_sum(g, n, &symbolic_weights(g, n)).map_err(e)?;
        check(from_series == graphs && from_direct == graphs, || {
            format!("({g},{n}): closed {from_series}, direct {from_direct}, graphs {graphs}")
        })?;
    }
    let mv11 = wick_sum(1, 1, &symbolic_weights(1, 1)).unwrap();
    let expected = WeightPoly::var(1, 1).plus(&WeightPoly::var(0, 3).scaled(&BigRat::new(1.into(), 2.into())));
    check(mv11 == expected, || format!("Mv11 = {mv11}"))?;
    Ok(format!("(0,4) (0,5) (1,1) (1,2) (2,0) (2,1); Mv11 = {mv11}"))
}

fn kisin_lehrer() -> Outcome {
    let c = ch0(4);
    for rho in partitions_of(3) {
        let v = c.fixed_count(&rho).unwrap();
        check(v == RatFunc::one(), || format!("|M03^{rho}F| = {v}"))?;
    }
    let q = |co: &[i64]| RatFunc::from_poly(QPoly::from_int_coeffs(co));
    let v = c.fixed_count(&Partition::new(vec![1; 4])).unwrap();
    check(v == q(&[-2, 1]), || format!("|M04^F| = {v}"))?;
    let v = c.fixed_count(&Partition::new(vec![2, 1, 1])).unwrap();
    check(v == q(&[0, 1]), || format!("|M04^(1^2,2)F| = {v}"))?;
    Ok("M03 -> 1 (all rho), M04^F -> q - 2, M04^(1^2 2)F -> q".into())
}

fn critical_solver() -> Outcome {
    let mut r = rng(8);
    let cases = [("a1 = 0", SymSeries::zero(9)), ("random a1", series(&mut r, 1, 9, 0.4))];
    for (name, a1) in &cases {
        let a0 = ch0(10);
        let res = critical_residual(&a0, a1, 6, 2).map_err(|e| e.to_string())?;
        check(res.is_empty(), || format!("{name}: residual at (m, 2s) = {:?}", res.iter().map(|x| (x.0, x.1)).collect::<Vec<_>>()))?;
        let d = 5;
        let sol = solve_critical(&a0, a1, d, 2).map_err(|e| e.to_string())?;
        let cbar = sol.get(1, 0);
        let v2 = ss_plethysm(&vm(&a0, 2, d).unwrap(), &cbar).unwrap();
        check(same(&sol.get(2, 2), &v2, d), || format!("{name}: c̄(2,1) != v2 ∘ c̄"))?;
        let w1 = ss_plethysm(&wm(&a0, a1, 1, d).unwrap(), &cbar).unwrap();
        check(same(&sol.get(1, 2), &w1, d), || format!("{name}: c̄(1,1) != w1 ∘ c̄"))?;
        for (&(m, t), c) in &sol.coeffs {
            if t > 0 && m > t {
                check(c.is_zero(), || format!("{name}: c̄({m}, {t}/2) != 0"))?;
            }
        }
    }
    Ok("residual zero through ħ^1 at degree 6; c̄(2,1) = v2∘c̄, c̄(1,1) = w1∘c̄ to degree 5; vanishing holds".into())
}

fn polynomiality() -> Outcome {
    let inp = InputCharacteristics::geometric(8);
    let outs = [
        ("b0", b0_closed(&inp.a0, 6).map_err(|e| e.to_string())?),
        ("b1", b1_closed(&inp.a0, &inp.a1, 5).map_err(|e| e.to_string())?),
        ("b2", b2_closed(&inp.a0, &inp.a1, &inp.a2, 4).map_err(|e| e.to_string())?),
    ];
    let mut n = 0;
    for (name, b) in &outs {
        check_polynomial_counts(b).map_err(|e| format!("{name}: {e}"))?;
        n += b.len();
    }
    Ok(format!("{n} fixed counts of b0 (D=6), b1 (D=5), b2 (D=4) are polynomials in q"))
}

fn filtration() -> Outcome {
    let mut r = rng(10);
    let mut max_iter = 0;
    for i in 0..50 {
        let a: HbarSeries = hbar_series(&mut r, 8, -8, 12);
        let la = a.laplacian();
        if let (Some(w0), Some(w1)) = (a.min_weight(), la.min_weight()) {
            check(w1 >= w0, || format!("case {i}: min weight {w0} -> {w1}"))?;
        }
        let (_, iters) = a.exp_laplacian_counted();
        let limit = a.laplacian_iteration_bound();
        check(iters <= limit, || format!("case {i}: exp(Δ) took {iters} steps, bound {limit}"))?;
        max_iter = max_iter.max(iters);
    }
    Ok(format!("50 random series; exp(Δ) needed at most {max_iter} steps"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("plethystic roundtrips", plethystic_roundtrips),
        ("Legendre involution and identity", legendre),
        ("genus-0 Legendre identity", genus0_legendre),
        ("closed vs direct path equivalence", path_equivalence),
        ("equivariant genus-0 counts vs tree oracle", equivariant_genus0),
        ("rank specialization vs Wick graph sums", wick_agreement),
        ("Kisin-Lehrer spot values", kisin_lehrer),
        ("critical-point solver", critical_solver),
        ("polynomiality of fixed counts", polynomiality),
        ("Laplacian filtration invariants", filtration),
    ];
    let mut failed = 0;
    let mut seen = BTreeMap::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        match &out {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {why}", i + 1);
            }
        }
        seen.insert(i + 1, out.is_ok());
    }
    println!("{} of {} criteria passed", seen.values().filter(|&&x| x).count(), seen.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
