use mbar_core::critical::critical_residual;
use mbar_core::genus0::{c1, c1_from_ch0, ch0, check_polynomial_counts};
use mbar_core::graphs::{labeled_mass, enumerate_stable, symbolic_weights, tree_oracle_equivariant, wick_sum};
use mbar_core::pipeline::{b0_closed, b1_closed, b2_closed, ch_direct, InputCharacteristics};
use mbar_core::symfun::{legendre_residual, partitions_of, ss_exp, ss_legendre, ss_log, ss_pleth_inverse, ss_plethysm};
use mbar_core::{BigRat, Coeff, Partition, RatFunc, SymSeries, WeightPoly};

use crate::{Failure, Outcome};

type Check = Result<(), String>;

fn err(e: mbar_core::Error) -> String {
    e.to_string()
}

fn expect(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2(d: u32) -> SymSeries {
    let half = BigRat::new(1.into(), 2.into());
    SymSeries::from_terms(
        [
            (Partition::new(vec![1, 1]), RatFunc::from_rational(half.clone())),
            (Partition::new(vec![2]), RatFunc::from_rational(-half)),
        ],
        d,
    )
}

fn exp_log(d: u32) -> Check {
    let f = ch0(d);
    let back = ss_log(&ss_exp(&f).map_err(err)?).map_err(err)?;
    expect(back == f, || format!("Log(Exp(ch0)) - ch0 = {}", back.sub(&f)))
}

fn inverse(d: u32) -> Check {
    let c = c1(d);
    let inv = ss_pleth_inverse(&c).map_err(err)?;
    let comp = ss_plethysm(&c, &inv).map_err(err)?;
    expect(comp == SymSeries::p(1, d), || format!("c1 ∘ c1^-1 = {comp}"))?;
    expect(c == c1_from_ch0(d), || "c1 closed form != p1 - ∂ch0/∂p1".into())
}

fn legendre(d: u32) -> Check {
    let f = e2(d).sub(&ch0(d));
    let g = ss_legendre(&f).map_err(err)?;
    let r = legendre_residual(&f, &g).map_err(err)?;
    expect(r.is_zero(), || format!("residual {r}"))?;
    let b0 = b0_closed(&ch0(d + 1), d).map_err(err)?;
    let h2 = e2(d).add(&SymSeries::p(2, d));
    expect(g == h2.add(&b0), || "L(e2 - ch0) != h2 + b0".into())?;
    let gg = ss_legendre(&g).map_err(err)?;
    expect(gg == f, || "L is not an involution".into())
}

fn paths(g: u32, d: u32) -> Check {
    let inp = InputCharacteristics::geometric(d + 4);
    let closed = match g {
        0 => b0_closed(&inp.a0, d),
        1 => b1_closed(&inp.a0, &inp.a1, d),
        _ => b2_closed(&inp.a0, &inp.a1, &inp.a2, d),
    }
    .map_err(err)?;
    let direct = ch_direct(&inp, g, d).map_err(err)?;
    check_polynomial_counts(&closed).map_err(err)?;
    expect(closed.agrees_with(&direct), || format!("closed - direct = {}", closed.sub(&direct)))
}

fn trees(d: u32) -> Check {
    let b0 = b0_closed(&ch0(d + 1), d).map_err(err)?;
    for n in 3..=d.min(6) {
        for rho in partitions_of(n) {
            let o = tree_oracle_equivariant(n, &rho).map_err(err)?;
            let b = b0.fixed_count(&rho).map_err(err)?;
            expect(o == b, || format!("{rho}: oracle {o}, b0 {b}"))?;
        }
    }
    Ok(())
}

fn graphs(d: u32) -> Check {
    let a0: SymSeries<WeightPoly> = symbolic(0, 3, d + 4);
    let a1 = symbolic(1, 1, d + 2);
    let a2 = symbolic(2, 0, d);
    let inputs = InputCharacteristics { a0, a1, a2 };
    for (g, n) in [(0u32, 4u32), (1, 1), (1, 2), (2, 0)] {
        if n > d {
            continue;
        }
        let mass = labeled_mass(g, n).map_err(err)?;
        let sum: BigRat = enumerate_stable(g, n)
            .map_err(err)?
            .iter()
            .map(|(_, aut)| BigRat::new(1.into(), (*aut).into()))
            .fold(BigRat::from_integer(0.into()), |a, b| a + b);
        expect(mass == sum, || format!("({g},{n}): Σ 1/|Aut| = {sum}, labeled mass {mass}"))?;
        let direct = ch_direct(&inputs, g, d.max(1)).map_err(err)?;
        let nfact = BigRat::from_integer((1..=n).product::<u32>().into());
        let series = direct.rk()[n as usize].scaled(&nfact);
        let wick = wick_sum(g, n, &symbolic_weights(g, n)).map_err(err)?;
        expect(series == wick, || format!("({g},{n}): pipeline {series}, graphs {wick}"))?;
    }
    Ok(())
}

fn symbolic(g: u32, min_n: u32, bound: u32) -> SymSeries<WeightPoly> {
    let mut s = SymSeries::zero(bound);
    let mut fact = BigRat::from_integer(1.into());
    for n in 1..=bound {
        fact *= BigRat::from_integer(n.into());
        if n >= min_n {
            s.add_term(Partition::new(vec![1; n as usize]), WeightPoly::var(g, n).scaled(&fact.recip()));
        }
    }
    if min_n == 0 {
        s.add_term(Partition::empty(), WeightPoly::var(g, 0));
    }
    s
}

fn critical(d: u32) -> Check {
    let a1 = SymSeries::zero(d + 1);
    let r = critical_residual(&ch0(d + 3), &a1, d, 2).map_err(err)?;
    expect(r.is_empty(), || format!("{} nonzero residual components", r.len()))
}

pub fn run(degree: u32) -> Outcome {
    let d = degree.max(1);
    let gd = |cap: u32| d.min(cap);
    let checks: Vec<(String, Box<dyn Fn() -> Check>)> = vec![
        (format!("Exp/Log roundtrip on ch0 (degree {d})"), Box::new(move || exp_log(d))),
        (format!("plethystic inverse of c1 (degree {d})"), Box::new(move || inverse(d))),
        (format!("Legendre identity and involution (degree {})", d.max(2)), Box::new(move || legendre(d.max(2)))),
        (format!("b0 closed = direct (degree {d})"), Box::new(move || paths(0, d))),
        (format!("b1 closed = direct (degree {})", gd(6)), Box::new(move || paths(1, gd(6)))),
        (format!("b2 closed = direct (degree {})", gd(4)), Box::new(move || paths(2, gd(4)))),
        (format!("tree oracle = b0 fixed counts (n <= {})", gd(6)), Box::new(move || trees(gd(6)))),
        (format!("graph sums = rank specialization (degree {})", gd(4)), Box::new(move || graphs(gd(4)))),
        (format!("critical-point residual (degree {})", gd(6)), Box::new(move || critical(gd(6)))),
    ];
    let mut failed = 0;
    for (name, f) in &checks {
        match f() {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed == 0 {
        println!("all {} checks passed", checks.len());
        Ok(())
    } else {
        Err(Failure::Inconsistent(format!("{failed} of {} checks failed", checks.len())))
    }
}
