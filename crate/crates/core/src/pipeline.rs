//! The characteristics `b_g = ch_g(MV)` for `g ≤ 2`, computed two ways:
//! through closed formulas in the input characteristics, and directly as
//! `Log(exp(Δ) Exp(ħ⁻¹a₀ + a₁ + ħa₂))`.

use num_rational::BigRational;

use crate::algebra::arith::{rat, totient};
use crate::algebra::{Coeff, RatFunc};
use crate::error::{Error, Result};
use crate::genus0::ch0;
use crate::hbar::HbarSeries;
use crate::symfun::{ss_geom, ss_log1m, ss_pleth_inverse, ss_plethysm, SymSeries};

/// Input characteristics `a_g = ch_g(V)` for `g = 0, 1, 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct InputCharacteristics<C: Coeff = RatFunc> {
    pub a0: SymSeries<C>,
    pub a1: SymSeries<C>,
    pub a2: SymSeries<C>,
}

impl<C: Coeff> InputCharacteristics<C> {
    /// Checks stability: `a₀` starts in degree 3, `a₁` in degree 1.
    pub fn new(a0: SymSeries<C>, a1: SymSeries<C>, a2: SymSeries<C>) -> Result<Self> {
        check_valuation(&a0, 0, 3)?;
        check_valuation(&a1, 1, 1)?;
        Ok(InputCharacteristics { a0, a1, a2 })
    }
}

impl InputCharacteristics<RatFunc> {
    /// `a₀ = ch0` to degree `d`, `a₁ = a₂ = 0`.
    pub fn geometric(d: u32) -> Self {
        InputCharacteristics { a0: ch0(d), a1: SymSeries::zero(d), a2: SymSeries::zero(d) }
    }
}

fn check_valuation<C: Coeff>(f: &SymSeries<C>, g: u32, min: u32) -> Result<()> {
    match f.valuation() {
        Some(v) if v < min => Err(Error::UnstableInput { g, n: v }),
        _ => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Closed,
    Direct,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputCharacteristics<C: Coeff = RatFunc> {
    pub b0: SymSeries<C>,
    pub b1: SymSeries<C>,
    pub b2: SymSeries<C>,
    pub provenance: Provenance,
}

fn need<C: Coeff>(f: &SymSeries<C>, b: u32) -> Result<SymSeries<C>> {
    if f.bound() < b {
        Err(Error::BeyondBound { requested: b, bound: f.bound() })
    } else {
        Ok(f.truncated(b))
    }
}

fn at<C: Coeff>(f: &SymSeries<C>, d: u32) -> Result<SymSeries<C>> {
    need(f, d)
}

fn half<C: Coeff>(f: &SymSeries<C>) -> SymSeries<C> {
    f.scale(&rat(1, 2))
}

fn one<C: Coeff>(d: u32) -> SymSeries<C> {
    SymSeries::one(d)
}

/// `c̄ = (p₁ - ∂a₀/∂p₁)^{-1}`, to degree `d ≥ 1`; `a₀` must reach `d + 1`.
fn cbar<C: Coeff>(a0: &SymSeries<C>, d: u32) -> Result<SymSeries<C>> {
    let a0 = need(a0, d + 1)?;
    let f = SymSeries::p(1, d).sub(&a0.derivative(1)?);
    ss_pleth_inverse(&f)
}

/// `f ∘ c̄` to degree `d`; in degree 0 only the constant term survives.
fn compose<C: Coeff>(f: &SymSeries<C>, cbar: Option<&SymSeries<C>>, d: u32) -> Result<SymSeries<C>> {
    match cbar {
        None => Ok(SymSeries::constant(f.constant_term(), 0)),
        Some(c) => at(&ss_plethysm(&at(f, d)?, c)?, d),
    }
}

fn cbar_opt<C: Coeff>(a0: &SymSeries<C>, d: u32) -> Result<Option<SymSeries<C>>> {
    if d == 0 {
        Ok(None)
    } else {
        cbar(a0, d).map(Some)
    }
}

/// Genus 0: `b₀ = -½(c̄ - p₁)² - ½p₂ + ½ψ₂(c̄) + a₀ ∘ c̄`. Needs `a₀` to `d + 1`.
pub fn b0_closed<C: Coeff>(a0: &SymSeries<C>, d: u32) -> Result<SymSeries<C>> {
    let a0 = need(a0, d + 1)?;
    if d == 0 {
        return Ok(SymSeries::zero(0));
    }
    let c = cbar(&a0, d)?;
    let shift = c.sub(&SymSeries::p(1, d));
    let mut out = half(&shift.mul(&shift)).neg();
    out = out.sub(&half(&SymSeries::p(2, d)));
    out = out.add(&half(&c.adams(2)));
    out = out.add(&ss_plethysm(&a0, &c)?);
    at(&out, d)
}

/// Derivatives of the inputs that appear in the genus-1 and genus-2 formulas,
/// all truncated to degree `d`.
struct Blocks<C: Coeff> {
    d: u32,
    a2nd: SymSeries<C>,
    u: SymSeries<C>,
    u1: SymSeries<C>,
    a11: SymSeries<C>,
    a3: SymSeries<C>,
    a02: SymSeries<C>,
    a001: SymSeries<C>,
    a0001: SymSeries<C>,
    a4: SymSeries<C>,
    a21: SymSeries<C>,
    b1: SymSeries<C>,
    b01: SymSeries<C>,
    b2: SymSeries<C>,
}

impl<C: Coeff> Blocks<C> {
    /// `a₀` to `d + 4`, `a₁` to `d + 2`.
    fn new(a0: &SymSeries<C>, a1: &SymSeries<C>, d: u32) -> Result<Self> {
        let a0 = need(a0, d + 4)?;
        let a1 = need(a1, d + 2)?;
        let da = |alpha: &[u32]| -> Result<SymSeries<C>> { at(&a0.derivative_multi(alpha)?, d) };
        let db = |alpha: &[u32]| -> Result<SymSeries<C>> { at(&a1.derivative_multi(alpha)?, d) };
        let u = da(&[0, 1])?;
        Ok(Blocks {
            d,
            a2nd: da(&[2])?,
            u1: one::<C>(d).add(&u.scale(&rat(2, 1))),
            u,
            a11: da(&[1, 1])?,
            a3: da(&[3])?,
            a02: da(&[0, 2])?,
            a001: da(&[0, 0, 1])?,
            a0001: da(&[0, 0, 0, 1])?,
            a4: da(&[4])?,
            a21: da(&[2, 1])?,
            b1: db(&[1])?,
            b01: db(&[0, 1])?,
            b2: db(&[2])?,
        })
    }

    /// `ψ_k f` truncated to degree `d`.
    fn psi(&self, f: &SymSeries<C>, k: u32) -> SymSeries<C> {
        f.adams(k).truncated(self.d)
    }

    /// `G_k = 1/(1 - ψ_k(a₀^{(2)}))`.
    fn g(&self, k: u32) -> Result<SymSeries<C>> {
        ss_geom(&self.psi(&self.a2nd, k))
    }

    fn v(&self, m: u32) -> Result<SymSeries<C>> {
        assert!(m >= 2 && m.is_multiple_of(2), "v_m needs m even");
        let num = one::<C>(self.d).add(&self.psi(&self.u, m / 2).scale(&rat(2, 1)));
        Ok(num.mul(&self.g(m)?).truncated(self.d))
    }

    fn w(&self, m: u32) -> Result<SymSeries<C>> {
        let d = self.d;
        let out = match m {
            1 => {
                let g1 = self.g(1)?;
                self.a11.mul(&self.u1).mul(&g1).mul(&self.g(2)?).add(&self.b1.mul(&g1))
            }
            2 => {
                let (g2, g4) = (self.g(2)?, self.g(4)?);
                let w1 = self.w(1)?;
                let first = self
                    .psi(&self.b1, 2)
                    .add(&self.b01.scale(&rat(2, 1)))
                    .add(&self.a11.mul(&w1).scale(&rat(2, 1)))
                    .mul(&g2);
                let second = self.a02.mul(&self.u1).mul(&g2.pow(2)).scale(&rat(2, 1));
                let third = half(&self.u1.pow(2).mul(&self.psi(&self.a3, 2)).mul(&g2.pow(3)));
                let fourth = one::<C>(d)
                    .add(&self.psi(&self.u, 2).scale(&rat(2, 1)))
                    .mul(&self.psi(&self.a11, 2))
                    .mul(&g2)
                    .mul(&g4);
                first.add(&second).add(&third).add(&fourth)
            }
            3 => self.a001.mul(&self.g(3)?).scale(&rat(3, 1)),
            4 => {
                let g4 = self.g(4)?;
                let first = self.u1.mul(&self.psi(&self.a11, 2)).mul(&self.g(2)?).mul(&g4).scale(&rat(2, 1));
                first.add(&self.a0001.mul(&g4).scale(&rat(4, 1)))
            }
            6 => self.psi(&self.a001, 2).mul(&self.g(6)?).scale(&rat(3, 1)),
            _ => SymSeries::zero(d),
        };
        Ok(out.truncated(d))
    }

    /// The genus-2 sum `b̄₂`, before composing with `c̄`.
    fn bbar2(&self, a2: &SymSeries<C>) -> Result<SymSeries<C>> {
        let d = self.d;
        let (g1, g2) = (self.g(1)?, self.g(2)?);
        let (v2, v4, v6) = (self.v(2)?, self.v(4)?, self.v(6)?);
        let w: Vec<SymSeries<C>> = (0..=12).map(|m| self.w(m)).collect::<Result<_>>()?;
        let t = |f: SymSeries<C>| f.truncated(d);

        let mut out = at(a2, d)?;

        // vertex of genus 1
        out = out.add(&w[1].mul(&self.b1));
        out = out.add(&v2.mul(&self.b01));
        out = out.add(&half(&v2.mul(&self.psi(&self.b1, 2))));

        // genus-0 vertices, m = 1
        out = out.add(&v2.mul(&w[1]).mul(&self.a11));
        out = out.add(&half(&v2.pow(2).mul(&self.a02)));
        out = out.add(&w[3].mul(&self.a001));
        out = out.add(&v4.mul(&self.a0001));

        // genus-0 vertices, m = 2
        out = out.add(&t(v2.pow(3).mul(&self.psi(&self.a3, 2)).scale(&rat(1, 12))));
        out = out.add(&half(&v2.mul(&v4).mul(&self.psi(&self.a11, 2))));
        out = out.add(&half(&v6.mul(&self.psi(&self.a001, 2))));

        for (m, vm) in [(2u32, &v2), (4, &v4), (6, &v6)] {
            let mi = m as usize;
            let wm = &w[mi];
            let inv = rat(1, m as i64);
            let a = vm.mul(wm).mul(&self.psi(&self.a2nd, m));
            let b = w[2 * mi].mul(&self.psi(&self.u, m));
            let c = wm.mul(&one::<C>(d).sub(vm));
            out = out.add(&t(a.add(&b).add(&c).scale(&inv)));
        }
        for m in [1u32, 3] {
            let mi = m as usize;
            let wm = &w[mi];
            let sq = wm.mul(wm);
            let a = w[2 * mi].mul(&self.psi(&self.u, m));
            let b = half(&sq.mul(&self.psi(&self.a2nd, m)));
            let c = half(&sq);
            out = out.add(&t(a.add(&b).sub(&c).scale(&rat(1, m as i64))));
        }

        // from the logarithmic terms of the Gaussian integral
        let inner = w[1]
            .mul(&self.a3)
            .add(&v2.mul(&self.a21))
            .mul(&g1)
            .add(&v2.mul(&self.psi(&self.a3, 2)).mul(&g2))
            .add(&self.b2.mul(&g1));
        out = out.add(&half(&inner));
        out = out.add(&self.a02.mul(&g2));

        // Gaussian moments
        out = out.add(&self.a11.pow(2).mul(&g1).mul(&g2));
        out = out.add(&t(self.a3.pow(2).mul(&g1.pow(3)).scale(&rat(5, 24))));
        out = out.add(&t(self.a4.mul(&g1.pow(2)).scale(&rat(1, 8))));
        Ok(out.truncated(d))
    }
}

/// `v_m = (1 + 2ψ_{m/2}(a₀^{(0,1)})) / (1 - ψ_m(a₀^{(2)}))` for even `m ≥ 2`,
/// to degree `d`. Needs `a₀` to `d + 2`.
pub fn vm<C: Coeff>(a0: &SymSeries<C>, m: u32, d: u32) -> Result<SymSeries<C>> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::Schema(format!("v_m needs an even m >= 2, got {m}")));
    }
    let a0 = need(a0, d + 2)?;
    let u = at(&a0.derivative(2)?, d)?;
    let a2nd = at(&a0.derivative_multi(&[2])?, d)?;
    let num = one::<C>(d).add(&u.adams(m / 2).truncated(d).scale(&rat(2, 1)));
    Ok(num.mul(&ss_geom(&a2nd.adams(m).truncated(d))?).truncated(d))
}

/// The series `w_m` of the genus-2 formula, to degree `d`; zero unless
/// `m ∈ {1, 2, 3, 4, 6}`. Needs `a₀` to `d + 4` and `a₁` to `d + 2`.
pub fn wm<C: Coeff>(a0: &SymSeries<C>, a1: &SymSeries<C>, m: u32, d: u32) -> Result<SymSeries<C>> {
    if !matches!(m, 1 | 2 | 3 | 4 | 6) {
        return Ok(SymSeries::zero(d));
    }
    Blocks::new(a0, a1, d)?.w(m)
}

/// Genus 1: `b₁ = {a₁ - ½Σ_m φ(m)/m log(1 - ψ_m a₀^{(2)}) + [u(u + 1) + ¼ψ₂a₀^{(2)}] / (1 - ψ₂a₀^{(2)})} ∘ c̄`
/// with `u = a₀^{(0,1)}`. Needs `a₀` to `d + 2`, `a₁` to `d`.
pub fn b1_closed<C: Coeff>(a0: &SymSeries<C>, a1: &SymSeries<C>, d: u32) -> Result<SymSeries<C>> {
    let a0 = need(a0, d + 2)?;
    let mut inner = need(a1, d)?;
    let a2nd = at(&a0.derivative(1)?.derivative(1)?, d)?;
    let u = at(&a0.derivative(2)?, d)?;
    for m in 1..=d {
        let l = ss_log1m(&a2nd.adams(m).truncated(d))?;
        let w = BigRational::new(totient(m).into(), (2 * m).into());
        inner = inner.sub(&l.scale(&w));
    }
    let psi2 = a2nd.adams(2).truncated(d);
    let num = u.mul(&u).add(&u).add(&psi2.scale(&rat(1, 4)));
    inner = inner.add(&num.mul(&ss_geom(&psi2)?).truncated(d));
    let c = cbar_opt(&a0, d)?;
    compose(&inner, c.as_ref(), d)
}

/// Genus 2: `b₂ = b̄₂ ∘ c̄`. Needs `a₀` to `d + 4`, `a₁` to `d + 2`, `a₂` to `d`.
pub fn b2_closed<C: Coeff>(a0: &SymSeries<C>, a1: &SymSeries<C>, a2: &SymSeries<C>, d: u32) -> Result<SymSeries<C>> {
    let blocks = Blocks::new(a0, a1, d)?;
    let bbar = blocks.bbar2(&need(a2, d)?)?;
    let c = cbar_opt(a0, d)?;
    compose(&bbar, c.as_ref(), d)
}

/// `b_g` as the `ħ^{g-1}` coefficient of `Log(exp(Δ) Exp(ħ⁻¹a₀ + a₁ + ħa₂))`,
/// truncated at weight `W = d + 2(g - 1)`. Needs `a₀` to `W + 2`, and for
/// the inputs that can contribute, `a₁` to `W` and `a₂` to `W - 2`.
pub fn ch_direct<C: Coeff>(inputs: &InputCharacteristics<C>, g: u32, d: u32) -> Result<SymSeries<C>> {
    if g > 2 {
        return Err(Error::UnstableInput { g, n: 0 });
    }
    let te = 2 * (g as i32 - 1);
    let w = d as i32 + te;
    if w < 1 {
        return Ok(SymSeries::zero(d));
    }
    let wu = w as u32;
    let mut f = HbarSeries::embed(&need(&inputs.a0, wu + 2)?, -2);
    if g >= 1 {
        f = f.add(&HbarSeries::embed(&need(&inputs.a1, wu)?, 0));
    }
    if g == 2 && wu >= 2 {
        f = f.add(&HbarSeries::embed(&need(&inputs.a2, wu - 2)?, 2));
    }
    let z = f.exp()?.exp_laplacian().log()?;
    z.extract(te)
}

/// `ch_direct` for all three genera.
pub fn direct_all<C: Coeff>(inputs: &InputCharacteristics<C>, d: u32) -> Result<OutputCharacteristics<C>> {
    Ok(OutputCharacteristics {
        b0: ch_direct(inputs, 0, d)?,
        b1: ch_direct(inputs, 1, d)?,
        b2: ch_direct(inputs, 2, d)?,
        provenance: Provenance::Direct,
    })
}

/// The closed formulas for all three genera.
pub fn closed_all<C: Coeff>(inputs: &InputCharacteristics<C>, d: u32) -> Result<OutputCharacteristics<C>> {
    Ok(OutputCharacteristics {
        b0: b0_closed(&inputs.a0, d)?,
        b1: b1_closed(&inputs.a0, &inputs.a1, d)?,
        b2: b2_closed(&inputs.a0, &inputs.a1, &inputs.a2, d)?,
        provenance: Provenance::Closed,
    })
}
