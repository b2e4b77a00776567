//! Brute-force stable graphs: enumeration with automorphism counts, the Wick
//! sum `Mv_{g,n}`, and the equivariant point count of `M̄_{0,n}` summed over
//! boundary strata.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use crate::algebra::arith::factorial;
use crate::algebra::{Coeff, RatFunc, WeightPoly};
use crate::error::{Error, Result};
use crate::genus0::ch0;
use crate::symfun::{Partition, SymSeries};

/// A connected graph with genus-labeled vertices and numbered legs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableGraph {
    /// Genus of each vertex.
    pub vertices: Vec<u32>,
    /// Unordered vertex pairs `(a, b)` with `a ≤ b`; `a = b` is a loop.
    pub edges: Vec<(usize, usize)>,
    /// `legs[i]` is the vertex carrying leg `i + 1`.
    pub legs: Vec<usize>,
}

impl StableGraph {
    /// Number of flags (half-edges and legs) at `v`.
    pub fn valence(&self, v: usize) -> u32 {
        let e: u32 = self.edges.iter().map(|&(a, b)| u32::from(a == v) + u32::from(b == v)).sum();
        e + self.legs.iter().filter(|&&l| l == v).count() as u32
    }

    pub fn genus(&self) -> u32 {
        let v = self.vertices.len() as i64;
        let e = self.edges.len() as i64;
        (self.vertices.iter().map(|&g| g as i64).sum::<i64>() + e - v + 1) as u32
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_stable(&self) -> bool {
        (0..self.vertices.len()).all(|v| 2 * self.vertices[v] as i64 - 2 + self.valence(v) as i64 > 0)
    }

    fn relabeled(&self, perm: &[usize]) -> StableGraph {
        let mut vertices = vec![0; self.vertices.len()];
        for (v, &g) in self.vertices.iter().enumerate() {
            vertices[perm[v]] = g;
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        StableGraph { vertices, edges, legs: self.legs.iter().map(|&l| perm[l]).collect() }
    }

    /// Minimal relabeling over all vertex orderings.
    pub fn canonical(&self) -> StableGraph {
        permutations(self.vertices.len())
            .into_iter()
            .map(|p| self.relabeled(&p))
            .min()
            .expect("at least one vertex")
    }

    /// Order of the automorphism group: vertex permutations fixing legs and
    /// genera and preserving edges, times permutations of parallel edges and
    /// flips of loops.
    pub fn automorphisms(&self) -> u64 {
        let mut me = self.clone();
        me.edges.sort_unstable();
        let vperms = permutations(self.vertices.len())
            .into_iter()
            .filter(|p| me.relabeled(p) == me)
            .count() as u64;
        let mut mult: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &e in &self.edges {
            *mult.entry(e).or_default() += 1;
        }
        let mut out = vperms;
        for (&(a, b), &k) in &mult {
            out *= u64::try_from(factorial(k)).expect("small");
            if a == b {
                out <<= k;
            }
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Multisets of size `k` drawn from `0..m`, as non-decreasing sequences.
fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Every function `0..n -> 0..m`.
fn assignments(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..m).map(move |v| {
                    let mut b = a.clone();
                    b.push(v);
                    b
                })
            })
            .collect();
    }
    out
}

/// Every connected stable graph of genus `g` with `n` legs, on labeled
/// vertices, with the genus vector restricted by `genus_ok`. Parallel edges
/// are recorded by repetition.
fn raw_graphs(g: u32, n: u32, genus_ok: impl Fn(&[u32]) -> bool) -> Vec<StableGraph> {
    let euler = 2 * g as i64 - 2 + n as i64;
    let mut out = Vec::new();
    for nv in 1..=euler as usize {
        let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|a| (a..nv).map(move |b| (a, b))).collect();
        for gens in assignments(nv, g as usize + 1) {
            let gens: Vec<u32> = gens.into_iter().map(|x| x as u32).collect();
            let sum: u32 = gens.iter().sum();
            if sum > g || !genus_ok(&gens) {
                continue;
            }
            let ne = (g - sum) as usize + nv - 1;
            for es in multisets(pairs.len(), ne) {
                let edges: Vec<(usize, usize)> = es.iter().map(|&i| pairs[i]).collect();
                let bare = StableGraph { vertices: gens.clone(), edges, legs: Vec::new() };
                if !bare.is_connected() {
                    continue;
                }
                for legs in assignments(n as usize, nv) {
                    let gr = StableGraph { legs, ..bare.clone() };
                    if gr.is_stable() {
                        out.push(gr);
                    }
                }
            }
        }
    }
    out
}

fn check_stable_range(g: u32, n: u32) -> Result<()> {
    if 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::UnstableInput { g, n });
    }
    Ok(())
}

/// One representative per isomorphism class of stable graphs of genus `g`
/// with `n` legs, in canonical form and sorted, each with `|Aut|`.
pub fn enumerate_stable(g: u32, n: u32) -> Result<Vec<(StableGraph, u64)>> {
    check_stable_range(g, n)?;
    let raw = raw_graphs(g, n, |gens| gens.windows(2).all(|w| w[0] >= w[1]));
    let classes: BTreeSet<StableGraph> = raw.iter().map(StableGraph::canonical).collect();
    Ok(classes.into_iter().map(|gr| {
        let a = gr.automorphisms();
        (gr, a)
    }).collect())
}

/// `Σ_G 1/|Aut G|` computed from vertex-labeled graphs: each labeled graph
/// has weight `1/(∏ mult! · 2^{loops})`, and the total is divided by `V!`.
pub fn labeled_mass(g: u32, n: u32) -> Result<BigRational> {
    check_stable_range(g, n)?;
    let mut total = BigRational::from_integer(0.into());
    for gr in raw_graphs(g, n, |_| true) {
        let mut mult: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &e in &gr.edges {
            *mult.entry(e).or_default() += 1;
        }
        let mut w = BigRational::from_integer(factorial(gr.vertices.len() as u32));
        for (&(a, b), &k) in &mult {
            w *= BigRational::from_integer(factorial(k));
            if a == b {
                w *= BigRational::from_integer(num_bigint::BigInt::from(1u64 << k));
            }
        }
        total += w.recip();
    }
    Ok(total)
}

/// `Mv_{g,n} = Σ_G 1/|Aut G| ∏_v v_{g(v), n(v)}`.
pub fn wick_sum<C: Coeff>(g: u32, n: u32, weights: &BTreeMap<(u32, u32), C>) -> Result<C> {
    let mut total = C::zero();
    for (gr, aut) in enumerate_stable(g, n)? {
        let mut term = C::from_rational(BigRational::new(1.into(), aut.into()));
        for v in 0..gr.vertices.len() {
            let key = (gr.vertices[v], gr.valence(v));
            let w = weights.get(&key).ok_or(Error::MissingWeight { g: key.0, n: key.1 })?;
            term = term.times(w);
        }
        total.add_assign_ref(&term);
    }
    Ok(total)
}

/// Symbolic weights `v_{g',n'}` for every stable `(g', n')` with
/// `2g' - 2 + n' ≤ 2g - 2 + n`.
pub fn symbolic_weights(g: u32, n: u32) -> BTreeMap<(u32, u32), WeightPoly> {
    let euler = 2 * g as i64 - 2 + n as i64;
    let mut out = BTreeMap::new();
    for gg in 0..=g {
        for nn in 0..=(euler + 2 - 2 * gg as i64).max(0) as u32 {
            if 2 * gg as i64 - 2 + nn as i64 > 0 {
                out.insert((gg, nn), WeightPoly::var(gg, nn));
            }
        }
    }
    out
}

/// Largest `n` accepted by [`tree_oracle_equivariant`].
pub const TREE_ORACLE_MAX_N: u32 = 6;

/// `|M̄_{0,n}^{σF}|` for `σ` of cycle type `sigma`, summed over the
/// σ-invariant boundary strata. A vertex orbit of length `ℓ` contributes the
/// count for `F^ℓ` at the cycle type of `σ^ℓ` on that vertex's flags, read
/// from `counts` (the genus-0 generating series) with `q -> q^ℓ`.
pub fn tree_oracle_equivariant_with(n: u32, sigma: &Partition, counts: &SymSeries) -> Result<RatFunc> {
    if n > TREE_ORACLE_MAX_N {
        return Err(Error::OracleScopeExceeded { n, max: TREE_ORACLE_MAX_N });
    }
    if sigma.weight() != n {
        return Err(Error::Schema(format!("cycle type {sigma} is not a partition of {n}")));
    }
    check_stable_range(0, n)?;
    // σ as a permutation of 0..n, cycles taken in order of `sigma.parts()`
    let mut perm = vec![0usize; n as usize];
    let mut start = 0usize;
    for &c in sigma.parts() {
        let c = c as usize;
        for i in 0..c {
            perm[start + i] = start + (i + 1) % c;
        }
        start += c;
    }
    let mut total = RatFunc::zero();
    for (tree, _) in enumerate_stable(0, n)? {
        // τ(tree) = moved means τ(legs[i]) = legs[σ(i)]
        let moved = StableGraph { legs: (0..n as usize).map(|i| tree.legs[perm[i]]).collect(), ..tree.clone() };
        let Some(tau) = permutations(tree.vertices.len()).into_iter().find(|p| tree.relabeled(p) == moved) else {
            continue;
        };
        total = total.add_ref(&strata_count(&tree, &perm, &tau, counts)?);
    }
    Ok(total)
}

/// Flags at a vertex: legs by label, half-edges by the neighbouring vertex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Flag {
    Leg(usize),
    Half(usize, usize),
}

fn strata_count(tree: &StableGraph, sigma: &[usize], tau: &[usize], counts: &SymSeries) -> Result<RatFunc> {
    let nv = tree.vertices.len();
    let flags: Vec<Vec<Flag>> = (0..nv)
        .map(|v| {
            let mut f: Vec<Flag> = (0..tree.legs.len()).filter(|&i| tree.legs[i] == v).map(Flag::Leg).collect();
            for &(a, b) in &tree.edges {
                if a == v {
                    f.push(Flag::Half(a, b));
                }
                if b == v {
                    f.push(Flag::Half(b, a));
                }
            }
            f
        })
        .collect();
    let act = |f: Flag| match f {
        Flag::Leg(i) => Flag::Leg(sigma[i]),
        Flag::Half(a, b) => Flag::Half(tau[a], tau[b]),
    };
    let mut seen = vec![false; nv];
    let mut out = RatFunc::one();
    for v in 0..nv {
        if seen[v] {
            continue;
        }
        let mut ell = 0;
        let mut w = v;
        loop {
            seen[w] = true;
            w = tau[w];
            ell += 1;
            if w == v {
                break;
            }
        }
        // cycle type of σ^ℓ on the flags of v
        let fl = &flags[v];
        let mut done = vec![false; fl.len()];
        let mut cycle_type = Vec::new();
        for i in 0..fl.len() {
            if done[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            loop {
                done[j] = true;
                len += 1;
                let mut f = fl[j];
                for _ in 0..ell {
                    f = act(f);
                }
                j = fl.iter().position(|&x| x == f).expect("σ^ℓ preserves the flags of v");
                if j == i {
                    break;
                }
            }
            cycle_type.push(len);
        }
        let c = counts.fixed_count(&Partition::new(cycle_type))?;
        out = out.mul_ref(&c.adams_q(ell));
    }
    Ok(out)
}

/// [`tree_oracle_equivariant_with`] using the genus-0 series from [`ch0`].
pub fn tree_oracle_equivariant(n: u32, sigma: &Partition) -> Result<RatFunc> {
    tree_oracle_equivariant_with(n, sigma, &ch0(n.clamp(3, TREE_ORACLE_MAX_N)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith::rat;
    use crate::algebra::QPoly;
    use crate::symfun::partitions_of;

    fn rf(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(QPoly::from_int_coeffs(c))
    }

    #[test]
    fn small_enumerations() {
        let g03 = enumerate_stable(0, 3).unwrap();
        assert_eq!(g03.len(), 1);
        assert_eq!(g03[0].1, 1);
        let g11 = enumerate_stable(1, 1).unwrap();
        let mut auts: Vec<u64> = g11.iter().map(|x| x.1).collect();
        auts.sort_unstable();
        assert_eq!(auts, vec![1, 2]);
        let g04 = enumerate_stable(0, 4).unwrap();
        assert_eq!(g04.len(), 4);
        assert!(g04.iter().all(|x| x.1 == 1));
        assert_eq!(enumerate_stable(0, 5).unwrap().len(), 26);
        assert_eq!(enumerate_stable(1, 0), Err(Error::UnstableInput { g: 1, n: 0 }));
    }

    #[test]
    fn mass_matches_labeled_count() {
        for (g, n) in [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (2, 0)] {
            let mass: BigRational =
                enumerate_stable(g, n).unwrap().iter().map(|(_, a)| BigRational::new(1.into(), (*a).into())).sum();
            assert_eq!(mass, labeled_mass(g, n).unwrap(), "({g},{n})");
        }
    }

    #[test]
    fn wick_examples() {
        let w = symbolic_weights(1, 1);
        let v = |g, n| WeightPoly::var(g, n);
        assert_eq!(wick_sum(1, 1, &w).unwrap(), v(1, 1).plus(&v(0, 3).scaled(&rat(1, 2))));
        let w = symbolic_weights(0, 4);
        assert_eq!(wick_sum(0, 4, &w).unwrap(), v(0, 4).plus(&v(0, 3).times(&v(0, 3)).scaled(&rat(3, 1))));
        assert_eq!(wick_sum(0, 3, &symbolic_weights(0, 3)).unwrap(), v(0, 3));
        assert_eq!(wick_sum(0, 4, &BTreeMap::<(u32, u32), WeightPoly>::new()), Err(Error::MissingWeight { g: 0, n: 4 }));
    }

    #[test]
    fn tree_oracle_examples() {
        assert_eq!(tree_oracle_equivariant(4, &Partition::new(vec![1; 4])).unwrap(), rf(&[1, 1]));
        assert_eq!(tree_oracle_equivariant(5, &Partition::new(vec![1; 5])).unwrap(), rf(&[1, 5, 1]));
        for rho in partitions_of(3) {
            assert_eq!(tree_oracle_equivariant(3, &rho).unwrap(), RatFunc::one());
        }
        assert!(matches!(tree_oracle_equivariant(7, &Partition::new(vec![7])), Err(Error::OracleScopeExceeded { .. })));
    }
}
