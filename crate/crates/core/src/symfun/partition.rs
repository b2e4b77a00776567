use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::arith::factorial;

/// Integer partition, stored as parts in non-increasing order.
///
/// Ordered by weight first, then lexicographically by parts, so that maps
/// keyed by partitions iterate degree by degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Build from parts in any order. Zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Build from `(part, multiplicity)` pairs.
    pub fn from_mults(mults: &[(u32, u32)]) -> Self {
        let mut parts = Vec::new();
        for &(i, m) in mults {
            parts.extend(std::iter::repeat_n(i, m as usize));
        }
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity `ρ(i)`.
    pub fn mult(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }

    /// `(part, multiplicity)` pairs in decreasing part order.
    pub fn mults(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `z_ρ = ∏ i^{ρ(i)} ρ(i)!`, the centralizer order.
    pub fn z(&self) -> BigInt {
        self.mults().into_iter().fold(BigInt::one(), |acc, (i, m)| {
            acc * BigInt::from(i).pow(m) * factorial(m)
        })
    }

    /// Multiply every part by `k`.
    pub fn scaled(&self, k: u32) -> Partition {
        Partition { parts: self.parts.iter().map(|p| p * k).collect() }
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            if self.parts[i] >= other.parts[j] {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        parts.extend_from_slice(&self.parts[i..]);
        parts.extend_from_slice(&other.parts[j..]);
        Partition { parts }
    }

    pub fn with_part(&self, m: u32) -> Partition {
        self.union(&Partition { parts: vec![m] })
    }

    /// Remove one copy of part `m`, if present.
    pub fn without_part(&self, m: u32) -> Option<Partition> {
        let idx = self.parts.iter().position(|&p| p == m)?;
        let mut parts = self.parts.clone();
        parts.remove(idx);
        Some(Partition { parts })
    }

    /// Largest part, or 0 for the empty partition.
    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Smallest part, or 0 for the empty partition.
    pub fn smallest(&self) -> u32 {
        self.parts.last().copied().unwrap_or(0)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Vec<u32>> for Partition {
    fn from(parts: Vec<u32>) -> Self {
        Partition::new(parts)
    }
}

impl From<&[u32]> for Partition {
    fn from(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec())
    }
}

/// All partitions of `n`, in reverse lexicographic order (`[n]` first).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight at most `n`, ordered by weight.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_values() {
        assert_eq!(Partition::new(vec![2, 1, 1]).z(), BigInt::from(4));
        assert_eq!(Partition::new(vec![3]).z(), BigInt::from(3));
        assert_eq!(Partition::new(vec![1, 1, 1]).z(), BigInt::from(6));
        assert_eq!(Partition::empty().z(), BigInt::from(1));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..8 {
            let total = partitions_of(n)
                .iter()
                .fold(num_rational::BigRational::from_integer(0.into()), |acc, p| {
                    acc + num_rational::BigRational::new(1.into(), p.z())
                });
            assert_eq!(total, num_rational::BigRational::from_integer(1.into()));
        }
    }

    #[test]
    fn multiset_ops() {
        let a = Partition::new(vec![1, 3, 1]);
        assert_eq!(a.parts(), &[3, 1, 1]);
        assert_eq!(a.mult(1), 2);
        assert_eq!(a.union(&Partition::new(vec![2])).parts(), &[3, 2, 1, 1]);
        assert_eq!(a.without_part(1).unwrap().parts(), &[3, 1]);
        assert!(a.without_part(2).is_none());
        assert_eq!(a.scaled(2).parts(), &[6, 2, 2]);
        assert!(Partition::new(vec![5]) > Partition::new(vec![2, 2]));
    }
}
