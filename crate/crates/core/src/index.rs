//! Exponent vectors and the column ordering that labels Jacobian rows and
//! columns.
//!
//! Labels are sorted by ascending total degree. Inside one degree, `a`
//! precedes `b` when the rightmost nonzero entry of `a - b` is negative, so
//! for two variables the list reads `x1, x2, x1^2, x1*x2, x2^2, ...` and
//! for four variables the quadratic block is
//! `x1^2, x1*x2, x2^2, x1*x3, x2*x3, x3^2, x1*x4, x2*x4, x3*x4, x4^2`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Exponent vector `(a_1, ..., a_s)`.
///
/// `Ord` is the column order described in the module docs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(vars: usize) -> Self {
        MultiIndex(vec![0; vars])
    }

    /// The unit vector `e_var` (0-based variable position).
    pub fn unit(vars: usize, var: usize) -> Self {
        let mut e = vec![0; vars];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        debug_assert_eq!(self.vars(), other.vars());
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// `self - other` when `self` dominates `other`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !self.dominates(other) {
            return None;
        }
        Some(MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.vars(), other.vars());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Swap two coordinates.
    pub fn swapped(&self, i: usize, j: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e.swap(i, j);
        MultiIndex(e)
    }

    /// Compare under graded reverse lexicographic order (`x1 > x2 > ... > xs`).
    pub fn cmp_grevlex(&self, other: &MultiIndex) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    // the smaller exponent in the last differing slot wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return a.cmp(b);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for MultiIndex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// All exponent vectors in `vars` variables with `lo <= degree <= hi`, in
/// column order.
pub fn enumerate_indices(vars: usize, lo: u32, hi: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for d in lo..=hi {
        let mut block = Vec::new();
        let mut current = vec![0u32; vars];
        compositions(&mut current, 0, d, &mut block);
        block.sort();
        out.extend(block);
    }
    out
}

fn compositions(current: &mut Vec<u32>, slot: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if slot + 1 >= current.len() {
        if let Some(last) = current.last_mut() {
            *last = remaining;
            out.push(MultiIndex(current.clone()));
        } else if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    for e in 0..=remaining {
        current[slot] = e;
        compositions(current, slot + 1, remaining - e, out);
    }
    current[slot] = 0;
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Size constants of an order-`n` Jacobian in `s` variables with `r`
/// generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DimensionSet {
    pub s: usize,
    pub n: u32,
    pub r: usize,
    /// `N = binom(s+n, s)`, monomials of degree at most `n`.
    #[cfg_attr(feature = "serde", serde(rename = "N"))]
    pub big_n: usize,
    /// `M = binom(s+n-1, s)`, shifts `beta` with `|beta| <= n-1`.
    #[cfg_attr(feature = "serde", serde(rename = "M"))]
    pub big_m: usize,
    /// `L = binom(s-1+n, s-1)`; `L - 1` is the rank of the differentials at a
    /// smooth point.
    #[cfg_attr(feature = "serde", serde(rename = "L"))]
    pub big_l: usize,
}

impl DimensionSet {
    pub fn new(s: usize, n: u32, r: usize) -> Self {
        let (s64, n64) = (s as u64, n as u64);
        DimensionSet {
            s,
            n,
            r,
            big_n: binomial(s64 + n64, s64) as usize,
            big_m: binomial(s64 + n64 - 1, s64) as usize,
            big_l: if s == 0 { 0 } else { binomial(s64 - 1 + n64, s64 - 1) as usize },
        }
    }

    /// Rank of the free module the differentials are a quotient of, `N - 1`.
    pub fn free_rank(&self) -> usize {
        self.big_n - 1
    }

    pub fn rows(&self) -> usize {
        self.r * self.big_m
    }

    pub fn column_labels(&self) -> Vec<MultiIndex> {
        enumerate_indices(self.s, 1, self.n)
    }

    pub fn shift_labels(&self) -> Vec<MultiIndex> {
        enumerate_indices(self.s, 0, self.n - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn two_variable_labels() {
        assert_eq!(
            enumerate_indices(2, 1, 2),
            [mi(&[1, 0]), mi(&[0, 1]), mi(&[2, 0]), mi(&[1, 1]), mi(&[0, 2])]
        );
        assert_eq!(enumerate_indices(2, 0, 0), [mi(&[0, 0])]);
    }

    #[test]
    fn four_variable_quadratic_block() {
        let labels = enumerate_indices(4, 1, 2);
        assert_eq!(labels.len(), 14);
        let expected = [
            [2, 0, 0, 0],
            [1, 1, 0, 0],
            [0, 2, 0, 0],
            [1, 0, 1, 0],
            [0, 1, 1, 0],
            [0, 0, 2, 0],
            [1, 0, 0, 1],
            [0, 1, 0, 1],
            [0, 0, 1, 1],
            [0, 0, 0, 2],
        ];
        for (got, want) in labels[4..].iter().zip(expected) {
            assert_eq!(got.exponents(), want);
        }
    }

    #[test]
    fn grevlex_against_column_order() {
        // inside one degree the two orders are mirror images
        let block = enumerate_indices(3, 3, 3);
        for w in block.windows(2) {
            assert_eq!(w[0].cmp_grevlex(&w[1]), Ordering::Greater);
        }
        assert_eq!(mi(&[0, 0, 1]).cmp_grevlex(&mi(&[2, 0, 0])), Ordering::Less);
    }

    #[test]
    fn counts_and_dimension_identity() {
        for s in 1..=6usize {
            for n in 1..=6u32 {
                let d = DimensionSet::new(s, n, 1);
                assert_eq!(enumerate_indices(s, 1, n).len(), d.big_n - 1);
                assert_eq!(enumerate_indices(s, 0, n - 1).len(), d.big_m);
                assert_eq!(d.big_n - 1 - d.big_m, d.big_l - 1);
            }
        }
        let cusp = DimensionSet::new(2, 2, 1);
        assert_eq!((cusp.big_n, cusp.big_m, cusp.big_l), (6, 3, 3));
    }

    #[test]
    fn order_is_total_and_strict() {
        let all = enumerate_indices(3, 0, 4);
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                assert_eq!(a.cmp(b), i.cmp(&j));
            }
        }
    }
}
