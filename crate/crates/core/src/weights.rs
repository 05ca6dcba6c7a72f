//! Integer kernels over bitmask subsets.
//!
//! Lengths are scaled by the common denominator so that the exponential loops
//! run on machine integers. When the scaled perimeter would not fit in an
//! `i64` with headroom the same kernels run on `BigInt`.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::{common_denominator, Rational};

pub(crate) trait Weight: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> {}
impl<T: Clone + Ord + Zero + Add<Output = T> + Sub<Output = T>> Weight for T {}

pub(crate) enum Weights {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl Weights {
    pub fn of(values: &[Rational]) -> Weights {
        let den = common_denominator(values);
        let scaled: Vec<BigInt> = values
            .iter()
            .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let total: BigInt = scaled.iter().map(Signed::abs).sum();
        match total.to_i64() {
            Some(t) if t < i64::MAX / 4 => {
                Weights::Small(scaled.iter().map(|x| x.to_i64().unwrap()).collect())
            }
            _ => Weights::Big(scaled),
        }
    }
}

/// True if some subset containing item 0 sums to exactly half the total,
/// i.e. some sign vector annihilates the weights.
pub(crate) fn has_balanced_signs<W: Weight>(w: &[W]) -> bool {
    let n = w.len();
    if n == 0 {
        return true;
    }
    let total = w.iter().cloned().fold(W::zero(), |a, b| a + b);
    let mut sum = w[0].clone();
    if sum.clone() + sum.clone() == total {
        return true;
    }
    // Gray code over the remaining n - 1 items.
    let mut inside = vec![false; n];
    let steps: u64 = 1u64 << (n - 1);
    for i in 1..steps {
        let k = i.trailing_zeros() as usize + 1;
        if inside[k] {
            sum = sum - w[k].clone();
        } else {
            sum = sum + w[k].clone();
        }
        inside[k] = !inside[k];
        if sum.clone() + sum.clone() == total {
            return true;
        }
    }
    false
}

/// For every mask over `items` (each item given as `(sum, max)` of its edges),
/// whether the union of the selected items is lopsided: its largest edge
/// strictly exceeds the sum of all the others.
#[allow(clippy::needless_range_loop)] // masks index several tables at once
pub(crate) fn lopsided_table<W: Weight>(items: &[(W, W)]) -> Vec<bool> {
    let k = items.len();
    let size = 1usize << k;
    let mut sums: Vec<W> = Vec::with_capacity(size);
    let mut maxes: Vec<W> = Vec::with_capacity(size);
    let mut out = vec![false; size];
    sums.push(W::zero());
    maxes.push(W::zero());
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let s = sums[rest].clone() + items[low].0.clone();
        let m = if items[low].1 > maxes[rest] {
            items[low].1.clone()
        } else {
            maxes[rest].clone()
        };
        out[mask] = m.clone() > s.clone() - m.clone();
        sums.push(s);
        maxes.push(m);
    }
    out
}

/// Lopsided table over arbitrary groups of rational-weighted edges.
pub(crate) fn lopsided_table_for_groups(lengths: &[Rational], groups: &[Vec<usize>]) -> Vec<bool> {
    fn items<W: Weight>(w: &[W], groups: &[Vec<usize>]) -> Vec<(W, W)> {
        groups
            .iter()
            .map(|g| {
                let s = g.iter().fold(W::zero(), |a, &i| a + w[i].clone());
                let m = g.iter().map(|&i| w[i].clone()).max().unwrap_or_else(W::zero);
                (s, m)
            })
            .collect()
    }
    match Weights::of(lengths) {
        Weights::Small(w) => lopsided_table(&items(&w, groups)),
        Weights::Big(w) => lopsided_table(&items(&w, groups)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_signs_small() {
        assert!(has_balanced_signs(&[1i64, 1, 2, 2]));
        assert!(!has_balanced_signs(&[1i64, 1, 1, 2]));
        assert!(!has_balanced_signs(&[2i64, 2, 2, 2, 3]));
        assert!(has_balanced_signs(&[3i64, 1, 2]));
    }

    #[test]
    fn big_path_agrees_with_small() {
        let w = [3i64, 5, 7, 9, 11, 2];
        let big: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(has_balanced_signs(&w), has_balanced_signs(&big));
        let small_items: Vec<(i64, i64)> = w.iter().map(|&x| (x, x)).collect();
        let big_items: Vec<(BigInt, BigInt)> = big.iter().map(|x| (x.clone(), x.clone())).collect();
        assert_eq!(lopsided_table(&small_items), lopsided_table(&big_items));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn lopsided_table_matches_definition() {
        let w = [1i64, 1, 2, 5];
        let items: Vec<(i64, i64)> = w.iter().map(|&x| (x, x)).collect();
        let table = lopsided_table(&items);
        for mask in 1..16usize {
            let members: Vec<i64> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| w[i]).collect();
            let s: i64 = members.iter().sum();
            let m = *members.iter().max().unwrap();
            assert_eq!(table[mask], m > s - m, "mask {mask:b}");
        }
        assert!(!table[0]);
    }
}
