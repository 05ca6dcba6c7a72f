//! Minimal lopsided partitions, maximal bending tori and their enumeration.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;

use crate::bending::{fill, moment_image, BendingSet, Interval, PartitionOfE};
use crate::error::{Error, Result};
use crate::model::{EdgeSet, LengthFunction, Limits, PolygonSpace};
use crate::rational::Rational;
use crate::weights::lopsided_table_for_groups;

/// A minimum-size partition into lopsided blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPartition {
    pub count: usize,
    pub partition: PartitionOfE,
}

/// Minimum number of `ok` item-sets covering all `k` items, with a witness.
///
/// The state is the set of uncovered items; each step removes one `ok` set
/// containing the lowest uncovered item. Among optimal choices the numerically
/// smallest set wins, so singletons are preferred on ties.
fn min_cover(k: usize, ok: &[bool]) -> (usize, Vec<usize>) {
    let size = 1usize << k;
    let mut by_anchor: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (mask, &good) in ok.iter().enumerate().skip(1) {
        if good {
            by_anchor[mask.trailing_zeros() as usize].push(mask);
        }
    }
    let mut best = vec![u8::MAX; size];
    let mut choice = vec![0u32; size];
    best[0] = 0;
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let list = &by_anchor[low];
        let (mut b, mut c) = (u8::MAX, 0usize);
        if (list.len() as u64) < 1u64 << rest.count_ones() {
            for &block in list {
                if block & !mask == 0 {
                    let v = best[mask ^ block].saturating_add(1);
                    if v < b {
                        b = v;
                        c = block;
                    }
                }
            }
        } else {
            // descending submasks; `<=` keeps the smallest optimal block
            let mut s = rest;
            loop {
                let block = s | 1 << low;
                if ok[block] {
                    let v = best[mask ^ block].saturating_add(1);
                    if v <= b {
                        b = v;
                        c = block;
                    }
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & rest;
            }
        }
        best[mask] = b;
        choice[mask] = c as u32;
    }
    let mut blocks = Vec::new();
    let mut mask = size - 1;
    while mask != 0 {
        let c = choice[mask] as usize;
        blocks.push(c);
        mask ^= c;
    }
    (best[size - 1] as usize, blocks)
}

/// `N(lambda)`: fewest lopsided blocks partitioning the edges, with a witness.
pub fn min_lopsided_partition(space: &PolygonSpace) -> MinPartition {
    let singletons = PartitionOfE::singletons(space.len());
    min_coarser_partition(space, &singletons).expect("singletons are lopsided")
}

/// `N(lambda, I)`: fewest lopsided blocks in a partition coarser than `blocks`.
pub fn min_coarser_partition(space: &PolygonSpace, blocks: &PartitionOfE) -> Result<MinPartition> {
    if blocks.edge_count() != space.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} edges, the length function has {}",
            blocks.edge_count(),
            space.len()
        )));
    }
    for &b in blocks.blocks() {
        space.require_dominant_edge(b)?;
    }
    let groups: Vec<Vec<usize>> = blocks.blocks().iter().map(|b| b.indices().collect()).collect();
    let ok = lopsided_table_for_groups(space.lengths(), &groups);
    let (count, chosen) = min_cover(groups.len(), &ok);
    let merged: Vec<EdgeSet> = chosen
        .into_iter()
        .map(|items| {
            (0..groups.len())
                .filter(|g| items >> g & 1 == 1)
                .fold(EdgeSet::EMPTY, |acc, g| acc.union(blocks.blocks()[g]))
        })
        .collect();
    Ok(MinPartition {
        count,
        partition: PartitionOfE::new(space.len(), merged)?,
    })
}

/// Largest dimension of a bending torus: `|E| - max(3, N(lambda))`.
pub fn max_bending_dim(space: &PolygonSpace) -> usize {
    let n = min_lopsided_partition(space).count;
    space.len() - n.max(3)
}

/// Largest dimension `n(lambda, I)` of a bending torus containing the torus of
/// `set`, with a full bending set realising it.
pub fn max_containing_dim(space: &PolygonSpace, set: &BendingSet) -> Result<(usize, BendingSet)> {
    let coarse = min_coarser_partition(space, &set.maximal_elements())?;
    let mut family: Vec<EdgeSet> = coarse.partition.blocks().to_vec();
    family.extend(set.members().iter().copied());
    let witness = fill(space, &BendingSet::new(space, &family)?);
    Ok((space.len() - coarse.count.max(3), witness))
}

/// A common point of closed intervals: the largest left endpoint, when it
/// does not exceed any right endpoint.
pub fn common_point(intervals: &[Interval]) -> Option<Rational> {
    let lo = intervals.iter().map(|i| &i.lo).max()?;
    let hi = intervals.iter().map(|i| &i.hi).min()?;
    (lo <= hi).then(|| lo.clone())
}

/// Maximality of the bending torus of a full set. Below the top dimension
/// this holds iff the images of the maximal blocks share a point, which is
/// returned; top-dimensional tori are maximal for dimension reasons.
pub fn is_maximal_bending(space: &PolygonSpace, set: &BendingSet) -> Result<(bool, Option<Rational>)> {
    if !set.is_full() {
        return Err(Error::NotFull);
    }
    Ok(maximality_of_blocks(space, &set.maximal_elements()))
}

/// Maximality depends only on the maximal blocks of a full set.
fn maximality_of_blocks(space: &PolygonSpace, blocks: &PartitionOfE) -> (bool, Option<Rational>) {
    if blocks.len() <= 3 {
        return (true, None);
    }
    let images: Vec<Interval> = blocks
        .blocks()
        .iter()
        .map(|&b| moment_image(space, b).expect("blocks are proper subsets"))
        .collect();
    match common_point(&images) {
        Some(c) => (true, Some(c)),
        None => (false, None),
    }
}

/// Whether a bending torus is also a maximal Hamiltonian torus, judged from
/// its maximality and its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremB {
    /// Maximal bending torus of dimension at least `|E| - 5`: also a maximal
    /// Hamiltonian torus.
    MaximalHamiltonian,
    /// Not maximal, or too small for the statement to apply.
    NotApplicable,
}

pub fn theorem_b_status(space: &PolygonSpace, set: &BendingSet) -> TheoremB {
    match is_maximal_bending(space, set) {
        Ok((true, _)) if set.torus_dimension() + 5 >= space.len() => TheoremB::MaximalHamiltonian,
        _ => TheoremB::NotApplicable,
    }
}

/// Everything known about one bending torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusReport {
    pub bending_set: BendingSet,
    pub dimension: usize,
    pub is_full: bool,
    pub maximal_blocks: PartitionOfE,
    pub is_maximal_bending: bool,
    pub theorem_b: TheoremB,
    /// Common value of the maximal blocks' bending functions, when maximality
    /// is decided through it.
    pub common_value: Option<Rational>,
}

/// Builds the report. A bending set that is not full never spans a maximal
/// torus: its completion spans a strictly larger one.
pub fn torus_report(space: &PolygonSpace, set: &BendingSet) -> TorusReport {
    let is_full = set.is_full();
    let (maximal, common_value) = if is_full {
        maximality_of_blocks(space, &set.maximal_elements())
    } else {
        (false, None)
    };
    let dimension = set.torus_dimension();
    let theorem_b = if maximal && dimension + 5 >= space.len() {
        TheoremB::MaximalHamiltonian
    } else {
        TheoremB::NotApplicable
    };
    TorusReport {
        bending_set: set.clone(),
        dimension,
        is_full,
        maximal_blocks: set.maximal_elements(),
        is_maximal_bending: maximal,
        theorem_b,
        common_value,
    }
}

/// Lopsided tables and hierarchy counts shared by the enumerators.
struct Enumerator<'a> {
    lambda: &'a LengthFunction,
    lopsided: Vec<bool>,
    counts: HashMap<u64, u128>,
}

impl<'a> Enumerator<'a> {
    fn new(lambda: &'a LengthFunction) -> Self {
        let singles: Vec<Vec<usize>> = (0..lambda.len()).map(|i| vec![i]).collect();
        Enumerator {
            lambda,
            lopsided: lopsided_table_for_groups(lambda.lengths(), &singles),
            counts: HashMap::new(),
        }
    }

    fn is_lopsided(&self, set: EdgeSet) -> bool {
        self.lopsided[set.bits() as usize]
    }

    /// All partitions of the edges into lopsided blocks, each block anchored
    /// on the lowest uncovered edge.
    fn partitions(&self, max_blocks: Option<usize>) -> Vec<PartitionOfE> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.extend_partition(self.lambda.edges(), &mut stack, max_blocks, &mut out);
        out
    }

    fn extend_partition(
        &self,
        rest: EdgeSet,
        stack: &mut Vec<EdgeSet>,
        max_blocks: Option<usize>,
        out: &mut Vec<PartitionOfE>,
    ) {
        if rest.is_empty() {
            out.push(PartitionOfE::from_blocks_unchecked(self.lambda.len(), stack.clone()));
            return;
        }
        if max_blocks.is_some_and(|m| stack.len() >= m) {
            return;
        }
        let anchor = rest.min().unwrap();
        let others: Vec<usize> = rest.indices().skip(1).collect();
        for s in 0..1u64 << others.len() {
            let block = EdgeSet::from_indices(
                others
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| s >> k & 1 == 1)
                    .map(|(_, &i)| i),
            )
            .with(anchor);
            if self.is_lopsided(block) {
                stack.push(block);
                self.extend_partition(rest.difference(block), stack, max_blocks, out);
                stack.pop();
            }
        }
    }

    /// Splits of a block into two lopsided parts, the first holding the
    /// block's smallest edge.
    fn splits(&self, block: EdgeSet) -> Vec<(EdgeSet, EdgeSet)> {
        let anchor = block.min().unwrap();
        let others: Vec<usize> = block.indices().skip(1).collect();
        let mut out = Vec::new();
        // the all-ones pattern would leave the second part empty
        for s in 0..(1u64 << others.len()) - 1 {
            let first = EdgeSet::from_indices(
                others
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| s >> k & 1 == 1)
                    .map(|(_, &i)| i),
            )
            .with(anchor);
            let second = block.difference(first);
            if self.is_lopsided(first) && self.is_lopsided(second) {
                out.push((first, second));
            }
        }
        out
    }

    /// Number of binary hierarchies of lopsided sets with root `block`.
    fn count(&mut self, block: EdgeSet) -> u128 {
        if block.len() == 1 {
            return 1;
        }
        if let Some(&c) = self.counts.get(&block.bits()) {
            return c;
        }
        let mut total = 0u128;
        for (a, b) in self.splits(block) {
            total += self.count(a) * self.count(b);
        }
        self.counts.insert(block.bits(), total);
        total
    }

    /// The non-singleton members of every binary hierarchy rooted at `block`.
    fn hierarchies(&self, block: EdgeSet) -> Vec<Vec<EdgeSet>> {
        if block.len() == 1 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for (a, b) in self.splits(block) {
            let left = self.hierarchies(a);
            let right = self.hierarchies(b);
            for l in &left {
                for r in &right {
                    let mut members = Vec::with_capacity(l.len() + r.len() + 1);
                    members.push(block);
                    members.extend_from_slice(l);
                    members.extend_from_slice(r);
                    out.push(members);
                }
            }
        }
        out
    }

    /// Full bending sets whose maximal elements are exactly `partition`.
    fn full_sets_over(&self, partition: &PartitionOfE) -> impl Iterator<Item = BendingSet> {
        let n = self.lambda.len();
        let per_block: Vec<Vec<Vec<EdgeSet>>> = partition
            .blocks()
            .iter()
            .map(|&b| self.hierarchies(b))
            .collect();
        per_block.into_iter().multi_cartesian_product().map(move |choice| {
            let mut members: Vec<EdgeSet> = (0..n).map(EdgeSet::singleton).collect();
            members.extend(choice.into_iter().flatten());
            BendingSet::from_members_unchecked(n, members)
        })
    }
}

/// All partitions of the edges into lopsided blocks, optionally with at most
/// `max_blocks` blocks.
pub fn lopsided_partitions(lambda: &LengthFunction, max_blocks: Option<usize>) -> Vec<PartitionOfE> {
    Enumerator::new(lambda).partitions(max_blocks)
}

/// Every full bending set, optionally restricted to at most `max_blocks`
/// maximal elements.
pub fn full_bending_sets(lambda: &LengthFunction, max_blocks: Option<usize>) -> Vec<BendingSet> {
    let e = Enumerator::new(lambda);
    e.partitions(max_blocks)
        .iter()
        .flat_map(|p| e.full_sets_over(p).collect::<Vec<_>>())
        .collect()
}

/// Full bending sets spanning toric actions: at most three maximal elements.
pub fn toric_bending_sets(lambda: &LengthFunction) -> Vec<BendingSet> {
    full_bending_sets(lambda, Some(3))
}

/// Result of [`enumerate_maximal_tori`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalTori {
    /// Reports in canonical bending-set order, at most `limit` of them.
    pub reports: Vec<TorusReport>,
    /// Number of maximal full bending sets per torus dimension, counted
    /// exhaustively whatever the limit.
    pub dimension_counts: BTreeMap<usize, u128>,
    pub truncated: bool,
}

impl MaximalTori {
    /// Distinct dimensions of maximal bending tori, ascending.
    pub fn spectrum(&self) -> Vec<usize> {
        self.dimension_counts.keys().copied().collect()
    }

    pub fn total(&self) -> u128 {
        self.dimension_counts.values().sum()
    }
}

/// Sort key realising the canonical order of bending sets.
pub fn canonical_key(set: &BendingSet) -> Vec<Vec<usize>> {
    set.non_singletons().map(|m| m.indices().collect()).collect()
}

/// Enumerates the full bending sets spanning maximal bending tori.
pub fn enumerate_maximal_tori(
    space: &PolygonSpace,
    limit: Option<usize>,
    limits: &Limits,
) -> Result<MaximalTori> {
    limits.check("enumeration", space.len(), limits.max_enumeration_edges)?;
    let mut e = Enumerator::new(space);
    let mut reports = Vec::new();
    let mut dimension_counts = BTreeMap::new();
    let mut truncated = false;
    let n = space.len();
    for partition in e.partitions(None) {
        let (maximal, _) = maximality_of_blocks(space, &partition);
        if !maximal {
            continue;
        }
        let dim = n - partition.len().max(3);
        let count: u128 = partition.blocks().iter().map(|&b| e.count(b)).product();
        *dimension_counts.entry(dim).or_insert(0) += count;
        for set in e.full_sets_over(&partition) {
            if limit.is_some_and(|l| reports.len() >= l) {
                truncated = true;
                break;
            }
            reports.push(torus_report(space, &set));
        }
    }
    reports.sort_by_key(|r| canonical_key(&r.bending_set));
    Ok(MaximalTori {
        reports,
        dimension_counts,
        truncated,
    })
}

/// Collapses bending sets that differ by a permutation of equal-length
/// edges. Returns one representative per class (the first met) with the class
/// size, in input order.
pub fn quotient_by_symmetry(lambda: &LengthFunction, sets: &[BendingSet]) -> Vec<(BendingSet, usize)> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..lambda.len() {
        match groups.iter_mut().find(|g| lambda.length(g[0]) == lambda.length(i)) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    let perms: Vec<Vec<usize>> = groups
        .iter()
        .map(|g| g.iter().copied().permutations(g.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|choice| {
            let mut perm = vec![0; lambda.len()];
            for (g, images) in groups.iter().zip(choice) {
                for (&from, to) in g.iter().zip(images) {
                    perm[from] = to;
                }
            }
            perm
        })
        .collect();
    let canonical = |set: &BendingSet| -> Vec<Vec<usize>> {
        perms
            .iter()
            .map(|perm| {
                let mut members: Vec<EdgeSet> = set
                    .non_singletons()
                    .map(|m| EdgeSet::from_indices(m.indices().map(|i| perm[i])))
                    .collect();
                members.sort_by(EdgeSet::canonical_cmp);
                members.iter().map(|m| m.indices().collect()).collect()
            })
            .min()
            .unwrap_or_default()
    };
    let mut classes: Vec<(Vec<Vec<usize>>, BendingSet, usize)> = Vec::new();
    for set in sets {
        let key = canonical(set);
        match classes.iter_mut().find(|(k, _, _)| *k == key) {
            Some(entry) => entry.2 += 1,
            None => classes.push((key, set.clone(), 1)),
        }
    }
    classes.into_iter().map(|(_, s, c)| (s, c)).collect()
}

/// Outcome of the two-long-edge probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLongEdgeProbe {
    /// Pairs `(a, b)` with `lambda(a) + lambda(b)` exceeding the rest.
    pub long_pairs: Vec<(usize, usize)>,
    /// First lopsided 2-partition `E_a | E_b` found, with `a` in the first
    /// part and `b` in the second.
    pub partition: Option<(EdgeSet, EdgeSet)>,
}

/// Searches exhaustively for a partition into two lopsided parts separating
/// two long edges.
pub fn two_long_edge_partition(space: &PolygonSpace) -> TwoLongEdgeProbe {
    let all = space.edges();
    let total = space.perimeter();
    let mut long_pairs = Vec::new();
    let mut partition = None;
    for (a, b) in (0..space.len()).tuple_combinations() {
        let pair = space.length(a) + space.length(b);
        if pair.clone() <= total.clone() - pair {
            continue;
        }
        long_pairs.push((a, b));
        if partition.is_some() {
            continue;
        }
        let others: Vec<usize> = all
            .difference(EdgeSet::singleton(a).with(b))
            .indices()
            .collect();
        for s in 0..1u64 << others.len() {
            let side = EdgeSet::from_indices(
                others
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| s >> k & 1 == 1)
                    .map(|(_, &i)| i),
            );
            let ea = side.with(a);
            let eb = all.difference(ea);
            if space.is_lopsided(ea) && space.is_lopsided(eb) {
                partition = Some((ea, eb));
                break;
            }
        }
    }
    TwoLongEdgeProbe {
        long_pairs,
        partition,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn space(lengths: &[&str]) -> PolygonSpace {
        PolygonSpace::parse(lengths).unwrap()
    }

    fn singular(lengths: &[&str]) -> PolygonSpace {
        let lambda = LengthFunction::parse(lengths).unwrap();
        PolygonSpace::allowing_singular(lambda, &Limits::default()).unwrap()
    }

    /// Exhaustive minimum over all set partitions (restricted growth strings).
    fn brute_force_n(lambda: &LengthFunction) -> usize {
        let n = lambda.len();
        let mut best = n;
        let mut labels = vec![0usize; n];
        loop {
            let blocks = labels.iter().max().unwrap() + 1;
            if blocks < best {
                let ok = (0..blocks).all(|b| {
                    let set = EdgeSet::from_indices((0..n).filter(|&i| labels[i] == b));
                    lambda.is_lopsided(set)
                });
                if ok {
                    best = blocks;
                }
            }
            // next restricted growth string
            let mut i = n - 1;
            loop {
                if i == 0 {
                    return best;
                }
                let prefix_max = labels[..i].iter().max().copied().unwrap();
                if labels[i] <= prefix_max {
                    labels[i] += 1;
                    for l in labels.iter_mut().skip(i + 1) {
                        *l = 0;
                    }
                    break;
                }
                i -= 1;
            }
        }
    }

    #[test]
    fn brute_force_oracle_values() {
        assert_eq!(brute_force_n(&singular(&["1", "1", "1", "1", "3", "3"])), 2);
        assert_eq!(brute_force_n(&space(&["1", "1", "1", "1", "3/2"])), 4);
        assert_eq!(brute_force_n(&space(&["1", "1", "2", "2", "3", "3", "3"])), 3);
        assert_eq!(brute_force_n(&space(&["1", "1", "1", "2", "2"])), 3);
    }

    #[test]
    fn min_partition_examples() {
        let s = singular(&["1", "1", "1", "1", "3", "3"]);
        let m = min_lopsided_partition(&s);
        assert_eq!(m.count, 2);
        assert!(m.partition.blocks().iter().all(|&b| s.is_lopsided(b)));

        let p = space(&["1", "1", "1", "1", "3/2"]);
        let m = min_lopsided_partition(&p);
        assert_eq!(m.count, 4);
        assert_eq!(
            m.partition.blocks(),
            &[p.positions(&[1]), p.positions(&[2]), p.positions(&[3]), p.positions(&[4, 5])]
        );

        let h = space(&["1", "1", "2", "2", "3", "3", "3"]);
        assert_eq!(min_lopsided_partition(&h).count, 3);
    }

    #[test]
    fn coarser_partition_examples() {
        let p = space(&["1", "1", "1", "1", "3/2"]);
        let singles = PartitionOfE::singletons(5);
        assert_eq!(
            min_coarser_partition(&p, &singles).unwrap(),
            min_lopsided_partition(&p)
        );

        let q = space(&["1", "1", "1", "3/2", "3/4"]);
        let circle = BendingSet::from_positions(&q, &[&[4, 5]]).unwrap();
        let m = min_coarser_partition(&q, &circle.maximal_elements()).unwrap();
        assert_eq!(m.count, 4);
        assert_eq!(m.partition, circle.maximal_elements());

        let bad = PartitionOfE::new(5, vec![q.positions(&[1, 2]), q.positions(&[3, 4, 5])]).unwrap();
        assert!(matches!(min_coarser_partition(&q, &bad), Err(Error::NotLopsided(_))));
    }

    #[test]
    fn max_dimension_examples() {
        assert_eq!(max_bending_dim(&space(&["1", "1", "2", "2", "3", "3", "3"])), 4);
        assert_eq!(max_bending_dim(&space(&["1", "1", "1", "1", "3/2"])), 1);
        assert_eq!(max_bending_dim(&singular(&["1", "1", "1", "1", "3", "3"])), 3);
    }

    #[test]
    fn containing_dimension_examples() {
        let h = space(&["1", "1", "2", "2", "3", "3", "3"]);
        let singles = BendingSet::singletons(&h);
        assert_eq!(max_containing_dim(&h, &singles).unwrap().0, max_bending_dim(&h));

        let pair = BendingSet::from_positions(&h, &[&[7, 4]]).unwrap();
        let (n, witness) = max_containing_dim(&h, &pair).unwrap();
        assert_eq!(n, 4);
        assert!(witness.is_full());
        assert!(pair.is_subfamily_of(&witness));
        assert_eq!(witness.torus_dimension(), 4);

        let q = space(&["1", "1", "1", "3/2", "3/4"]);
        let circle = BendingSet::from_positions(&q, &[&[4, 5]]).unwrap();
        assert_eq!(max_containing_dim(&q, &circle).unwrap().0, 1);
    }

    #[test]
    fn common_point_examples() {
        let iv = |a: Rational, b: Rational| Interval::new(a, b);
        assert_eq!(
            common_point(&[iv(int(0), int(2)), iv(int(1), int(3)), iv(frac(3, 2), int(4))]),
            Some(frac(3, 2))
        );
        assert_eq!(common_point(&[iv(int(0), int(1)), iv(int(2), int(3))]), None);
        assert_eq!(common_point(&[]), None);
        let q = space(&["1", "1", "1", "3/2", "3/4"]);
        let images: Vec<Interval> = [vec![4, 5], vec![1], vec![2], vec![3]]
            .iter()
            .map(|p| moment_image(&q, q.positions(p)).unwrap())
            .collect();
        assert_eq!(common_point(&images), Some(int(1)));
    }

    #[test]
    fn maximality_examples() {
        let q = space(&["1", "1", "1", "3/2", "3/4"]);
        let circle = fill(&q, &BendingSet::from_positions(&q, &[&[4, 5]]).unwrap());
        assert_eq!(is_maximal_bending(&q, &circle).unwrap(), (true, Some(int(1))));
        assert_eq!(theorem_b_status(&q, &circle), TheoremB::MaximalHamiltonian);

        let p = space(&["1", "1", "1", "1", "3/2"]);
        let circle = fill(&p, &BendingSet::from_positions(&p, &[&[4, 5]]).unwrap());
        assert_eq!(is_maximal_bending(&p, &circle).unwrap(), (true, Some(int(1))));
        assert_eq!(theorem_b_status(&p, &circle), TheoremB::MaximalHamiltonian);
        let singles = BendingSet::singletons(&p);
        assert_eq!(is_maximal_bending(&p, &singles).unwrap(), (false, None));
        assert_eq!(theorem_b_status(&p, &singles), TheoremB::NotApplicable);

        let r = space(&["1", "2", "4", "4", "4"]);
        let t1 = BendingSet::from_positions(&r, &[&[3, 1], &[4, 2]]).unwrap();
        assert_eq!(t1.torus_dimension(), 2);
        assert_eq!(is_maximal_bending(&r, &t1).unwrap(), (true, None));

        let l = space(&["1", "1", "1", "1", "7/2"]);
        let triple = BendingSet::from_positions(&l, &[&[3, 4, 5]]).unwrap();
        assert_eq!(is_maximal_bending(&l, &triple), Err(Error::NotFull));
        let report = torus_report(&l, &triple);
        assert!(!report.is_full && !report.is_maximal_bending);
        assert_eq!(report.theorem_b, TheoremB::NotApplicable);
    }

    #[test]
    fn hierarchy_counts_match_materialised_lists() {
        let h = space(&["1", "1", "2", "2", "3", "3", "3", "1/2", "1/4"]);
        let mut e = Enumerator::new(&h);
        for bits in 1..1u64 << 9 {
            let b = EdgeSet(bits);
            if e.is_lopsided(b) {
                assert_eq!(e.count(b), e.hierarchies(b).len() as u128);
            }
        }
    }

    #[test]
    fn full_sets_are_full_and_distinct() {
        let h = space(&["1", "1", "2", "2", "3", "3", "3"]);
        let sets = full_bending_sets(&h, None);
        assert!(sets.iter().all(BendingSet::is_full));
        let mut keys: Vec<_> = sets.iter().map(canonical_key).collect();
        let before = keys.len();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), before);
    }

    #[test]
    fn heptagon_spectrum() {
        let h = space(&["1", "1", "2", "2", "3", "3", "3"]);
        let tori = enumerate_maximal_tori(&h, None, &Limits::default()).unwrap();
        assert_eq!(tori.spectrum(), vec![2, 3, 4]);
        assert_eq!(tori.total(), tori.reports.len() as u128);
        assert!(tori.reports.iter().all(|r| r.is_maximal_bending && r.is_full));
        let f1 = BendingSet::from_positions(&h, &[&[3, 1], &[4, 2]]).unwrap();
        assert!(tori.reports.iter().any(|r| r.bending_set == f1));
    }

    #[test]
    fn enumeration_limit_and_guard() {
        let h = space(&["1", "1", "2", "2", "3", "3", "3"]);
        let tori = enumerate_maximal_tori(&h, Some(3), &Limits::default()).unwrap();
        assert_eq!(tori.reports.len(), 3);
        assert!(tori.truncated);
        assert_eq!(tori.spectrum(), vec![2, 3, 4]);
        let tight = Limits {
            max_enumeration_edges: 6,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_maximal_tori(&h, None, &tight),
            Err(Error::TooManyEdges { .. })
        ));
    }

    #[test]
    fn symmetry_quotient() {
        let p = space(&["1", "1", "1", "1", "3/2"]);
        let tori = enumerate_maximal_tori(&p, None, &Limits::default()).unwrap();
        assert_eq!(tori.reports.len(), 4);
        let sets: Vec<BendingSet> = tori.reports.iter().map(|r| r.bending_set.clone()).collect();
        let classes = quotient_by_symmetry(&p, &sets);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].1, 4);
    }

    #[test]
    fn two_long_edge_examples() {
        let s = singular(&["1", "1", "1", "1", "3", "3"]);
        let probe = two_long_edge_partition(&s);
        assert_eq!(probe.long_pairs, vec![(4, 5)]);
        let (ea, eb) = probe.partition.unwrap();
        assert_eq!(ea, s.positions(&[1, 2, 5]));
        assert_eq!(eb, s.positions(&[3, 4, 6]));

        let r = space(&["1", "1", "1", "1", "1"]);
        assert_eq!(two_long_edge_partition(&r), TwoLongEdgeProbe { long_pairs: vec![], partition: None });

        let q = space(&["1", "1", "1", "2", "2"]);
        let probe = two_long_edge_partition(&q);
        assert_eq!(probe.long_pairs, vec![(3, 4)]);
        assert_eq!(probe.partition, None);
    }
}
