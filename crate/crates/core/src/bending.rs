//! Bending sets and the invariants of their bending functions.
//!
//! A bending set is a laminar family of lopsided subsets containing every
//! singleton. Its members index commuting bending flows; the functions here
//! validate and complete such families, count the dimension of the torus they
//! generate and describe the image and critical values of each bending
//! function `f_J = |sum of the edge vectors in J|`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{EdgeId, EdgeSet, LengthFunction, PolygonSpace};
use crate::rational::{format_rational, Rational};

/// Laminar family of lopsided subsets containing every singleton.
///
/// Members are kept sorted in canonical member order, so two bending sets are
/// equal exactly when they contain the same labelled subsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BendingSet {
    edge_count: usize,
    members: Vec<EdgeSet>,
}

impl BendingSet {
    /// Validates `family` against `lambda`, adding the singletons.
    pub fn new(lambda: &LengthFunction, family: &[EdgeSet]) -> Result<Self> {
        let n = lambda.len();
        let all = lambda.edges();
        let mut members: Vec<EdgeSet> = (0..n).map(EdgeSet::singleton).collect();
        for &m in family {
            if m.is_empty() {
                return Err(Error::EmptySubset);
            }
            if !m.is_subset(all) {
                return Err(Error::UnknownEdge(format!("bit pattern {:#b}", m.bits())));
            }
            if !members.contains(&m) {
                members.push(m);
            }
        }
        members.sort_by(EdgeSet::canonical_cmp);
        for &m in &members {
            if !lambda.is_lopsided(m) {
                return Err(Error::NotLopsided(lambda.describe(m)));
            }
        }
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if !(a.is_disjoint(b) || a.is_subset(b) || b.is_subset(a)) {
                    return Err(Error::LaminarViolation(lambda.describe(a), lambda.describe(b)));
                }
            }
        }
        Ok(BendingSet {
            edge_count: n,
            members,
        })
    }

    /// The bending set made of singletons only; its torus is trivial.
    pub fn singletons(lambda: &LengthFunction) -> Self {
        let mut members: Vec<EdgeSet> = (0..lambda.len()).map(EdgeSet::singleton).collect();
        members.sort_by(EdgeSet::canonical_cmp);
        BendingSet {
            edge_count: lambda.len(),
            members,
        }
    }

    /// Builds from labels, as in `[["e4", "e5"]]`.
    pub fn from_labels<S: AsRef<str>>(lambda: &LengthFunction, family: &[Vec<S>]) -> Result<Self> {
        let sets = family
            .iter()
            .map(|m| lambda.subset(m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lambda, &sets)
    }

    /// Builds from 1-based edge positions.
    pub fn from_positions(lambda: &LengthFunction, family: &[&[usize]]) -> Result<Self> {
        let sets: Vec<EdgeSet> = family.iter().map(|m| lambda.positions(m)).collect();
        Self::new(lambda, &sets)
    }

    /// Unchecked constructor for families produced by the enumerators.
    pub(crate) fn from_members_unchecked(edge_count: usize, mut members: Vec<EdgeSet>) -> Self {
        members.sort_by(EdgeSet::canonical_cmp);
        members.dedup();
        BendingSet {
            edge_count,
            members,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn members(&self) -> &[EdgeSet] {
        &self.members
    }

    pub fn non_singletons(&self) -> impl Iterator<Item = EdgeSet> + '_ {
        self.members.iter().copied().filter(|m| m.len() > 1)
    }

    pub fn contains(&self, set: EdgeSet) -> bool {
        self.members.contains(&set)
    }

    pub fn is_subfamily_of(&self, other: &BendingSet) -> bool {
        self.members.iter().all(|m| other.contains(*m))
    }

    /// Inclusion-maximal members. They always partition the edge set.
    pub fn maximal_elements(&self) -> PartitionOfE {
        let blocks: Vec<EdgeSet> = self
            .members
            .iter()
            .copied()
            .filter(|&m| !self.members.iter().any(|&o| o != m && m.is_subset(o)))
            .collect();
        PartitionOfE::from_blocks_unchecked(self.edge_count, blocks)
    }

    /// Maximal proper sub-members of `member`, in canonical order. They
    /// partition `member` whenever it is not a singleton.
    pub fn children(&self, member: EdgeSet) -> Vec<EdgeSet> {
        let below: Vec<EdgeSet> = self
            .members
            .iter()
            .copied()
            .filter(|&m| m != member && m.is_subset(member))
            .collect();
        below
            .iter()
            .copied()
            .filter(|&m| !below.iter().any(|&o| o != m && m.is_subset(o)))
            .collect()
    }

    /// Every non-singleton member is the disjoint union of two members.
    pub fn is_full(&self) -> bool {
        self.non_singletons().all(|m| self.children(m).len() == 2)
    }

    /// Equivalent fullness test: each member contains exactly `2|J| - 1`
    /// members.
    pub fn is_full_by_counting(&self) -> bool {
        self.members.iter().all(|&j| {
            let below = self.members.iter().filter(|m| m.is_subset(j)).count();
            below == 2 * j.len() - 1
        })
    }

    /// Dimension of the bending torus.
    ///
    /// Counts non-singleton members up to the identification `J ~ E - J`
    /// (their bending functions coincide) and skips members whose complement
    /// is a single edge, whose bending function is constant.
    pub fn torus_dimension(&self) -> usize {
        let all = EdgeSet::full(self.edge_count);
        let mut seen: Vec<EdgeSet> = Vec::new();
        let mut count = 0;
        for m in self.non_singletons() {
            if m.len() + 1 >= self.edge_count {
                continue;
            }
            let complement = all.difference(m);
            if seen.contains(&complement) {
                continue;
            }
            seen.push(m);
            count += 1;
        }
        count
    }

    /// `|E| - max(3, |M|)`, the dimension predicted for full sets.
    pub fn full_dimension_formula(&self) -> usize {
        let blocks = self.maximal_elements().len();
        self.edge_count - blocks.max(3).min(self.edge_count)
    }
}

/// Partition of the edge set into non-empty blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionOfE {
    edge_count: usize,
    blocks: Vec<EdgeSet>,
}

impl PartitionOfE {
    pub fn new(edge_count: usize, blocks: Vec<EdgeSet>) -> Result<Self> {
        let mut seen = EdgeSet::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if !b.is_disjoint(seen) {
                return Err(Error::InvalidPartition("blocks overlap".into()));
            }
            seen = seen.union(b);
        }
        if seen != EdgeSet::full(edge_count) {
            return Err(Error::InvalidPartition("blocks do not cover every edge".into()));
        }
        Ok(Self::from_blocks_unchecked(edge_count, blocks))
    }

    pub fn singletons(edge_count: usize) -> Self {
        Self::from_blocks_unchecked(edge_count, (0..edge_count).map(EdgeSet::singleton).collect())
    }

    pub(crate) fn from_blocks_unchecked(edge_count: usize, mut blocks: Vec<EdgeSet>) -> Self {
        blocks.sort_by(EdgeSet::canonical_cmp);
        PartitionOfE { edge_count, blocks }
    }

    pub fn blocks(&self) -> &[EdgeSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Every block of `self` is a union of blocks of `finer`.
    pub fn is_coarser_than(&self, finer: &PartitionOfE) -> bool {
        finer
            .blocks
            .iter()
            .all(|f| self.blocks.iter().any(|b| f.is_subset(*b)))
    }
}

/// Closed rational interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(t: Rational) -> Self {
        Interval {
            lo: t.clone(),
            hi: t,
        }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo <= t && t <= &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Completes a bending set to a full one with the same maximal elements.
///
/// Repeatedly takes a smallest member that is not split into two members,
/// orders its children with the one holding its dominant edge first and the
/// rest by smallest edge, and inserts the running unions of that sequence.
pub fn fill(lambda: &LengthFunction, set: &BendingSet) -> BendingSet {
    let mut members = set.members.clone();
    loop {
        let current = BendingSet::from_members_unchecked(set.edge_count, members.clone());
        let target = current
            .non_singletons()
            .filter(|&m| current.children(m).len() != 2)
            .min_by(|a, b| a.len().cmp(&b.len()).then(a.canonical_cmp(b)));
        let Some(member) = target else {
            return current;
        };
        let dominant = lambda
            .dominant_edge(member)
            .expect("bending set members are lopsided");
        let mut children = current.children(member);
        let first = children
            .iter()
            .position(|c| c.contains(dominant))
            .expect("children partition the member");
        let head = children.remove(first);
        children.sort_by_key(|c| c.min());
        let mut running = head;
        // the last child closes the member itself, which is already present
        for child in &children[..children.len() - 1] {
            running = running.union(*child);
            members.push(running);
        }
    }
}

/// Image of the bending function `f_I` over the polygon space.
///
/// `t` is attained iff both polygons obtained by collapsing `I` and `E - I`
/// to an edge of length `t` close up, which gives
/// `[max(m(I), m(E-I)), min(s(I), s(E-I))]` with `s` the sum and
/// `m(A) = max(0, 2 max(A) - s(A))`.
pub fn moment_image(space: &PolygonSpace, set: EdgeSet) -> Result<Interval> {
    require_proper(space, set)?;
    let complement = space.edges().difference(set);
    let lo = lower_bound(space, set).max(lower_bound(space, complement));
    let hi = space.sum(set).min(space.sum(complement));
    Ok(Interval::new(lo, hi))
}

fn lower_bound(lambda: &LengthFunction, set: EdgeSet) -> Rational {
    let longest = lambda.longest(set).expect("non-empty set");
    let l = lambda.length(longest);
    let gap = l.clone() + l.clone() - lambda.sum(set);
    gap.max(Rational::zero())
}

fn require_proper(lambda: &LengthFunction, set: EdgeSet) -> Result<()> {
    if set.is_empty() || set == lambda.edges() || !set.is_subset(lambda.edges()) {
        return Err(Error::TrivialSubset(lambda.describe(set)));
    }
    Ok(())
}

/// Absolute values of all signed sums of the lengths in `set`.
fn collinear_values(lambda: &LengthFunction, set: EdgeSet) -> BTreeSet<Rational> {
    let mut sums: BTreeSet<Rational> = BTreeSet::from([Rational::zero()]);
    for i in set.indices() {
        let l = lambda.length(i);
        sums = sums
            .iter()
            .flat_map(|s| [s + l, s - l])
            .collect();
    }
    sums.into_iter().map(|s| s.abs()).collect()
}

/// Critical values of `f_I`: the values attained by configurations in which
/// the edges of `I`, or those of `E - I`, are collinear. Sorted ascending.
pub fn critical_values(space: &PolygonSpace, set: EdgeSet) -> Result<Vec<Rational>> {
    space.require_dominant_edge(set)?;
    let image = moment_image(space, set)?;
    let complement = space.edges().difference(set);
    let mut values = collinear_values(space, set);
    values.extend(collinear_values(space, complement));
    Ok(values.into_iter().filter(|t| image.contains(t)).collect())
}

/// Whether `t` is a regular value of `f_I`. `t` must lie in the image.
pub fn is_regular_value(space: &PolygonSpace, set: EdgeSet, t: &Rational) -> Result<bool> {
    let image = moment_image(space, set)?;
    if !image.contains(t) {
        return Err(out_of_image(t, &image));
    }
    Ok(!critical_values(space, set)?.contains(t))
}

fn out_of_image(t: &Rational, image: &Interval) -> Error {
    Error::OutOfImage {
        t: format_rational(t),
        lo: format_rational(&image.lo),
        hi: format_rational(&image.hi),
    }
}

/// The two polygon spaces whose product is the reduction of the polygon space
/// at level `t` of the bending circle of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    /// Edges of `A` followed by a virtual edge of length `t`.
    pub left: LengthFunction,
    /// Edges of `E - A` followed by a virtual edge of length `t`.
    pub right: LengthFunction,
    /// Both factors generic; always the case at regular values.
    pub generic: bool,
}

impl ReductionResult {
    pub fn virtual_length(&self) -> &Rational {
        self.left.length(self.left.len() - 1)
    }
}

/// Collapses `A` and its complement to a virtual edge of length `t`.
pub fn reduce(space: &PolygonSpace, set: EdgeSet, t: &Rational) -> Result<ReductionResult> {
    space.require_dominant_edge(set)?;
    let image = moment_image(space, set)?;
    if !image.contains(t) {
        return Err(out_of_image(t, &image));
    }
    let complement = space.edges().difference(set);
    let left = factor(space, set, t)?;
    let right = factor(space, complement, t)?;
    let generic = left.is_generic() && right.is_generic();
    Ok(ReductionResult {
        left,
        right,
        generic,
    })
}

fn factor(lambda: &LengthFunction, set: EdgeSet, t: &Rational) -> Result<LengthFunction> {
    let mut edges: Vec<(EdgeId, Rational)> = set
        .indices()
        .map(|i| (lambda.id(i).clone(), lambda.length(i).clone()))
        .collect();
    let mut label = lambda.describe(set);
    while edges.iter().any(|(id, _)| id.as_str() == label) {
        label.push('\'');
    }
    edges.push((EdgeId::new(label), t.clone()));
    LengthFunction::new(edges)
}
