//! Edge sets, length functions and the predicates every other module builds
//! on: genericity, nonemptiness and lopsidedness.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::weights::{has_balanced_signs, Weights};

/// Largest number of edges representable in an [`EdgeSet`].
pub const MAX_EDGES: usize = 64;

/// Edge label, unique within one length function.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(String);

impl EdgeId {
    pub fn new(label: impl Into<String>) -> Self {
        EdgeId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Subset of the edges of one length function, as a bitmask over the
/// canonical (input) edge order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet(pub u64);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn singleton(i: usize) -> EdgeSet {
        EdgeSet(1 << i)
    }

    /// The first `n` edges.
    pub fn full(n: usize) -> EdgeSet {
        if n >= 64 {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> EdgeSet {
        EdgeSet(indices.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & other.0)
    }

    pub fn difference(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: EdgeSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn with(self, i: usize) -> EdgeSet {
        EdgeSet(self.0 | 1 << i)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Canonical member order: smallest edge index first, then size, then the
    /// sorted index lists lexicographically.
    pub fn canonical_cmp(&self, other: &EdgeSet) -> Ordering {
        self.min()
            .cmp(&other.min())
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

/// Length function on a finite edge set: the data of a polygon space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthFunction {
    ids: Vec<EdgeId>,
    lengths: Vec<Rational>,
}

impl LengthFunction {
    /// Builds a length function; ids must be unique and lengths positive.
    pub fn new(edges: Vec<(EdgeId, Rational)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::TooFewEdges { got: 0, min: 1 });
        }
        if edges.len() > MAX_EDGES {
            return Err(Error::TooManyEdges {
                what: "a length function",
                got: edges.len(),
                max: MAX_EDGES,
            });
        }
        let mut ids = Vec::with_capacity(edges.len());
        let mut lengths = Vec::with_capacity(edges.len());
        for (id, length) in edges {
            if length <= Rational::zero() {
                return Err(Error::NonPositiveLength {
                    id: id.to_string(),
                    length: format_rational(&length),
                });
            }
            if ids.contains(&id) {
                return Err(Error::DuplicateEdge(id.to_string()));
            }
            ids.push(id);
            lengths.push(length);
        }
        Ok(LengthFunction { ids, lengths })
    }

    /// Edges labelled `e1, e2, ...` in order.
    pub fn from_lengths(lengths: &[Rational]) -> Result<Self> {
        Self::new(
            lengths
                .iter()
                .enumerate()
                .map(|(i, l)| (EdgeId::new(format!("e{}", i + 1)), l.clone()))
                .collect(),
        )
    }

    /// Convenience constructor from `p/q` strings.
    pub fn parse(lengths: &[&str]) -> Result<Self> {
        let values = lengths
            .iter()
            .map(|s| crate::rational::parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_lengths(&values)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    pub fn id(&self, i: usize) -> &EdgeId {
        &self.ids[i]
    }

    pub fn length(&self, i: usize) -> &Rational {
        &self.lengths[i]
    }

    pub fn edges(&self) -> EdgeSet {
        EdgeSet::full(self.len())
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .iter()
            .position(|e| e.as_str() == id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Edge set from labels; unknown labels are an error.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<EdgeSet> {
        labels
            .iter()
            .try_fold(EdgeSet::EMPTY, |acc, l| Ok(acc.with(self.index_of(l.as_ref())?)))
    }

    /// Edge set from 1-based positions, matching the `Pol(l1, ..., ln)`
    /// numbering used throughout the examples.
    pub fn positions(&self, positions: &[usize]) -> EdgeSet {
        EdgeSet::from_indices(positions.iter().map(|p| p - 1))
    }

    pub fn labels(&self, set: EdgeSet) -> Vec<String> {
        set.indices().map(|i| self.ids[i].to_string()).collect()
    }

    /// `{e1,e3}` style rendering used in diagnostics.
    pub fn describe(&self, set: EdgeSet) -> String {
        format!("{{{}}}", self.labels(set).join(","))
    }

    pub fn sum(&self, set: EdgeSet) -> Rational {
        set.indices().fold(Rational::zero(), |acc, i| acc + &self.lengths[i])
    }

    pub fn perimeter(&self) -> Rational {
        self.sum(self.edges())
    }

    /// Index of a longest edge of `set`, ties broken by canonical order.
    pub fn longest(&self, set: EdgeSet) -> Option<usize> {
        set.indices().fold(None, |best: Option<usize>, i| match best {
            Some(b) if self.lengths[b] >= self.lengths[i] => Some(b),
            _ => Some(i),
        })
    }

    /// True iff no sign vector makes the signed sum of lengths vanish.
    ///
    /// Exhausts the `2^(|E|-1)` sign patterns with one sign fixed; callers
    /// guard the edge count.
    pub fn is_generic(&self) -> bool {
        match Weights::of(&self.lengths) {
            Weights::Small(w) => !has_balanced_signs(&w),
            Weights::Big(w) => !has_balanced_signs(&w),
        }
    }

    /// Closing condition: the longest edge does not exceed the sum of the
    /// others.
    pub fn is_nonempty(&self) -> bool {
        let longest = self.longest(self.edges()).expect("non-empty edge set");
        let l = &self.lengths[longest];
        l.clone() + l.clone() <= self.perimeter()
    }

    /// Real dimension `2(|E| - 3)` of the polygon space.
    pub fn pol_dimension(&self) -> Result<usize> {
        self.require_polygon_space()?;
        Ok(2 * (self.len() - 3))
    }

    fn require_polygon_space(&self) -> Result<()> {
        self.require_closing()?;
        if !self.is_generic() {
            return Err(Error::NotGeneric);
        }
        Ok(())
    }

    fn require_closing(&self) -> Result<()> {
        if self.len() < 3 {
            return Err(Error::TooFewEdges {
                got: self.len(),
                min: 3,
            });
        }
        if !self.is_nonempty() {
            let longest = self.longest(self.edges()).unwrap();
            let l = self.lengths[longest].clone();
            return Err(Error::EmptySpace {
                longest: format_rational(&l),
                rest: format_rational(&(self.perimeter() - l)),
            });
        }
        Ok(())
    }

    /// Some edge of `set` is strictly longer than all the others together.
    pub fn is_lopsided(&self, set: EdgeSet) -> bool {
        self.dominant_edge(set).is_some()
    }

    /// The witness edge of lopsidedness; unique when it exists.
    pub fn dominant_edge(&self, set: EdgeSet) -> Option<usize> {
        let e = self.longest(set)?;
        let l = &self.lengths[e];
        (l.clone() + l.clone() > self.sum(set)).then_some(e)
    }

    /// Like [`dominant_edge`](Self::dominant_edge) but reports a diagnostic.
    pub fn require_dominant_edge(&self, set: EdgeSet) -> Result<usize> {
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        self.dominant_edge(set)
            .ok_or_else(|| Error::NotLopsided(self.describe(set)))
    }

    /// Same edges and lengths, edges permuted: `perm[i]` is the old index of
    /// new edge `i`.
    pub fn permuted(&self, perm: &[usize]) -> LengthFunction {
        LengthFunction {
            ids: perm.iter().map(|&i| self.ids[i].clone()).collect(),
            lengths: perm.iter().map(|&i| self.lengths[i].clone()).collect(),
        }
    }

    /// All lengths multiplied by a positive factor.
    pub fn scaled(&self, factor: &Rational) -> LengthFunction {
        assert!(*factor > Rational::zero());
        LengthFunction {
            ids: self.ids.clone(),
            lengths: self.lengths.iter().map(|l| l * factor).collect(),
        }
    }

    /// Whether every length is equal to one.
    pub fn is_unit(&self) -> bool {
        self.lengths.iter().all(One::is_one)
    }
}

/// Limits on the exponential parts of the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `|E|` for the exhaustive genericity check.
    pub max_generic_edges: usize,
    /// Largest `|E|` for bending-set enumeration.
    pub max_enumeration_edges: usize,
    /// Lifts both guards.
    pub force: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_generic_edges: 24,
            max_enumeration_edges: 10,
            force: false,
        }
    }
}

impl Limits {
    pub fn forced() -> Self {
        Limits {
            force: true,
            ..Limits::default()
        }
    }

    pub(crate) fn check(&self, what: &'static str, got: usize, max: usize) -> Result<()> {
        if !self.force && got > max {
            return Err(Error::TooManyEdges { what, got, max });
        }
        Ok(())
    }
}

/// A length function known to define a nonempty polygon space with at least
/// three edges. Spaces built with [`PolygonSpace::new`] are also generic, the
/// standing assumption of every bending computation; the combinatorial parts
/// still make sense for singular spaces, which must be asked for explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonSpace {
    lambda: LengthFunction,
    generic: bool,
}

impl PolygonSpace {
    pub fn new(lambda: LengthFunction) -> Result<Self> {
        Self::with_limits(lambda, &Limits::default())
    }

    pub fn with_limits(lambda: LengthFunction, limits: &Limits) -> Result<Self> {
        limits.check("the genericity check", lambda.len(), limits.max_generic_edges)?;
        lambda.require_polygon_space()?;
        Ok(PolygonSpace {
            lambda,
            generic: true,
        })
    }

    /// Accepts a nonempty but possibly non-generic length function.
    pub fn allowing_singular(lambda: LengthFunction, limits: &Limits) -> Result<Self> {
        limits.check("the genericity check", lambda.len(), limits.max_generic_edges)?;
        lambda.require_closing()?;
        let generic = lambda.is_generic();
        Ok(PolygonSpace { lambda, generic })
    }

    pub fn is_generic_space(&self) -> bool {
        self.generic
    }

    /// Shorthand for tests and examples: `PolygonSpace::parse(&["1", "3/2"])`.
    pub fn parse(lengths: &[&str]) -> Result<Self> {
        Self::new(LengthFunction::parse(lengths)?)
    }

    pub fn lambda(&self) -> &LengthFunction {
        &self.lambda
    }

    pub fn into_inner(self) -> LengthFunction {
        self.lambda
    }

    pub fn dimension(&self) -> usize {
        2 * (self.lambda.len() - 3)
    }
}

impl std::ops::Deref for PolygonSpace {
    type Target = LengthFunction;

    fn deref(&self) -> &LengthFunction {
        &self.lambda
    }
}
