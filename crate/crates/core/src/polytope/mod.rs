//! Rational polytopes in dimension at most three, moment polytopes of toric
//! bending actions, the Delzant condition and lattice equivalence.

mod classify;
mod lattice;
pub mod linalg;
mod moment;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::EdgeSet;
use crate::rational::{primitive_direction, Rational};

pub use classify::{
    conjugacy_classes, nonbending_report, ConjugacyClass, ConjugacyReport, NonbendingRegime,
    NonbendingReport,
};
pub use lattice::{lattice_equivalent, Equivalence, Invariants};
pub use moment::{moment_coordinates, moment_polytope, MAX_POLYTOPE_DIM};

use linalg::{affine_rank, det, nullspace, rank, solve};

/// The closed halfspace `<normal, x> <= offset`, with a primitive normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Halfspace {
    /// Scales `<normal, x> <= offset` to a primitive integer normal. `None`
    /// for a zero normal.
    pub fn new(normal: &[Rational], offset: Rational) -> Option<Halfspace> {
        let (prim, factor) = primitive_direction(normal)?;
        Some(Halfspace {
            normal: prim,
            offset: offset / factor,
        })
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        self.normal
            .iter()
            .zip(x)
            .map(|(a, b)| Rational::from_integer(a.clone()) * b)
            .sum()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.value(x) <= self.offset
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.value(x) == self.offset
    }

    fn normal_q(&self) -> Vec<Rational> {
        self.normal.iter().cloned().map(Rational::from_integer).collect()
    }
}

/// A bounded full-dimensional polytope `{x : <a_i, x> <= b_i}` with its
/// vertices. Halfspaces are irredundant and sorted; vertices are sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    pub dim: usize,
    pub halfspaces: Vec<Halfspace>,
    pub vertices: Vec<Vec<Rational>>,
    /// Bending-set members indexing the coordinates, when the polytope is a
    /// moment polytope.
    pub labels: Vec<EdgeSet>,
}

/// All points cut out by `dim` of the halfspaces that satisfy every halfspace.
fn enumerate_vertices(dim: usize, halfspaces: &[Halfspace]) -> Vec<Vec<Rational>> {
    if let Some(out) = small_vertices(dim, halfspaces) {
        return out;
    }
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for subset in (0..halfspaces.len()).combinations(dim) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| halfspaces[i].normal_q()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| halfspaces[i].offset.clone()).collect();
        let Some(x) = solve(&a, &b) else { continue };
        if halfspaces.iter().all(|h| h.contains(&x)) && !out.contains(&x) {
            out.push(x);
        }
    }
    out.sort();
    out
}

/// Machine-integer version of [`enumerate_vertices`] for `dim <= 3` and small
/// data: offsets are scaled to integers and each `dim`-subset is solved with
/// the adjugate, so a candidate is `num / det` and containment is checked
/// without leaving `i128`. `None` when the data is too large.
fn small_vertices(dim: usize, halfspaces: &[Halfspace]) -> Option<Vec<Vec<Rational>>> {
    const BOUND: i128 = 1 << 20;
    if dim == 0 || dim > 3 {
        return None;
    }
    let den = crate::rational::common_denominator(halfspaces.iter().map(|h| &h.offset));
    let small = |x: &BigInt| i128::try_from(x).ok().filter(|v| v.abs() <= BOUND);
    let normals: Vec<Vec<i128>> = halfspaces
        .iter()
        .map(|h| h.normal.iter().map(small).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let offsets: Vec<i128> = halfspaces
        .iter()
        .map(|h| {
            let scaled = (&h.offset * Rational::from_integer(den.clone())).to_integer();
            i128::try_from(&scaled).ok().filter(|v| v.abs() <= BOUND * BOUND)
        })
        .collect::<Option<_>>()?;
    let mut found: Vec<(Vec<i128>, i128)> = Vec::new();
    for subset in (0..halfspaces.len()).combinations(dim) {
        let m: Vec<&Vec<i128>> = subset.iter().map(|&i| &normals[i]).collect();
        let (mut d, adj) = adjugate(&m);
        if d == 0 {
            continue;
        }
        let mut num: Vec<i128> = (0..dim)
            .map(|r| subset.iter().enumerate().map(|(c, &i)| adj[r][c] * offsets[i]).sum())
            .collect();
        if d < 0 {
            d = -d;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let inside = normals.iter().zip(&offsets).all(|(a, &b)| {
            a.iter().zip(&num).map(|(x, y)| x * y).sum::<i128>() <= b * d
        });
        // num / d == num' / d' compared by cross multiplication
        if inside && !found.iter().any(|(n, e)| n.iter().zip(&num).all(|(x, y)| x * d == y * e)) {
            found.push((num, d));
        }
    }
    let mut out: Vec<Vec<Rational>> = found
        .into_iter()
        .map(|(num, d)| {
            let q = BigInt::from(d) * &den;
            num.into_iter().map(|x| Rational::new(BigInt::from(x), q.clone())).collect()
        })
        .collect();
    out.sort();
    Some(out)
}

/// Determinant and adjugate of a square matrix of size at most three.
fn adjugate(m: &[&Vec<i128>]) -> (i128, Vec<Vec<i128>>) {
    match m.len() {
        1 => (m[0][0], vec![vec![1]]),
        2 => (
            m[0][0] * m[1][1] - m[0][1] * m[1][0],
            vec![vec![m[1][1], -m[0][1]], vec![-m[1][0], m[0][0]]],
        ),
        _ => {
            let c = |r: usize, k: usize| {
                let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
                let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
                m[r1][k1] * m[r2][k2] - m[r1][k2] * m[r2][k1]
            };
            let adj: Vec<Vec<i128>> = (0..3).map(|r| (0..3).map(|k| c(k, r)).collect()).collect();
            let d = (0..3).map(|k| m[0][k] * c(0, k)).sum();
            (d, adj)
        }
    }
}

fn box_around_origin(dim: usize) -> Vec<Halfspace> {
    (0..dim)
        .flat_map(|i| {
            [1i64, -1].into_iter().map(move |s| {
                let mut normal = vec![BigInt::zero(); dim];
                normal[i] = BigInt::from(s);
                Halfspace {
                    normal,
                    offset: Rational::one(),
                }
            })
        })
        .collect()
}

impl LatticePolytope {
    /// Builds the polytope cut out by `halfspaces`, dropping redundant ones.
    /// Fails unless the intersection is bounded and `dim`-dimensional.
    pub fn from_halfspaces(dim: usize, halfspaces: Vec<Halfspace>, labels: Vec<EdgeSet>) -> Result<Self> {
        if halfspaces.iter().any(|h| h.normal.len() != dim) {
            return Err(Error::DegeneratePolytope("normal of the wrong length".into()));
        }
        // recession cone {A y <= 0} must be trivial
        let mut cone: Vec<Halfspace> = halfspaces
            .iter()
            .map(|h| Halfspace {
                normal: h.normal.clone(),
                offset: Rational::zero(),
            })
            .collect();
        cone.extend(box_around_origin(dim));
        if enumerate_vertices(dim, &cone).iter().any(|v| v.iter().any(|x| !x.is_zero())) {
            return Err(Error::DegeneratePolytope("unbounded".into()));
        }
        let vertices = enumerate_vertices(dim, &halfspaces);
        let refs: Vec<&Vec<Rational>> = vertices.iter().collect();
        if affine_rank(&refs) != Some(dim) {
            return Err(Error::DegeneratePolytope(if vertices.is_empty() {
                "empty".into()
            } else {
                "not full-dimensional".into()
            }));
        }
        let mut kept: Vec<Halfspace> = Vec::new();
        for h in halfspaces {
            let tight: Vec<&Vec<Rational>> = vertices.iter().filter(|v| h.is_tight(v)).collect();
            if dim > 0 && affine_rank(&tight) == Some(dim - 1) && !kept.contains(&h) {
                kept.push(h);
            }
        }
        // equal facets may arrive with different normals only if not primitive
        kept.sort();
        Ok(LatticePolytope {
            dim,
            halfspaces: kept,
            vertices,
            labels,
        })
    }

    /// Convex hull of `points` (which must affinely span `dim` dimensions).
    pub fn from_vertices(dim: usize, points: &[Vec<Rational>]) -> Result<Self> {
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::DegeneratePolytope("point of the wrong length".into()));
        }
        let refs: Vec<&Vec<Rational>> = points.iter().collect();
        if affine_rank(&refs) != Some(dim) {
            return Err(Error::DegeneratePolytope("points not full-dimensional".into()));
        }
        let mut halfspaces: Vec<Halfspace> = Vec::new();
        for subset in (0..points.len()).combinations(dim) {
            let base = &points[subset[0]];
            let diffs: Vec<Vec<Rational>> = subset[1..]
                .iter()
                .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let ns = nullspace(&diffs, dim);
            if ns.len() != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let normal: Vec<Rational> = ns[0].iter().map(|x| x * Rational::from_integer(sign.into())).collect();
                let h = Halfspace::new(&normal, Rational::zero()).unwrap();
                let offset = h.value(base);
                let h = Halfspace { offset, ..h };
                if points.iter().all(|p| h.contains(p)) && !halfspaces.contains(&h) {
                    halfspaces.push(h);
                }
            }
        }
        Self::from_halfspaces(dim, halfspaces, Vec::new())
    }

    pub fn with_labels(mut self, labels: Vec<EdgeSet>) -> Self {
        self.labels = labels;
        self
    }

    /// Indices of the halfspaces tight at vertex `v`.
    pub fn tight_at(&self, v: usize) -> Vec<usize> {
        (0..self.halfspaces.len())
            .filter(|&h| self.halfspaces[h].is_tight(&self.vertices[v]))
            .collect()
    }

    /// Pairs of vertex indices spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        if self.dim == 0 {
            return Vec::new();
        }
        let tight: Vec<Vec<usize>> = (0..self.vertices.len()).map(|v| self.tight_at(v)).collect();
        let mut out = Vec::new();
        for (i, j) in (0..self.vertices.len()).tuple_combinations() {
            let common: Vec<Vec<Rational>> = tight[i]
                .iter()
                .filter(|h| tight[j].contains(h))
                .map(|&h| self.halfspaces[h].normal_q())
                .collect();
            if rank(&common) == self.dim - 1 {
                out.push((i, j));
            }
        }
        out
    }

    /// Vertices adjacent to `v`.
    pub fn neighbours(&self, v: usize, edges: &[(usize, usize)]) -> Vec<usize> {
        edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    /// Primitive integer directions of the edges leaving `v`, with their
    /// lattice lengths, ordered by neighbour index.
    pub fn edge_directions(&self, v: usize, edges: &[(usize, usize)]) -> Vec<(Vec<BigInt>, Rational)> {
        self.neighbours(v, edges)
            .into_iter()
            .map(|w| {
                let d: Vec<Rational> = self.vertices[w]
                    .iter()
                    .zip(&self.vertices[v])
                    .map(|(a, b)| a - b)
                    .collect();
                primitive_direction(&d).expect("distinct vertices")
            })
            .collect()
    }

    /// Delzant condition: every vertex has exactly `dim` edges whose primitive
    /// directions form a basis of the integer lattice.
    pub fn is_delzant(&self) -> bool {
        let edges = self.edges();
        (0..self.vertices.len()).all(|v| {
            let dirs = self.edge_directions(v, &edges);
            if dirs.len() != self.dim {
                return false;
            }
            let m: Vec<Vec<Rational>> = dirs
                .iter()
                .map(|(d, _)| d.iter().cloned().map(Rational::from_integer).collect())
                .collect();
            det(&m).abs().is_one()
        })
    }

    /// Simplices (as vertex index lists) triangulating the face spanned by
    /// `face`, of dimension `k`, by pulling from its smallest vertex.
    fn triangulate(&self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut subfaces: Vec<Vec<usize>> = Vec::new();
        for h in &self.halfspaces {
            let sub: Vec<usize> = face
                .iter()
                .copied()
                .filter(|&v| h.is_tight(&self.vertices[v]))
                .collect();
            if sub.contains(&apex) || subfaces.contains(&sub) {
                continue;
            }
            let refs: Vec<&Vec<Rational>> = sub.iter().map(|&v| &self.vertices[v]).collect();
            if affine_rank(&refs) == Some(k - 1) {
                subfaces.push(sub);
            }
        }
        subfaces
            .iter()
            .flat_map(|sub| self.triangulate(sub, k - 1))
            .map(|mut s| {
                s.insert(0, apex);
                s
            })
            .collect()
    }

    /// `dim!` times the Euclidean volume; an integer for lattice polytopes.
    pub fn normalized_volume(&self) -> Rational {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        self.triangulate(&all, self.dim)
            .iter()
            .map(|s| {
                let base = &self.vertices[s[0]];
                let m: Vec<Vec<Rational>> = s[1..]
                    .iter()
                    .map(|&v| self.vertices[v].iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                det(&m).abs()
            })
            .sum()
    }

    pub fn volume(&self) -> Rational {
        let factorial: u64 = (1..=self.dim as u64).product();
        self.normalized_volume() / Rational::from_integer(factorial.into())
    }

    /// Image under `x -> m x + t`, for an invertible integer matrix `m`.
    pub fn transformed(&self, m: &[Vec<BigInt>], t: &[Rational]) -> Result<LatticePolytope> {
        let mq: Vec<Vec<Rational>> = m
            .iter()
            .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        let points: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| {
                linalg::mat_vec(&mq, v)
                    .into_iter()
                    .zip(t)
                    .map(|(a, b)| a + b)
                    .collect()
            })
            .collect();
        LatticePolytope::from_vertices(self.dim, &points)
    }

    /// Whether all vertices have integer coordinates.
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(|x| x.denom().is_one())
    }

    /// Vertex coordinates scaled to integers, with the common denominator.
    pub fn integer_vertices(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let den = self
            .vertices
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect();
        (scaled, den)
    }
}
