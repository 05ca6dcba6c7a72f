//! Equivalence of polytopes under integral affine maps `x -> m x + v` with
//! `m` in `GL(n, Z)` and `v` rational.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::linalg::{det, inverse, mat_mul, mat_vec, transpose};
use super::LatticePolytope;

/// Outcome of [`lattice_equivalent`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    /// `Q = matrix * P + translation`.
    Equivalent {
        matrix: Vec<Vec<BigInt>>,
        translation: Vec<Rational>,
    },
    NotEquivalent,
    /// Invariants agree but no simple vertex was available to decide.
    Undecided,
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

/// Quantities preserved by integral affine maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub vertex_count: usize,
    pub normalized_volume: Rational,
    /// Lattice lengths of the edges, sorted.
    pub edge_lengths: Vec<Rational>,
    /// Sizes of the classes of facets with parallel normals, sorted.
    pub parallel_facet_classes: Vec<usize>,
}

impl LatticePolytope {
    pub fn invariants(&self) -> Invariants {
        let edges = self.edges();
        let mut edge_lengths: Vec<Rational> = edges
            .iter()
            .map(|&(a, b)| {
                let d: Vec<Rational> = self.vertices[b]
                    .iter()
                    .zip(&self.vertices[a])
                    .map(|(x, y)| x - y)
                    .collect();
                crate::rational::primitive_direction(&d).unwrap().1
            })
            .collect();
        edge_lengths.sort();
        let mut classes: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
        for h in &self.halfspaces {
            let first_nonzero = h.normal.iter().find(|x| !x.is_zero()).unwrap();
            let key: Vec<BigInt> = if first_nonzero.is_negative() {
                h.normal.iter().map(|x| -x).collect()
            } else {
                h.normal.clone()
            };
            *classes.entry(key).or_insert(0) += 1;
        }
        let mut parallel_facet_classes: Vec<usize> = classes.into_values().collect();
        parallel_facet_classes.sort();
        Invariants {
            vertex_count: self.vertices.len(),
            normalized_volume: self.normalized_volume(),
            edge_lengths,
            parallel_facet_classes,
        }
    }
}

fn to_q(m: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
        .collect()
}

fn sorted_image(p: &LatticePolytope, m: &[Vec<Rational>], t: &[Rational]) -> Vec<Vec<Rational>> {
    let mut image: Vec<Vec<Rational>> = p
        .vertices
        .iter()
        .map(|v| mat_vec(m, v).into_iter().zip(t).map(|(a, b)| a + b).collect())
        .collect();
    image.sort();
    image
}

/// Decides whether `q` is the image of `p` under an integral affine map and
/// returns one such map.
///
/// Any such map sends a simple vertex of `p` to a simple vertex of `q` and its
/// primitive edge directions to those of the image vertex, so trying every
/// vertex of `q` and every ordering of its edge directions is complete.
/// Every vertex of a polygon is simple; in dimension three the answer is
/// `Undecided` only when `p` has no simple vertex and the invariants agree.
pub fn lattice_equivalent(p: &LatticePolytope, q: &LatticePolytope) -> Result<Equivalence> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch(p.dim, q.dim));
    }
    let d = p.dim;
    if p.vertices.len() != q.vertices.len() {
        return Ok(Equivalence::NotEquivalent);
    }
    if d == 0 {
        return Ok(Equivalence::Equivalent {
            matrix: Vec::new(),
            translation: Vec::new(),
        });
    }
    if p.invariants() != q.invariants() {
        return Ok(Equivalence::NotEquivalent);
    }
    let p_edges = p.edges();
    let q_edges = q.edges();
    let Some(base) = (0..p.vertices.len()).find(|&v| p.neighbours(v, &p_edges).len() == d) else {
        return Ok(Equivalence::Undecided);
    };
    let p_dirs: Vec<Vec<BigInt>> = p.edge_directions(base, &p_edges).into_iter().map(|(x, _)| x).collect();
    // columns are the edge directions
    let p_inv = inverse(&transpose(&to_q(&p_dirs))).expect("simple vertex spans");
    for w in 0..q.vertices.len() {
        let q_dirs: Vec<Vec<BigInt>> = q.edge_directions(w, &q_edges).into_iter().map(|(x, _)| x).collect();
        if q_dirs.len() != d {
            continue;
        }
        for order in (0..d).permutations(d) {
            let cols: Vec<Vec<BigInt>> = order.iter().map(|&i| q_dirs[i].clone()).collect();
            let m = mat_mul(&transpose(&to_q(&cols)), &p_inv);
            if m.iter().flatten().any(|x| !x.is_integer()) || !det(&m).abs().is_one() {
                continue;
            }
            let mp = mat_vec(&m, &p.vertices[base]);
            let t: Vec<Rational> = q.vertices[w].iter().zip(mp).map(|(a, b)| a - b).collect();
            if sorted_image(p, &m, &t) == q.vertices {
                return Ok(Equivalence::Equivalent {
                    matrix: m.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect(),
                    translation: t,
                });
            }
        }
    }
    Ok(Equivalence::NotEquivalent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::tests::pts;
    use crate::rational::int;

    fn poly(list: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_vertices(list[0].len(), &pts(list)).unwrap()
    }

    fn check_map(p: &LatticePolytope, q: &LatticePolytope, e: &Equivalence) {
        let Equivalence::Equivalent { matrix, translation } = e else {
            panic!("expected a map, got {e:?}");
        };
        assert_eq!(&p.transformed(matrix, translation).unwrap().vertices, &q.vertices);
        assert!(det(&to_q(matrix)).abs().is_one());
    }

    #[test]
    fn rectangles_swap_axes() {
        let a = poly(&[&[3, 2], &[3, 6], &[5, 2], &[5, 6]]);
        let b = poly(&[&[0, 0], &[4, 0], &[0, 2], &[4, 2]]);
        let e = lattice_equivalent(&a, &b).unwrap();
        check_map(&a, &b, &e);
    }

    #[test]
    fn rectangle_versus_trapezoid() {
        let a = poly(&[&[3, 2], &[3, 6], &[5, 2], &[5, 6]]);
        let t = poly(&[&[1, 3], &[1, 5], &[3, 1], &[3, 7]]);
        assert_eq!(a.volume(), t.volume());
        assert_eq!(lattice_equivalent(&a, &t).unwrap(), Equivalence::NotEquivalent);
    }

    #[test]
    fn shear() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let par = poly(&[&[0, 0], &[1, 0], &[1, 1], &[2, 1]]);
        let e = lattice_equivalent(&sq, &par).unwrap();
        check_map(&sq, &par, &e);
    }

    #[test]
    fn same_volume_different_shape() {
        let a = poly(&[&[0, 0], &[2, 0], &[0, 2]]);
        let b = poly(&[&[0, 0], &[4, 0], &[0, 1]]);
        assert_eq!(lattice_equivalent(&a, &b).unwrap(), Equivalence::NotEquivalent);
    }

    #[test]
    fn low_dimensions_and_mismatch() {
        let s = LatticePolytope::from_vertices(1, &[vec![int(0)], vec![int(3)]]).unwrap();
        let t = LatticePolytope::from_vertices(1, &[vec![int(5)], vec![int(2)]]).unwrap();
        check_map(&s, &t, &lattice_equivalent(&s, &t).unwrap());
        let u = LatticePolytope::from_vertices(1, &[vec![int(0)], vec![int(2)]]).unwrap();
        assert_eq!(lattice_equivalent(&s, &u).unwrap(), Equivalence::NotEquivalent);
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(lattice_equivalent(&s, &sq), Err(Error::DimensionMismatch(1, 2)));
    }

    #[test]
    fn three_dimensional_boxes() {
        let cube = |a: i64, b: i64, c: i64| -> LatticePolytope {
            let v: Vec<Vec<Rational>> = (0..8)
                .map(|k: i64| vec![int((k & 1) * a), int((k >> 1 & 1) * b), int((k >> 2 & 1) * c)])
                .collect();
            LatticePolytope::from_vertices(3, &v).unwrap()
        };
        let x = cube(1, 2, 3);
        let y = cube(3, 1, 2);
        check_map(&x, &y, &lattice_equivalent(&x, &y).unwrap());
        assert_eq!(lattice_equivalent(&x, &cube(1, 1, 6)).unwrap(), Equivalence::NotEquivalent);
    }

    #[test]
    fn octahedron_is_undecided_against_itself_shifted() {
        let o = poly(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]]);
        let shifted = o
            .transformed(&[vec![1.into(), 0.into(), 0.into()], vec![0.into(), 1.into(), 0.into()], vec![0.into(), 0.into(), 1.into()]], &[int(1), int(0), int(0)])
            .unwrap();
        assert_eq!(lattice_equivalent(&o, &shifted).unwrap(), Equivalence::Undecided);
    }
}
