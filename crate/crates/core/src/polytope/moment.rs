//! Moment polytopes of toric bending actions.

use num_traits::Zero;

use crate::bending::BendingSet;
use crate::error::{Error, Result};
use crate::model::{EdgeSet, LengthFunction};
use crate::rational::Rational;

use super::{Halfspace, LatticePolytope};

pub const MAX_POLYTOPE_DIM: usize = 3;

/// The value of a bending function as an affine function of the coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Affine {
    coef: Vec<Rational>,
    constant: Rational,
}

impl Affine {
    fn constant(dim: usize, c: Rational) -> Self {
        Affine {
            coef: vec![Rational::zero(); dim],
            constant: c,
        }
    }

    fn var(dim: usize, k: usize) -> Self {
        let mut a = Affine::constant(dim, Rational::zero());
        a.coef[k] = Rational::from_integer(1.into());
        a
    }

    /// `self <= a + b` as a halfspace; `Err(holds)` when no coordinate is
    /// involved.
    fn at_most_sum(&self, a: &Affine, b: &Affine) -> std::result::Result<Halfspace, bool> {
        let normal: Vec<Rational> = (0..self.coef.len())
            .map(|k| &self.coef[k] - &a.coef[k] - &b.coef[k])
            .collect();
        let offset = &a.constant + &b.constant - &self.constant;
        match Halfspace::new(&normal, offset.clone()) {
            Some(h) => Ok(h),
            None => Err(offset >= Rational::zero()),
        }
    }
}

/// Coordinates of the moment map of a toric bending set: the members whose
/// bending functions are independent coordinates, in canonical order.
///
/// A member whose complement is a single edge has constant bending function;
/// with two maximal blocks the second block repeats the first.
pub fn moment_coordinates(lambda: &LengthFunction, set: &BendingSet) -> Result<Vec<EdgeSet>> {
    Ok(assign(lambda, set)?.0)
}

/// Coordinates, and the affine form of every member's bending function.
type Assignment = (Vec<EdgeSet>, Vec<(EdgeSet, Affine)>);

fn assign(lambda: &LengthFunction, set: &BendingSet) -> Result<Assignment> {
    if !set.is_full() {
        return Err(Error::NotFull);
    }
    let n = lambda.len();
    let expected = n.saturating_sub(3);
    let got = set.torus_dimension();
    if set.maximal_elements().len() > 3 {
        return Err(Error::NotToric { got, expected });
    }
    if expected > MAX_POLYTOPE_DIM {
        return Err(Error::DimensionTooLarge(expected));
    }
    let all = lambda.edges();
    let dim = expected;
    let mut coords = Vec::new();
    let mut values: Vec<(EdgeSet, Affine)> = (0..n)
        .map(|i| (EdgeSet::singleton(i), Affine::constant(dim, lambda.length(i).clone())))
        .collect();
    for m in set.non_singletons() {
        let complement = all.difference(m);
        let value = if complement.len() == 1 {
            Affine::constant(dim, lambda.sum(complement))
        } else if let Some((_, v)) = values.iter().find(|(j, _)| *j == complement) {
            v.clone()
        } else {
            coords.push(m);
            if coords.len() > dim {
                return Err(Error::NotToric { got, expected });
            }
            Affine::var(dim, coords.len() - 1)
        };
        values.push((m, value));
    }
    if coords.len() != dim {
        return Err(Error::NotToric { got, expected });
    }
    Ok((coords, values))
}

/// Exact moment polytope of the toric bending action of a full bending set
/// with at most three maximal elements, for `|E| <= 6`.
///
/// Each member split as `J = J' + J''` contributes the triangle inequalities
/// among `t_J, t_J', t_J''`; three maximal blocks contribute the triangle
/// inequalities among their values.
pub fn moment_polytope(lambda: &LengthFunction, set: &BendingSet) -> Result<LatticePolytope> {
    let (coords, values) = assign(lambda, set)?;
    let dim = coords.len();
    let value = |j: EdgeSet| -> &Affine { &values.iter().find(|(m, _)| *m == j).unwrap().1 };
    let mut triangles: Vec<[EdgeSet; 3]> = set
        .non_singletons()
        .map(|m| {
            let c = set.children(m);
            [m, c[0], c[1]]
        })
        .collect();
    let blocks = set.maximal_elements();
    if blocks.len() == 3 {
        let b = blocks.blocks();
        triangles.push([b[0], b[1], b[2]]);
    }
    let mut halfspaces: Vec<Halfspace> = Vec::new();
    for [x, y, z] in triangles {
        for (a, b, c) in [(x, y, z), (y, x, z), (z, x, y)] {
            match value(a).at_most_sum(value(b), value(c)) {
                Ok(h) => {
                    if !halfspaces.contains(&h) {
                        halfspaces.push(h);
                    }
                }
                Err(true) => {}
                Err(false) => {
                    return Err(Error::DegeneratePolytope(format!(
                        "constant triangle inequality fails at {}",
                        lambda.describe(a)
                    )))
                }
            }
        }
    }
    LatticePolytope::from_halfspaces(dim, halfspaces, coords)
}
