//! Conjugacy classes of toric bending tori and the non-bending report for
//! `Pol(1, a, c, c, c)`.

use num_bigint::BigInt;

use crate::bending::BendingSet;
use crate::error::Result;
use crate::model::{LengthFunction, Limits};
use crate::rational::{ceil, int, Rational};
use crate::search::toric_bending_sets;

use super::lattice::{lattice_equivalent, Equivalence};
use super::moment::moment_polytope;
use super::LatticePolytope;

/// One class of toric bending sets whose moment polytopes are lattice
/// equivalent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// The member polytope with the least sorted vertex list.
    pub representative: LatticePolytope,
    pub representative_set: BendingSet,
    pub members: Vec<BendingSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyReport {
    /// Sorted by representative vertex list.
    pub classes: Vec<ConjugacyClass>,
    /// Some pair of polytopes could only be screened, not decided.
    pub partial: bool,
}

/// Groups all toric full bending sets by lattice equivalence of their
/// moment polytopes.
pub fn conjugacy_classes(lambda: &LengthFunction, limits: &Limits) -> Result<ConjugacyReport> {
    limits.check("enumeration", lambda.len(), limits.max_enumeration_edges)?;
    let mut classes: Vec<ConjugacyClass> = Vec::new();
    let mut partial = false;
    for set in toric_bending_sets(lambda) {
        let polytope = moment_polytope(lambda, &set)?;
        let mut placed = false;
        for class in classes.iter_mut() {
            match lattice_equivalent(&class.representative, &polytope)? {
                Equivalence::Equivalent { .. } => {
                    if polytope.vertices < class.representative.vertices {
                        class.representative = polytope.clone();
                        class.representative_set = set.clone();
                    }
                    class.members.push(set.clone());
                    placed = true;
                    break;
                }
                Equivalence::Undecided => partial = true,
                Equivalence::NotEquivalent => {}
            }
        }
        if !placed {
            classes.push(ConjugacyClass {
                representative: polytope,
                representative_set: set.clone(),
                members: vec![set],
            });
        }
    }
    classes.sort_by(|a, b| a.representative.vertices.cmp(&b.representative.vertices));
    Ok(ConjugacyReport { classes, partial })
}

/// Which conclusion applies to `Pol(1, a, c, c, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NonbendingRegime {
    /// `c > a + 1 > 3`: there are `ceil(a)` conjugacy classes of maximal
    /// Hamiltonian tori but only two of bending tori.
    NonBendingToriExist,
    /// `c > a + 1 > 2`: the two bending classes are described, nothing is
    /// concluded about other tori.
    PolytopeDataOnly,
    /// The pattern holds but neither inequality does.
    OutsideHypothesis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonbendingReport {
    pub a: Rational,
    pub c: Rational,
    /// Edge indices carrying the lengths `1`, `a` and `c, c, c`.
    pub unit_edge: usize,
    pub a_edge: usize,
    pub c_edges: [usize; 3],
    pub regime: NonbendingRegime,
    /// `ceil(a)` in the first regime.
    pub hamiltonian_classes: Option<BigInt>,
    /// Classes of toric bending tori, computed.
    pub bending_classes: usize,
    pub nonbending_tori_exist: bool,
}

/// Recognises `Pol(1, a, c, c, c)` up to a permutation of the edges.
fn match_pattern(lambda: &LengthFunction) -> Option<(usize, usize, [usize; 3])> {
    if lambda.len() != 5 {
        return None;
    }
    for c_idx in 0..5 {
        let c = lambda.length(c_idx);
        let same: Vec<usize> = (0..5).filter(|&i| lambda.length(i) == c).collect();
        if same.len() < 3 {
            continue;
        }
        let triple = [same[0], same[1], same[2]];
        let rest: Vec<usize> = (0..5).filter(|i| !triple.contains(i)).collect();
        for (u, a) in [(rest[0], rest[1]), (rest[1], rest[0])] {
            if *lambda.length(u) == int(1) {
                return Some((u, a, triple));
            }
        }
    }
    None
}

/// Report on non-bending maximal Hamiltonian tori of `Pol(1, a, c, c, c)`;
/// `None` when the length function does not have that shape.
pub fn nonbending_report(lambda: &LengthFunction) -> Result<Option<NonbendingReport>> {
    let Some((unit_edge, a_edge, c_edges)) = match_pattern(lambda) else {
        return Ok(None);
    };
    let a = lambda.length(a_edge).clone();
    let c = lambda.length(c_edges[0]).clone();
    let a1 = &a + int(1);
    let regime = if c > a1 && a1 > int(3) {
        NonbendingRegime::NonBendingToriExist
    } else if c > a1 && a1 > int(2) {
        NonbendingRegime::PolytopeDataOnly
    } else {
        NonbendingRegime::OutsideHypothesis
    };
    let bending_classes = conjugacy_classes(lambda, &Limits::default())?.classes.len();
    let hamiltonian_classes = (regime == NonbendingRegime::NonBendingToriExist).then(|| ceil(&a));
    let nonbending_tori_exist = hamiltonian_classes
        .as_ref()
        .is_some_and(|h| *h > BigInt::from(bending_classes));
    Ok(Some(NonbendingReport {
        a,
        c,
        unit_edge,
        a_edge,
        c_edges,
        regime,
        hamiltonian_classes,
        bending_classes,
        nonbending_tori_exist,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(lengths: &[&str]) -> LengthFunction {
        LengthFunction::parse(lengths).unwrap()
    }

    #[test]
    fn two_classes_for_1a444() {
        let l = lf(&["1", "2", "4", "4", "4"]);
        let report = conjugacy_classes(&l, &Limits::default()).unwrap();
        assert!(!report.partial);
        assert_eq!(report.classes.len(), 2);
        let total: usize = report.classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, 15);
        for class in &report.classes {
            assert!(class.representative.is_delzant());
            for m in &class.members {
                let p = moment_polytope(&l, m).unwrap();
                assert!(lattice_equivalent(&class.representative, &p).unwrap().is_equivalent());
            }
        }
        let reps: Vec<_> = report.classes.iter().map(|c| c.representative.vertices.clone()).collect();
        assert!(!lattice_equivalent(&report.classes[0].representative, &report.classes[1].representative)
            .unwrap()
            .is_equivalent());
        assert!(reps.iter().all(|r| r.len() == 4));
    }

    #[test]
    fn class_counts_elsewhere() {
        let none = lf(&["1", "1", "1", "1", "3/2"]);
        assert_eq!(conjugacy_classes(&none, &Limits::default()).unwrap().classes.len(), 0);
        let pab = lf(&["1", "1", "1", "3/2", "3/4"]);
        assert!(!conjugacy_classes(&pab, &Limits::default()).unwrap().classes.is_empty());
    }

    #[test]
    fn nonbending_regimes() {
        let r = nonbending_report(&lf(&["1", "5/2", "4", "4", "4"])).unwrap().unwrap();
        assert_eq!(r.regime, NonbendingRegime::NonBendingToriExist);
        assert_eq!(r.hamiltonian_classes, Some(BigInt::from(3)));
        assert_eq!(r.bending_classes, 2);
        assert!(r.nonbending_tori_exist);

        let r = nonbending_report(&lf(&["4", "1", "4", "2", "4"])).unwrap().unwrap();
        assert_eq!(r.regime, NonbendingRegime::PolytopeDataOnly);
        assert_eq!((r.unit_edge, r.a_edge), (1, 3));
        assert_eq!(r.hamiltonian_classes, None);
        assert!(!r.nonbending_tori_exist);

        let r = nonbending_report(&lf(&["1", "3", "7/2", "7/2", "7/2"])).unwrap().unwrap();
        assert_eq!(r.regime, NonbendingRegime::OutsideHypothesis);

        assert_eq!(nonbending_report(&lf(&["1", "1", "2", "2", "3", "3", "3"])).unwrap(), None);
        assert_eq!(nonbending_report(&lf(&["2", "5/2", "4", "4", "4"])).unwrap(), None);
    }
}
