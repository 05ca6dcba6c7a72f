//! Registry of worked examples. Each produces a deterministic JSON report;
//! the command-line tool compares them against checked-in golden files.

use serde_json::{json, Value};

use crate::bending::{critical_values, fill, moment_image, BendingSet};
use crate::error::Result;
use crate::json;
use crate::model::{LengthFunction, Limits, PolygonSpace};
use crate::polytope::{
    conjugacy_classes, lattice_equivalent, moment_polytope, nonbending_report, Equivalence,
    NonbendingRegime,
};
use crate::search::{
    enumerate_maximal_tori, is_maximal_bending, max_bending_dim, max_containing_dim,
    min_lopsided_partition, torus_report, two_long_edge_partition, TheoremB,
};

/// A registered example.
pub struct Reproduction {
    pub id: &'static str,
    pub title: &'static str,
    pub run: fn() -> Result<Value>,
}

pub const REGISTRY: &[Reproduction] = &[
    Reproduction {
        id: "pentagon-critical",
        title: "almost regular pentagon (1,1,1,1,3/2)",
        run: pentagon_critical,
    },
    Reproduction {
        id: "two-long-edge",
        title: "two long edges (1,1,1,1,3,3)",
        run: two_long_edge,
    },
    Reproduction {
        id: "pab-mixed",
        title: "pentagon P_{a,b} with a=3/2, b=3/4",
        run: pab_mixed,
    },
    Reproduction {
        id: "heptagon-spectrum",
        title: "heptagon (1,1,2,2,3,3,3)",
        run: heptagon_spectrum,
    },
    Reproduction {
        id: "gon-7m-spectrum",
        title: "(7+m)-gon with m=2",
        run: gon_7m_spectrum,
    },
    Reproduction {
        id: "conjugacy-1a444",
        title: "conjugacy classes on Pol(1,2,4,4,4)",
        run: conjugacy_1a444,
    },
    Reproduction {
        id: "nonbending-1a444",
        title: "non-bending tori on Pol(1,5/2,4,4,4)",
        run: nonbending_1a444,
    },
    Reproduction {
        id: "probe-11122",
        title: "two-long-edge probe on (1,1,1,2,2)",
        run: probe_11122,
    },
];

pub fn find(id: &str) -> Option<&'static Reproduction> {
    REGISTRY.iter().find(|r| r.id == id)
}

fn space(lengths: &[&str]) -> Result<PolygonSpace> {
    PolygonSpace::new(LengthFunction::parse(lengths)?)
}

fn family(lambda: &LengthFunction, members: &[&[usize]]) -> Result<BendingSet> {
    Ok(fill(lambda, &BendingSet::from_positions(lambda, members)?))
}

fn family_report(space: &PolygonSpace, set: &BendingSet) -> Result<Value> {
    let (maximal, common) = is_maximal_bending(space, set)?;
    Ok(json!({
        "bending_set": json::bending_set(space, set),
        "is_full": set.is_full(),
        "dimension": set.torus_dimension(),
        "is_maximal_bending": maximal,
        "common_value": common.as_ref().map_or(Value::Null, json::rational),
    }))
}

fn spectrum_summary(tori: &crate::search::MaximalTori) -> Value {
    let counts: serde_json::Map<String, Value> = tori
        .dimension_counts
        .iter()
        .map(|(d, c)| (d.to_string(), json!(c.to_string())))
        .collect();
    json!({
        "spectrum": tori.spectrum(),
        "counts_by_dimension": counts,
        "total": tori.total().to_string(),
    })
}

fn pentagon_critical() -> Result<Value> {
    let s = space(&["1", "1", "1", "1", "3/2"])?;
    let n = min_lopsided_partition(&s);
    let i = s.positions(&[4, 5]);
    let tori = enumerate_maximal_tori(&s, None, &Limits::default())?;
    let dims: Vec<usize> = tori.reports.iter().map(|r| r.dimension).collect();
    Ok(json!({
        "lambda": json::length_function(&s),
        "N": n.count,
        "witness": json::partition(&s, &n.partition),
        "max_bending_dim": max_bending_dim(&s),
        "subset": json::subset(&s, i),
        "moment_image": json::interval(&moment_image(&s, i)?),
        "critical_values": json::rationals(&critical_values(&s, i)?),
        "maximal_tori": tori.reports.iter().map(|r| json::torus_report(&s, r)).collect::<Vec<_>>(),
        "all_one_dimensional": dims.iter().all(|&d| d == 1),
        "all_maximal_hamiltonian": tori.reports.iter().all(|r| r.theorem_b == TheoremB::MaximalHamiltonian),
    }))
}

fn two_long_edge() -> Result<Value> {
    let lambda = LengthFunction::parse(&["1", "1", "1", "1", "3", "3"])?;
    let s = PolygonSpace::allowing_singular(lambda, &Limits::default())?;
    let n = min_lopsided_partition(&s);
    let probe = two_long_edge_partition(&s);
    let mut out = json!({
        "lambda": json::length_function(&s),
        "generic": s.is_generic_space(),
        "N": n.count,
        "witness": json::partition(&s, &n.partition),
        "max_bending_dim": max_bending_dim(&s),
        "long_pairs": probe.long_pairs.iter().map(|&(a, b)| json!([s.id(a).as_str(), s.id(b).as_str()])).collect::<Vec<_>>(),
        "partition": probe.partition.map_or(Value::Null, |(a, b)| json!([json::block(&s, a), json::block(&s, b)])),
    });
    if let Some((a, b)) = probe.partition {
        let toric = fill(&s, &BendingSet::new(&s, &[a, b])?);
        let p = moment_polytope(&s, &toric)?;
        out["toric_set"] = json::bending_set(&s, &toric);
        out["toric_dimension"] = json!(toric.torus_dimension());
        out["polytope"] = json::polytope(&s, &p);
        out["polytope_volume"] = json::rational(&p.volume());
        out["is_delzant"] = json!(p.is_delzant());
    }
    Ok(out)
}

fn pab_mixed() -> Result<Value> {
    let s = space(&["1", "1", "1", "3/2", "3/4"])?;
    let circle = family(&s, &[&[4, 5]])?;
    let toric = family(&s, &[&[4, 1], &[5, 2]])?;
    let tori = enumerate_maximal_tori(&s, None, &Limits::default())?;
    Ok(json!({
        "lambda": json::length_function(&s),
        "circle": json::torus_report(&s, &torus_report(&s, &circle)),
        "toric": family_report(&s, &toric)?,
        "toric_polytope": json::polytope(&s, &moment_polytope(&s, &toric)?),
        "maximal_tori": spectrum_summary(&tori),
    }))
}

fn heptagon_families(s: &PolygonSpace) -> Result<Vec<BendingSet>> {
    Ok(vec![
        family(s, &[&[3, 1], &[4, 2]])?,
        family(s, &[&[3, 1], &[5, 2], &[6, 4]])?,
        family(s, &[&[5, 1], &[5, 1, 2], &[6, 3], &[7, 4]])?,
    ])
}

fn heptagon_spectrum() -> Result<Value> {
    let s = space(&["1", "1", "2", "2", "3", "3", "3"])?;
    let tori = enumerate_maximal_tori(&s, None, &Limits::default())?;
    let pair = s.positions(&[7, 4]);
    let mut containing: Vec<usize> = tori
        .reports
        .iter()
        .filter(|r| r.bending_set.contains(pair))
        .map(|r| r.dimension)
        .collect();
    containing.sort();
    containing.dedup();
    let circle = BendingSet::new(&s, &[pair])?;
    let (n, witness) = max_containing_dim(&s, &circle)?;
    Ok(json!({
        "lambda": json::length_function(&s),
        "generic": s.is_generic(),
        "families": heptagon_families(&s)?.iter().map(|f| family_report(&s, f)).collect::<Result<Vec<_>>>()?,
        "maximal_tori": spectrum_summary(&tori),
        "pair": json::block(&s, pair),
        "pair_dimensions": containing,
        "pair_max_containing_dim": n,
        "pair_witness": json::bending_set(&s, &witness),
    }))
}

fn gon_7m_spectrum() -> Result<Value> {
    let s = space(&["1", "1", "2", "2", "3", "3", "3", "1/2", "1/4"])?;
    let families = [
        family(&s, &[&[3, 1], &[4, 2], &[5, 8, 9]])?,
        family(&s, &[&[3, 1], &[5, 2], &[6, 4], &[7, 8, 9]])?,
        family(&s, &[&[5, 1, 2, 8, 9], &[6, 3], &[7, 4]])?,
    ];
    let tori = enumerate_maximal_tori(&s, Some(0), &Limits::default())?;
    Ok(json!({
        "lambda": json::length_function(&s),
        "m": 2,
        "families": families.iter().map(|f| family_report(&s, f)).collect::<Result<Vec<_>>>()?,
        "maximal_tori": spectrum_summary(&tori),
    }))
}

fn conjugacy_1a444() -> Result<Value> {
    let s = space(&["1", "2", "4", "4", "4"])?;
    let report = conjugacy_classes(&s, &Limits::default())?;
    let t1 = moment_polytope(&s, &family(&s, &[&[3, 1], &[4, 2]])?)?;
    let refinements: [(&str, &[usize]); 3] = [("{a,1}", &[2, 1]), ("{c,1}", &[3, 1]), ("{c,a}", &[3, 2])];
    let mut rows = Vec::new();
    for (name, inner) in refinements {
        let set = family(&s, &[inner, &[3, 2, 1]])?;
        let p = moment_polytope(&s, &set)?;
        let eq = lattice_equivalent(&t1, &p)?;
        rows.push(json!({
            "refinement": name,
            "bending_set": json::bending_set(&s, &set),
            "polytope": json::polytope(&s, &p),
            "is_delzant": p.is_delzant(),
            "equivalent_to_t1": eq.is_equivalent(),
            "map": equivalence(&eq),
        }));
    }
    // the printed T2 is the {c,1} refinement
    let printed_is_t1 = rows[1]["equivalent_to_t1"] == json!(true);
    Ok(json!({
        "lambda": json::length_function(&s),
        "classes": report.classes.iter().map(|c| json!({
            "representative": json::polytope(&s, &c.representative),
            "representative_set": json::bending_set(&s, &c.representative_set),
            "is_delzant": c.representative.is_delzant(),
            "size": c.members.len(),
        })).collect::<Vec<_>>(),
        "class_count": report.classes.len(),
        "partial": report.partial,
        "t1": json::polytope(&s, &t1),
        "refinements_of_c_a_1": rows,
        "printed_t2_discrepancy": printed_is_t1,
    }))
}

fn equivalence(e: &Equivalence) -> Value {
    match e {
        Equivalence::Equivalent { matrix, translation } => json!({
            "matrix": matrix.iter().map(|r| r.iter().map(json::integer).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "translation": json::rationals(translation),
        }),
        Equivalence::NotEquivalent => Value::Null,
        Equivalence::Undecided => json!("undecided"),
    }
}

fn nonbending_1a444() -> Result<Value> {
    let s = space(&["1", "5/2", "4", "4", "4"])?;
    let r = nonbending_report(&s)?.expect("pattern holds");
    Ok(json!({
        "lambda": json::length_function(&s),
        "a": json::rational(&r.a),
        "c": json::rational(&r.c),
        "regime": match r.regime {
            NonbendingRegime::NonBendingToriExist => "NonBendingToriExist",
            NonbendingRegime::PolytopeDataOnly => "PolytopeDataOnly",
            NonbendingRegime::OutsideHypothesis => "OutsideHypothesis",
        },
        "hamiltonian_classes": r.hamiltonian_classes.as_ref().map_or(Value::Null, json::integer),
        "bending_classes": r.bending_classes,
        "nonbending_tori_exist": r.nonbending_tori_exist,
    }))
}

fn probe_11122() -> Result<Value> {
    let s = space(&["1", "1", "1", "2", "2"])?;
    let probe = two_long_edge_partition(&s);
    let n = min_lopsided_partition(&s);
    Ok(json!({
        "lambda": json::length_function(&s),
        "generic": s.is_generic(),
        "long_pairs": probe.long_pairs.iter().map(|&(a, b)| json!([s.id(a).as_str(), s.id(b).as_str()])).collect::<Vec<_>>(),
        "partition": probe.partition.map_or(Value::Null, |(a, b)| json!([json::block(&s, a), json::block(&s, b)])),
        "N": n.count,
        "witness": json::partition(&s, &n.partition),
        "max_bending_dim": max_bending_dim(&s),
    }))
}
