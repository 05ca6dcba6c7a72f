//! JSON documents for length functions, subsets, bending sets, intervals,
//! polytopes and reports.
//!
//! Rationals are strings `"p/q"` (or `"p"`), so no precision is lost. Objects
//! are emitted with sorted keys, which makes output byte-for-byte
//! deterministic.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bending::{BendingSet, Interval, PartitionOfE};
use crate::error::{Error, Result};
use crate::model::{EdgeId, EdgeSet, LengthFunction};
use crate::polytope::{Halfspace, LatticePolytope};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::search::{TheoremB, TorusReport};

fn bad(what: impl Into<String>) -> Error {
    Error::Json(what.into())
}

pub fn parse_str(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

/// A rational given as a string or as a JSON integer.
pub fn parse_rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(Error::ParseRational(other.to_string())),
    }
}

/// `{"edges":[{"id":"e1","length":"3/2"}, ...]}`.
pub fn parse_length_function(v: &Value) -> Result<LengthFunction> {
    let edges = v
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("expected an object with an `edges` array"))?;
    let mut out = Vec::with_capacity(edges.len());
    for e in edges {
        let id = e
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("edge without a string `id`"))?;
        let length = e.get("length").ok_or_else(|| bad(format!("edge `{id}` without `length`")))?;
        out.push((EdgeId::new(id), parse_rational_value(length)?));
    }
    LengthFunction::new(out)
}

/// `["e4","e5"]`.
pub fn parse_subset(lambda: &LengthFunction, v: &Value) -> Result<EdgeSet> {
    let ids = v.as_array().ok_or_else(|| bad("a subset is an array of edge ids"))?;
    let labels: Vec<&str> = ids
        .iter()
        .map(|x| x.as_str().ok_or_else(|| bad("edge ids are strings")))
        .collect::<Result<_>>()?;
    let set = lambda.subset(&labels)?;
    if set.len() != labels.len() {
        return Err(bad("subset repeats an edge id"));
    }
    Ok(set)
}

/// `{"members":[["e4","e5"], ...]}`; singletons are implicit.
pub fn parse_bending_set(lambda: &LengthFunction, v: &Value) -> Result<BendingSet> {
    let members = v
        .get("members")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("expected an object with a `members` array"))?;
    let family: Vec<EdgeSet> = members
        .iter()
        .map(|m| parse_subset(lambda, m))
        .collect::<Result<_>>()?;
    BendingSet::new(lambda, &family)
}

/// `{"lo":"1/2","hi":"5/2"}`.
pub fn parse_interval(v: &Value) -> Result<Interval> {
    let lo = parse_rational_value(v.get("lo").ok_or_else(|| bad("interval without `lo`"))?)?;
    let hi = parse_rational_value(v.get("hi").ok_or_else(|| bad("interval without `hi`"))?)?;
    if lo > hi {
        return Err(bad("interval with lo > hi"));
    }
    Ok(Interval::new(lo, hi))
}

/// Polytope documents as emitted by [`polytope`]. The vertex list is
/// recomputed from the halfspaces and must agree with the one given.
pub fn parse_polytope(lambda: &LengthFunction, v: &Value) -> Result<LatticePolytope> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("polytope without integer `dim`"))? as usize;
    let labels: Vec<EdgeSet> = match v.get("labels") {
        Some(Value::Array(ls)) => ls.iter().map(|l| parse_subset(lambda, l)).collect::<Result<_>>()?,
        None => Vec::new(),
        Some(_) => return Err(bad("`labels` must be an array")),
    };
    let hs = v
        .get("halfspaces")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("polytope without `halfspaces`"))?;
    let mut halfspaces = Vec::with_capacity(hs.len());
    for h in hs {
        let normal: Vec<Rational> = h
            .get("normal")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("halfspace without `normal`"))?
            .iter()
            .map(parse_rational_value)
            .collect::<Result<_>>()?;
        let offset = parse_rational_value(h.get("offset").ok_or_else(|| bad("halfspace without `offset`"))?)?;
        halfspaces.push(Halfspace::new(&normal, offset).ok_or_else(|| bad("zero normal"))?);
    }
    let p = LatticePolytope::from_halfspaces(dim, halfspaces, labels)?;
    if let Some(Value::Array(vs)) = v.get("vertices") {
        let given: Vec<Vec<Rational>> = vs
            .iter()
            .map(|x| {
                x.as_array()
                    .ok_or_else(|| bad("a vertex is an array"))?
                    .iter()
                    .map(parse_rational_value)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut sorted = given;
        sorted.sort();
        if sorted != p.vertices {
            return Err(bad("vertices disagree with the halfspaces"));
        }
    }
    Ok(p)
}

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rationals(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(rational).collect())
}

pub fn integer(n: &BigInt) -> Value {
    // integers beyond i64 are kept exact as strings
    match i64::try_from(n) {
        Ok(x) => json!(x),
        Err(_) => Value::String(n.to_string()),
    }
}

pub fn length_function(lambda: &LengthFunction) -> Value {
    let edges: Vec<Value> = (0..lambda.len())
        .map(|i| json!({"id": lambda.id(i).as_str(), "length": rational(lambda.length(i))}))
        .collect();
    json!({ "edges": edges })
}

/// Edge ids in index order.
pub fn subset(lambda: &LengthFunction, set: EdgeSet) -> Value {
    json!(lambda.labels(set))
}

/// Edge ids with the dominant edge first, then the rest in index order.
pub fn block(lambda: &LengthFunction, set: EdgeSet) -> Value {
    let ids = match lambda.dominant_edge(set) {
        Some(d) if set.len() > 1 => {
            let mut ids = vec![lambda.id(d).as_str().to_string()];
            ids.extend(set.indices().filter(|&i| i != d).map(|i| lambda.id(i).as_str().to_string()));
            ids
        }
        _ => lambda.labels(set),
    };
    json!(ids)
}

/// Blocks by decreasing size, ties in canonical order, each dominant-first.
pub fn partition(lambda: &LengthFunction, p: &PartitionOfE) -> Value {
    let mut blocks = p.blocks().to_vec();
    blocks.sort_by(|a, b| b.len().cmp(&a.len()).then(a.canonical_cmp(b)));
    Value::Array(blocks.into_iter().map(|b| block(lambda, b)).collect())
}

pub fn bending_set(lambda: &LengthFunction, set: &BendingSet) -> Value {
    let members: Vec<Value> = set.non_singletons().map(|m| subset(lambda, m)).collect();
    json!({ "members": members })
}

pub fn interval(i: &Interval) -> Value {
    json!({"lo": rational(&i.lo), "hi": rational(&i.hi)})
}

pub fn polytope(lambda: &LengthFunction, p: &LatticePolytope) -> Value {
    let halfspaces: Vec<Value> = p
        .halfspaces
        .iter()
        .map(|h| {
            json!({
                "normal": h.normal.iter().map(integer).collect::<Vec<_>>(),
                "offset": rational(&h.offset),
            })
        })
        .collect();
    let vertices: Vec<Value> = p.vertices.iter().map(|v| rationals(v)).collect();
    json!({
        "dim": p.dim,
        "labels": p.labels.iter().map(|&l| block(lambda, l)).collect::<Vec<_>>(),
        "halfspaces": halfspaces,
        "vertices": vertices,
    })
}

pub fn theorem_b(t: TheoremB) -> Value {
    Value::String(
        match t {
            TheoremB::MaximalHamiltonian => "MaximalHamiltonian",
            TheoremB::NotApplicable => "NotApplicable",
        }
        .into(),
    )
}

pub fn torus_report(lambda: &LengthFunction, r: &TorusReport) -> Value {
    json!({
        "bending_set": bending_set(lambda, &r.bending_set),
        "dimension": r.dimension,
        "is_full": r.is_full,
        "maximal_blocks": partition(lambda, &r.maximal_blocks),
        "is_maximal_bending": r.is_maximal_bending,
        "theorem_b": theorem_b(r.theorem_b),
        "common_value": r.common_value.as_ref().map_or(Value::Null, rational),
    })
}

/// Structured error document.
pub fn error(e: &Error, context: Value) -> Value {
    json!({"code": e.code(), "message": e.to_string(), "context": context})
}

/// Deterministic compact text of a document.
pub fn to_string(v: &Value) -> String {
    serde_json::to_string(v).expect("values always serialise")
}

pub fn to_string_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values always serialise")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PolygonSpace;
    use crate::polytope::moment_polytope;
    use crate::rational::{frac, int};
    use crate::search::{min_lopsided_partition, torus_report as report_of};

    fn pentagon() -> LengthFunction {
        LengthFunction::parse(&["1", "1", "1", "1", "3/2"]).unwrap()
    }

    #[test]
    fn length_function_round_trip() {
        let l = pentagon();
        let v = length_function(&l);
        assert_eq!(
            to_string(&v),
            r#"{"edges":[{"id":"e1","length":"1"},{"id":"e2","length":"1"},{"id":"e3","length":"1"},{"id":"e4","length":"1"},{"id":"e5","length":"3/2"}]}"#
        );
        assert_eq!(parse_length_function(&v).unwrap(), l);
        let shorthand = parse_str(r#"{"edges":[{"id":"a","length":2},{"id":"b","length":"6/4"},{"id":"c","length":"1"}]}"#).unwrap();
        let m = parse_length_function(&shorthand).unwrap();
        assert_eq!(m.lengths(), &[int(2), frac(3, 2), int(1)]);
    }

    #[test]
    fn length_function_errors() {
        let v = parse_str(r#"{"edges":[{"id":"a","length":"1.5"}]}"#).unwrap();
        assert!(matches!(parse_length_function(&v), Err(Error::ParseRational(_))));
        let v = parse_str(r#"{"edges":[{"id":"a","length":"0"},{"id":"b","length":"1"},{"id":"c","length":"1"}]}"#).unwrap();
        assert!(matches!(parse_length_function(&v), Err(Error::NonPositiveLength { .. })));
        assert!(matches!(parse_length_function(&json!([1, 2])), Err(Error::Json(_))));
        assert!(parse_str("{").is_err());
    }

    #[test]
    fn subsets_and_bending_sets() {
        let l = pentagon();
        let s = parse_subset(&l, &json!(["e5", "e4"])).unwrap();
        assert_eq!(s, l.positions(&[4, 5]));
        assert_eq!(subset(&l, s), json!(["e4", "e5"]));
        assert_eq!(block(&l, s), json!(["e5", "e4"]));
        assert_eq!(parse_subset(&l, &json!(["e9"])), Err(Error::UnknownEdge("e9".into())));
        assert!(parse_subset(&l, &json!(["e4", "e4"])).is_err());

        let b = parse_bending_set(&l, &json!({"members": [["e4", "e5"]]})).unwrap();
        assert_eq!(bending_set(&l, &b), json!({"members": [["e4", "e5"]]}));
        assert_eq!(parse_bending_set(&l, &bending_set(&l, &b)).unwrap(), b);
    }

    #[test]
    fn interval_round_trip() {
        let i = Interval::new(frac(1, 2), frac(5, 2));
        assert_eq!(to_string(&interval(&i)), r#"{"hi":"5/2","lo":"1/2"}"#);
        assert_eq!(parse_interval(&interval(&i)).unwrap(), i);
        assert!(parse_interval(&json!({"lo": "3", "hi": "1"})).is_err());
    }

    #[test]
    fn witness_rendering() {
        let p = PolygonSpace::new(pentagon()).unwrap();
        let m = min_lopsided_partition(&p);
        assert_eq!(
            to_string(&json!({"N": m.count, "witness": partition(&p, &m.partition)})),
            r#"{"N":4,"witness":[["e5","e4"],["e1"],["e2"],["e3"]]}"#
        );
    }

    #[test]
    fn polytope_round_trip() {
        let l = LengthFunction::parse(&["1", "2", "4", "4", "4"]).unwrap();
        let t1 = BendingSet::from_positions(&l, &[&[3, 1], &[4, 2]]).unwrap();
        let p = moment_polytope(&l, &t1).unwrap();
        let v = polytope(&l, &p);
        assert_eq!(v["labels"], json!([["e3", "e1"], ["e4", "e2"]]));
        assert_eq!(v["vertices"], json!([["3", "2"], ["3", "6"], ["5", "2"], ["5", "6"]]));
        assert_eq!(parse_polytope(&l, &v).unwrap(), p);
        let mut tampered = v.clone();
        tampered["vertices"][0][0] = json!("4");
        assert!(parse_polytope(&l, &tampered).is_err());
    }

    #[test]
    fn report_rendering() {
        let s = PolygonSpace::parse(&["1", "1", "1", "3/2", "3/4"]).unwrap();
        let set = crate::bending::fill(&s, &BendingSet::from_positions(&s, &[&[4, 5]]).unwrap());
        let v = torus_report(&s, &report_of(&s, &set));
        assert_eq!(v["dimension"], json!(1));
        assert_eq!(v["theorem_b"], json!("MaximalHamiltonian"));
        assert_eq!(v["common_value"], json!("1"));
        assert_eq!(v["maximal_blocks"], json!([["e4", "e5"], ["e1"], ["e2"], ["e3"]]));
    }

    #[test]
    fn big_integers_stay_exact() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(integer(&big), json!("123456789012345678901234567890"));
        assert_eq!(integer(&BigInt::from(-3)), json!(-3));
    }

    #[test]
    fn error_document() {
        let v = error(&Error::NotFull, json!({"command": "maximal"}));
        assert_eq!(v["code"], json!("not_full"));
        assert_eq!(v["context"]["command"], json!("maximal"));
    }
}
