//! Golden reports of the worked examples, embedded at build time.

use serde_json::Value;

const FILES: &[(&str, &str)] = &[
    ("pentagon-critical", include_str!("../golden/pentagon-critical.json")),
    ("two-long-edge", include_str!("../golden/two-long-edge.json")),
    ("pab-mixed", include_str!("../golden/pab-mixed.json")),
    ("heptagon-spectrum", include_str!("../golden/heptagon-spectrum.json")),
    ("gon-7m-spectrum", include_str!("../golden/gon-7m-spectrum.json")),
    ("conjugacy-1a444", include_str!("../golden/conjugacy-1a444.json")),
    ("nonbending-1a444", include_str!("../golden/nonbending-1a444.json")),
    ("probe-11122", include_str!("../golden/probe-11122.json")),
];

pub fn expected(id: &str) -> Option<Value> {
    FILES
        .iter()
        .find(|(name, _)| *name == id)
        .and_then(|(_, text)| serde_json::from_str(text).ok())
}
