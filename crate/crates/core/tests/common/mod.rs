//! Helpers shared by the integration test suites.

use serde::Deserialize;

use lamtrav_core::ctree::ExtNodeRef;
use lamtrav_core::jseq::{format_jseq, occ_kind, JSeq, OccKind};
use lamtrav_core::CTree;

#[derive(Debug, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub occs: Vec<FixtureOcc>,
}

#[derive(Debug, Deserialize)]
pub struct FixtureOcc {
    pub kind: String,
    pub dist: usize,
    pub label: Option<usize>,
}

pub fn fixtures() -> Vec<Fixture> {
    let data = include_str!("../data/golden_traversals.json");
    serde_json::from_str(data).expect("fixture parses")
}

pub fn fixture(name: &str) -> Fixture {
    fixtures()
        .into_iter()
        .find(|f| f.name == name)
        .unwrap_or_else(|| panic!("no fixture {name}"))
}

/// An enumerated traversal matches a fixture when kinds, ghostness and
/// pointer distances agree everywhere, and labels agree wherever the
/// transcription displays one.
pub fn matches_fixture(tree: &CTree, t: &JSeq, f: &Fixture) -> bool {
    if t.len() != f.occs.len() {
        return false;
    }
    t.0.iter().zip(f.occs.iter()).all(|(o, fo)| {
        let kind = occ_kind(tree, o);
        let (want_kind, want_ghost) = match fo.kind.as_str() {
            "lam" => (OccKind::Lam, false),
            "ghost-lam" => (OccKind::Lam, true),
            "var" => (OccKind::Var, false),
            "ghost-var" => (OccKind::Var, true),
            "app" => (OccKind::App, false),
            other => panic!("bad fixture kind {other}"),
        };
        let is_ghost = matches!(o.node, ExtNodeRef::GhostLam | ExtNodeRef::GhostVar);
        kind == want_kind
            && is_ghost == want_ghost
            && o.dist == fo.dist
            && fo.label.map_or(true, |l| o.label == l)
    })
}

pub fn assert_set_matches(tree: &CTree, enumerated: &[JSeq], wanted: &[Fixture]) {
    assert_eq!(enumerated.len(), wanted.len(), "maximal traversal count");
    for f in wanted {
        let hits: Vec<&JSeq> =
            enumerated.iter().filter(|t| matches_fixture(tree, t, f)).collect();
        assert_eq!(
            hits.len(),
            1,
            "fixture {} matched {} traversals; enumerated:\n{}",
            f.name,
            hits.len(),
            enumerated
                .iter()
                .map(|t| format_jseq(tree, t))
                .collect::<Vec<_>>()
                .join("\n")
        );
    }
}
