use ace::store::{self, GraphDocument, Problem, StoreError, FORMAT_VERSION};
use ace_core::{samples, AceGraph, RuleCatalog, VertexId, VertexKind, Violation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn id(s: &str) -> VertexId {
    VertexId::from(s)
}

#[test]
fn round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (g, rules) = samples::audio_player();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    store::save(&a, &g, &rules).unwrap();
    let loaded = store::load(&a).unwrap();
    assert_eq!(loaded.graph, g);
    assert_eq!(loaded.rules, rules);
    store::save(&b, &loaded.graph, &loaded.rules).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn audio_player_document_contents() {
    let (g, rules) = samples::audio_player();
    let doc = GraphDocument::from_graph(&g, &rules).unwrap();
    assert_eq!(doc.format_version, FORMAT_VERSION);
    assert_eq!(doc.vertices.len(), 18);
    assert_eq!(doc.rules.len(), 5);
    assert!(doc.vertices.windows(2).all(|w| w[0].seq < w[1].seq));
}

#[test]
fn empty_graph_round_trips() {
    let bytes = store::to_bytes(&AceGraph::new(), &RuleCatalog::new()).unwrap();
    let loaded = store::from_bytes(&bytes).unwrap();
    assert!(loaded.graph.is_empty());
    assert!(loaded.rules.is_empty());
}

#[test]
fn save_replaces_existing_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let (g1, r1) = samples::mutual_conflict();
    let (g2, r2) = samples::audio_player();
    store::save(&path, &g1, &r1).unwrap();
    store::save(&path, &g2, &r2).unwrap();
    assert_eq!(store::load(&path).unwrap().graph, g2);
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(leftovers.len(), 1, "{leftovers:?}");
}

#[test]
fn unknown_antecedent_is_invalid() {
    let (g, rules) = samples::mutual_conflict();
    let mut doc = GraphDocument::from_graph(&g, &rules).unwrap();
    let rule_app = doc
        .vertices
        .iter_mut()
        .find(|v| v.kind != VertexKind::Information)
        .unwrap();
    rule_app.antecedents.insert(id("ghost"));
    let bytes = serde_json::to_vec(&doc).unwrap();
    match store::from_bytes(&bytes) {
        Err(StoreError::InvalidGraph(problems)) => assert!(
            problems.iter().any(|p| matches!(
                p,
                Problem::Structure(Violation::UnknownParameter { parameter, .. }) if parameter.as_str() == "ghost"
            )),
            "{problems:?}"
        ),
        other => panic!("expected InvalidGraph, got {other:?}"),
    }
}

#[test]
fn undeclared_and_mismatched_rules() {
    let (g, rules) = samples::self_defeating_inference();
    let mut doc = GraphDocument::from_graph(&g, &rules).unwrap();
    doc.rules.retain(|r| r.rule_id != "inf");
    doc.rules[0].kind = VertexKind::Preference;
    let err = doc.into_graph().unwrap_err();
    let StoreError::InvalidGraph(problems) = err else {
        panic!("{err:?}")
    };
    assert!(problems
        .iter()
        .any(|p| matches!(p, Problem::UndeclaredRule { rule_id, .. } if rule_id == "inf")));
    assert!(problems
        .iter()
        .any(|p| matches!(p, Problem::RuleKindMismatch { rule_id, .. } if rule_id == "con")));
}

#[test]
fn duplicate_vertex_ids_are_invalid() {
    let (g, rules) = samples::mutual_conflict();
    let mut doc = GraphDocument::from_graph(&g, &rules).unwrap();
    let mut copy = doc.vertices[0].clone();
    copy.seq = 99;
    doc.vertices.push(copy);
    assert!(matches!(
        doc.into_graph(),
        Err(StoreError::InvalidGraph(p)) if p.contains(&Problem::DuplicateVertex(id("i1")))
    ));
}

#[test]
fn truncated_bytes_are_a_parse_error() {
    let (g, rules) = samples::audio_player();
    let bytes = store::to_bytes(&g, &rules).unwrap();
    for cut in [0, 1, bytes.len() / 2, bytes.len() - 3] {
        assert!(
            matches!(store::from_bytes(&bytes[..cut]), Err(StoreError::Parse(_))),
            "cut at {cut}"
        );
    }
}

#[test]
fn unsupported_version_is_reported() {
    let text = r#"{"format_version": 7, "rules": [], "vertices": [], "extra": true}"#;
    assert!(matches!(
        store::from_bytes(text.as_bytes()),
        Err(StoreError::SchemaVersionUnsupported { found: 7 })
    ));
}

#[test]
fn missing_file_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(
        store::load(&dir.path().join("nope.json")),
        Err(StoreError::Io { .. })
    ));
}

fn random_graph(seed: u64) -> (AceGraph, RuleCatalog) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rules = RuleCatalog::new();
    rules.declare("inf", VertexKind::Inference, false, "");
    rules.declare("con", VertexKind::Conflict, false, "");
    rules.declare("pt", VertexKind::Preference, true, "");
    let mut g = AceGraph::new();
    let mut pool = Vec::new();
    for k in 0..rng.gen_range(1..4) {
        pool.push(g.add_information(format!("premise {k}")));
    }
    for _ in 0..rng.gen_range(0..10) {
        let (kind, rule) = match rng.gen_range(0..3) {
            0 => (VertexKind::Inference, "inf"),
            1 => (VertexKind::Conflict, "con"),
            _ => (VertexKind::Preference, "pt"),
        };
        let a = pool[rng.gen_range(0..pool.len())].clone();
        let target = if kind == VertexKind::Inference || rng.gen_bool(0.3) {
            g.add_information("derived")
        } else {
            let c = pool[rng.gen_range(0..pool.len())].clone();
            if c == a {
                continue;
            }
            c
        };
        let v = g
            .add_rule_application(kind, rule, [a], [target.clone()])
            .unwrap();
        pool.push(v);
        pool.push(target);
    }
    (g, rules)
}

proptest! {
    #[test]
    fn random_graphs_round_trip(seed in any::<u64>()) {
        let (g, rules) = random_graph(seed);
        let bytes = store::to_bytes(&g, &rules).unwrap();
        let loaded = store::from_bytes(&bytes).unwrap();
        prop_assert_eq!(&loaded.graph, &g);
        prop_assert_eq!(store::to_bytes(&loaded.graph, &loaded.rules).unwrap(), bytes);
    }
}
