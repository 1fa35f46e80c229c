use std::collections::BTreeSet;

use ace_core::samples;
use ace_core::*;

fn id(s: &str) -> VertexId {
    VertexId::from(s)
}

fn info(name: &str, seq: u64) -> Vertex {
    Vertex::information(name, name, seq)
}

fn app(name: &str, kind: VertexKind, ants: &[&str], cons: &[&str], seq: u64) -> Vertex {
    Vertex {
        id: id(name),
        kind,
        statement: String::new(),
        rule_id: Some("r".into()),
        antecedents: ants.iter().map(|&a| id(a)).collect(),
        consequents: cons.iter().map(|&c| id(c)).collect(),
        seq,
    }
}

#[test]
fn line_between_two_statements_is_one_violation() {
    let g = AceGraph::from_parts(
        [info("i1", 0), info("i2", 1)],
        [Line {
            from: id("i1"),
            to: id("i2"),
            synthetic: false,
        }],
    )
    .unwrap();
    assert_eq!(
        g.validate(),
        vec![Violation::InformationLink {
            from: id("i1"),
            to: id("i2")
        }]
    );
}

#[test]
fn mutual_antecedents_are_one_anti_parallel_violation() {
    let g = AceGraph::from_vertices([
        info("i1", 0),
        info("i2", 1),
        info("i3", 2),
        info("i4", 3),
        app("I1", VertexKind::Inference, &["i1", "I2"], &["i2"], 4),
        app("I2", VertexKind::Inference, &["i3", "I1"], &["i4"], 5),
    ])
    .unwrap();
    let v = g.validate();
    assert_eq!(v.len(), 1, "{v:?}");
    assert!(matches!(v[0], Violation::AntiParallel { .. }));
}

#[test]
fn insertion_rejects_bad_applications() {
    let mut g = AceGraph::new();
    let a = g.add_information("a");
    let b = g.add_information("b");
    assert_eq!(
        g.add_rule_application(VertexKind::Inference, "r", [a.clone()], [id("nope")]),
        Err(GraphError::UnknownVertex(id("nope")))
    );
    assert!(matches!(
        g.add_rule_application(
            VertexKind::Conflict,
            "r",
            [a.clone()],
            [a.clone(), b.clone()]
        ),
        Err(GraphError::StructureViolation(
            Violation::OverlappingParameters { .. }
        ))
    ));
    assert!(matches!(
        g.add_rule_application(
            VertexKind::Conflict,
            "r",
            Vec::<VertexId>::new(),
            [b.clone()]
        ),
        Err(GraphError::StructureViolation(
            Violation::EmptyParameters { .. }
        ))
    ));
    assert!(matches!(
        g.add_rule_application(VertexKind::Conflict, "", [a.clone()], [b.clone()]),
        Err(GraphError::StructureViolation(
            Violation::MissingRuleId { .. }
        ))
    ));
    assert_eq!(
        g.add_rule_application(VertexKind::Information, "r", [a.clone()], [b.clone()]),
        Err(GraphError::NotARuleApplication(VertexKind::Information))
    );
    assert_eq!(
        g.add_information_with_id(a.clone(), "again"),
        Err(GraphError::DuplicateVertex(a.clone()))
    );
    assert_eq!(g.len(), 2);
    assert_eq!(g.line_count(), 0);

    let c = g
        .add_rule_application(VertexKind::Conflict, "r", [a.clone()], [b.clone()])
        .unwrap();
    assert!(g.has_line(&a, &c) && g.has_line(&c, &b));
    assert!(g.validate().is_empty());
}

#[test]
fn raw_graph_problems_are_all_reported() {
    let g = AceGraph::from_parts(
        [
            info("i1", 0),
            info("i2", 0),
            app("I1", VertexKind::Inference, &["i1"], &["i2", "ghost"], 2),
        ],
        [
            Line {
                from: id("i1"),
                to: id("I1"),
                synthetic: false,
            },
            Line {
                from: id("i1"),
                to: id("I1"),
                synthetic: false,
            },
            Line {
                from: id("I1"),
                to: id("i1"),
                synthetic: true,
            },
        ],
    )
    .unwrap();
    let v = g.validate();
    let has = |p: fn(&Violation) -> bool| v.iter().any(p);
    assert!(has(|x| matches!(x, Violation::DuplicateSeq { .. })));
    assert!(has(|x| matches!(x, Violation::DuplicateLine { .. })));
    assert!(has(|x| matches!(x, Violation::AntiParallel { .. })));
    assert!(has(|x| matches!(
        x,
        Violation::SyntheticFromNonPreference { .. }
    )));
    assert!(has(|x| matches!(x, Violation::UnknownParameter { .. })));
    assert!(has(|x| matches!(x, Violation::MissingLine { .. })));
}

#[test]
fn discussion_of_unknown_vertex_fails() {
    let (g, _) = samples::audio_player();
    assert!(matches!(
        find_discussion(&g, &id("missing")),
        Err(RetrievalError::Graph(GraphError::UnknownVertex(_)))
    ));
}

#[test]
fn subdiscussion_requires_same_source() {
    let (g, _) = samples::audio_player();
    let (other, _) = samples::audio_player();
    let d1 = find_discussion(&g, &id("i_g1")).unwrap();
    let d2 = find_discussion(&g, &id("i_g4")).unwrap();
    assert!(is_subdiscussion(&d1, &d2).unwrap());
    assert!(!is_subdiscussion(&d2, &d1).unwrap());
    let foreign = find_discussion(&other, &id("i_g4")).unwrap();
    assert_eq!(
        is_subdiscussion(&d1, &foreign),
        Err(RetrievalError::SourceMismatch)
    );
}

#[test]
fn mutation_changes_source() {
    let (mut g, _) = samples::audio_player();
    let before = find_discussion(&g, &id("i_g1")).unwrap();
    g.add_information("late");
    let after = find_discussion(&g, &id("i_g4")).unwrap();
    assert_eq!(
        is_subdiscussion(&before, &after),
        Err(RetrievalError::SourceMismatch)
    );
}

#[test]
fn discussion_keeps_outgoing_parameters() {
    let (g, _) = samples::audio_player();
    let d = find_discussion(&g, &id("i_g4")).unwrap();
    assert!(d.graph.is_subgraph());
    let it = d.graph.vertex(&id("I_T")).unwrap();
    assert_eq!(
        it.consequents,
        BTreeSet::from([id("i_g2"), id("i_g3"), id("i_g4")])
    );
    assert!(d.graph.validate().is_empty());
}

#[test]
fn topological_sort_of_a_chain_and_a_cycle() {
    let mut dag = Dag::new(3);
    dag.add_line(0, 1);
    dag.add_line(1, 2);
    assert_eq!(topological_sort(&dag).unwrap(), vec![0, 1, 2]);
    dag.add_line(2, 0);
    assert_eq!(topological_sort(&dag), Err(SccError::CycleDetected));
}

#[test]
fn propagate_label_reads_current_labels() {
    let (g, _) = samples::single_rule(VertexKind::Conflict);
    let mut state = LabelingState::new(&g);
    assert_eq!(
        propagate_label(&id("i1"), &id("X"), &g, &state),
        Err(LabelError::Unlabeled(id("i1")))
    );
    state.push(&id("i1"), CLabel::A).unwrap();
    state.push(&id("X"), CLabel::A).unwrap();
    assert_eq!(
        propagate_label(&id("X"), &id("i2"), &g, &state),
        Ok(CLabel::R)
    );
    assert_eq!(
        propagate_label(&id("i2"), &id("X"), &g, &state),
        Err(LabelError::NoLine {
            from: id("i2"),
            to: id("X")
        })
    );
    assert_eq!(compute_label(&id("i2"), &g, &mut state), Ok(CLabel::R));
    assert_eq!(state.t_set(&id("i2")), Some(&[CLabel::R][..]));
}

#[test]
fn undeclared_line_is_a_structure_error() {
    // X -> i3 is not a parameter relation of X.
    let g = AceGraph::from_parts(
        [
            info("i1", 0),
            info("i2", 1),
            info("i3", 2),
            app("X", VertexKind::Inference, &["i1"], &["i2"], 3),
        ],
        [("i1", "X"), ("X", "i2"), ("X", "i3")].map(|(a, b)| Line {
            from: id(a),
            to: id(b),
            synthetic: false,
        }),
    )
    .unwrap();
    let d = find_discussion(&g, &id("i3")).unwrap();
    let r = evaluate_discussion(&d, &RuleCatalog::new(), EvaluationOptions::default()).unwrap();
    assert_eq!(
        r.status,
        EvaluationStatus::StructureError {
            from: id("X"),
            to: id("i3")
        }
    );
    assert!(r.lambda.len() < d.len());
}

#[test]
fn undeclared_preference_rule_is_reported() {
    let (g, _) = samples::single_rule(VertexKind::Preference);
    let d = find_discussion(&g, &id("i2")).unwrap();
    assert_eq!(
        evaluate_discussion(&d, &RuleCatalog::new(), EvaluationOptions::default()),
        Err(EvaluationError::Closure(ClosureError::UnknownRule {
            vertex: id("X"),
            rule_id: "rule".into()
        }))
    );
}
