// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! Small worked discussions used by tests, fixtures and documentation.
//!
//! Each builder returns the graph and the rule catalog it needs. Ids are
//! chosen to be readable in output.

use alloc::format;

use crate::graph::{AceGraph, VertexKind};
use crate::rules::RuleCatalog;

fn info(g: &mut AceGraph, id: &str, statement: &str) {
    g.add_information_with_id(id, statement)
        .expect("sample ids are unique");
}

fn apply(g: &mut AceGraph, id: &str, kind: VertexKind, rule: &str, ants: &[&str], cons: &[&str]) {
    g.insert_rule_application(id, kind, rule, ants.iter().copied(), cons.iter().copied())
        .expect("sample rule applications are well formed");
}

/// Requirements for a portable audio player.
///
/// A goal is refined into three subgoals, one of which (`i_g4`, a sales
/// channel that covers the development cost) is met by a one-time fee plan
/// (`i_p1`). Three further plans each imply the fee plan by modus ponens. A
/// conflict `C1` says the fee plan and the subscription revenue goal
/// exclude each other; a preference `P1` favours the subscription goal over
/// the fee plan; and a conflict `C2` states that once `P1` holds, `C1` and
/// the fee plan no longer stand.
///
/// 18 vertices. The discussion of `i_g4` has 16 of them.
pub fn audio_player() -> (AceGraph, RuleCatalog) {
    use VertexKind::*;
    let mut g = AceGraph::new();
    info(&mut g, "i_g1", "Provide a portable audio player");
    info(&mut g, "i_g2", "Play audio files stored on the device");
    info(&mut g, "i_g3", "Transfer audio files from a computer");
    info(&mut g, "i_g4", "Sales cover the development cost");
    apply(
        &mut g,
        "I_T",
        Inference,
        "and-refinement",
        &["i_g1"],
        &["i_g2", "i_g3", "i_g4"],
    );
    info(&mut g, "i_p1", "Sell the player for a one-time fee");
    apply(
        &mut g,
        "C1",
        Conflict,
        "fee-excludes-subscription",
        &["i_p1"],
        &["i_g4"],
    );
    for (k, plan) in [
        (2, "Bundle the player with a music store"),
        (3, "Sell through retail partners"),
        (4, "Sell directly online"),
    ] {
        let p = format!("i_p{k}");
        let imp = format!("i_p{k}_imp");
        info(&mut g, &p, plan);
        info(
            &mut g,
            &imp,
            &format!("If {} then sell for a one-time fee", plan.to_lowercase()),
        );
        apply(
            &mut g,
            &format!("I_MP{}", k - 1),
            Inference,
            "modus-ponens",
            &[&imp, &p],
            &["i_p1"],
        );
    }
    apply(
        &mut g,
        "P1",
        Preference,
        "prefer-subscription",
        &["i_g4"],
        &["i_p1"],
    );
    apply(
        &mut g,
        "C2",
        Conflict,
        "preference-overrides",
        &["P1"],
        &["C1", "i_p1"],
    );

    let mut rules = RuleCatalog::new();
    rules.declare(
        "and-refinement",
        Inference,
        false,
        "A goal holds if all its subgoals hold",
    );
    rules.declare(
        "modus-ponens",
        Inference,
        false,
        "From p and p implies q, infer q",
    );
    rules.declare(
        "fee-excludes-subscription",
        Conflict,
        false,
        "A one-time fee plan and recurring revenue exclude each other",
    );
    rules.declare(
        "prefer-subscription",
        Preference,
        false,
        "Recurring revenue is preferred over a one-time fee",
    );
    rules.declare(
        "preference-overrides",
        Conflict,
        false,
        "A satisfied preference defeats the conflicts it resolves",
    );
    (g, rules)
}

/// Three preferences of one transitive rule in a ring over four statements,
/// plus a conflict closing the ring. The closure adds three lines and the
/// component ends up with four simple cycles.
pub fn preference_ring() -> (AceGraph, RuleCatalog) {
    use VertexKind::*;
    let mut g = AceGraph::new();
    for k in 1..=4 {
        info(&mut g, &format!("i{k}"), &format!("statement {k}"));
    }
    apply(&mut g, "P1_1", Preference, "pref", &["i2"], &["i3"]);
    apply(&mut g, "P1_2", Preference, "pref", &["i3"], &["i4"]);
    apply(&mut g, "P1_3", Preference, "pref", &["i4"], &["i1"]);
    apply(&mut g, "C2", Conflict, "conflict", &["i1"], &["i2"]);
    let mut rules = RuleCatalog::new();
    rules.declare("pref", Preference, true, "transitive preference");
    rules.declare("conflict", Conflict, false, "i1 excludes i2");
    (g, rules)
}

/// Two statements attacking each other. Labeling depends on where the walk
/// starts.
pub fn mutual_conflict() -> (AceGraph, RuleCatalog) {
    use VertexKind::*;
    let mut g = AceGraph::new();
    info(&mut g, "i1", "statement 1");
    info(&mut g, "i2", "statement 2");
    apply(&mut g, "C2", Conflict, "c2", &["i2"], &["i1"]);
    apply(&mut g, "C1", Conflict, "c1", &["i1"], &["i2"]);
    let mut rules = RuleCatalog::new();
    rules.declare("c1", Conflict, false, "i1 excludes i2");
    rules.declare("c2", Conflict, false, "i2 excludes i1");
    (g, rules)
}

/// An inference whose conclusion attacks both the inference and its
/// premise. No stable labeling exists.
pub fn self_defeating_inference() -> (AceGraph, RuleCatalog) {
    use VertexKind::*;
    let mut g = AceGraph::new();
    info(&mut g, "i1", "statement 1");
    info(&mut g, "i2", "statement 2");
    apply(&mut g, "I1", Inference, "inf", &["i1"], &["i2"]);
    apply(&mut g, "C2", Conflict, "con", &["i2"], &["I1", "i1"]);
    let mut rules = RuleCatalog::new();
    rules.declare("inf", Inference, false, "i1 implies i2");
    rules.declare("con", Conflict, false, "i2 undermines its own derivation");
    (g, rules)
}

/// A transitive preference chain: `P1_1` prefers `i1` over `i2`, and `P1_2`
/// prefers `i2` over `i3` and `i4`.
pub fn preference_chain() -> (AceGraph, RuleCatalog) {
    use VertexKind::*;
    let mut g = AceGraph::new();
    for k in 1..=4 {
        info(&mut g, &format!("i{k}"), &format!("statement {k}"));
    }
    apply(&mut g, "P1_1", Preference, "pref", &["i1"], &["i2"]);
    apply(&mut g, "P1_2", Preference, "pref", &["i2"], &["i3", "i4"]);
    let mut rules = RuleCatalog::new();
    rules.declare("pref", Preference, true, "transitive preference");
    (g, rules)
}

/// Two preferences of one transitive rule separated by a conflict, so they
/// do not chain.
pub fn separated_preferences() -> (AceGraph, RuleCatalog) {
    use VertexKind::*;
    let mut g = AceGraph::new();
    for k in 1..=4 {
        info(&mut g, &format!("i{k}"), &format!("statement {k}"));
    }
    apply(&mut g, "P1_1", Preference, "pref", &["i1"], &["i2"]);
    apply(&mut g, "C1", Conflict, "con", &["i2"], &["i3"]);
    apply(&mut g, "P1_2", Preference, "pref", &["i3"], &["i4"]);
    let mut rules = RuleCatalog::new();
    rules.declare("pref", Preference, true, "transitive preference");
    rules.declare("con", Conflict, false, "i2 excludes i3");
    (g, rules)
}

/// `i1` is inferred from `i2` and `i3`, and `i4` attacks `i3`.
pub fn attacked_premise() -> (AceGraph, RuleCatalog) {
    use VertexKind::*;
    let mut g = AceGraph::new();
    info(&mut g, "i1", "conclusion");
    info(&mut g, "i2", "premise 2");
    info(&mut g, "i3", "premise 3");
    info(&mut g, "i4", "objection to premise 3");
    apply(&mut g, "C", Conflict, "con", &["i4"], &["i3"]);
    apply(&mut g, "I", Inference, "inf", &["i2", "i3"], &["i1"]);
    let mut rules = RuleCatalog::new();
    rules.declare("inf", Inference, false, "i2 and i3 imply i1");
    rules.declare("con", Conflict, false, "i4 excludes i3");
    (g, rules)
}

/// `i1` is inferred from `i2`; `C2` attacks the inference and `C1` attacks
/// `C2`, so the inference survives.
pub fn defended_inference() -> (AceGraph, RuleCatalog) {
    use VertexKind::*;
    let mut g = AceGraph::new();
    for k in 1..=4 {
        info(&mut g, &format!("i{k}"), &format!("statement {k}"));
    }
    apply(&mut g, "I", Inference, "inf", &["i2"], &["i1"]);
    apply(&mut g, "C2", Conflict, "con2", &["i3"], &["I"]);
    apply(&mut g, "C1", Conflict, "con1", &["i4"], &["C2"]);
    let mut rules = RuleCatalog::new();
    rules.declare("inf", Inference, false, "i2 implies i1");
    rules.declare("con2", Conflict, false, "i3 undermines the inference");
    rules.declare("con1", Conflict, false, "i4 undermines the objection");
    (g, rules)
}

/// `i1 -> X -> i2` for a rule application `X` of the given kind.
pub fn single_rule(kind: VertexKind) -> (AceGraph, RuleCatalog) {
    let mut g = AceGraph::new();
    info(&mut g, "i1", "statement 1");
    info(&mut g, "i2", "statement 2");
    apply(&mut g, "X", kind, "rule", &["i1"], &["i2"]);
    let mut rules = RuleCatalog::new();
    rules.declare("rule", kind, false, "single rule");
    (g, rules)
}

/// A chain `i0 -> I1 -> i1 -> I2 -> ... -> i{n}` of inferences, with
/// `2n + 1` vertices.
pub fn inference_path(n: usize) -> (AceGraph, RuleCatalog) {
    let mut g = AceGraph::new();
    info(&mut g, "i0", "start");
    for k in 1..=n {
        let prev = format!("i{}", k - 1);
        let next = format!("i{k}");
        info(&mut g, &next, "step");
        apply(
            &mut g,
            &format!("I{k}"),
            VertexKind::Inference,
            "step",
            &[&prev],
            &[&next],
        );
    }
    let mut rules = RuleCatalog::new();
    rules.declare("step", VertexKind::Inference, false, "each step follows");
    (g, rules)
}
