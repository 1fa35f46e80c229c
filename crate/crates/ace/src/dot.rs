// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! Graphviz export. Shape follows the vertex kind, fill color the label.

use std::collections::BTreeMap;
use std::fmt::Write;

use ace_core::{AceGraph, CLabel, VertexId, VertexKind};

fn shape(kind: VertexKind) -> &'static str {
    match kind {
        VertexKind::Information => "ellipse",
        VertexKind::Inference => "box",
        VertexKind::Conflict => "diamond",
        VertexKind::Preference => "hexagon",
    }
}

fn color(label: CLabel) -> &'static str {
    match label {
        CLabel::A => "palegreen",
        CLabel::AD => "khaki",
        CLabel::R => "lightcoral",
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// DOT text for `graph`. Synthetic lines are dashed. Vertices with a label
/// are filled and show it.
pub fn to_dot(graph: &AceGraph, labels: Option<&BTreeMap<VertexId, CLabel>>) -> String {
    let mut out = String::from("digraph ace {\n  rankdir=BT;\n  node [fontname=\"Helvetica\"];\n");
    for v in graph.vertices() {
        let label = labels.and_then(|m| m.get(&v.id)).copied();
        let text = match label {
            Some(l) => format!("{} [{}]", v.id, l),
            None => v.id.to_string(),
        };
        let _ = write!(
            out,
            "  {} [shape={}, label={}",
            quote(v.id.as_str()),
            shape(v.kind),
            quote(&text)
        );
        if !v.statement.is_empty() {
            let _ = write!(out, ", tooltip={}", quote(&v.statement));
        }
        if let Some(l) = label {
            let _ = write!(out, ", style=filled, fillcolor={}", color(l));
        }
        out.push_str("];\n");
    }
    let mut lines: Vec<_> = graph.lines().collect();
    lines.sort();
    for l in lines {
        let _ = write!(
            out,
            "  {} -> {}",
            quote(l.from.as_str()),
            quote(l.to.as_str())
        );
        if l.synthetic {
            out.push_str(" [style=dashed]");
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}
