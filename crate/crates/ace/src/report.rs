// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! Serializable views of evaluation results and their text rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use ace_core::{
    AcceptabilityVerdict, CLabel, ComponentReport, EvaluationResult, EvaluationStatus, Line,
    TraceStep, Uniqueness, VertexId,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatusKind {
    Stable,
    Unstable,
    StructureError,
}

impl StatusKind {
    pub fn of(status: &EvaluationStatus) -> Self {
        match status {
            EvaluationStatus::Stable => StatusKind::Stable,
            EvaluationStatus::Unstable { .. } => StatusKind::Unstable,
            EvaluationStatus::StructureError { .. } => StatusKind::StructureError,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StatusKind::Stable => "stable",
            StatusKind::Unstable => "unstable",
            StatusKind::StructureError => "structure_error",
        }
    }
}

/// Process exit code for an evaluation status.
pub fn exit_code(status: &EvaluationStatus) -> i32 {
    match status {
        EvaluationStatus::Stable => 0,
        EvaluationStatus::Unstable { .. } => 2,
        EvaluationStatus::StructureError { .. } => 3,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnstableView {
    pub component: Vec<VertexId>,
    pub first: VertexId,
    pub first_sequence: Vec<CLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRef {
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum UniquenessView {
    Unique,
    NonUnique {
        first: VertexId,
        labels: BTreeMap<VertexId, CLabel>,
        other_first: VertexId,
        other_labels: BTreeMap<VertexId, CLabel>,
    },
}

impl From<&Uniqueness> for UniquenessView {
    fn from(u: &Uniqueness) -> Self {
        match u {
            Uniqueness::Unique => UniquenessView::Unique,
            Uniqueness::NonUnique {
                first,
                labels,
                other_first,
                other_labels,
            } => UniquenessView::NonUnique {
                first: first.clone(),
                labels: labels.clone(),
                other_first: other_first.clone(),
                other_labels: other_labels.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentView {
    pub members: Vec<VertexId>,
    pub simple_cycles: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first: Option<VertexId>,
    pub sequences: BTreeMap<VertexId, Vec<CLabel>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniqueness: Option<UniquenessView>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub trace: Vec<TraceStep>,
}

impl From<&ComponentReport> for ComponentView {
    fn from(c: &ComponentReport) -> Self {
        Self {
            members: c.members.clone(),
            simple_cycles: c.simple_cycles,
            first: c.first.clone(),
            sequences: c.sequences.clone(),
            uniqueness: c.uniqueness.as_ref().map(UniquenessView::from),
            trace: c.trace.clone(),
        }
    }
}

/// Evaluation result as exchanged over JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationView {
    pub root: VertexId,
    pub status: StatusKind,
    pub lambda: BTreeMap<VertexId, CLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unstable: Option<UnstableView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_error: Option<LineRef>,
    pub components: Vec<ComponentView>,
    pub synthetic_lines: Vec<Line>,
}

impl From<&EvaluationResult> for EvaluationView {
    fn from(r: &EvaluationResult) -> Self {
        let (unstable, structure_error) = match &r.status {
            EvaluationStatus::Stable => (None, None),
            EvaluationStatus::Unstable {
                component,
                first,
                first_sequence,
            } => (
                Some(UnstableView {
                    component: component.clone(),
                    first: first.clone(),
                    first_sequence: first_sequence.clone(),
                }),
                None,
            ),
            EvaluationStatus::StructureError { from, to } => (
                None,
                Some(LineRef {
                    from: from.clone(),
                    to: to.clone(),
                }),
            ),
        };
        Self {
            root: r.root.clone(),
            status: StatusKind::of(&r.status),
            lambda: r.lambda.clone(),
            unstable,
            structure_error,
            components: r.components.iter().map(ComponentView::from).collect(),
            synthetic_lines: r.synthetic_lines.clone(),
        }
    }
}

fn seq_text(labels: &[CLabel]) -> String {
    labels
        .iter()
        .map(|l| l.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn id_list(ids: &[VertexId]) -> String {
    ids.iter()
        .map(|v| v.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Plain text report. With `trace`, each complex component gets a table of
/// walker steps.
pub fn render_evaluation(r: &EvaluationResult, trace: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "root: {}", r.root);
    let _ = writeln!(out, "status: {}", StatusKind::of(&r.status).as_str());
    match &r.status {
        EvaluationStatus::Stable => {}
        EvaluationStatus::Unstable {
            component,
            first,
            first_sequence,
        } => {
            let _ = writeln!(
                out,
                "unstable component: [{}] first {} sequence {}",
                id_list(component),
                first,
                seq_text(first_sequence)
            );
        }
        EvaluationStatus::StructureError { from, to } => {
            let _ = writeln!(out, "no propagation rule for line {from} -> {to}");
        }
    }
    let width = r.lambda.keys().map(|v| v.as_str().len()).max().unwrap_or(0);
    let _ = writeln!(out, "labels:");
    for (v, l) in &r.lambda {
        let _ = writeln!(out, "  {:width$}  {}", v.as_str(), l);
    }
    if !r.synthetic_lines.is_empty() {
        let _ = writeln!(out, "synthetic lines:");
        for l in &r.synthetic_lines {
            let _ = writeln!(out, "  {} -> {}", l.from, l.to);
        }
    }
    let complex: Vec<&ComponentReport> = r.components.iter().filter(|c| c.is_complex()).collect();
    let _ = writeln!(
        out,
        "components: {} ({} cyclic)",
        r.components.len(),
        complex.len()
    );
    for c in complex {
        let _ = writeln!(
            out,
            "  [{}] cycles={} first={}",
            id_list(&c.members),
            c.simple_cycles,
            c.first.as_ref().map_or("-", |f| f.as_str())
        );
        if let Some(u) = &c.uniqueness {
            match u {
                Uniqueness::Unique => {
                    let _ = writeln!(out, "    uniqueness: unique");
                }
                Uniqueness::NonUnique {
                    first,
                    labels,
                    other_first,
                    other_labels,
                } => {
                    let _ = writeln!(out, "    uniqueness: not unique");
                    for (start, ls) in [(first, labels), (other_first, other_labels)] {
                        let text: Vec<String> =
                            ls.iter().map(|(v, l)| format!("{v}={l}")).collect();
                        let _ = writeln!(out, "      from {start}: {}", text.join(" "));
                    }
                }
            }
        }
        let w = c
            .members
            .iter()
            .map(|v| v.as_str().len())
            .max()
            .unwrap_or(0);
        for v in &c.members {
            let s = c.sequences.get(v).map(|s| seq_text(s)).unwrap_or_default();
            let _ = writeln!(out, "    {:w$}  <{}>", v.as_str(), s);
        }
        if trace && !c.trace.is_empty() {
            out.push_str(&render_trace(&c.trace));
        }
    }
    out
}

/// One row per processed queue entry: the vertex, the labels appended and
/// the queue afterwards.
pub fn render_trace(steps: &[TraceStep]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "    step  visited  appended  parked  queue");
    for (k, s) in steps.iter().enumerate() {
        let appended: Vec<String> = s.appended.iter().map(|(v, l)| format!("{v}={l}")).collect();
        let mut queue = id_list(&s.queue);
        if s.queue_len > s.queue.len() {
            let _ = write!(queue, ", ... ({} total)", s.queue_len);
        }
        let _ = writeln!(
            out,
            "    {:>4}  {}  {}  {}  [{}]",
            k + 1,
            s.visited,
            if appended.is_empty() {
                "-".to_owned()
            } else {
                appended.join(" ")
            },
            s.parked,
            queue
        );
    }
    out
}

pub fn render_verdict(v: &AcceptabilityVerdict) -> String {
    let mut out = String::new();
    if v.holds {
        out.push_str("acceptable: yes\n");
    } else {
        let _ = writeln!(out, "acceptable: no (rejected: {})", id_list(&v.rejected));
    }
    for (id, l) in &v.labels {
        let _ = writeln!(out, "  {id}  {l}");
    }
    let _ = writeln!(out, "evaluated roots: {}", id_list(&v.evaluated_roots));
    out
}
