// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::circuits;
use crate::closure::{close_preferences, group_transitive_applications, ClosureError};
use crate::graph::{AceGraph, Line, VertexId, VertexKind};
use crate::label::{line_role, overrule, propagation_rule, CLabel, LineRole};
use crate::retrieval::Discussion;
use crate::rules::RuleCatalog;
use crate::scc::{condense, tarjan, topological_sort};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LabelError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("no line {from}->{to}")]
    NoLine { from: VertexId, to: VertexId },
    #[error("{0} has no label yet")]
    Unlabeled(VertexId),
    #[error("line {from}->{to} has no propagation rule")]
    DisallowedLine { from: VertexId, to: VertexId },
    #[error("not a strongly connected component with at least two vertices")]
    InvalidComponent,
}

/// Per-vertex label history (`c_sequence`) and the labels most recently
/// propagated into each vertex (`t_set`).
#[derive(Clone, Debug)]
pub struct LabelingState {
    index: HashMap<VertexId, usize>,
    sequences: Vec<Vec<CLabel>>,
    t_sets: Vec<Vec<CLabel>>,
}

impl LabelingState {
    /// Empty state for the vertices of `graph`.
    pub fn new(graph: &AceGraph) -> Self {
        Self {
            index: graph.id_index().clone(),
            sequences: vec![Vec::new(); graph.len()],
            t_sets: vec![Vec::new(); graph.len()],
        }
    }

    pub fn c_sequence(&self, v: &VertexId) -> Option<&[CLabel]> {
        self.index.get(v).map(|&i| self.sequences[i].as_slice())
    }

    pub fn t_set(&self, v: &VertexId) -> Option<&[CLabel]> {
        self.index.get(v).map(|&i| self.t_sets[i].as_slice())
    }

    /// The current label: the last entry of the c_sequence.
    pub fn label(&self, v: &VertexId) -> Option<CLabel> {
        self.c_sequence(v).and_then(|s| s.last().copied())
    }

    pub fn push(&mut self, v: &VertexId, label: CLabel) -> Result<(), LabelError> {
        let i = self.slot(v)?;
        self.sequences[i].push(label);
        Ok(())
    }

    pub fn set_sequence(&mut self, v: &VertexId, labels: Vec<CLabel>) -> Result<(), LabelError> {
        let i = self.slot(v)?;
        self.sequences[i] = labels;
        Ok(())
    }

    fn slot(&self, v: &VertexId) -> Result<usize, LabelError> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| LabelError::UnknownVertex(v.clone()))
    }

    fn last(&self, i: usize) -> Option<CLabel> {
        self.sequences[i].last().copied()
    }
}

/// Label carried along the line `source -> target`, using the current label
/// of `source`.
pub fn propagate_label(
    source: &VertexId,
    target: &VertexId,
    graph: &AceGraph,
    state: &LabelingState,
) -> Result<CLabel, LabelError> {
    let s = graph
        .index_of(source)
        .ok_or_else(|| LabelError::UnknownVertex(source.clone()))?;
    let t = graph
        .index_of(target)
        .ok_or_else(|| LabelError::UnknownVertex(target.clone()))?;
    let e = graph.find_edge(s, t).ok_or_else(|| LabelError::NoLine {
        from: source.clone(),
        to: target.clone(),
    })?;
    propagate_edge(graph, state, e)
}

/// Fills the t_set of `v` from all its incoming lines and collapses it.
/// The result is returned, not appended to the c_sequence.
pub fn compute_label(
    v: &VertexId,
    graph: &AceGraph,
    state: &mut LabelingState,
) -> Result<CLabel, LabelError> {
    let i = graph
        .index_of(v)
        .ok_or_else(|| LabelError::UnknownVertex(v.clone()))?;
    compute(graph, state, i)
}

/// The newest member of the component.
pub fn select_first_vertex(component: &[VertexId], graph: &AceGraph) -> Option<VertexId> {
    component
        .iter()
        .filter_map(|v| graph.vertex(v))
        .max_by(|a, b| a.seq.cmp(&b.seq).then_with(|| a.id.cmp(&b.id)))
        .map(|v| v.id.clone())
}

fn propagate_edge(graph: &AceGraph, state: &LabelingState, e: usize) -> Result<CLabel, LabelError> {
    let edge = graph.edge(e);
    let (src, tgt) = (graph.at(edge.from), graph.at(edge.to));
    let disallowed = || LabelError::DisallowedLine {
        from: src.id.clone(),
        to: tgt.id.clone(),
    };
    let role = if edge.synthetic {
        if src.kind != VertexKind::Preference {
            return Err(disallowed());
        }
        LineRole::Output
    } else {
        let input = tgt.kind.is_rule_application() && tgt.antecedents.contains(&src.id);
        let output = src.kind.is_rule_application() && src.consequents.contains(&tgt.id);
        line_role(input, output).ok_or_else(disallowed)?
    };
    let label = state
        .last(edge.from)
        .ok_or_else(|| LabelError::Unlabeled(src.id.clone()))?;
    propagation_rule(src.kind, tgt.kind, role, label).ok_or_else(disallowed)
}

fn compute(graph: &AceGraph, state: &mut LabelingState, v: usize) -> Result<CLabel, LabelError> {
    let mut t_set = core::mem::take(&mut state.t_sets[v]);
    t_set.clear();
    for &e in graph.in_edges(v) {
        match propagate_edge(graph, state, e) {
            Ok(l) => t_set.push(l),
            Err(err) => {
                state.t_sets[v] = t_set;
                return Err(err);
            }
        }
    }
    let label = overrule(t_set.iter().copied());
    state.t_sets[v] = t_set;
    Ok(label)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Stability {
    Stable,
    Unstable,
}

/// One processed queue entry of the walker procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceStep {
    pub visited: VertexId,
    /// Labels appended while processing this entry, in order.
    pub appended: Vec<(VertexId, CLabel)>,
    /// Walkers parked at the first vertex after this step.
    pub parked: usize,
    /// Queue contents after this step, front first, cut off after
    /// [`TRACE_QUEUE_LIMIT`] entries.
    pub queue: Vec<VertexId>,
    pub queue_len: usize,
}

/// Longest queue prefix kept per trace step.
pub const TRACE_QUEUE_LIMIT: usize = 32;

/// Outcome of labeling one complex component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRun {
    pub first: VertexId,
    pub simple_cycles: usize,
    pub stability: Stability,
    /// Labels appended by this run, per member.
    pub sequences: BTreeMap<VertexId, Vec<CLabel>>,
    pub trace: Vec<TraceStep>,
}

impl ComplexRun {
    /// Last label of every member.
    pub fn final_labels(&self) -> BTreeMap<VertexId, CLabel> {
        self.sequences
            .iter()
            .filter_map(|(v, s)| s.last().map(|&l| (v.clone(), l)))
            .collect()
    }
}

/// Labels a strongly connected component of two or more vertices by walking
/// it breadth first from `first`.
///
/// Every member starts with `A`. Each line traversal inside the component
/// recomputes and appends the label of the reached vertex and moves the
/// walker there. Walkers that reach `first` wait there; once as many have
/// arrived as the component has simple cycles, the round ends: `first` gets
/// a new label and a single walker restarts from it. The component is stable
/// when two consecutive labels of `first` agree, and unstable once `first`
/// has been relabeled three times without that happening.
///
/// On stability each member keeps only its final label in `state`. Labels
/// of vertices outside the component are read from `state` and never
/// changed.
pub fn label_complex_scc(
    component: &[VertexId],
    first: &VertexId,
    closure: &AceGraph,
    state: &mut LabelingState,
    trace: bool,
) -> Result<ComplexRun, LabelError> {
    let mut members: Vec<usize> = component
        .iter()
        .map(|v| {
            closure
                .index_of(v)
                .ok_or_else(|| LabelError::UnknownVertex(v.clone()))
        })
        .collect::<Result<_, _>>()?;
    members.sort_unstable_by_key(|&i| closure.at(i).seq);
    members.dedup();
    let first_global = closure
        .index_of(first)
        .ok_or_else(|| LabelError::UnknownVertex(first.clone()))?;
    let first_local = members
        .iter()
        .position(|&i| i == first_global)
        .ok_or(LabelError::InvalidComponent)?;
    if members.len() < 2 {
        return Err(LabelError::InvalidComponent);
    }

    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    // Out-lines inside the component, successors in seq order.
    let out: Vec<Vec<usize>> = members
        .iter()
        .map(|&i| {
            let mut succ: Vec<usize> = closure
                .out_edges(i)
                .iter()
                .filter_map(|&e| pos.get(&closure.edge(e).to).copied())
                .collect();
            succ.sort_unstable();
            succ.dedup();
            succ
        })
        .collect();
    if !strongly_connected(&out) {
        return Err(LabelError::InvalidComponent);
    }
    let cycles = circuits::count(&out);

    let start: Vec<usize> = members.iter().map(|&i| state.sequences[i].len()).collect();
    for &i in &members {
        state.sequences[i].push(CLabel::A);
    }

    let mut steps = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::from([first_local]);
    let mut parked = 0usize;
    let mut rounds = 0usize;
    let mut verdict = None;
    'walk: while let Some(v) = queue.pop_front() {
        let mut appended = Vec::new();
        for &w in &out[v] {
            let label = compute(closure, state, members[w])?;
            if w != first_local {
                state.sequences[members[w]].push(label);
                if trace {
                    appended.push((closure.at(members[w]).id.clone(), label));
                }
                queue.push_back(w);
                continue;
            }
            parked += 1;
            if parked < cycles {
                continue;
            }
            queue.clear();
            parked = 0;
            rounds += 1;
            state.sequences[first_global].push(label);
            if trace {
                appended.push((first.clone(), label));
            }
            queue.push_back(first_local);
            let seq = &state.sequences[first_global];
            let n = seq.len();
            if seq[n - 1] == seq[n - 2] {
                verdict = Some(Stability::Stable);
            } else if rounds >= 3 {
                verdict = Some(Stability::Unstable);
            }
            if verdict.is_some() {
                if trace {
                    steps.push(step(closure, &members, v, appended, parked, &queue));
                }
                break 'walk;
            }
        }
        if trace {
            steps.push(step(closure, &members, v, appended, parked, &queue));
        }
    }
    let stability = verdict.ok_or(LabelError::InvalidComponent)?;

    let sequences: BTreeMap<VertexId, Vec<CLabel>> = members
        .iter()
        .zip(&start)
        .map(|(&i, &s)| (closure.at(i).id.clone(), state.sequences[i][s..].to_vec()))
        .collect();
    if stability == Stability::Stable {
        for &i in &members {
            let last = *state.sequences[i].last().expect("seeded with A");
            state.sequences[i] = vec![last];
        }
    }
    Ok(ComplexRun {
        first: first.clone(),
        simple_cycles: cycles,
        stability,
        sequences,
        trace: steps,
    })
}

fn step(
    g: &AceGraph,
    members: &[usize],
    v: usize,
    appended: Vec<(VertexId, CLabel)>,
    parked: usize,
    queue: &VecDeque<usize>,
) -> TraceStep {
    TraceStep {
        visited: g.at(members[v]).id.clone(),
        appended,
        parked,
        queue: queue
            .iter()
            .take(TRACE_QUEUE_LIMIT)
            .map(|&w| g.at(members[w]).id.clone())
            .collect(),
        queue_len: queue.len(),
    }
}

fn strongly_connected(out: &[Vec<usize>]) -> bool {
    let n = out.len();
    let mut inn = vec![Vec::new(); n];
    for (v, succ) in out.iter().enumerate() {
        for &w in succ {
            inn[w].push(v);
        }
    }
    let reach_all = |adj: &[Vec<usize>]| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    };
    n > 0 && reach_all(out) && reach_all(&inn)
}

/// Whether a complex component has the same labeling from every start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Uniqueness {
    Unique,
    /// Two starting vertices that produce different stable labelings. The
    /// first one is the vertex the evaluation itself starts from.
    NonUnique {
        first: VertexId,
        labels: BTreeMap<VertexId, CLabel>,
        other_first: VertexId,
        other_labels: BTreeMap<VertexId, CLabel>,
    },
}

/// Reruns [`label_complex_scc`] from every member of the component on copies
/// of `state` and compares the final labels. `state` must hold the labels of
/// everything upstream of the component.
pub fn check_uniqueness(
    component: &[VertexId],
    closure: &AceGraph,
    state: &LabelingState,
) -> Result<Uniqueness, EvaluationError> {
    let first = select_first_vertex(component, closure).ok_or(LabelError::InvalidComponent)?;
    let run = |start: &VertexId| -> Result<BTreeMap<VertexId, CLabel>, EvaluationError> {
        let mut s = state.clone();
        let r = label_complex_scc(component, start, closure, &mut s, false)?;
        match r.stability {
            Stability::Stable => Ok(r.final_labels()),
            Stability::Unstable => Err(EvaluationError::UnstableRerun {
                first: start.clone(),
            }),
        }
    };
    let labels = run(&first)?;
    let mut others: Vec<&VertexId> = component.iter().filter(|&v| v != &first).collect();
    others.sort_by_key(|v| closure.vertex(v).map_or(u64::MAX, |x| x.seq));
    for other in others {
        let other_labels = run(other)?;
        if other_labels != labels {
            return Ok(Uniqueness::NonUnique {
                first,
                labels,
                other_first: other.clone(),
                other_labels,
            });
        }
    }
    Ok(Uniqueness::Unique)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvaluationOptions {
    /// Rerun every complex component from each of its members.
    pub check_unique: bool,
    /// Record walker steps for complex components.
    pub trace: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvaluationStatus {
    Stable,
    /// `component` has no stable labeling from `first`.
    Unstable {
        component: Vec<VertexId>,
        first: VertexId,
        first_sequence: Vec<CLabel>,
    },
    /// A line with no propagation rule was met.
    StructureError {
        from: VertexId,
        to: VertexId,
    },
}

/// What happened in one strongly connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    /// Members in seq order.
    pub members: Vec<VertexId>,
    pub simple_cycles: usize,
    /// Starting vertex, for complex components only.
    pub first: Option<VertexId>,
    /// Full label history of each member in this evaluation.
    pub sequences: BTreeMap<VertexId, Vec<CLabel>>,
    pub uniqueness: Option<Uniqueness>,
    pub trace: Vec<TraceStep>,
}

impl ComponentReport {
    pub fn is_complex(&self) -> bool {
        self.members.len() > 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationResult {
    pub root: VertexId,
    /// Final label per vertex. Total exactly when the status is stable.
    pub lambda: BTreeMap<VertexId, CLabel>,
    pub status: EvaluationStatus,
    /// Components in the order they were labeled.
    pub components: Vec<ComponentReport>,
    /// Lines added by the transitive closure of preferences.
    pub synthetic_lines: Vec<Line>,
}

impl EvaluationResult {
    pub fn is_stable(&self) -> bool {
        self.status == EvaluationStatus::Stable
    }

    pub fn label(&self, v: &VertexId) -> Option<CLabel> {
        self.lambda.get(v).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvaluationError {
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("rerun from {first} found no stable labeling")]
    UnstableRerun { first: VertexId },
}

/// Labels every vertex of the discussion.
///
/// Transitive preferences are closed first. Strongly connected components of
/// the closed graph are then labeled in topological order (ties go to the
/// component holding the oldest vertex). A lone vertex without incoming
/// lines is accepted; any other lone vertex is labeled once from its
/// predecessors. Larger components go through [`label_complex_scc`] starting
/// at their newest vertex.
pub fn evaluate_discussion(
    discussion: &Discussion,
    rules: &RuleCatalog,
    options: EvaluationOptions,
) -> Result<EvaluationResult, EvaluationError> {
    let groups = group_transitive_applications(discussion, rules)?;
    let closure = close_preferences(&discussion.graph, &groups);
    evaluate_closed(&discussion.root, &closure, options)
}

fn evaluate_closed(
    root: &VertexId,
    closure: &AceGraph,
    options: EvaluationOptions,
) -> Result<EvaluationResult, EvaluationError> {
    let comps = tarjan(closure);
    let mut component_of = vec![0usize; closure.len()];
    for (k, c) in comps.iter().enumerate() {
        for &v in c {
            component_of[v] = k;
        }
    }
    let dag = condense(closure, &component_of, &comps);
    let order = topological_sort(&dag).expect("condensation is acyclic");

    let mut state = LabelingState::new(closure);
    let mut reports = Vec::with_capacity(comps.len());
    let mut lambda = BTreeMap::new();
    let mut status = EvaluationStatus::Stable;
    let id = |i: usize| closure.at(i).id.clone();

    for k in order {
        let mut members = comps[k].clone();
        members.sort_unstable_by_key(|&i| closure.at(i).seq);
        let ids: Vec<VertexId> = members.iter().map(|&i| id(i)).collect();

        if members.len() == 1 {
            let v = members[0];
            let label = if closure.in_edges(v).is_empty() {
                CLabel::A
            } else {
                match compute(closure, &mut state, v) {
                    Ok(l) => l,
                    Err(LabelError::DisallowedLine { from, to }) => {
                        status = EvaluationStatus::StructureError { from, to };
                        break;
                    }
                    Err(e) => return Err(e.into()),
                }
            };
            state.sequences[v].push(label);
            lambda.insert(id(v), label);
            reports.push(ComponentReport {
                members: ids,
                simple_cycles: 0,
                first: None,
                sequences: BTreeMap::from([(id(v), vec![label])]),
                uniqueness: None,
                trace: Vec::new(),
            });
            continue;
        }

        let first = select_first_vertex(&ids, closure).expect("component is not empty");
        let upstream = options.check_unique.then(|| state.clone());
        let run = match label_complex_scc(&ids, &first, closure, &mut state, options.trace) {
            Ok(r) => r,
            Err(LabelError::DisallowedLine { from, to }) => {
                status = EvaluationStatus::StructureError { from, to };
                break;
            }
            Err(e) => return Err(e.into()),
        };
        let mut report = ComponentReport {
            members: ids.clone(),
            simple_cycles: run.simple_cycles,
            first: Some(first.clone()),
            sequences: run.sequences.clone(),
            uniqueness: None,
            trace: run.trace,
        };
        if run.stability == Stability::Unstable {
            status = EvaluationStatus::Unstable {
                component: ids,
                first: first.clone(),
                first_sequence: run.sequences[&first].clone(),
            };
            reports.push(report);
            break;
        }
        if let Some(upstream) = upstream {
            report.uniqueness = Some(check_uniqueness(&report.members, closure, &upstream)?);
        }
        for &v in &members {
            lambda.insert(id(v), state.last(v).expect("labeled"));
        }
        reports.push(report);
    }

    Ok(EvaluationResult {
        root: root.clone(),
        lambda,
        status,
        components: reports,
        synthetic_lines: closure.lines().filter(|l| l.synthetic).collect(),
    })
}
