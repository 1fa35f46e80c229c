// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::evaluation::{
    evaluate_discussion, EvaluationError, EvaluationOptions, EvaluationResult, EvaluationStatus,
};
use crate::graph::{AceGraph, VertexId};
use crate::label::CLabel;
use crate::retrieval::{find_discussion, Discussion, RetrievalError};
use crate::rules::RuleCatalog;

/// A development artifact: its inputs, the methods applied and its outputs,
/// each identified by vertices of the graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArtifactTriple {
    pub inputs: BTreeSet<VertexId>,
    pub methods: BTreeSet<VertexId>,
    pub outputs: BTreeSet<VertexId>,
}

impl ArtifactTriple {
    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.inputs
            .iter()
            .chain(self.methods.iter())
            .chain(self.outputs.iter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptabilityVerdict {
    /// True iff every vertex of the triple is labeled `A` or `AD`.
    pub holds: bool,
    pub labels: BTreeMap<VertexId, CLabel>,
    /// Roots whose discussions were evaluated; all other triple vertices
    /// lie inside one of them.
    pub evaluated_roots: Vec<VertexId>,
    pub rejected: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AcceptabilityError {
    #[error(transparent)]
    Retrieval(#[from] RetrievalError),
    #[error(transparent)]
    Evaluation(#[from] EvaluationError),
    #[error("discussion of {root} has no stable labeling")]
    Unstable {
        root: VertexId,
        result: Box<EvaluationResult>,
    },
    #[error("discussion of {root} has a line {from}->{to} with no propagation rule")]
    StructureError {
        root: VertexId,
        from: VertexId,
        to: VertexId,
    },
}

/// Evaluates the discussions of the triple's vertices, skipping any vertex
/// whose discussion is contained in the discussion of another one.
pub fn check_acceptability(
    graph: &AceGraph,
    triple: &ArtifactTriple,
    rules: &RuleCatalog,
) -> Result<AcceptabilityVerdict, AcceptabilityError> {
    let vertices: BTreeSet<&VertexId> = triple.vertices().collect();
    let mut discussions: Vec<Discussion> = Vec::with_capacity(vertices.len());
    for v in &vertices {
        discussions.push(find_discussion(graph, v)?);
    }
    // Largest first so that a covering discussion is chosen before the ones
    // it covers. Ties keep id order.
    let mut order: Vec<usize> = (0..discussions.len()).collect();
    order.sort_by_key(|&k| core::cmp::Reverse(discussions[k].len()));
    let mut chosen: Vec<usize> = Vec::new();
    for k in order {
        let root = &discussions[k].root;
        if !chosen.iter().any(|&c| discussions[c].contains(root)) {
            chosen.push(k);
        }
    }

    let mut labels = BTreeMap::new();
    let mut evaluated_roots = Vec::new();
    for k in chosen {
        let d = &discussions[k];
        let result = evaluate_discussion(d, rules, EvaluationOptions::default())?;
        match &result.status {
            EvaluationStatus::Stable => {}
            EvaluationStatus::Unstable { .. } => {
                return Err(AcceptabilityError::Unstable {
                    root: d.root.clone(),
                    result: Box::new(result),
                })
            }
            EvaluationStatus::StructureError { from, to } => {
                return Err(AcceptabilityError::StructureError {
                    root: d.root.clone(),
                    from: from.clone(),
                    to: to.clone(),
                })
            }
        }
        for v in &vertices {
            if let Some(l) = result.label(v) {
                labels.entry((*v).clone()).or_insert(l);
            }
        }
        evaluated_roots.push(d.root.clone());
    }
    let rejected: Vec<VertexId> = labels
        .iter()
        .filter(|(_, l)| !l.is_accepted())
        .map(|(v, _)| v.clone())
        .collect();
    Ok(AcceptabilityVerdict {
        holds: rejected.is_empty(),
        labels,
        evaluated_roots,
        rejected,
    })
}
