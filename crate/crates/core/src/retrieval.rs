// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::graph::{AceGraph, GraphError, SourceStamp, VertexId};

/// Everything that can reach a root vertex, together with every line ending
/// inside that set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discussion {
    pub root: VertexId,
    pub graph: AceGraph,
}

impl Discussion {
    pub fn source(&self) -> SourceStamp {
        self.graph.source_stamp()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.graph.contains(v)
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RetrievalError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("discussions come from different graphs")]
    SourceMismatch,
}

/// Reverse breadth-first search from `root`. Linear in the size of the
/// discussion, not of the whole graph.
pub fn find_discussion(graph: &AceGraph, root: &VertexId) -> Result<Discussion, RetrievalError> {
    let start = graph.idx(root)?;
    let mut seen = HashSet::new();
    seen.insert(start);
    let mut members = vec![start];
    let mut lines = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &e in graph.in_edges(v) {
            lines.push(e);
            let u = graph.edge(e).from;
            if seen.insert(u) {
                members.push(u);
                queue.push_back(u);
            }
        }
    }
    members.sort_unstable();
    lines.sort_unstable();
    Ok(Discussion {
        root: root.clone(),
        graph: graph.restrict(&members, &lines),
    })
}

/// True iff `d1` is contained in `d2`. Both must come from the same graph.
pub fn is_subdiscussion(d1: &Discussion, d2: &Discussion) -> Result<bool, RetrievalError> {
    if d1.source() != d2.source() {
        return Err(RetrievalError::SourceMismatch);
    }
    if d1.graph.len() > d2.graph.len() || d1.graph.line_count() > d2.graph.line_count() {
        return Ok(false);
    }
    let vertices_in = d1.graph.vertex_ids().all(|v| d2.graph.contains(v));
    Ok(vertices_in && d1.graph.lines().all(|l| d2.graph.has_line(&l.from, &l.to)))
}
