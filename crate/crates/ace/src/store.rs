// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! JSON documents holding a graph and its rule metadata.
//!
//! Lines are not stored. They are derived from the parameter sets on load.
//! Saving is canonical: rules sorted by id, vertices by seq and parameter
//! sets lexicographically, so equal graphs give identical bytes.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use ace_core::{
    AceGraph, GraphError, RuleCatalog, RuleMeta, Vertex, VertexId, VertexKind, Violation,
};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub format_version: u32,
    pub rules: Vec<RuleRecord>,
    pub vertices: Vec<VertexRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub rule_id: String,
    pub kind: VertexKind,
    #[serde(default)]
    pub transitive: bool,
    #[serde(default)]
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: VertexId,
    pub kind: VertexKind,
    #[serde(default)]
    pub statement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule_id: Option<String>,
    #[serde(default)]
    pub antecedents: BTreeSet<VertexId>,
    #[serde(default)]
    pub consequents: BTreeSet<VertexId>,
    pub seq: u64,
}

/// Something wrong with a document that parsed fine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Problem {
    Structure(Violation),
    DuplicateVertex(VertexId),
    DuplicateRule(String),
    UndeclaredRule { vertex: VertexId, rule_id: String },
    RuleKindMismatch { vertex: VertexId, rule_id: String },
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Structure(v) => v.fmt(f),
            Problem::DuplicateVertex(v) => write!(f, "vertex id {v} appears more than once"),
            Problem::DuplicateRule(r) => write!(f, "rule {r:?} is declared more than once"),
            Problem::UndeclaredRule { vertex, rule_id } => {
                write!(f, "{vertex} uses undeclared rule {rule_id:?}")
            }
            Problem::RuleKindMismatch { vertex, rule_id } => {
                write!(f, "{vertex} and its rule {rule_id:?} differ in kind")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed document: {0}")]
    Parse(String),
    #[error("unsupported format_version {found} (this build reads {FORMAT_VERSION})")]
    SchemaVersionUnsupported { found: u64 },
    #[error("invalid graph: {}", list(.0))]
    InvalidGraph(Vec<Problem>),
}

fn list(problems: &[Problem]) -> String {
    problems
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A graph together with the metadata of the rules it applies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StoredGraph {
    pub graph: AceGraph,
    pub rules: RuleCatalog,
}

impl GraphDocument {
    /// Canonical document for a valid graph.
    pub fn from_graph(graph: &AceGraph, rules: &RuleCatalog) -> Result<Self, StoreError> {
        let problems = check(graph, rules);
        if !problems.is_empty() {
            return Err(StoreError::InvalidGraph(problems));
        }
        let mut vertices: Vec<VertexRecord> = graph
            .vertices()
            .map(|v| VertexRecord {
                id: v.id.clone(),
                kind: v.kind,
                statement: v.statement.clone(),
                rule_id: v.rule_id.clone(),
                antecedents: v.antecedents.clone(),
                consequents: v.consequents.clone(),
                seq: v.seq,
            })
            .collect();
        vertices.sort_by_key(|v| v.seq);
        Ok(Self {
            format_version: FORMAT_VERSION,
            rules: rules
                .iter()
                .map(|(id, m)| RuleRecord {
                    rule_id: id.to_owned(),
                    kind: m.kind,
                    transitive: m.transitive,
                    description: m.description.clone(),
                })
                .collect(),
            vertices,
        })
    }

    /// Rebuilds the graph, deriving lines from parameters.
    pub fn into_graph(self) -> Result<StoredGraph, StoreError> {
        let mut problems = Vec::new();
        let mut rules = RuleCatalog::new();
        for r in self.rules {
            let meta = RuleMeta {
                kind: r.kind,
                transitive: r.transitive,
                description: r.description,
            };
            if rules.insert(r.rule_id.clone(), meta).is_some() {
                problems.push(Problem::DuplicateRule(r.rule_id));
            }
        }
        let mut vertices = self.vertices;
        vertices.sort_by_key(|v| v.seq);
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.id.clone()) {
                problems.push(Problem::DuplicateVertex(v.id.clone()));
            }
        }
        if !problems.is_empty() {
            return Err(StoreError::InvalidGraph(problems));
        }
        let graph = AceGraph::from_vertices(vertices.into_iter().map(|r| Vertex {
            id: r.id,
            kind: r.kind,
            statement: r.statement,
            rule_id: r.rule_id,
            antecedents: r.antecedents,
            consequents: r.consequents,
            seq: r.seq,
        }))
        .map_err(|e| match e {
            GraphError::DuplicateVertex(v) => {
                StoreError::InvalidGraph(vec![Problem::DuplicateVertex(v)])
            }
            other => StoreError::Parse(other.to_string()),
        })?;
        let problems = check(&graph, &rules);
        if !problems.is_empty() {
            return Err(StoreError::InvalidGraph(problems));
        }
        Ok(StoredGraph { graph, rules })
    }
}

/// Structural violations plus rule references that do not resolve.
pub fn check(graph: &AceGraph, rules: &RuleCatalog) -> Vec<Problem> {
    let mut problems: Vec<Problem> = graph
        .validate()
        .into_iter()
        .map(Problem::Structure)
        .collect();
    for v in graph.vertices() {
        let Some(rule_id) = v.rule_id.as_deref().filter(|r| !r.is_empty()) else {
            continue;
        };
        match rules.get(rule_id) {
            None => problems.push(Problem::UndeclaredRule {
                vertex: v.id.clone(),
                rule_id: rule_id.to_owned(),
            }),
            Some(meta) if meta.kind != v.kind => problems.push(Problem::RuleKindMismatch {
                vertex: v.id.clone(),
                rule_id: rule_id.to_owned(),
            }),
            Some(_) => {}
        }
    }
    problems
}

/// Canonical bytes: pretty JSON with a trailing newline.
pub fn to_bytes(graph: &AceGraph, rules: &RuleCatalog) -> Result<Vec<u8>, StoreError> {
    let doc = GraphDocument::from_graph(graph, rules)?;
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("documents always serialize");
    bytes.push(b'\n');
    Ok(bytes)
}

pub fn from_bytes(bytes: &[u8]) -> Result<StoredGraph, StoreError> {
    #[derive(Deserialize)]
    struct Header {
        format_version: u64,
    }
    let header: Header =
        serde_json::from_slice(bytes).map_err(|e| StoreError::Parse(e.to_string()))?;
    if header.format_version != u64::from(FORMAT_VERSION) {
        return Err(StoreError::SchemaVersionUnsupported {
            found: header.format_version,
        });
    }
    let doc: GraphDocument =
        serde_json::from_slice(bytes).map_err(|e| StoreError::Parse(e.to_string()))?;
    doc.into_graph()
}

/// Writes the document next to `path` and renames it into place.
pub fn save(path: &Path, graph: &AceGraph, rules: &RuleCatalog) -> Result<(), StoreError> {
    let bytes = to_bytes(graph, rules)?;
    write_atomic(path, &bytes)
}

pub fn load(path: &Path) -> Result<StoredGraph, StoreError> {
    let bytes = fs::read(path).map_err(|source| StoreError::Io {
        path: path.to_owned(),
        source,
    })?;
    from_bytes(&bytes)
}

/// Replaces `path` with `bytes` so that readers see either the old or the
/// new content.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), StoreError> {
    let io = |source| StoreError::Io {
        path: path.to_owned(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_owned(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".into());
    static COUNTER: AtomicU64 = AtomicU64::new(0);
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    let tmp = dir.join(format!(".{name}.{}.{n}.tmp", std::process::id()));
    let mut file = fs::File::create(&tmp).map_err(io)?;
    file.write_all(bytes).map_err(io)?;
    file.sync_all().map_err(io)?;
    drop(file);
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}
