// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;
use core::str::FromStr;
use core::sync::atomic::{AtomicU64, Ordering};

use hashbrown::HashMap;

/// Identifier of a vertex. Unique within a graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(transparent)
)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        Self(String::from(s))
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

impl From<&VertexId> for VertexId {
    fn from(v: &VertexId) -> Self {
        v.clone()
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(rename_all = "lowercase")
)]
pub enum VertexKind {
    Information,
    Inference,
    Conflict,
    Preference,
}

impl VertexKind {
    pub const ALL: [VertexKind; 4] = [
        VertexKind::Information,
        VertexKind::Inference,
        VertexKind::Conflict,
        VertexKind::Preference,
    ];

    /// Single letter used in listings and DOT output.
    pub fn symbol(self) -> &'static str {
        match self {
            VertexKind::Information => "i",
            VertexKind::Inference => "I",
            VertexKind::Conflict => "C",
            VertexKind::Preference => "P",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VertexKind::Information => "information",
            VertexKind::Inference => "inference",
            VertexKind::Conflict => "conflict",
            VertexKind::Preference => "preference",
        }
    }

    pub fn is_rule_application(self) -> bool {
        self != VertexKind::Information
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VertexKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "information" | "i" => Ok(VertexKind::Information),
            "inference" | "I" => Ok(VertexKind::Inference),
            "conflict" | "C" => Ok(VertexKind::Conflict),
            "preference" | "P" => Ok(VertexKind::Preference),
            _ => Err(GraphError::UnknownKind(String::from(s))),
        }
    }
}

/// A vertex record. Information vertices have no rule id and no parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Vertex {
    pub id: VertexId,
    pub kind: VertexKind,
    pub statement: String,
    pub rule_id: Option<String>,
    pub antecedents: BTreeSet<VertexId>,
    pub consequents: BTreeSet<VertexId>,
    /// Insertion order. Larger means newer.
    pub seq: u64,
}

impl Vertex {
    pub fn information(id: impl Into<VertexId>, statement: impl Into<String>, seq: u64) -> Self {
        Self {
            id: id.into(),
            kind: VertexKind::Information,
            statement: statement.into(),
            rule_id: None,
            antecedents: BTreeSet::new(),
            consequents: BTreeSet::new(),
            seq,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Line {
    pub from: VertexId,
    pub to: VertexId,
    /// Added by the transitive closure. Read as "preference dominates target".
    pub synthetic: bool,
}

/// Identity of the graph a value was derived from. Changes on every mutation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SourceStamp(u64);

static NEXT_STAMP: AtomicU64 = AtomicU64::new(1);

fn fresh_stamp() -> SourceStamp {
    SourceStamp(NEXT_STAMP.fetch_add(1, Ordering::Relaxed))
}

/// A structural problem found by [`AceGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DanglingLine {
        from: VertexId,
        to: VertexId,
    },
    SelfLoop {
        vertex: VertexId,
    },
    DuplicateLine {
        from: VertexId,
        to: VertexId,
    },
    AntiParallel {
        from: VertexId,
        to: VertexId,
    },
    InformationLink {
        from: VertexId,
        to: VertexId,
    },
    UndeclaredLine {
        from: VertexId,
        to: VertexId,
    },
    AmbiguousLine {
        from: VertexId,
        to: VertexId,
    },
    MissingLine {
        from: VertexId,
        to: VertexId,
    },
    SyntheticFromNonPreference {
        from: VertexId,
        to: VertexId,
    },
    InformationWithParameters {
        vertex: VertexId,
    },
    UnexpectedRuleId {
        vertex: VertexId,
    },
    MissingRuleId {
        vertex: VertexId,
    },
    EmptyParameters {
        vertex: VertexId,
    },
    OverlappingParameters {
        vertex: VertexId,
        shared: VertexId,
    },
    SelfParameter {
        vertex: VertexId,
    },
    UnknownParameter {
        vertex: VertexId,
        parameter: VertexId,
    },
    DuplicateSeq {
        seq: u64,
        vertex: VertexId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DanglingLine { from, to } => write!(f, "line {from}->{to} has a missing endpoint"),
            SelfLoop { vertex } => write!(f, "self-loop on {vertex}"),
            DuplicateLine { from, to } => write!(f, "line {from}->{to} appears more than once"),
            AntiParallel { from, to } => {
                write!(f, "lines in both directions between {from} and {to}")
            }
            InformationLink { from, to } => {
                write!(f, "line {from}->{to} joins two information vertices")
            }
            UndeclaredLine { from, to } => {
                write!(f, "line {from}->{to} is not backed by a rule parameter")
            }
            AmbiguousLine { from, to } => write!(
                f,
                "line {from}->{to} is both an antecedent and a consequent relation"
            ),
            MissingLine { from, to } => {
                write!(f, "parameter relation {from}->{to} has no line")
            }
            SyntheticFromNonPreference { from, to } => {
                write!(f, "synthetic line {from}->{to} does not leave a preference")
            }
            InformationWithParameters { vertex } => {
                write!(f, "information vertex {vertex} has parameters")
            }
            UnexpectedRuleId { vertex } => write!(f, "information vertex {vertex} has a rule id"),
            MissingRuleId { vertex } => write!(f, "rule application {vertex} has no rule id"),
            EmptyParameters { vertex } => write!(
                f,
                "rule application {vertex} needs at least one antecedent and one consequent"
            ),
            OverlappingParameters { vertex, shared } => {
                write!(f, "{shared} is both antecedent and consequent of {vertex}")
            }
            SelfParameter { vertex } => write!(f, "{vertex} lists itself as a parameter"),
            UnknownParameter { vertex, parameter } => {
                write!(f, "{vertex} refers to unknown vertex {parameter}")
            }
            DuplicateSeq { seq, vertex } => {
                write!(f, "sequence number {seq} of {vertex} is not unique")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex id {0} is already in use")]
    DuplicateVertex(VertexId),
    #[error("{0} is not a rule application kind")]
    NotARuleApplication(VertexKind),
    #[error("unknown vertex kind {0:?}")]
    UnknownKind(String),
    #[error("structure violation: {0}")]
    StructureViolation(Violation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Edge {
    pub from: usize,
    pub to: usize,
    pub synthetic: bool,
}

/// Directed graph of information and rule application vertices.
///
/// Vertices keep insertion order; lines are stored once with adjacency in
/// both directions. Graphs produced by discussion retrieval are marked as
/// subgraphs: they keep full vertex records, so consequents may point at
/// vertices outside the subgraph.
#[derive(Clone, Debug)]
pub struct AceGraph {
    vertices: Vec<Vertex>,
    index: HashMap<VertexId, usize>,
    edges: Vec<Edge>,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
    next_seq: u64,
    subgraph: bool,
    stamp: SourceStamp,
}

impl Default for AceGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl PartialEq for AceGraph {
    fn eq(&self, other: &Self) -> bool {
        if self.vertices.len() != other.vertices.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let same_vertices = self
            .vertices
            .iter()
            .all(|v| other.vertex(&v.id).is_some_and(|w| w == v));
        if !same_vertices {
            return false;
        }
        let mut a: Vec<Line> = self.lines().collect();
        let mut b: Vec<Line> = other.lines().collect();
        a.sort();
        b.sort();
        a == b
    }
}

impl Eq for AceGraph {}

impl AceGraph {
    pub fn new() -> Self {
        Self {
            vertices: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            incoming: Vec::new(),
            outgoing: Vec::new(),
            next_seq: 0,
            subgraph: false,
            stamp: fresh_stamp(),
        }
    }

    /// Builds a graph from vertex records and derives lines from their
    /// parameters. No invariants are checked beyond id uniqueness; call
    /// [`validate`](Self::validate) afterwards.
    ///
    /// Parameters naming unknown vertices or the vertex itself produce no
    /// line. Information vertices never produce lines.
    pub fn from_vertices(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for v in vertices {
            g.push_vertex(v)?;
        }
        for i in 0..g.vertices.len() {
            if !g.vertices[i].kind.is_rule_application() {
                continue;
            }
            let ants: Vec<usize> = g.vertices[i]
                .antecedents
                .iter()
                .filter_map(|a| g.index.get(a).copied())
                .filter(|&a| a != i)
                .collect();
            let cons: Vec<usize> = g.vertices[i]
                .consequents
                .iter()
                .filter_map(|c| g.index.get(c).copied())
                .filter(|&c| c != i)
                .collect();
            for a in ants {
                if g.find_edge(a, i).is_none() {
                    g.push_edge(a, i, false);
                }
            }
            for c in cons {
                if g.find_edge(i, c).is_none() {
                    g.push_edge(i, c, false);
                }
            }
        }
        Ok(g)
    }

    /// Builds a graph from raw vertices and lines, without deriving or
    /// checking anything except that ids are unique and line endpoints exist.
    /// Intended for tests and for loading foreign data before validation.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = Vertex>,
        lines: impl IntoIterator<Item = Line>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for v in vertices {
            g.push_vertex(v)?;
        }
        for l in lines {
            let from = g.idx(&l.from)?;
            let to = g.idx(&l.to)?;
            g.push_edge(from, to, l.synthetic);
        }
        Ok(g)
    }

    /// Adds an information vertex with a generated id (`i<seq>`).
    pub fn add_information(&mut self, statement: impl Into<String>) -> VertexId {
        let id = self.fresh_id("i");
        let seq = self.next_seq;
        self.push_vertex(Vertex::information(id.clone(), statement, seq))
            .expect("generated id is fresh");
        self.touch();
        id
    }

    pub fn add_information_with_id(
        &mut self,
        id: impl Into<VertexId>,
        statement: impl Into<String>,
    ) -> Result<VertexId, GraphError> {
        let id = id.into();
        let seq = self.next_seq;
        self.push_vertex(Vertex::information(id.clone(), statement, seq))?;
        self.touch();
        Ok(id)
    }

    /// Adds a rule application with a generated id and the lines implied by
    /// its parameters.
    pub fn add_rule_application<A, C>(
        &mut self,
        kind: VertexKind,
        rule_id: impl Into<String>,
        antecedents: A,
        consequents: C,
    ) -> Result<VertexId, GraphError>
    where
        A: IntoIterator,
        A::Item: Into<VertexId>,
        C: IntoIterator,
        C::Item: Into<VertexId>,
    {
        let id = self.fresh_id(kind.symbol());
        self.insert_rule_application(id, kind, rule_id, antecedents, consequents)
    }

    /// Like [`add_rule_application`](Self::add_rule_application) with a
    /// caller-chosen id.
    pub fn insert_rule_application<A, C>(
        &mut self,
        id: impl Into<VertexId>,
        kind: VertexKind,
        rule_id: impl Into<String>,
        antecedents: A,
        consequents: C,
    ) -> Result<VertexId, GraphError>
    where
        A: IntoIterator,
        A::Item: Into<VertexId>,
        C: IntoIterator,
        C::Item: Into<VertexId>,
    {
        let id = id.into();
        if !kind.is_rule_application() {
            return Err(GraphError::NotARuleApplication(kind));
        }
        if self.index.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(id));
        }
        let rule_id = rule_id.into();
        if rule_id.is_empty() {
            return Err(GraphError::StructureViolation(Violation::MissingRuleId {
                vertex: id,
            }));
        }
        let antecedents: BTreeSet<VertexId> = antecedents.into_iter().map(Into::into).collect();
        let consequents: BTreeSet<VertexId> = consequents.into_iter().map(Into::into).collect();
        if antecedents.is_empty() || consequents.is_empty() {
            return Err(GraphError::StructureViolation(Violation::EmptyParameters {
                vertex: id,
            }));
        }
        for p in antecedents.iter().chain(consequents.iter()) {
            if !self.index.contains_key(p) {
                return Err(GraphError::UnknownVertex(p.clone()));
            }
        }
        if let Some(shared) = antecedents.intersection(&consequents).next() {
            return Err(GraphError::StructureViolation(
                Violation::OverlappingParameters {
                    vertex: id,
                    shared: shared.clone(),
                },
            ));
        }
        let seq = self.next_seq;
        let v = self.push_vertex(Vertex {
            id: id.clone(),
            kind,
            statement: String::new(),
            rule_id: Some(rule_id),
            antecedents,
            consequents,
            seq,
        })?;
        let ants: Vec<usize> = self.vertices[v]
            .antecedents
            .iter()
            .map(|a| self.index[a])
            .collect();
        let cons: Vec<usize> = self.vertices[v]
            .consequents
            .iter()
            .map(|c| self.index[c])
            .collect();
        for a in ants {
            self.push_edge(a, v, false);
        }
        for c in cons {
            self.push_edge(v, c, false);
        }
        self.touch();
        Ok(id)
    }

    /// Sets the free-text statement of a vertex.
    pub fn set_statement(
        &mut self,
        id: &VertexId,
        statement: impl Into<String>,
    ) -> Result<(), GraphError> {
        let i = self.idx(id)?;
        self.vertices[i].statement = statement.into();
        self.touch();
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn line_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, id: &VertexId) -> bool {
        self.index.contains_key(id)
    }

    pub fn vertex(&self, id: &VertexId) -> Option<&Vertex> {
        self.index.get(id).map(|&i| &self.vertices[i])
    }

    /// Vertices in insertion order.
    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &Vertex> + '_ {
        self.vertices.iter()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.vertices.iter().map(|v| &v.id)
    }

    pub fn lines(&self) -> impl Iterator<Item = Line> + '_ {
        self.edges.iter().map(|e| self.line_of(e))
    }

    /// `Some(synthetic)` if a line `from -> to` exists.
    pub fn line(&self, from: &VertexId, to: &VertexId) -> Option<Line> {
        let f = *self.index.get(from)?;
        let t = *self.index.get(to)?;
        self.find_edge(f, t).map(|e| self.line_of(&self.edges[e]))
    }

    pub fn has_line(&self, from: &VertexId, to: &VertexId) -> bool {
        self.line(from, to).is_some()
    }

    pub fn predecessors<'a>(&'a self, id: &VertexId) -> impl Iterator<Item = &'a VertexId> + 'a {
        let edges: &[usize] = match self.index.get(id) {
            Some(&i) => &self.incoming[i],
            None => &[],
        };
        edges.iter().map(|&e| &self.vertices[self.edges[e].from].id)
    }

    pub fn successors<'a>(&'a self, id: &VertexId) -> impl Iterator<Item = &'a VertexId> + 'a {
        let edges: &[usize] = match self.index.get(id) {
            Some(&i) => &self.outgoing[i],
            None => &[],
        };
        edges.iter().map(|&e| &self.vertices[self.edges[e].to].id)
    }

    pub fn in_degree(&self, id: &VertexId) -> usize {
        self.index.get(id).map_or(0, |&i| self.incoming[i].len())
    }

    /// True for graphs returned by discussion retrieval.
    pub fn is_subgraph(&self) -> bool {
        self.subgraph
    }

    /// Identity of the graph this value was built from.
    pub fn source_stamp(&self) -> SourceStamp {
        self.stamp
    }

    /// The seq the next inserted vertex will receive.
    pub fn next_seq(&self) -> u64 {
        self.next_seq
    }

    /// Checks every structural invariant. An empty result means the graph is
    /// well formed. Subgraphs tolerate consequents outside the vertex set.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let id = |i: usize| self.vertices[i].id.clone();

        let mut seen_seq: HashMap<u64, usize> = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if seen_seq.insert(v.seq, i).is_some() {
                out.push(Violation::DuplicateSeq {
                    seq: v.seq,
                    vertex: id(i),
                });
            }
        }

        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        for e in &self.edges {
            *pairs.entry((e.from, e.to)).or_insert(0) += 1;
        }
        let mut reported_pairs: Vec<(usize, usize)> = Vec::new();
        for (&(f, t), &n) in &pairs {
            if n > 1 {
                reported_pairs.push((f, t));
            }
        }
        reported_pairs.sort_unstable();
        for (f, t) in reported_pairs {
            out.push(Violation::DuplicateLine {
                from: id(f),
                to: id(t),
            });
        }
        let mut anti: Vec<(usize, usize)> = pairs
            .keys()
            .filter(|&&(f, t)| f < t && pairs.contains_key(&(t, f)))
            .copied()
            .collect();
        anti.sort_unstable();
        for (f, t) in anti {
            out.push(Violation::AntiParallel {
                from: id(f),
                to: id(t),
            });
        }

        for e in &self.edges {
            let (f, t) = (e.from, e.to);
            let (vf, vt) = (&self.vertices[f], &self.vertices[t]);
            if f == t {
                out.push(Violation::SelfLoop { vertex: id(f) });
                continue;
            }
            if vf.kind == VertexKind::Information && vt.kind == VertexKind::Information {
                out.push(Violation::InformationLink {
                    from: id(f),
                    to: id(t),
                });
                continue;
            }
            if e.synthetic {
                if vf.kind != VertexKind::Preference {
                    out.push(Violation::SyntheticFromNonPreference {
                        from: id(f),
                        to: id(t),
                    });
                }
                continue;
            }
            let premise = vt.kind.is_rule_application() && vt.antecedents.contains(&vf.id);
            let effect = vf.kind.is_rule_application() && vf.consequents.contains(&vt.id);
            match (premise, effect) {
                (true, true) => out.push(Violation::AmbiguousLine {
                    from: id(f),
                    to: id(t),
                }),
                (false, false) => out.push(Violation::UndeclaredLine {
                    from: id(f),
                    to: id(t),
                }),
                _ => {}
            }
        }

        for (i, v) in self.vertices.iter().enumerate() {
            if !v.kind.is_rule_application() {
                if !v.antecedents.is_empty() || !v.consequents.is_empty() {
                    out.push(Violation::InformationWithParameters { vertex: id(i) });
                }
                if v.rule_id.is_some() {
                    out.push(Violation::UnexpectedRuleId { vertex: id(i) });
                }
                continue;
            }
            if v.rule_id.as_deref().is_none_or(str::is_empty) {
                out.push(Violation::MissingRuleId { vertex: id(i) });
            }
            if v.antecedents.is_empty() || v.consequents.is_empty() {
                out.push(Violation::EmptyParameters { vertex: id(i) });
            }
            if v.antecedents.contains(&v.id) || v.consequents.contains(&v.id) {
                out.push(Violation::SelfParameter { vertex: id(i) });
            }
            for shared in v.antecedents.intersection(&v.consequents) {
                out.push(Violation::OverlappingParameters {
                    vertex: id(i),
                    shared: shared.clone(),
                });
            }
            for a in &v.antecedents {
                if a == &v.id {
                    continue;
                }
                match self.index.get(a) {
                    None => out.push(Violation::UnknownParameter {
                        vertex: id(i),
                        parameter: a.clone(),
                    }),
                    Some(&ai) => {
                        if self.find_edge(ai, i).is_none() {
                            out.push(Violation::MissingLine {
                                from: a.clone(),
                                to: id(i),
                            });
                        }
                    }
                }
            }
            for c in &v.consequents {
                if c == &v.id {
                    continue;
                }
                match self.index.get(c) {
                    None if self.subgraph => {}
                    None => out.push(Violation::UnknownParameter {
                        vertex: id(i),
                        parameter: c.clone(),
                    }),
                    Some(&ci) => {
                        if self.find_edge(i, ci).is_none() {
                            out.push(Violation::MissingLine {
                                from: id(i),
                                to: c.clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    // Index-level access for the algorithms in this crate.

    pub(crate) fn idx(&self, id: &VertexId) -> Result<usize, GraphError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.clone()))
    }

    pub(crate) fn index_of(&self, id: &VertexId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub(crate) fn at(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub(crate) fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub(crate) fn in_edges(&self, i: usize) -> &[usize] {
        &self.incoming[i]
    }

    pub(crate) fn out_edges(&self, i: usize) -> &[usize] {
        &self.outgoing[i]
    }

    pub(crate) fn id_index(&self) -> &HashMap<VertexId, usize> {
        &self.index
    }

    pub(crate) fn find_edge(&self, from: usize, to: usize) -> Option<usize> {
        self.outgoing[from]
            .iter()
            .copied()
            .find(|&e| self.edges[e].to == to)
    }

    pub(crate) fn add_synthetic(&mut self, from: usize, to: usize) {
        self.push_edge(from, to, true);
        self.touch();
    }

    /// Copy restricted to `keep` (ascending indices) and the given edges,
    /// whose endpoints must both be kept. Marked as a subgraph of `self`.
    pub(crate) fn restrict(&self, keep: &[usize], edges: &[usize]) -> AceGraph {
        let mut remap: HashMap<usize, usize> = HashMap::with_capacity(keep.len());
        let mut g = AceGraph {
            vertices: Vec::with_capacity(keep.len()),
            index: HashMap::with_capacity(keep.len()),
            edges: Vec::with_capacity(edges.len()),
            incoming: Vec::with_capacity(keep.len()),
            outgoing: Vec::with_capacity(keep.len()),
            next_seq: self.next_seq,
            subgraph: true,
            stamp: self.stamp,
        };
        for &i in keep {
            remap.insert(i, g.vertices.len());
            g.push_vertex(self.vertices[i].clone())
                .expect("ids are unique in the source graph");
        }
        g.next_seq = self.next_seq;
        for &e in edges {
            let edge = self.edges[e];
            g.push_edge(remap[&edge.from], remap[&edge.to], edge.synthetic);
        }
        g
    }

    fn line_of(&self, e: &Edge) -> Line {
        Line {
            from: self.vertices[e.from].id.clone(),
            to: self.vertices[e.to].id.clone(),
            synthetic: e.synthetic,
        }
    }

    fn fresh_id(&self, prefix: &str) -> VertexId {
        let mut n = self.next_seq;
        loop {
            let candidate = VertexId(alloc::format!("{prefix}{n}"));
            if !self.index.contains_key(&candidate) {
                return candidate;
            }
            n += 1;
        }
    }

    fn push_vertex(&mut self, v: Vertex) -> Result<usize, GraphError> {
        if self.index.contains_key(&v.id) {
            return Err(GraphError::DuplicateVertex(v.id));
        }
        let i = self.vertices.len();
        self.next_seq = self.next_seq.max(v.seq.saturating_add(1));
        self.index.insert(v.id.clone(), i);
        self.vertices.push(v);
        self.incoming.push(Vec::new());
        self.outgoing.push(Vec::new());
        Ok(i)
    }

    fn push_edge(&mut self, from: usize, to: usize, synthetic: bool) {
        let e = self.edges.len();
        self.edges.push(Edge {
            from,
            to,
            synthetic,
        });
        self.outgoing[from].push(e);
        self.incoming[to].push(e);
    }

    fn touch(&mut self) {
        if !self.subgraph {
            self.stamp = fresh_stamp();
        }
    }
}
