// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::graph::{AceGraph, VertexId, VertexKind};
use crate::retrieval::Discussion;
use crate::rules::RuleCatalog;

/// Applications of one transitive preference rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitiveGroup {
    pub rule_id: String,
    pub members: BTreeSet<VertexId>,
}

/// Disjoint groups of preference applications, one per transitive rule.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransitiveGroups {
    groups: Vec<TransitiveGroup>,
}

impl TransitiveGroups {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `vertex` to the group of `rule_id`, creating it if needed.
    pub fn add(&mut self, rule_id: &str, vertex: VertexId) {
        match self.groups.iter_mut().find(|g| g.rule_id == rule_id) {
            Some(g) => {
                g.members.insert(vertex);
            }
            None => self.groups.push(TransitiveGroup {
                rule_id: String::from(rule_id),
                members: BTreeSet::from([vertex]),
            }),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &TransitiveGroup> {
        self.groups.iter()
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClosureError {
    #[error("preference {vertex} uses undeclared rule {rule_id:?}")]
    UnknownRule { vertex: VertexId, rule_id: String },
}

/// Groups the preference applications of the discussion by rule id, keeping
/// only rules marked transitive. Groups come out in rule id order.
pub fn group_transitive_applications(
    discussion: &Discussion,
    rules: &RuleCatalog,
) -> Result<TransitiveGroups, ClosureError> {
    let mut by_rule: BTreeMap<&str, BTreeSet<VertexId>> = BTreeMap::new();
    for v in discussion.graph.vertices() {
        if v.kind != VertexKind::Preference {
            continue;
        }
        let rule_id = v.rule_id.as_deref().unwrap_or("");
        let meta = rules
            .get(rule_id)
            .ok_or_else(|| ClosureError::UnknownRule {
                vertex: v.id.clone(),
                rule_id: String::from(rule_id),
            })?;
        if meta.transitive {
            by_rule.entry(rule_id).or_default().insert(v.id.clone());
        }
    }
    Ok(TransitiveGroups {
        groups: by_rule
            .into_iter()
            .map(|(rule_id, members)| TransitiveGroup {
                rule_id: String::from(rule_id),
                members,
            })
            .collect(),
    })
}

/// The discussion with synthetic lines added so that each transitive
/// preference also dominates whatever the preferences it reaches dominate.
pub fn build_transitive_closure(discussion: &Discussion, groups: &TransitiveGroups) -> AceGraph {
    close_preferences(&discussion.graph, groups)
}

/// Same as [`build_transitive_closure`] on an arbitrary graph.
///
/// For each group the parameter lines of its members form a preference
/// graph, split into weakly connected parts. Each part is walked breadth
/// first from its sources (or, when it has none, from its oldest vertex).
/// Whenever a member `v` is reached and an earlier member `u` reaches `v`
/// inside the part, `u` gets a synthetic line to every consequent of `v`
/// that it does not already have a line to.
pub fn close_preferences(graph: &AceGraph, groups: &TransitiveGroups) -> AceGraph {
    let mut closed = graph.clone();
    for group in groups.iter() {
        let members: BTreeSet<usize> = group
            .members
            .iter()
            .filter_map(|m| graph.index_of(m))
            .filter(|&m| graph.at(m).kind == VertexKind::Preference)
            .collect();
        if members.is_empty() {
            continue;
        }
        let z = PreferenceGraph::build(graph, &members);
        for part in z.parts() {
            close_part(&mut closed, &z, &part, &members);
        }
    }
    closed
}

/// Parameter lines of one group, over local indices.
struct PreferenceGraph {
    /// Local index to graph index.
    nodes: Vec<usize>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl PreferenceGraph {
    fn build(graph: &AceGraph, members: &BTreeSet<usize>) -> Self {
        let mut local: HashMap<usize, usize> = HashMap::new();
        let mut z = PreferenceGraph {
            nodes: Vec::new(),
            out: Vec::new(),
            inn: Vec::new(),
        };
        let mut node = |z: &mut PreferenceGraph, g: usize| -> usize {
            *local.entry(g).or_insert_with(|| {
                z.nodes.push(g);
                z.out.push(Vec::new());
                z.inn.push(Vec::new());
                z.nodes.len() - 1
            })
        };
        for &p in members {
            let pv = graph.at(p);
            let p_local = node(&mut z, p);
            for &e in graph.in_edges(p) {
                let edge = graph.edge(e);
                if !edge.synthetic && pv.antecedents.contains(&graph.at(edge.from).id) {
                    let a = node(&mut z, edge.from);
                    z.out[a].push(p_local);
                    z.inn[p_local].push(a);
                }
            }
            for &e in graph.out_edges(p) {
                let edge = graph.edge(e);
                if !edge.synthetic && pv.consequents.contains(&graph.at(edge.to).id) {
                    let c = node(&mut z, edge.to);
                    z.out[p_local].push(c);
                    z.inn[c].push(p_local);
                }
            }
        }
        // Successors in seq order keep the walk deterministic.
        for list in z.out.iter_mut().chain(z.inn.iter_mut()) {
            list.sort_unstable_by_key(|&l| graph.at(z.nodes[l]).seq);
            list.dedup();
        }
        z
    }

    /// Weakly connected parts as ascending local index lists.
    fn parts(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut part_of = vec![usize::MAX; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if part_of[s] != usize::MAX {
                continue;
            }
            let id = parts.len();
            let mut members = vec![s];
            part_of[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in self.out[v].iter().chain(self.inn[v].iter()) {
                    if part_of[w] == usize::MAX {
                        part_of[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            parts.push(members);
        }
        parts
    }

    fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            for &w in &self.out[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }
}

fn close_part(
    closed: &mut AceGraph,
    z: &PreferenceGraph,
    part: &[usize],
    members: &BTreeSet<usize>,
) {
    let seq = |l: usize| closed.at(z.nodes[l]).seq;
    let mut sources: Vec<usize> = part
        .iter()
        .copied()
        .filter(|&l| z.inn[l].is_empty())
        .collect();
    sources.sort_unstable_by_key(|&l| seq(l));
    if sources.is_empty() {
        if let Some(&oldest) = part
            .iter()
            .filter(|&&l| !z.out[l].is_empty())
            .min_by_key(|&&l| seq(l))
        {
            sources.push(oldest);
        }
    }

    let mut ever_queued = vec![false; z.nodes.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in sources {
        ever_queued[s] = true;
        queue.push_back(s);
    }
    let mut visited_members: Vec<usize> = Vec::new();
    while let Some(v) = queue.pop_front() {
        if members.contains(&z.nodes[v]) {
            visited_members.push(v);
            for &u in &visited_members[..visited_members.len() - 1] {
                if !z.reaches(u, v) {
                    continue;
                }
                let from = z.nodes[u];
                for &c in &z.out[v] {
                    let to = z.nodes[c];
                    if to != from && closed.find_edge(from, to).is_none() {
                        closed.add_synthetic(from, to);
                    }
                }
            }
        }
        for &w in &z.out[v] {
            if !ever_queued[w] {
                ever_queued[w] = true;
                queue.push_back(w);
            }
        }
    }
}
