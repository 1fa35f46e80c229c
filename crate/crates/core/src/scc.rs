// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::HashMap;

use crate::circuits;
use crate::graph::{AceGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SccError {
    #[error("the graph has a cycle")]
    CycleDetected,
    #[error("components do not partition the vertex set")]
    NotAPartition,
}

/// A directed acyclic graph over nodes `0..n`, with a priority per node used
/// to break ties in topological order (lower first).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dag {
    successors: Vec<Vec<usize>>,
    priority: Vec<u64>,
}

impl Dag {
    /// Nodes get their own index as priority.
    pub fn new(node_count: usize) -> Self {
        Self {
            successors: vec![Vec::new(); node_count],
            priority: (0..node_count as u64).collect(),
        }
    }

    pub fn add_line(&mut self, from: usize, to: usize) {
        if !self.successors[from].contains(&to) {
            self.successors[from].push(to);
        }
    }

    pub fn set_priority(&mut self, node: usize, priority: u64) {
        self.priority[node] = priority;
    }

    pub fn node_count(&self) -> usize {
        self.successors.len()
    }

    pub fn successors(&self, node: usize) -> &[usize] {
        &self.successors[node]
    }

    pub fn lines(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(f, ts)| ts.iter().map(move |&t| (f, t)))
    }
}

/// Components contracted to single nodes. Node `k` stands for
/// `stands_for[k]`; its priority is the smallest seq among its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    pub dag: Dag,
    pub stands_for: Vec<Vec<VertexId>>,
}

/// Strongly connected components. Members are listed in seq order and
/// components are ordered by their oldest member.
pub fn enumerate_scc(graph: &AceGraph) -> Vec<Vec<VertexId>> {
    let mut comps = tarjan(graph);
    for c in &mut comps {
        c.sort_unstable_by_key(|&i| graph.at(i).seq);
    }
    comps.sort_unstable_by_key(|c| graph.at(c[0]).seq);
    comps
        .into_iter()
        .map(|c| c.into_iter().map(|i| graph.at(i).id.clone()).collect())
        .collect()
}

/// Contracts each component to one node in a single pass over the lines.
pub fn contract_scc(
    graph: &AceGraph,
    components: &[Vec<VertexId>],
) -> Result<Condensation, SccError> {
    let mut component_of = vec![usize::MAX; graph.len()];
    for (k, c) in components.iter().enumerate() {
        for v in c {
            let i = graph.index_of(v).ok_or(SccError::NotAPartition)?;
            if component_of[i] != usize::MAX {
                return Err(SccError::NotAPartition);
            }
            component_of[i] = k;
        }
    }
    if component_of.contains(&usize::MAX) {
        return Err(SccError::NotAPartition);
    }
    let idx: Vec<Vec<usize>> = components
        .iter()
        .map(|c| c.iter().map(|v| graph.index_of(v).unwrap()).collect())
        .collect();
    Ok(Condensation {
        dag: condense(graph, &component_of, &idx),
        stands_for: components.to_vec(),
    })
}

/// Kahn's algorithm. Among ready nodes the one with the lowest priority goes
/// first, so the order is deterministic.
pub fn topological_sort(dag: &Dag) -> Result<Vec<usize>, SccError> {
    let n = dag.node_count();
    let mut indegree = vec![0usize; n];
    for (_, t) in dag.lines() {
        indegree[t] += 1;
    }
    let mut ready: BinaryHeap<Reverse<(u64, usize)>> = (0..n)
        .filter(|&k| indegree[k] == 0)
        .map(|k| Reverse((dag.priority[k], k)))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((_, k))) = ready.pop() {
        order.push(k);
        for &t in &dag.successors[k] {
            indegree[t] -= 1;
            if indegree[t] == 0 {
                ready.push(Reverse((dag.priority[t], t)));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(SccError::CycleDetected)
    }
}

/// Replaces each node of `order` by what it stands for.
pub fn expand_scc<T: Clone>(order: &[usize], stands_for: &[T]) -> Vec<T> {
    order.iter().map(|&k| stands_for[k].clone()).collect()
}

/// Number of simple cycles using only lines between members of `component`.
pub fn count_simple_cycles(graph: &AceGraph, component: &[VertexId]) -> usize {
    let members: Vec<usize> = component.iter().filter_map(|v| graph.index_of(v)).collect();
    circuits::count(&local_adjacency(graph, &members))
}

/// Adjacency over positions in `members`, restricted to lines inside it.
/// Successor lists follow the order of `members`.
pub(crate) fn local_adjacency(graph: &AceGraph, members: &[usize]) -> Vec<Vec<usize>> {
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    members
        .iter()
        .map(|&i| {
            let mut succ: Vec<usize> = graph
                .out_edges(i)
                .iter()
                .filter_map(|&e| pos.get(&graph.edge(e).to).copied())
                .collect();
            succ.sort_unstable();
            succ.dedup();
            succ
        })
        .collect()
}

pub(crate) fn condense(graph: &AceGraph, component_of: &[usize], comps: &[Vec<usize>]) -> Dag {
    let mut dag = Dag::new(comps.len());
    for (k, c) in comps.iter().enumerate() {
        let oldest = c.iter().map(|&i| graph.at(i).seq).min().unwrap_or(u64::MAX);
        dag.set_priority(k, oldest);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(graph.line_count());
    for i in 0..graph.len() {
        for &e in graph.out_edges(i) {
            let (a, b) = (component_of[i], component_of[graph.edge(e).to]);
            if a != b {
                pairs.push((a, b));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    for (a, b) in pairs {
        dag.successors[a].push(b);
    }
    dag
}

/// Iterative Tarjan. Components come out in reverse topological order.
pub(crate) fn tarjan(graph: &AceGraph) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = graph.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0usize;
    // (vertex, position in its out-edge list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let out = graph.out_edges(v);
            if *pos < out.len() {
                let w = graph.edge(out[*pos]).to;
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack holds the component");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps
}
