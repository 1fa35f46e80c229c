// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

//! Johnson's elementary circuit enumeration over a small adjacency list.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn count(adj: &[Vec<usize>]) -> usize {
    let mut n = 0;
    for_each(adj, |_| n += 1);
    n
}

/// Calls `f` once per elementary circuit, given as the vertex sequence
/// starting from its smallest vertex.
pub(crate) fn for_each(adj: &[Vec<usize>], mut f: impl FnMut(&[usize])) {
    let n = adj.len();
    let mut state = Johnson {
        adj,
        blocked: vec![false; n],
        block_map: vec![Vec::new(); n],
        path: Vec::new(),
        start: 0,
    };
    for s in 0..n {
        state.start = s;
        for v in s..n {
            state.blocked[v] = false;
            state.block_map[v].clear();
        }
        state.circuit(s, &mut f);
    }
}

struct Johnson<'a> {
    adj: &'a [Vec<usize>],
    blocked: Vec<bool>,
    block_map: Vec<Vec<usize>>,
    path: Vec<usize>,
    start: usize,
}

impl Johnson<'_> {
    fn circuit(&mut self, v: usize, f: &mut impl FnMut(&[usize])) -> bool {
        let mut found = false;
        self.path.push(v);
        self.blocked[v] = true;
        for &w in &self.adj[v] {
            if w < self.start {
                continue;
            }
            if w == self.start {
                f(&self.path);
                found = true;
            } else if !self.blocked[w] && self.circuit(w, f) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in &self.adj[v] {
                if w >= self.start && !self.block_map[w].contains(&v) {
                    self.block_map[w].push(v);
                }
            }
        }
        self.path.pop();
        found
    }

    fn unblock(&mut self, u: usize) {
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            if !self.blocked[x] {
                continue;
            }
            self.blocked[x] = false;
            stack.append(&mut self.block_map[x]);
        }
    }
}
