#![allow(dead_code)]

use ace_core::{AceGraph, RuleCatalog, VertexId, VertexKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rules used by [`random_graph`]: one inference, one conflict, one
/// transitive and one non-transitive preference rule.
pub fn random_rules() -> RuleCatalog {
    let mut rules = RuleCatalog::new();
    rules.declare("inf", VertexKind::Inference, false, "");
    rules.declare("con", VertexKind::Conflict, false, "");
    rules.declare("pt", VertexKind::Preference, true, "");
    rules.declare("pn", VertexKind::Preference, false, "");
    rules
}

/// A well-formed graph with at most `max_vertices` vertices, built through
/// the public insertion API. Later rule applications may point back at
/// earlier vertices, so cycles do occur.
pub fn random_graph(seed: u64, max_vertices: usize) -> AceGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = AceGraph::new();
    let total = rng.gen_range(3..=max_vertices.max(3));
    let infos = rng.gen_range(2..=(total / 2).max(2));
    let mut all: Vec<VertexId> = Vec::new();
    for k in 0..infos {
        all.push(g.add_information(format!("s{k}")));
    }
    while g.len() < total {
        let (kind, rule) = match rng.gen_range(0..5) {
            0 | 1 => (VertexKind::Inference, "inf"),
            2 => (VertexKind::Conflict, "con"),
            3 => (VertexKind::Preference, "pt"),
            _ => (VertexKind::Preference, "pn"),
        };
        let mut pool = all.clone();
        pool.shuffle(&mut rng);
        let n_ants = rng.gen_range(1..=2.min(pool.len() - 1));
        let n_cons = rng.gen_range(1..=2.min(pool.len() - n_ants));
        let ants: Vec<VertexId> = pool[..n_ants].to_vec();
        let cons: Vec<VertexId> = pool[n_ants..n_ants + n_cons].to_vec();
        let v = g
            .add_rule_application(kind, rule, ants, cons)
            .expect("generated application is valid");
        all.push(v);
        // Occasionally add a statement so later rules have fresh targets.
        if g.len() < total && rng.gen_bool(0.3) {
            let k = g.len();
            all.push(g.add_information(format!("s{k}")));
        }
    }
    g
}

/// Boolean reachability matrix by Floyd-Warshall. `r[u][v]` iff there is a
/// path of length zero or more from `u` to `v`.
#[allow(clippy::needless_range_loop)]
pub fn reachability(g: &AceGraph) -> (Vec<VertexId>, Vec<Vec<bool>>) {
    let ids: Vec<VertexId> = g.vertex_ids().cloned().collect();
    let n = ids.len();
    let pos = |v: &VertexId| ids.iter().position(|x| x == v).unwrap();
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for l in g.lines() {
        r[pos(&l.from)][pos(&l.to)] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    (ids, r)
}
