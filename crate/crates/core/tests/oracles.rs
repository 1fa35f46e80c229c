//! Library results checked against brute-force reimplementations.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use ace_core::*;
use common::{random_graph, random_rules, reachability};

const GRAPHS: u64 = 1000;
const MAX_VERTICES: usize = 12;

#[test]
fn discussion_is_reverse_reachability() {
    for seed in 0..GRAPHS {
        let g = random_graph(seed, MAX_VERTICES);
        let (ids, r) = reachability(&g);
        for (t, root) in ids.iter().enumerate() {
            let d = find_discussion(&g, root).unwrap();
            let expected: BTreeSet<&VertexId> = ids
                .iter()
                .enumerate()
                .filter(|&(u, _)| r[u][t])
                .map(|(_, v)| v)
                .collect();
            let got: BTreeSet<&VertexId> = d.graph.vertex_ids().collect();
            assert_eq!(got, expected, "seed {seed} root {root}");
            let expected_lines: BTreeSet<Line> =
                g.lines().filter(|l| expected.contains(&l.to)).collect();
            let got_lines: BTreeSet<Line> = d.graph.lines().collect();
            assert_eq!(got_lines, expected_lines, "seed {seed} root {root}");
        }
    }
}

#[test]
#[allow(clippy::needless_range_loop)]
fn components_are_mutual_reachability_classes() {
    for seed in 0..GRAPHS {
        let g = random_graph(seed, MAX_VERTICES);
        let (ids, r) = reachability(&g);
        let mut expected: BTreeSet<BTreeSet<VertexId>> = BTreeSet::new();
        for u in 0..ids.len() {
            expected.insert(
                (0..ids.len())
                    .filter(|&v| r[u][v] && r[v][u])
                    .map(|v| ids[v].clone())
                    .collect(),
            );
        }
        let got: BTreeSet<BTreeSet<VertexId>> = enumerate_scc(&g)
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect();
        assert_eq!(got, expected, "seed {seed}");
    }
}

#[test]
fn topological_order_respects_lines() {
    for seed in 0..GRAPHS {
        let g = random_graph(seed, MAX_VERTICES);
        let comps = enumerate_scc(&g);
        let cond = contract_scc(&g, &comps).unwrap();
        let order = expand_scc(&topological_sort(&cond.dag).unwrap(), &cond.stands_for);
        let position: BTreeMap<&VertexId, usize> = order
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.iter().map(move |v| (v, k)))
            .collect();
        assert_eq!(position.len(), g.len());
        for l in g.lines() {
            assert!(position[&l.from] <= position[&l.to], "seed {seed} {l:?}");
        }
    }
}

/// Simple cycles by exhaustive search of simple paths, each cycle counted
/// from its smallest vertex.
fn brute_force_cycles(g: &AceGraph, component: &[VertexId]) -> usize {
    let n = component.len();
    let mut adj = vec![vec![false; n]; n];
    for (i, a) in component.iter().enumerate() {
        for (j, b) in component.iter().enumerate() {
            adj[i][j] = g.has_line(a, b);
        }
    }
    fn extend(adj: &[Vec<bool>], start: usize, v: usize, used: &mut Vec<bool>) -> usize {
        let mut count = 0;
        for w in 0..adj.len() {
            if !adj[v][w] {
                continue;
            }
            if w == start {
                count += 1;
            } else if w > start && !used[w] {
                used[w] = true;
                count += extend(adj, start, w, used);
                used[w] = false;
            }
        }
        count
    }
    (0..n)
        .map(|s| {
            let mut used = vec![false; n];
            used[s] = true;
            extend(&adj, s, s, &mut used)
        })
        .sum()
}

#[test]
fn cycle_count_matches_brute_force() {
    let mut nontrivial = 0;
    for seed in 0..GRAPHS {
        let g = random_graph(seed, MAX_VERTICES);
        let rules = random_rules();
        for root in g.vertex_ids() {
            let d = find_discussion(&g, root).unwrap();
            let closure =
                build_transitive_closure(&d, &group_transitive_applications(&d, &rules).unwrap());
            for c in enumerate_scc(&closure) {
                let expected = brute_force_cycles(&closure, &c);
                assert_eq!(count_simple_cycles(&closure, &c), expected, "seed {seed}");
                if expected > 1 {
                    nontrivial += 1;
                }
            }
        }
    }
    assert!(
        nontrivial > 0,
        "generator never produced a multi-cycle component"
    );
}

/// Label carried along a line, written out case by case.
fn oracle_propagate(src: VertexKind, tgt: VertexKind, input: bool, l: CLabel) -> CLabel {
    use CLabel::*;
    use VertexKind::*;
    if input {
        assert_ne!(tgt, Information);
        return if l == R { R } else { A };
    }
    match (src, l) {
        (Inference, R) => R,
        (Inference, _) => A,
        (Conflict, R) => A,
        (Conflict, _) => R,
        (Preference, R) => A,
        (Preference, _) => AD,
        (Information, _) => panic!("information has no consequents"),
    }
}

/// Fixed point of "each vertex takes the worst label propagated into it",
/// iterated from all-accepted until nothing changes.
fn oracle_fixed_point(g: &AceGraph) -> BTreeMap<VertexId, CLabel> {
    let rank = |l: CLabel| match l {
        CLabel::A => 0,
        CLabel::AD => 1,
        CLabel::R => 2,
    };
    let mut lab: BTreeMap<VertexId, CLabel> =
        g.vertex_ids().map(|v| (v.clone(), CLabel::A)).collect();
    loop {
        let mut changed = false;
        for v in g.vertices() {
            let mut worst = CLabel::A;
            for l in g.lines().filter(|l| l.to == v.id) {
                let src = g.vertex(&l.from).unwrap();
                let input = !l.synthetic && v.antecedents.contains(&l.from);
                let carried = oracle_propagate(src.kind, v.kind, input, lab[&l.from]);
                if rank(carried) > rank(worst) {
                    worst = carried;
                }
            }
            if lab[&v.id] != worst {
                lab.insert(v.id.clone(), worst);
                changed = true;
            }
        }
        if !changed {
            return lab;
        }
    }
}

#[test]
fn acyclic_evaluation_matches_fixed_point() {
    let rules = random_rules();
    let mut checked = 0;
    for seed in 0..GRAPHS {
        let g = random_graph(seed, MAX_VERTICES);
        for root in g.vertex_ids() {
            let d = find_discussion(&g, root).unwrap();
            let closure =
                build_transitive_closure(&d, &group_transitive_applications(&d, &rules).unwrap());
            if enumerate_scc(&closure).iter().any(|c| c.len() > 1) {
                continue;
            }
            let r = evaluate_discussion(&d, &rules, EvaluationOptions::default()).unwrap();
            assert!(r.is_stable());
            assert_eq!(
                r.lambda,
                oracle_fixed_point(&closure),
                "seed {seed} root {root}"
            );
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn overrule_is_maximum_of_r_ad_a() {
    let all = CLabel::ALL;
    let mut inputs: Vec<Vec<CLabel>> = vec![vec![]];
    for _ in 0..6 {
        let mut next = inputs.clone();
        for s in &inputs {
            if s.len() == inputs.last().unwrap().len() {
                for l in all {
                    let mut t = s.clone();
                    t.push(l);
                    next.push(t);
                }
            }
        }
        inputs = next;
    }
    for s in inputs {
        let expected = if s.contains(&CLabel::R) {
            CLabel::R
        } else if s.contains(&CLabel::AD) {
            CLabel::AD
        } else {
            CLabel::A
        };
        assert_eq!(overrule(s.iter().copied()), expected, "{s:?}");
    }
}
