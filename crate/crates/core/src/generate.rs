//! Seeded instance generators for tests, benches and the CLI.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{normalize, ColoredGraph, Edge};
use crate::reductions::{Assignment, CnfFormula, Literal};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` vertices with uniform colors from `0..k` and `m` distinct uniform
/// edges (capped at the number of vertex pairs).
pub fn random_graph(rng: &mut impl Rng, n: usize, m: usize, k: usize) -> ColoredGraph {
    assert!(k > 0 || n == 0, "need at least one color");
    let colors = (0..n).map(|_| rng.gen_range(0..k)).collect();
    let pairs = n * n.saturating_sub(1) / 2;
    let m = m.min(pairs);
    let edges: Vec<Edge> = if 2 * m > pairs {
        // dense: pick pair indices directly
        let all: Vec<Edge> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        sample(rng, pairs, m).into_iter().map(|i| all[i]).collect()
    } else {
        let mut seen = HashSet::with_capacity(m);
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v && seen.insert(normalize(u, v)) {
                out.push(normalize(u, v));
            }
        }
        out
    };
    ColoredGraph::new(colors, edges).expect("generated graph is simple")
}

/// Erdős–Rényi `G(n, p)` with uniform colors from `0..k`.
pub fn gnp(rng: &mut impl Rng, n: usize, p: f64, k: usize) -> ColoredGraph {
    let colors = (0..n).map(|_| rng.gen_range(0..k)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    ColoredGraph::new(colors, edges).expect("generated graph is simple")
}

/// A formula with `m` clauses over three distinct variables each, all
/// satisfied by a random planted assignment, which is returned alongside.
pub fn planted_formula(rng: &mut impl Rng, num_vars: usize, m: usize) -> (CnfFormula, Assignment) {
    assert!(
        num_vars >= 3 || m == 0,
        "clauses need three distinct variables"
    );
    let planted = Assignment::new((0..num_vars).map(|_| rng.gen_bool(0.5)).collect());
    let clauses = (0..m)
        .map(|_| loop {
            let clause: Vec<Literal> = sample(rng, num_vars, 3)
                .into_iter()
                .map(|var| Literal {
                    var,
                    negated: rng.gen_bool(0.5),
                })
                .collect();
            if clause.iter().any(|l| l.is_satisfied_by(&planted)) {
                break clause;
            }
        })
        .collect();
    let phi = CnfFormula::new(num_vars, clauses).expect("generated clauses have arity 3");
    (phi, planted)
}

/// Every single-clause formula over variables 1, 2, 3: all orderings and
/// polarities (48 in total).
pub fn single_clause_formulas() -> Vec<CnfFormula> {
    const ORDERS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Vec::with_capacity(48);
    for order in ORDERS {
        for signs in 0..8u32 {
            let clause = order
                .iter()
                .enumerate()
                .map(|(i, &var)| Literal {
                    var,
                    negated: signs >> i & 1 == 1,
                })
                .collect();
            out.push(CnfFormula::new(3, vec![clause]).expect("arity 3"));
        }
    }
    out
}

/// Restricted growth strings of length `n` using at most `k` values:
/// every coloring of `n` labeled vertices, up to renaming colors, once.
pub fn restricted_growth_strings(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, n: usize, k: usize, used: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..(used + 1).min(k) {
            cur.push(c);
            go(cur, n, k, used.max(c + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 || k > 0 {
        go(&mut Vec::with_capacity(n), n, k, 0, &mut out);
    }
    out
}

/// One representative edge list per isomorphism class of connected graphs
/// on `n` vertices. Exhaustive over labeled graphs, so only for `n <= 6`.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Vec<Edge>> {
    assert!(n <= 6, "isomorphism classes are enumerated by brute force");
    let pairs: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut index = [[0usize; 6]; 6];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        index[u][v] = i;
        index[v][u] = i;
    }
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<Edge> = (0..pairs.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        if !is_connected(n, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                edges
                    .iter()
                    .fold(0u32, |acc, &(u, v)| acc | 1 << index[p[u]][p[v]])
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            out.push(edges);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

fn is_connected(n: usize, edges: &[Edge]) -> bool {
    if n == 0 {
        return true;
    }
    let mut reached = 1u32;
    loop {
        let before = reached;
        for &(u, v) in edges {
            if reached >> u & 1 == 1 || reached >> v & 1 == 1 {
                reached |= 1 << u | 1 << v;
            }
        }
        if reached == before {
            return reached.count_ones() as usize == n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_class_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| connected_graphs_up_to_iso(n).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn growth_strings() {
        // Stirling numbers of the second kind, summed
        assert_eq!(restricted_growth_strings(6, 3).len(), 1 + 31 + 90);
        assert_eq!(restricted_growth_strings(4, 4).len(), 15);
        assert_eq!(restricted_growth_strings(0, 2), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn random_graphs_are_deterministic() {
        let a = random_graph(&mut rng(7), 50, 100, 5);
        let b = random_graph(&mut rng(7), 50, 100, 5);
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 100);
        assert_eq!(random_graph(&mut rng(1), 5, 100, 2).edge_count(), 10);
        assert_eq!(random_graph(&mut rng(1), 6, 12, 2).edge_count(), 12);
    }

    #[test]
    fn planted_formulas_are_satisfied() {
        let mut r = rng(3);
        for _ in 0..50 {
            let (phi, f) = planted_formula(&mut r, 5, 4);
            assert!(phi.is_satisfied_by(&f));
        }
        assert_eq!(single_clause_formulas().len(), 48);
    }
}
