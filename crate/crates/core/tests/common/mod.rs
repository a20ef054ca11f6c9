#![allow(dead_code)]

use colorful::graph::{ColoredGraph, EdgeSubset};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random subset of the edges, then random kept edges inside non-colorful
/// components are dropped until the solution is feasible.
pub fn random_feasible<'g>(g: &'g ColoredGraph, rng: &mut impl Rng, keep: f64) -> EdgeSubset<'g> {
    let kept: Vec<_> = g
        .edges()
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(keep))
        .collect();
    let mut sol = EdgeSubset::from_edges(g, kept).unwrap();
    while let Some(block) = sol.first_violation() {
        let inside: Vec<_> = sol
            .kept_edges()
            .filter(|(u, v)| block.contains(u) && block.contains(v))
            .collect();
        let &(u, v) = inside.choose(rng).unwrap();
        sol.remove(u, v).unwrap();
    }
    sol
}

pub fn bell(n: usize) -> u64 {
    // Bell triangle
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}
