//! Colorful components: splitting a vertex-colored graph, by deleting
//! edges, into connected components that each hold every color at most
//! once.
//!
//! * [`msv`]: exact solver for minimizing singleton components, with a
//!   matching-based lower bound that certifies optimality.
//! * [`matching`]: bipartite matching, minimum s-t edge cuts, and exact
//!   edge-count maximization for two colors.
//! * [`oracle`]: exhaustive solvers used as ground truth on small graphs.
//! * [`reductions`]: 3-CNF to MEC and clique partition to MCC, with
//!   solution translations in both directions.

pub mod error;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod msv;
pub mod oracle;
pub mod par;
pub mod reductions;

pub use error::{Error, Result};
pub use graph::io::{parse_graph, parse_solution, write_graph, write_solution};
pub use graph::{ColoredGraph, ComponentShape, Edge, EdgeSubset, Partition};
pub use msv::{msv_exact, msv_exact_with, MsvOptions, MsvOutcome};

/// Runs the exact MSV solver on every graph, in parallel when the
/// `parallel` feature is on, and returns `(singletons, certified)` per graph.
pub fn msv_batch(graphs: &[ColoredGraph]) -> Vec<(usize, bool)> {
    par::map(graphs, |g| {
        let out = msv_exact(g);
        (out.singleton_total(), out.is_certified())
    })
}

/// Sequential counterpart of [`msv_batch`].
pub fn msv_batch_sequential(graphs: &[ColoredGraph]) -> Vec<(usize, bool)> {
    par::map_sequential(graphs, |g| {
        let out = msv_exact(g);
        (out.singleton_total(), out.is_certified())
    })
}
