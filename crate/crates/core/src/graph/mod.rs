//! Vertex-colored graphs, kept-edge solutions and component analysis.
//!
//! A solution is stored as the set of edges that are *kept*; every
//! objective is a function of the connected components of the kept
//! subgraph. A solution is feasible when each of those components is
//! colorful, i.e. holds at most one vertex of every color.

pub mod io;

pub use io::{parse_graph, parse_solution, write_graph, write_solution};

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// An undirected edge stored with `u < v`.
pub type Edge = (usize, usize);

/// Returns the edge with its endpoints in ascending order.
#[inline]
pub fn normalize(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph together with a total vertex coloring.
///
/// Vertex ids are dense (`0..vertex_count`), colors are dense ids
/// (`0..color_count`) with an optional display name each. Adjacency lists
/// are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    colors: Vec<usize>,
    color_names: Vec<String>,
    edges: Vec<Edge>,
    // (neighbor, edge id), sorted by neighbor
    adj: Vec<Vec<(usize, usize)>>,
}

impl ColoredGraph {
    /// Builds a graph whose color count is one more than the largest color
    /// used. Colors are named by their decimal id.
    pub fn new(colors: Vec<usize>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let count = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        let names = (0..count).map(|c| c.to_string()).collect();
        Self::with_color_names(colors, names, edges)
    }

    /// Builds a graph with an explicit color table; `colors[v]` indexes into
    /// `color_names`.
    pub fn with_color_names(
        colors: Vec<usize>,
        color_names: Vec<String>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let n = colors.len();
        if let Some(&c) = colors.iter().find(|&&c| c >= color_names.len()) {
            return Err(Error::ColorOutOfRange {
                color: c,
                count: color_names.len(),
            });
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        count: n,
                    });
                }
            }
            list.push(normalize(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in list.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Self {
            colors,
            color_names,
            edges: list,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of colors in the color table, `|C|`.
    pub fn color_count(&self) -> usize {
        self.color_names.len()
    }

    #[inline]
    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color_name(&self, c: usize) -> &str {
        &self.color_names[c]
    }

    pub fn color_names(&self) -> &[String] {
        &self.color_names
    }

    /// All edges, sorted, each with `u < v`. The position of an edge is its id.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// `(neighbor, edge id)` pairs of `v`, sorted by neighbor.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let row = self.adj.get(u)?;
        row.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| row[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Vertices of color `c`, ascending.
    pub fn color_class(&self, c: usize) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.colors[v] == c)
            .collect()
    }

    /// Every color class, indexed by color id.
    pub fn color_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.color_count()];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }
}

/// A set of kept edges of a parent graph. The removed edges are the
/// complement with respect to the parent's edge set.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeSubset<'g> {
    graph: &'g ColoredGraph,
    kept: Vec<bool>,
    len: usize,
}

impl fmt::Debug for EdgeSubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.kept_edges()).finish()
    }
}

impl<'g> EdgeSubset<'g> {
    /// No edge kept: every vertex is a singleton.
    pub fn empty(graph: &'g ColoredGraph) -> Self {
        Self {
            graph,
            kept: vec![false; graph.edge_count()],
            len: 0,
        }
    }

    /// Every edge kept.
    pub fn full(graph: &'g ColoredGraph) -> Self {
        Self {
            graph,
            kept: vec![true; graph.edge_count()],
            len: graph.edge_count(),
        }
    }

    /// Keeps exactly the listed edges. Each must be an edge of `graph` and
    /// appear once.
    pub fn from_edges(
        graph: &'g ColoredGraph,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let mut sol = Self::empty(graph);
        for (u, v) in edges {
            if !sol.insert(u, v)? {
                let (a, b) = normalize(u, v);
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(sol)
    }

    pub fn graph(&self) -> &'g ColoredGraph {
        self.graph
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.graph.edge_id(u, v).is_some_and(|id| self.kept[id])
    }

    pub fn contains_id(&self, id: usize) -> bool {
        self.kept[id]
    }

    fn id_of(&self, u: usize, v: usize) -> Result<usize> {
        self.graph.edge_id(u, v).ok_or(Error::NotAnEdge(u, v))
    }

    /// Keeps `(u, v)`. Returns `false` when it was already kept.
    pub fn insert(&mut self, u: usize, v: usize) -> Result<bool> {
        let id = self.id_of(u, v)?;
        Ok(self.set(id, true))
    }

    /// Drops `(u, v)`. Returns `false` when it was not kept.
    pub fn remove(&mut self, u: usize, v: usize) -> Result<bool> {
        let id = self.id_of(u, v)?;
        Ok(self.set(id, false))
    }

    pub(crate) fn set(&mut self, id: usize, keep: bool) -> bool {
        if self.kept[id] == keep {
            return false;
        }
        self.kept[id] = keep;
        if keep {
            self.len += 1;
        } else {
            self.len -= 1;
        }
        true
    }

    /// Kept edges in ascending order.
    pub fn kept_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.graph
            .edges
            .iter()
            .zip(&self.kept)
            .filter(|(_, &k)| k)
            .map(|(&e, _)| e)
    }

    /// Edges of the parent graph that are not kept.
    pub fn removed_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.graph
            .edges
            .iter()
            .zip(&self.kept)
            .filter(|(_, &k)| !k)
            .map(|(&e, _)| e)
    }

    pub fn kept_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.adj[v]
            .iter()
            .filter(|&&(_, id)| self.kept[id])
            .map(|&(w, _)| w)
    }

    pub fn kept_degree(&self, v: usize) -> usize {
        self.kept_neighbors(v).count()
    }

    /// Connected components of `(V, kept)`, each sorted, ordered by their
    /// minimum vertex.
    pub fn components(&self) -> Partition {
        let n = self.graph.vertex_count();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut block = Vec::new();
            while let Some(v) = queue.pop_front() {
                block.push(v);
                for w in self.kept_neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        Partition { blocks }
    }

    /// The first component (by minimum vertex) that holds two vertices of
    /// the same color.
    pub fn first_violation(&self) -> Option<Vec<usize>> {
        let mut stamp = vec![usize::MAX; self.graph.color_count()];
        self.components()
            .blocks
            .into_iter()
            .enumerate()
            .find(|(i, block)| {
                block.iter().any(|&v| {
                    let c = self.graph.color(v);
                    std::mem::replace(&mut stamp[c], *i) == *i
                })
            })
            .map(|(_, b)| b)
    }

    pub fn is_feasible(&self) -> bool {
        self.first_violation().is_none()
    }

    /// Errors with [`Error::Infeasible`] naming the first non-colorful component.
    pub fn ensure_feasible(&self) -> Result<()> {
        match self.first_violation() {
            Some(block) => Err(Error::Infeasible(block)),
            None => Ok(()),
        }
    }

    /// Shape of a component of this solution.
    pub fn classify_component(&self, block: &[usize]) -> ComponentShape {
        match block.len() {
            0 => ComponentShape::Other,
            1 => ComponentShape::Singleton,
            size => {
                let degrees: Vec<usize> = block.iter().map(|&v| self.kept_degree(v)).collect();
                let edges = degrees.iter().sum::<usize>() / 2;
                if size == 2 && edges == 1 {
                    return ComponentShape::Edge;
                }
                if edges + 1 != size {
                    return ComponentShape::Other;
                }
                match degrees.iter().position(|&d| d == size - 1) {
                    Some(i) if size >= 3 => ComponentShape::Star { center: block[i] },
                    _ => ComponentShape::Other,
                }
            }
        }
    }

    /// The first component whose shape is not a singleton, an edge or a star.
    pub fn first_shape_violation(&self) -> Option<Vec<usize>> {
        self.components()
            .blocks
            .into_iter()
            .find(|b| self.classify_component(b) == ComponentShape::Other)
    }

    /// Per-color number of size-1 components, indexed by color id.
    pub fn singleton_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.graph.color_count()];
        for v in 0..self.graph.vertex_count() {
            if self.kept_degree(v) == 0 {
                counts[self.graph.color(v)] += 1;
            }
        }
        counts
    }

    pub fn singleton_total(&self) -> usize {
        self.singleton_counts().iter().sum()
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Edges in the transitive closure of the kept subgraph.
    pub fn transitive_closure_edges(&self) -> u64 {
        transitive_closure_edges(&self.components())
    }
}

/// Shape of one component of a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentShape {
    Singleton,
    Edge,
    /// A tree of diameter 2; `center` is adjacent to every other vertex.
    Star {
        center: usize,
    },
    Other,
}

/// Disjoint vertex blocks covering the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Normalizes the blocks (each sorted, ordered by minimum) and checks
    /// that they partition `0..n`.
    pub fn from_blocks(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::Precondition("empty block in partition".into()));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        count: n,
                    });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Precondition(format!("vertex {v} in two blocks")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Precondition(format!("vertex {v} not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { blocks })
    }

    /// Builds the partition whose blocks are the classes of `labels[v]`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let k = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            blocks[l].push(v);
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn singleton_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 1).count()
    }

    /// Block index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.blocks.iter().map(Vec::len).sum();
        let mut labels = vec![0; n];
        for (i, block) in self.blocks.iter().enumerate() {
            for &v in block {
                labels[v] = i;
            }
        }
        labels
    }

    /// The solution that keeps every edge of `graph` inside a block.
    pub fn intra_block_solution<'g>(&self, graph: &'g ColoredGraph) -> EdgeSubset<'g> {
        let labels = self.labels();
        let mut sol = EdgeSubset::empty(graph);
        for (id, &(u, v)) in graph.edges().iter().enumerate() {
            if labels[u] == labels[v] {
                sol.set(id, true);
            }
        }
        sol
    }
}

/// `sum a_i (a_i - 1) / 2` over the block sizes of `part`.
pub fn transitive_closure_edges(part: &Partition) -> u64 {
    transitive_closure_of_sizes(part.blocks.iter().map(Vec::len))
}

pub fn transitive_closure_of_sizes(sizes: impl IntoIterator<Item = usize>) -> u64 {
    sizes
        .into_iter()
        .map(|a| (a as u64) * (a as u64).saturating_sub(1) / 2)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Path b-a-b with the a-vertex in the middle.
    fn g1() -> ColoredGraph {
        ColoredGraph::new(vec![0, 1, 1], [(0, 1), (0, 2)]).unwrap()
    }

    fn triangle() -> ColoredGraph {
        ColoredGraph::new(vec![0, 1, 2], [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn rejects_invalid_edges() {
        assert!(matches!(
            ColoredGraph::new(vec![0], [(0, 0)]),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            ColoredGraph::new(vec![0, 1], [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            ColoredGraph::new(vec![0, 1], [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, .. })
        ));
        assert!(matches!(
            ColoredGraph::with_color_names(vec![0, 3], vec!["a".into()], []),
            Err(Error::ColorOutOfRange { color: 3, .. })
        ));
    }

    #[test]
    fn components_of_g1() {
        let g = g1();
        let blocks = |sol: &EdgeSubset| sol.components().blocks().to_vec();
        assert_eq!(
            blocks(&EdgeSubset::empty(&g)),
            vec![vec![0], vec![1], vec![2]]
        );
        let one = EdgeSubset::from_edges(&g, [(0, 1)]).unwrap();
        assert_eq!(blocks(&one), vec![vec![0, 1], vec![2]]);
        let t = triangle();
        assert_eq!(blocks(&EdgeSubset::full(&t)), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn feasibility() {
        let g = g1();
        assert!(EdgeSubset::from_edges(&g, [(0, 1)]).unwrap().is_feasible());
        let both = EdgeSubset::full(&g);
        assert!(!both.is_feasible());
        assert_eq!(both.first_violation(), Some(vec![0, 1, 2]));
        assert!(EdgeSubset::empty(&triangle()).is_feasible());
    }

    #[test]
    fn shapes() {
        let g = g1();
        let sol = EdgeSubset::from_edges(&g, [(0, 1)]).unwrap();
        assert_eq!(sol.classify_component(&[2]), ComponentShape::Singleton);
        assert_eq!(sol.classify_component(&[0, 1]), ComponentShape::Edge);
        let star = EdgeSubset::full(&g);
        assert_eq!(
            star.classify_component(&[0, 1, 2]),
            ComponentShape::Star { center: 0 }
        );

        let path = ColoredGraph::new(vec![0, 1, 2, 3], [(0, 1), (1, 2), (2, 3)]).unwrap();
        let full = EdgeSubset::full(&path);
        assert_eq!(
            full.classify_component(&[0, 1, 2, 3]),
            ComponentShape::Other
        );
        let t = triangle();
        assert_eq!(
            EdgeSubset::full(&t).classify_component(&[0, 1, 2]),
            ComponentShape::Other
        );
    }

    #[test]
    fn closure_counts() {
        assert_eq!(transitive_closure_of_sizes([4, 3, 1]), 9);
        assert_eq!(transitive_closure_of_sizes([1, 1, 1]), 0);
        for m in 1..6usize {
            let sizes = std::iter::repeat_n(4, m)
                .chain(std::iter::repeat_n(3, 2 * m))
                .chain(std::iter::repeat_n(1, 3 * m));
            assert_eq!(transitive_closure_of_sizes(sizes), 12 * m as u64);
        }
    }

    #[test]
    fn singletons() {
        let g = g1();
        let sol = EdgeSubset::from_edges(&g, [(0, 1)]).unwrap();
        assert_eq!(sol.singleton_counts(), vec![0, 1]);
        assert_eq!(sol.singleton_total(), 1);
        assert_eq!(
            EdgeSubset::full(&triangle()).singleton_counts(),
            vec![0, 0, 0]
        );
        let lonely = ColoredGraph::new(vec![0; 5], []).unwrap();
        assert_eq!(EdgeSubset::empty(&lonely).singleton_counts(), vec![5]);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::from_blocks(3, vec![vec![0, 2], vec![1]]).is_ok());
        assert!(Partition::from_blocks(3, vec![vec![0, 2], vec![2, 1]]).is_err());
        assert!(Partition::from_blocks(3, vec![vec![0, 2]]).is_err());
        let p = Partition::from_labels(&[1, 0, 1]);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1]]);
        assert_eq!(p.labels(), vec![0, 1, 0]);
    }

    #[test]
    fn edit_solution() {
        let g = g1();
        let mut sol = EdgeSubset::empty(&g);
        assert!(sol.insert(2, 0).unwrap());
        assert!(!sol.insert(0, 2).unwrap());
        assert!(sol.contains(0, 2));
        assert!(matches!(sol.insert(1, 2), Err(Error::NotAnEdge(1, 2))));
        assert_eq!(sol.removed_edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(sol.remove(0, 2).unwrap());
        assert!(sol.is_empty());
    }
}
