//! Bipartite maximum matching, unit-capacity s-t minimum edge cuts, and the
//! exact two-color MEC solver.
//!
//! With at most two colors a colorful component has at most two vertices,
//! so a feasible solution is exactly a set of kept bichromatic edges that
//! form a matching, and its transitive closure counts one edge per kept
//! edge. Maximizing the closure is therefore maximum bipartite matching
//! between the two color classes.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{normalize, ColoredGraph, Edge, EdgeSubset};

const NONE: usize = usize::MAX;

/// A bipartite graph with sides indexed `0..left_count` and `0..right_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteInstance {
    right_count: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteInstance {
    /// Edges are `(left, right)` pairs. Duplicates are merged.
    pub fn new(
        left_count: usize,
        right_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut adj = vec![Vec::new(); left_count];
        for (l, r) in edges {
            if l >= left_count {
                return Err(Error::VertexOutOfRange {
                    vertex: l,
                    count: left_count,
                });
            }
            if r >= right_count {
                return Err(Error::VertexOutOfRange {
                    vertex: r,
                    count: right_count,
                });
            }
            adj[l].push(r);
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        Ok(Self { right_count, adj })
    }

    pub fn left_count(&self) -> usize {
        self.adj.len()
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(l, row)| row.iter().map(move |&r| (l, r)))
    }
}

/// A set of endpoint-disjoint `(left, right)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    left_mate: Vec<Option<usize>>,
    right_mate: Vec<Option<usize>>,
    size: usize,
}

impl Matching {
    pub fn empty(inst: &BipartiteInstance) -> Self {
        Self {
            left_mate: vec![None; inst.left_count()],
            right_mate: vec![None; inst.right_count()],
            size: 0,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn left_mate(&self, l: usize) -> Option<usize> {
        self.left_mate[l]
    }

    pub fn right_mate(&self, r: usize) -> Option<usize> {
        self.right_mate[r]
    }

    /// Matched pairs ordered by left vertex.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left_mate
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
            .collect()
    }

    /// Builds a matching from pairs, rejecting non-edges and shared endpoints.
    pub fn from_pairs(inst: &BipartiteInstance, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::empty(inst);
        for &(l, r) in pairs {
            if l >= inst.left_count() || inst.neighbors(l).binary_search(&r).is_err() {
                return Err(Error::NotAnEdge(l, r));
            }
            if m.left_mate[l].is_some() || m.right_mate[r].is_some() {
                return Err(Error::Precondition(format!(
                    "pair ({l}, {r}) shares an endpoint"
                )));
            }
            m.left_mate[l] = Some(r);
            m.right_mate[r] = Some(l);
            m.size += 1;
        }
        Ok(m)
    }
}

/// Maximum-cardinality matching by repeated BFS augmentation. Left vertices
/// are processed in ascending order and neighbors are scanned ascending, so
/// the result is deterministic.
pub fn max_bipartite_matching(inst: &BipartiteInstance) -> Matching {
    let mut m = Matching::empty(inst);
    let n_left = inst.left_count();
    // parent[r] = left vertex from which r was reached; stamped per search
    let mut parent = vec![NONE; inst.right_count()];
    let mut seen = vec![0u32; inst.right_count()];
    let mut queue = VecDeque::new();

    for (stamp, root) in (1u32..).zip(0..n_left) {
        queue.clear();
        queue.push_back(root);
        let mut free_right = None;
        'bfs: while let Some(l) = queue.pop_front() {
            for &r in inst.neighbors(l) {
                if seen[r] == stamp {
                    continue;
                }
                seen[r] = stamp;
                parent[r] = l;
                match m.right_mate[r] {
                    None => {
                        free_right = Some(r);
                        break 'bfs;
                    }
                    Some(next) => queue.push_back(next),
                }
            }
        }
        let Some(mut r) = free_right else { continue };
        loop {
            let l = parent[r];
            let prev = m.left_mate[l];
            m.left_mate[l] = Some(r);
            m.right_mate[r] = Some(l);
            match prev {
                Some(p) => r = p,
                None => break,
            }
        }
        m.size += 1;
    }
    m
}

/// Vertices reachable from unmatched left vertices along alternating paths
/// (any edge left-to-right, matched edge right-to-left). Returned as
/// `(left_reached, right_reached)` indicator vectors.
pub fn alternating_reachable(inst: &BipartiteInstance, m: &Matching) -> (Vec<bool>, Vec<bool>) {
    let mut left = vec![false; inst.left_count()];
    let mut right = vec![false; inst.right_count()];
    let mut queue: VecDeque<usize> = (0..inst.left_count())
        .filter(|&l| m.left_mate[l].is_none())
        .collect();
    for &l in &queue {
        left[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in inst.neighbors(l) {
            if right[r] {
                continue;
            }
            right[r] = true;
            if let Some(next) = m.right_mate[r] {
                if !left[next] {
                    left[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    (left, right)
}

/// True when an augmenting path exists, i.e. the matching is not maximum.
pub fn has_augmenting_path(inst: &BipartiteInstance, m: &Matching) -> bool {
    let (_, right) = alternating_reachable(inst, m);
    right
        .iter()
        .enumerate()
        .any(|(r, &reached)| reached && m.right_mate[r].is_none())
}

/// Minimum set of edges whose removal disconnects `s` from `t` in the
/// undirected graph on `0..vertex_count` with the given edges.
///
/// Unit-capacity max flow with BFS augmentation (lowest vertex id first);
/// the cut is the boundary of the residual component of `s`, which is
/// connected and, when `s` and `t` share a connected component, leaves
/// that component in exactly two connected parts.
pub fn st_min_edge_cut(
    vertex_count: usize,
    edges: &[Edge],
    s: usize,
    t: usize,
) -> Result<Vec<Edge>> {
    if s == t {
        return Err(Error::Precondition(format!("cut endpoints coincide ({s})")));
    }
    for w in [s, t] {
        if w >= vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: w,
                count: vertex_count,
            });
        }
    }
    let edges: Vec<Edge> = edges.iter().map(|&(u, v)| normalize(u, v)).collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_count];
    for (id, &(u, v)) in edges.iter().enumerate() {
        if u == v || v >= vertex_count {
            return Err(Error::Precondition(format!("invalid edge ({u}, {v})")));
        }
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    // flow[id] in {-1, 0, 1}; positive means from the smaller endpoint
    let mut flow = vec![0i8; edges.len()];
    let residual = |flow: &[i8], id: usize, from: usize| -> bool {
        let f = if edges[id].0 == from {
            flow[id]
        } else {
            -flow[id]
        };
        f < 1
    };

    let mut pred: Vec<Option<(usize, usize)>> = vec![None; vertex_count];
    loop {
        pred.iter_mut().for_each(|p| *p = None);
        let mut reached = vec![false; vertex_count];
        reached[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &(y, id) in &adj[x] {
                if !reached[y] && residual(&flow, id, x) {
                    reached[y] = true;
                    pred[y] = Some((x, id));
                    queue.push_back(y);
                }
            }
        }
        if !reached[t] {
            let mut cut: Vec<Edge> = edges
                .iter()
                .filter(|&&(u, v)| reached[u] != reached[v])
                .copied()
                .collect();
            cut.sort_unstable();
            return Ok(cut);
        }
        let mut y = t;
        while let Some((x, id)) = pred[y] {
            flow[id] += if edges[id].0 == x { 1 } else { -1 };
            y = x;
        }
    }
}

/// Minimum cut separating `s` from `t` using only the kept edges of `sol`.
pub fn kept_min_cut(sol: &EdgeSubset<'_>, s: usize, t: usize) -> Result<Vec<Edge>> {
    let edges: Vec<Edge> = sol.kept_edges().collect();
    st_min_edge_cut(sol.graph().vertex_count(), &edges, s, t)
}

/// Exact MEC for graphs with at most two colors: keeps a maximum matching
/// of the bichromatic edges.
pub fn mec_two_color(g: &ColoredGraph) -> Result<EdgeSubset<'_>> {
    if g.color_count() > 2 {
        return Err(Error::Precondition(format!(
            "two-color MEC needs at most 2 colors, graph has {}",
            g.color_count()
        )));
    }
    let mut index = vec![0; g.vertex_count()];
    let mut sides: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for v in 0..g.vertex_count() {
        let side = &mut sides[g.color(v)];
        index[v] = side.len();
        side.push(v);
    }
    let bichromatic = g
        .edges()
        .iter()
        .filter(|&&(u, v)| g.color(u) != g.color(v))
        .map(|&(u, v)| {
            if g.color(u) == 0 {
                (index[u], index[v])
            } else {
                (index[v], index[u])
            }
        });
    let inst = BipartiteInstance::new(sides[0].len(), sides[1].len(), bichromatic)?;
    let m = max_bipartite_matching(&inst);
    EdgeSubset::from_edges(
        g,
        m.pairs()
            .into_iter()
            .map(|(l, r)| (sides[0][l], sides[1][r])),
    )
}
