//! Exhaustive ground-truth solvers.
//!
//! Feasible solutions correspond one-to-one with partitions of the vertex
//! set into blocks that are colorful and induce connected subgraphs (keep
//! every edge inside a block). The enumerator walks those partitions as
//! restricted growth strings over a breadth-first vertex order, pruning a
//! branch when a block would repeat a color or when a piece of a block can
//! no longer be joined to the rest because it has no unassigned neighbor.
//! Every completed partition is re-checked for block connectivity.

use crate::error::{Error, Result};
use crate::graph::{transitive_closure_of_sizes, ColoredGraph, Partition};
use crate::par;

/// Hard cap imposed by the 64-bit vertex masks.
pub const MASK_LIMIT: usize = 64;

/// Limits for an exhaustive run. Exceeding either one is reported as
/// [`Error::BudgetExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_blocks_explored: u64,
}

impl OracleBudget {
    /// Default for partition enumeration: 14 vertices.
    pub fn partitions() -> Self {
        Self {
            max_vertices: 14,
            max_blocks_explored: 200_000_000,
        }
    }

    /// Default for subset maximization: color classes of up to 20 vertices.
    pub fn subsets() -> Self {
        Self {
            max_vertices: 20,
            max_blocks_explored: 1 << 20,
        }
    }

    pub fn with_max_vertices(mut self, n: usize) -> Self {
        self.max_vertices = n;
        self
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self::partitions()
    }
}

/// Optimum of an exhaustive run and the first partition attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult<T> {
    pub value: T,
    pub witness: Partition,
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            b
        })
    })
}

/// Breadth-first order over all components, roots and neighbors ascending.
fn bfs_order(g: &ColoredGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

struct Walker<'a> {
    order: Vec<usize>,
    adj: Vec<u64>,
    color_bit: Vec<u64>,
    budget: &'a OracleBudget,
    explored: u64,
    labels: Vec<usize>,
    block_vertices: Vec<u64>,
    block_colors: Vec<u64>,
    /// Branches opening more than this many blocks are skipped.
    max_blocks: usize,
}

impl<'a> Walker<'a> {
    fn new(g: &ColoredGraph, budget: &'a OracleBudget) -> Result<Self> {
        let n = g.vertex_count();
        if n > budget.max_vertices || n > MASK_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "{n} vertices exceed the enumeration limit of {}",
                budget.max_vertices.min(MASK_LIMIT)
            )));
        }
        let mut dense = vec![usize::MAX; g.color_count()];
        let mut next = 0;
        let color_bit = (0..n)
            .map(|v| {
                let c = g.color(v);
                if dense[c] == usize::MAX {
                    dense[c] = next;
                    next += 1;
                }
                1u64 << dense[c]
            })
            .collect();
        let adj = (0..n)
            .map(|v| g.neighbors(v).fold(0u64, |m, w| m | (1 << w)))
            .collect();
        Ok(Self {
            order: bfs_order(g),
            adj,
            color_bit,
            budget,
            explored: 0,
            labels: vec![0; n],
            block_vertices: Vec::new(),
            block_colors: Vec::new(),
            max_blocks: n,
        })
    }

    fn neighborhood(&self, set: u64) -> u64 {
        bits(set).fold(0, |m, v| m | self.adj[v])
    }

    /// Connected piece of `within` containing `seed`.
    fn flood(&self, seed: usize, within: u64) -> u64 {
        let mut piece = 1u64 << seed;
        loop {
            let grown = piece | (self.neighborhood(piece) & within);
            if grown == piece {
                return piece;
            }
            piece = grown;
        }
    }

    /// False when some piece of `block` has no neighbor in `open`.
    fn joinable(&self, block: u64, open: u64) -> bool {
        let mut rest = block;
        while rest != 0 {
            let piece = self.flood(rest.trailing_zeros() as usize, block);
            if piece == block {
                return true;
            }
            if self.neighborhood(piece) & open == 0 {
                return false;
            }
            rest &= !piece;
        }
        true
    }

    fn walk<F>(&mut self, pos: usize, open: u64, visit: &mut F) -> Result<()>
    where
        F: FnMut(&[usize], &[u64], &mut usize),
    {
        self.explored += 1;
        if self.explored > self.budget.max_blocks_explored {
            return Err(Error::BudgetExceeded(format!(
                "more than {} search nodes",
                self.budget.max_blocks_explored
            )));
        }
        if pos == self.order.len() {
            let connected = self
                .block_vertices
                .iter()
                .all(|&b| self.flood(b.trailing_zeros() as usize, b) == b);
            if connected {
                visit(&self.labels, &self.block_vertices, &mut self.max_blocks);
            }
            return Ok(());
        }
        let v = self.order[pos];
        let open = open & !(1u64 << v);
        let blocks = self.block_vertices.len();
        for b in 0..=blocks {
            if b == blocks {
                if blocks + 1 > self.max_blocks {
                    break;
                }
                self.block_vertices.push(0);
                self.block_colors.push(0);
            } else if self.block_colors[b] & self.color_bit[v] != 0 {
                continue;
            }
            self.block_vertices[b] |= 1 << v;
            self.block_colors[b] |= self.color_bit[v];
            self.labels[v] = b;
            if self
                .block_vertices
                .iter()
                .all(|&blk| self.joinable(blk, open))
            {
                self.walk(pos + 1, open, visit)?;
            }
            self.block_vertices[b] &= !(1u64 << v);
            self.block_colors[b] &= !self.color_bit[v];
            if b == blocks {
                self.block_vertices.pop();
                self.block_colors.pop();
            }
        }
        Ok(())
    }

    fn run<F>(mut self, mut visit: F) -> Result<()>
    where
        F: FnMut(&[usize], &[u64], &mut usize),
    {
        let n = self.order.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        self.walk(0, all, &mut visit)
    }
}

/// Calls `visit` with the block label of every vertex, once per partition
/// into colorful connected blocks. Returns the number of partitions.
pub fn for_each_colorful_partition<F>(
    g: &ColoredGraph,
    budget: &OracleBudget,
    mut visit: F,
) -> Result<u64>
where
    F: FnMut(&[usize]),
{
    let mut count = 0u64;
    Walker::new(g, budget)?.run(|labels, _, _| {
        count += 1;
        visit(labels);
    })?;
    Ok(count)
}

/// All partitions of the vertex set into colorful connected blocks.
pub fn enumerate_colorful_partitions(
    g: &ColoredGraph,
    budget: &OracleBudget,
) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for_each_colorful_partition(g, budget, |labels| out.push(Partition::from_labels(labels)))?;
    Ok(out)
}

pub fn count_colorful_partitions(g: &ColoredGraph, budget: &OracleBudget) -> Result<u64> {
    for_each_colorful_partition(g, budget, |_| {})
}

/// Scans every feasible partition, keeping the first one whose score is
/// strictly better than all before it.
fn best_by<T: Ord + Copy>(
    g: &ColoredGraph,
    budget: &OracleBudget,
    score: impl Fn(&[u64]) -> T,
    better: impl Fn(T, T) -> bool,
) -> Result<Option<OracleResult<T>>> {
    let mut best: Option<(T, Vec<usize>)> = None;
    Walker::new(g, budget)?.run(|labels, blocks, _| {
        let s = score(blocks);
        if best.as_ref().is_none_or(|(b, _)| better(s, *b)) {
            best = Some((s, labels.to_vec()));
        }
    })?;
    Ok(best.map(|(value, labels)| OracleResult {
        value,
        witness: Partition::from_labels(&labels),
    }))
}

/// Minimum number of singleton components over all feasible solutions.
pub fn brute_msv(g: &ColoredGraph, budget: &OracleBudget) -> Result<OracleResult<usize>> {
    let res = best_by(
        g,
        budget,
        |blocks| blocks.iter().filter(|b| b.count_ones() == 1).count(),
        |a, b| a < b,
    )?;
    Ok(res.unwrap_or_else(empty_result))
}

/// Maximum transitive-closure edge count over all feasible solutions.
pub fn brute_mec(g: &ColoredGraph, budget: &OracleBudget) -> Result<OracleResult<u64>> {
    let res = best_by(
        g,
        budget,
        |blocks| transitive_closure_of_sizes(blocks.iter().map(|b| b.count_ones() as usize)),
        |a, b| a > b,
    )?;
    Ok(res.unwrap_or_else(empty_result))
}

/// Minimum number of components over all feasible solutions.
///
/// Besides the feasibility pruning of the enumeration, branches that would
/// open as many blocks as the best partition found so far are skipped;
/// block counts only grow along a branch, so no better partition is lost.
pub fn brute_mcc(g: &ColoredGraph, budget: &OracleBudget) -> Result<OracleResult<usize>> {
    let mut best: Option<(usize, Vec<usize>)> = None;
    Walker::new(g, budget)?.run(|labels, blocks, max_blocks| {
        let k = blocks.len();
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            best = Some((k, labels.to_vec()));
            *max_blocks = k.saturating_sub(1);
        }
    })?;
    Ok(best
        .map(|(value, labels)| OracleResult {
            value,
            witness: Partition::from_labels(&labels),
        })
        .unwrap_or_else(empty_result))
}

fn empty_result<T: Default>() -> OracleResult<T> {
    OracleResult {
        value: T::default(),
        witness: Partition::from_labels(&[]),
    }
}

/// `max_{V' ⊆ V_c} |V'| - |N(V')|` by scanning all subsets of the color
/// class, where `N(V')` holds the neighbors of `V'` whose color is not `c`.
pub fn brute_sc(g: &ColoredGraph, c: usize, budget: &OracleBudget) -> Result<usize> {
    brute_sc_impl(g, c, budget, true)
}

/// [`brute_sc`] on the calling thread only.
pub fn brute_sc_sequential(g: &ColoredGraph, c: usize, budget: &OracleBudget) -> Result<usize> {
    brute_sc_impl(g, c, budget, false)
}

fn brute_sc_impl(
    g: &ColoredGraph,
    c: usize,
    budget: &OracleBudget,
    parallel: bool,
) -> Result<usize> {
    if c >= g.color_count() {
        return Err(Error::ColorOutOfRange {
            color: c,
            count: g.color_count(),
        });
    }
    let class = g.color_class(c);
    let k = class.len();
    if k > budget.max_vertices || k > 32 || (1u64 << k) > budget.max_blocks_explored.max(1) {
        return Err(Error::BudgetExceeded(format!(
            "color class of {k} vertices"
        )));
    }
    let mut index = vec![usize::MAX; g.vertex_count()];
    let mut others = 0;
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(k);
    for &v in &class {
        let mut row = Vec::new();
        for w in g.neighbors(v).filter(|&w| g.color(w) != c) {
            if index[w] == usize::MAX {
                index[w] = others;
                others += 1;
            }
            row.push(index[w]);
        }
        rows.push(row);
    }
    let words = others.div_ceil(64).max(1);
    let masks: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            let mut m = vec![0u64; words];
            for &i in row {
                m[i / 64] |= 1 << (i % 64);
            }
            m
        })
        .collect();
    let score = |subset: u64| {
        let mut union = vec![0u64; words];
        for member in bits(subset) {
            for (u, m) in union.iter_mut().zip(&masks[member]) {
                *u |= m;
            }
        }
        let hood: u32 = union.iter().map(|w| w.count_ones()).sum();
        i64::from(subset.count_ones()) - i64::from(hood)
    };
    let best = if parallel {
        par::max_over_range(0..1u64 << k, score)
    } else {
        par::max_over_range_sequential(0..1u64 << k, score)
    };
    // the empty subset scores 0, so the maximum is never negative
    Ok(best.map_or(0, |(value, _)| value.max(0) as usize))
}

/// Minimum clique partition of the (uncolored) graph: blocks must induce
/// complete subgraphs. Enumerates restricted growth strings in vertex
/// order, skipping branches that open as many blocks as the best so far.
pub fn brute_clique_partition(
    g: &ColoredGraph,
    budget: &OracleBudget,
) -> Result<OracleResult<usize>> {
    let n = g.vertex_count();
    if n > budget.max_vertices || n > MASK_LIMIT {
        return Err(Error::BudgetExceeded(format!("{n} vertices")));
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).fold(0u64, |m, w| m | (1 << w)))
        .collect();

    struct Search<'b> {
        adj: Vec<u64>,
        labels: Vec<usize>,
        blocks: Vec<u64>,
        best: usize,
        best_labels: Vec<usize>,
        explored: u64,
        budget: &'b OracleBudget,
    }

    fn go(s: &mut Search<'_>, v: usize) -> Result<()> {
        s.explored += 1;
        if s.explored > s.budget.max_blocks_explored {
            return Err(Error::BudgetExceeded(format!(
                "more than {} search nodes",
                s.budget.max_blocks_explored
            )));
        }
        if v == s.labels.len() {
            if s.blocks.len() < s.best {
                s.best = s.blocks.len();
                s.best_labels = s.labels.clone();
            }
            return Ok(());
        }
        for b in 0..s.blocks.len() {
            if s.blocks[b] & !s.adj[v] == 0 {
                s.blocks[b] |= 1 << v;
                s.labels[v] = b;
                go(s, v + 1)?;
                s.blocks[b] &= !(1u64 << v);
            }
        }
        if s.blocks.len() + 1 < s.best {
            s.labels[v] = s.blocks.len();
            s.blocks.push(1 << v);
            go(s, v + 1)?;
            s.blocks.pop();
        }
        Ok(())
    }

    let mut s = Search {
        adj,
        labels: vec![0; n],
        blocks: Vec::new(),
        best: n + 1,
        best_labels: Vec::new(),
        explored: 0,
        budget,
    };
    go(&mut s, 0)?;
    if n == 0 {
        return Ok(empty_result());
    }
    Ok(OracleResult {
        value: s.best,
        witness: Partition::from_labels(&s.best_labels),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> ColoredGraph {
        ColoredGraph::new(vec![0, 1, 1], [(0, 1), (0, 2)]).unwrap()
    }

    fn triangle() -> ColoredGraph {
        ColoredGraph::new(vec![0, 1, 2], [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn enumerates_g1() {
        let mut parts = enumerate_colorful_partitions(&g1(), &OracleBudget::default()).unwrap();
        parts.sort_by_key(|p| p.blocks().to_vec());
        let blocks: Vec<_> = parts.iter().map(|p| p.blocks().to_vec()).collect();
        assert_eq!(
            blocks,
            vec![
                vec![vec![0], vec![1], vec![2]],
                vec![vec![0, 1], vec![2]],
                vec![vec![0, 2], vec![1]],
            ]
        );
        let one = ColoredGraph::new(vec![0], []).unwrap();
        assert_eq!(
            count_colorful_partitions(&one, &OracleBudget::default()).unwrap(),
            1
        );
        let ab = ColoredGraph::new(vec![0, 1], [(0, 1)]).unwrap();
        assert_eq!(
            count_colorful_partitions(&ab, &OracleBudget::default()).unwrap(),
            2
        );
    }

    #[test]
    fn needs_non_adjacent_insertions() {
        // path 0-2-1: block {0,1,2} is reached by inserting 1 next to 0
        // only under the BFS order; labels must still come out connected
        let g = ColoredGraph::new(vec![0, 1, 2], [(0, 2), (2, 1)]).unwrap();
        let count = count_colorful_partitions(&g, &OracleBudget::default()).unwrap();
        // {012}, {02}{1}, {0}{12}, {0}{1}{2}
        assert_eq!(count, 4);
    }

    #[test]
    fn objectives() {
        let b = OracleBudget::default();
        assert_eq!(brute_msv(&g1(), &b).unwrap().value, 1);
        assert_eq!(brute_msv(&triangle(), &b).unwrap().value, 0);
        let lonely = ColoredGraph::new(vec![0; 3], []).unwrap();
        assert_eq!(brute_msv(&lonely, &b).unwrap().value, 3);

        assert_eq!(brute_mec(&g1(), &b).unwrap().value, 1);
        assert_eq!(brute_mec(&triangle(), &b).unwrap().value, 3);

        assert_eq!(brute_mcc(&g1(), &b).unwrap().value, 2);
        let res = brute_mcc(&triangle(), &b).unwrap();
        assert_eq!(res.value, 1);
        assert_eq!(res.witness.blocks(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn empty_graph() {
        let g = ColoredGraph::new(vec![], []).unwrap();
        let b = OracleBudget::default();
        assert_eq!(count_colorful_partitions(&g, &b).unwrap(), 1);
        assert_eq!(brute_mcc(&g, &b).unwrap().value, 0);
        assert_eq!(brute_clique_partition(&g, &b).unwrap().value, 0);
    }

    #[test]
    fn subset_bounds() {
        let b = OracleBudget::subsets();
        assert_eq!(brute_sc(&g1(), 1, &b).unwrap(), 1);
        let pair = ColoredGraph::new(vec![0, 0], []).unwrap();
        assert_eq!(brute_sc(&pair, 0, &b).unwrap(), 2);
        assert_eq!(brute_sc(&triangle(), 0, &b).unwrap(), 0);
        let big = ColoredGraph::new(vec![0; 21], []).unwrap();
        assert!(matches!(
            brute_sc(&big, 0, &b),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn budget_limits() {
        let g = ColoredGraph::new(vec![0; 15], []).unwrap();
        assert!(matches!(
            count_colorful_partitions(&g, &OracleBudget::default()),
            Err(Error::BudgetExceeded(_))
        ));
        let tight = OracleBudget {
            max_vertices: 14,
            max_blocks_explored: 3,
        };
        assert!(matches!(
            brute_mec(&triangle(), &tight),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn clique_partitions() {
        let b = OracleBudget::default();
        let path = ColoredGraph::new(vec![0; 3], [(0, 1), (1, 2)]).unwrap();
        assert_eq!(brute_clique_partition(&path, &b).unwrap().value, 2);
        assert_eq!(brute_clique_partition(&triangle(), &b).unwrap().value, 1);
        let c5 = ColoredGraph::new(vec![0; 5], [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(brute_clique_partition(&c5, &b).unwrap().value, 3);
    }
}
