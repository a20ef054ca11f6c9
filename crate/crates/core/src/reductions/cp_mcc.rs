//! Clique partition to MCC.
//!
//! The source vertices are kept as base vertices, each with its own color,
//! together with the source edges. For every non-adjacent pair `u < v` two
//! pendant vertices `u_v` (hanging off `u`) and `v_u` (hanging off `v`) are
//! added with a shared fresh color, so no colorful component can hold both
//! `u` and `v` while the pendant edges are kept.

use std::fmt::Write as _;

use crate::error::{fmt_block, parse_err, Error, Result};
use crate::graph::{ColoredGraph, Edge, EdgeSubset, Partition};
use crate::matching::kept_min_cut;

/// Gadget vertices created for the non-edge `(u, v)`, `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MccPair {
    pub u: usize,
    pub v: usize,
    pub u_v: usize,
    pub v_u: usize,
    pub color: usize,
}

impl MccPair {
    pub fn additional_edges(&self) -> [Edge; 2] {
        [(self.u, self.u_v), (self.v, self.v_u)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccGadgetMap {
    /// Base vertices are `0..base_count` in both graphs.
    pub base_count: usize,
    /// One entry per non-edge, in lexicographic order.
    pub pairs: Vec<MccPair>,
}

impl MccGadgetMap {
    pub fn vertex_count(&self) -> usize {
        self.base_count + 2 * self.pairs.len()
    }

    pub fn is_base(&self, v: usize) -> bool {
        v < self.base_count
    }

    pub fn is_additional_edge(&self, (u, v): Edge) -> bool {
        self.is_base(u) != self.is_base(v)
    }

    pub fn base_edges(&self, gadget: &ColoredGraph) -> Vec<Edge> {
        gadget
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| self.is_base(u) && self.is_base(v))
            .collect()
    }

    /// Additional edges as `(base, pendant)`, sorted.
    pub fn additional_edges(&self) -> Vec<Edge> {
        let mut e: Vec<Edge> = self
            .pairs
            .iter()
            .flat_map(MccPair::additional_edges)
            .collect();
        e.sort_unstable();
        e
    }

    /// The source graph, recovered from the base part of the gadget.
    pub fn source_graph(&self, gadget: &ColoredGraph) -> ColoredGraph {
        ColoredGraph::new((0..self.base_count).collect(), self.base_edges(gadget))
            .expect("base part of a gadget is a simple graph")
    }

    pub fn validate(&self, gadget: &ColoredGraph) -> Result<()> {
        let bad = |msg: String| {
            Err(Error::Precondition(format!(
                "map does not match graph: {msg}"
            )))
        };
        if self.vertex_count() != gadget.vertex_count() {
            return bad(format!(
                "{} mapped vertices, graph has {}",
                self.vertex_count(),
                gadget.vertex_count()
            ));
        }
        let mut expected = Vec::new();
        for u in 0..self.base_count {
            for v in u + 1..self.base_count {
                if !gadget.has_edge(u, v) {
                    expected.push((u, v));
                }
            }
        }
        let got: Vec<Edge> = self.pairs.iter().map(|p| (p.u, p.v)).collect();
        if got != expected {
            return bad("pairs do not list the non-edges of the base graph in order".into());
        }
        let mut seen = vec![false; gadget.vertex_count()];
        for p in &self.pairs {
            for w in [p.u_v, p.v_u] {
                if self.is_base(w) || std::mem::replace(&mut seen[w], true) {
                    return bad(format!("pendant vertex {w} is reused or a base vertex"));
                }
            }
            if gadget.color(p.u_v) != gadget.color(p.v_u) {
                return bad(format!("pair ({}, {}) has two colors", p.u_v, p.v_u));
            }
            for (b, w) in p.additional_edges() {
                if gadget.degree(w) != 1 || !gadget.has_edge(b, w) {
                    return bad(format!("vertex {w} should hang off {b}"));
                }
            }
        }
        let mut per_color = vec![0usize; gadget.color_count()];
        for &c in gadget.colors() {
            per_color[c] += 1;
        }
        for u in 0..self.base_count {
            if per_color[gadget.color(u)] != 1 {
                return bad(format!("base vertex {u} shares its color"));
            }
        }
        Ok(())
    }

    /// `base <n>` followed by `pair <u> <v> <u_v> <v_u>` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("base {}\n", self.base_count);
        for p in &self.pairs {
            let _ = writeln!(out, "pair {} {} {} {}", p.u, p.v, p.u_v, p.v_u);
        }
        out
    }

    /// Parses the sidecar text; pair colors are taken from `gadget`.
    pub fn parse(text: &str, gadget: &ColoredGraph) -> Result<Self> {
        let mut base_count = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t: Vec<&str> = raw.split_whitespace().collect();
            let nums = || -> Result<Vec<usize>> {
                t[1..]
                    .iter()
                    .map(|s| {
                        s.parse()
                            .map_err(|_| parse_err(line, format!("invalid number `{s}`")))
                    })
                    .collect()
            };
            match t.first().copied() {
                None | Some("c") => {}
                Some("base") if t.len() == 2 => base_count = Some(nums()?[0]),
                Some("pair") if t.len() == 5 => {
                    let x = nums()?;
                    if x[2] >= gadget.vertex_count() {
                        return Err(parse_err(line, format!("vertex {} not in graph", x[2])));
                    }
                    pairs.push(MccPair {
                        u: x[0],
                        v: x[1],
                        u_v: x[2],
                        v_u: x[3],
                        color: gadget.color(x[2]),
                    });
                }
                _ => {
                    return Err(parse_err(
                        line,
                        format!("unrecognized record `{}`", raw.trim()),
                    ))
                }
            }
        }
        let map = Self {
            base_count: base_count.ok_or_else(|| parse_err(1, "missing `base` record"))?,
            pairs,
        };
        map.validate(gadget)?;
        Ok(map)
    }
}

/// A partition of a graph into blocks that induce complete subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePartition {
    blocks: Vec<Vec<usize>>,
}

impl CliquePartition {
    pub fn new(source: &ColoredGraph, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let part = Partition::from_blocks(source.vertex_count(), blocks)?;
        for block in part.blocks() {
            for (i, &u) in block.iter().enumerate() {
                if let Some(&v) = block[i + 1..].iter().find(|&&v| !source.has_edge(u, v)) {
                    return Err(Error::Precondition(format!(
                        "block {} is not a clique: {u} and {v} are not adjacent",
                        fmt_block(block)
                    )));
                }
            }
        }
        Ok(Self {
            blocks: part.blocks().to_vec(),
        })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// One block per line, vertices separated by spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            let line: Vec<String> = b.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Builds the MCC gadget. Base vertex `i` gets color `i`; the `q`-th
/// non-edge in lexicographic order gets vertices `n + 2q`, `n + 2q + 1`
/// and color `n + q`.
pub fn reduce_cp_to_mcc(source: &ColoredGraph) -> (ColoredGraph, MccGadgetMap) {
    let n = source.vertex_count();
    let mut colors: Vec<usize> = (0..n).collect();
    let mut edges: Vec<Edge> = source.edges().to_vec();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if source.has_edge(u, v) {
                continue;
            }
            let q = pairs.len();
            let p = MccPair {
                u,
                v,
                u_v: n + 2 * q,
                v_u: n + 2 * q + 1,
                color: n + q,
            };
            colors.extend([p.color, p.color]);
            edges.extend(p.additional_edges());
            pairs.push(p);
        }
    }
    let gadget = ColoredGraph::new(colors, edges).expect("gadget construction is valid");
    (
        gadget,
        MccGadgetMap {
            base_count: n,
            pairs,
        },
    )
}

/// Keeps every additional edge and every base edge inside a block.
pub fn clique_partition_to_mcc_solution<'g>(
    gadget: &'g ColoredGraph,
    map: &MccGadgetMap,
    part: &CliquePartition,
) -> Result<EdgeSubset<'g>> {
    let source = map.source_graph(gadget);
    let part = CliquePartition::new(&source, part.blocks().to_vec())?;
    let mut label = vec![0; map.base_count];
    for (i, b) in part.blocks().iter().enumerate() {
        for &v in b {
            label[v] = i;
        }
    }
    let kept = gadget
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| map.is_additional_edge((u, v)) || label[u] == label[v]);
    EdgeSubset::from_edges(gadget, kept)
}

/// One pass of the repair loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairStep {
    /// The additional edge put back, as `(base, pendant)`.
    pub restored: Edge,
    /// Base edges removed to separate the pair's base vertices again.
    pub cut: Vec<Edge>,
    pub components_after: usize,
}

#[derive(Debug, Clone)]
pub struct CliqueExtraction<'g> {
    pub partition: CliquePartition,
    /// Gadget solution keeping every additional edge.
    pub repaired: EdgeSubset<'g>,
    pub initial_components: usize,
    pub steps: Vec<RepairStep>,
}

/// Turns a feasible gadget solution into a clique partition with at most
/// as many blocks as the solution has components.
///
/// Removed additional edges are restored in lexicographic order. When a
/// restored edge `(u, u_v)` places `u_v` next to `v_u`, a minimum cut
/// between `u` and `v` over the kept edges splits the merged component.
pub fn extract_clique_partition<'g>(
    gadget: &'g ColoredGraph,
    map: &MccGadgetMap,
    sol: &EdgeSubset<'g>,
) -> Result<CliqueExtraction<'g>> {
    sol.ensure_feasible()?;
    let initial_components = sol.component_count();
    let mut owner = vec![None; gadget.vertex_count()];
    for p in &map.pairs {
        owner[p.u_v] = Some(*p);
        owner[p.v_u] = Some(*p);
    }

    let mut cur = sol.clone();
    let mut components = initial_components;
    let mut steps = Vec::new();
    let removed: Vec<Edge> = sol
        .removed_edges()
        .filter(|&e| map.is_additional_edge(e))
        .collect();
    for (b, w) in removed {
        cur.insert(b, w)?;
        let p = owner[w]
            .ok_or_else(|| Error::Invariant(format!("vertex {w} is not a pendant vertex")))?;
        let labels = cur.components().labels();
        let mut cut = Vec::new();
        if labels[p.u_v] == labels[p.v_u] {
            cut = kept_min_cut(&cur, p.u, p.v)?;
            for &(x, y) in &cut {
                cur.remove(x, y)?;
            }
        }
        let after = cur.component_count();
        if after > components {
            return Err(Error::Invariant(format!(
                "restoring ({b}, {w}) raised the component count from {components} to {after}"
            )));
        }
        if let Some(block) = cur.first_violation() {
            return Err(Error::Invariant(format!(
                "restoring ({b}, {w}) left {} not colorful",
                fmt_block(&block)
            )));
        }
        components = after;
        steps.push(RepairStep {
            restored: (b, w),
            cut,
            components_after: after,
        });
    }

    let blocks: Vec<Vec<usize>> = cur
        .components()
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .copied()
                .filter(|&v| map.is_base(v))
                .collect::<Vec<_>>()
        })
        .filter(|b| !b.is_empty())
        .collect();
    let partition = CliquePartition::new(&map.source_graph(gadget), blocks)
        .map_err(|e| Error::Invariant(format!("repaired solution does not give cliques: {e}")))?;
    Ok(CliqueExtraction {
        partition,
        repaired: cur,
        initial_components,
        steps,
    })
}
