//! Exact solver for Minimum Singleton Vertices.
//!
//! The lower bound for a color `c` is the deficiency
//! `s_c = max_{V' ⊆ V_c} |V'| - |N(V')|`, where `N(V')` counts the
//! neighbors of `V'` whose color is not `c`. It equals `|V_c|` minus a
//! maximum matching between `V_c` and its other-colored neighbors, and the
//! set of `V_c` vertices reachable from unmatched ones along alternating
//! paths attains it.
//!
//! The solver starts from the empty solution and, color by color, applies
//! alternating paths that start at a singleton of the current color. Every
//! component stays a singleton, an edge or a star, each applied path
//! removes one singleton of its color without creating any other, and when
//! no path is found the singleton count of the color equals `s_c`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, ComponentShape, EdgeSubset};
use crate::matching::{alternating_reachable, max_bipartite_matching, BipartiteInstance};

/// Per-color lower bounds on singleton counts with the sets attaining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundCertificate {
    pub per_color: Vec<usize>,
    pub witness_sets: Vec<Vec<usize>>,
    pub total: usize,
}

/// Deficiency of one color class. `right_index` is scratch of length
/// `vertex_count`, all entries `usize::MAX` on entry and on exit.
fn class_deficiency(
    g: &ColoredGraph,
    c: usize,
    class: &[usize],
    right_index: &mut [usize],
) -> (usize, Vec<usize>) {
    let mut right = Vec::new();
    let mut edges = Vec::new();
    for (l, &v) in class.iter().enumerate() {
        for w in g.neighbors(v) {
            if g.color(w) == c {
                continue;
            }
            if right_index[w] == usize::MAX {
                right_index[w] = right.len();
                right.push(w);
            }
            edges.push((l, right_index[w]));
        }
    }
    for &w in &right {
        right_index[w] = usize::MAX;
    }
    let inst = BipartiteInstance::new(class.len(), right.len(), edges)
        .expect("indices are in range by construction");
    let m = max_bipartite_matching(&inst);
    let (reached, _) = alternating_reachable(&inst, &m);
    let witness = class
        .iter()
        .zip(&reached)
        .filter(|(_, &r)| r)
        .map(|(&v, _)| v)
        .collect();
    (class.len() - m.size(), witness)
}

/// Lower bound `s_c` for one color together with a subset of `V_c`
/// attaining it.
pub fn lower_bound_sc(g: &ColoredGraph, c: usize) -> Result<(usize, Vec<usize>)> {
    if c >= g.color_count() {
        return Err(Error::ColorOutOfRange {
            color: c,
            count: g.color_count(),
        });
    }
    let mut scratch = vec![usize::MAX; g.vertex_count()];
    Ok(class_deficiency(g, c, &g.color_class(c), &mut scratch))
}

/// Lower bounds for every color; `total` bounds the singleton count of any
/// feasible solution.
pub fn lower_bound_total(g: &ColoredGraph) -> LowerBoundCertificate {
    let mut scratch = vec![usize::MAX; g.vertex_count()];
    let (per_color, witness_sets): (Vec<_>, Vec<_>) = g
        .color_classes()
        .iter()
        .enumerate()
        .map(|(c, class)| class_deficiency(g, c, class, &mut scratch))
        .unzip();
    let total = per_color.iter().sum();
    LowerBoundCertificate {
        per_color,
        witness_sets,
        total,
    }
}

/// A path whose edges alternate between not kept (1st, 3rd, ...) and kept
/// (2nd, 4th, ...), starting at a singleton of `color`.
///
/// The last vertex may repeat an earlier one: when the search ends at a
/// star leaf whose center already lies on the path, the final kept edge
/// leads back to that center. Edges never repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingPath {
    pub color: usize,
    pub vertices: Vec<usize>,
}

impl AlternatingPath {
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Checks that this is an alternating path for `sol` starting at a
    /// singleton of its color.
    pub fn check_against(&self, sol: &EdgeSubset<'_>) -> Result<()> {
        let g = sol.graph();
        let bad = |msg: String| {
            Err(Error::Precondition(format!(
                "path {:?}: {msg}",
                self.vertices
            )))
        };
        if self.vertices.len() < 2 {
            return bad("needs at least one edge".into());
        }
        let mut seen = vec![false; g.vertex_count()];
        let last = self.vertices.len() - 1;
        for (i, &v) in self.vertices.iter().enumerate() {
            if v >= g.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    count: g.vertex_count(),
                });
            }
            let repeat = std::mem::replace(&mut seen[v], true);
            // a closing repeat must come back over a kept edge, and not
            // along the edge just used to leave it
            let closing = i == last && i % 2 == 0 && i >= 4 && self.vertices[i - 2] != v;
            if repeat && !closing {
                return bad(format!("vertex {v} repeats"));
            }
        }
        let start = self.vertices[0];
        if g.color(start) != self.color || sol.kept_degree(start) != 0 {
            return bad(format!(
                "start {start} is not a singleton of color {}",
                self.color
            ));
        }
        for (i, (u, v)) in self.edges().enumerate() {
            if !g.has_edge(u, v) {
                return Err(Error::NotAnEdge(u, v));
            }
            let should_be_kept = i % 2 == 1;
            if sol.contains(u, v) != should_be_kept {
                return bad(format!("edge ({u}, {v}) breaks the alternation"));
            }
        }
        Ok(())
    }
}

/// Flips every edge of `path` in `sol`: missing edges are added, kept ones
/// removed.
pub fn apply_path<'g>(sol: &EdgeSubset<'g>, path: &AlternatingPath) -> Result<EdgeSubset<'g>> {
    path.check_against(sol)?;
    let mut next = sol.clone();
    for (i, (u, v)) in path.edges().enumerate() {
        if i % 2 == 0 {
            next.insert(u, v)?;
        } else {
            next.remove(u, v)?;
        }
    }
    Ok(next)
}

/// Breadth-first search state for one alternating-path search: the reached
/// vertices of the target color, the current frontier of other-colored
/// neighbors, and predecessor links back to the starting singletons.
///
/// Membership is tracked with generation stamps so a state can be reused
/// across searches without clearing.
#[derive(Debug, Clone)]
pub struct SearchState {
    generation: u32,
    pred: Vec<(u32, usize)>,
    root: Vec<u32>,
    in_reached: Vec<u32>,
    visited: Vec<u32>,
    reached: Vec<usize>,
    frontier: Vec<usize>,
}

impl SearchState {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            generation: 1,
            pred: vec![(0, 0); vertex_count],
            root: vec![0; vertex_count],
            in_reached: vec![0; vertex_count],
            visited: vec![0; vertex_count],
            reached: Vec::new(),
            frontier: Vec::new(),
        }
    }

    fn reset(&mut self) {
        if self.generation == u32::MAX {
            *self = Self::new(self.pred.len());
        } else {
            self.generation += 1;
        }
        self.reached.clear();
        self.frontier.clear();
    }

    /// Marks `v` as a starting singleton (a member of `S_c`).
    pub fn add_root(&mut self, v: usize) {
        self.root[v] = self.generation;
        self.mark_reached(v);
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.root[v] == self.generation
    }

    pub fn set_pred(&mut self, v: usize, p: usize) {
        self.pred[v] = (self.generation, p);
    }

    pub fn pred(&self, v: usize) -> Option<usize> {
        let (gen, p) = self.pred[v];
        (gen == self.generation).then_some(p)
    }

    /// Target-color vertices reached so far (`V'`).
    pub fn reached(&self) -> &[usize] {
        &self.reached
    }

    /// Current frontier (`N'`).
    pub fn frontier(&self) -> &[usize] {
        &self.frontier
    }

    fn mark_reached(&mut self, v: usize) -> bool {
        if self.in_reached[v] == self.generation {
            return false;
        }
        self.in_reached[v] = self.generation;
        self.reached.push(v);
        true
    }

    fn visit(&mut self, v: usize) -> bool {
        if self.visited[v] == self.generation {
            return false;
        }
        self.visited[v] = self.generation;
        true
    }
}

/// Reconstructs the path from a starting singleton to `v` by following
/// predecessor links.
pub fn path_from(v: usize, state: &SearchState) -> Result<Vec<usize>> {
    if state.is_root(v) {
        return Err(Error::Invariant(format!(
            "path requested from starting singleton {v}"
        )));
    }
    let limit = state.pred.len();
    let mut rev = vec![v];
    let mut cur = v;
    loop {
        let p = state
            .pred(cur)
            .ok_or_else(|| Error::Invariant(format!("vertex {cur} has no predecessor")))?;
        rev.push(p);
        if state.is_root(p) {
            break;
        }
        if rev.len() > limit {
            return Err(Error::Invariant(format!(
                "predecessor chain from {v} is cyclic"
            )));
        }
        cur = p;
    }
    rev.reverse();
    Ok(rev)
}

/// Kept adjacency of a solution whose components are singletons, edges or
/// stars. Component queries rely on that shape.
#[derive(Debug, Clone)]
struct Forest {
    kept: Vec<Vec<usize>>,
}

impl Forest {
    fn from_solution(sol: &EdgeSubset<'_>) -> Self {
        let mut kept = vec![Vec::new(); sol.graph().vertex_count()];
        for (u, v) in sol.kept_edges() {
            kept[u].push(v);
            kept[v].push(u);
        }
        Self { kept }
    }

    fn is_star_leaf(&self, v: usize) -> bool {
        self.kept[v].len() == 1 && self.kept[self.kept[v][0]].len() >= 2
    }

    /// Center (or either endpoint) of the component holding `v`.
    fn hub(&self, v: usize) -> usize {
        if self.kept[v].len() == 1 && self.kept[self.kept[v][0]].len() >= 2 {
            self.kept[v][0]
        } else {
            v
        }
    }

    fn component_has_color(&self, g: &ColoredGraph, v: usize, c: usize) -> bool {
        let hub = self.hub(v);
        g.color(hub) == c || self.kept[hub].iter().any(|&w| g.color(w) == c)
    }

    fn add(&mut self, u: usize, v: usize) {
        self.kept[u].push(v);
        self.kept[v].push(u);
    }

    fn remove(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            let row = &mut self.kept[a];
            if let Some(i) = row.iter().position(|&w| w == b) {
                row.swap_remove(i);
            }
        }
    }

    fn apply(&mut self, path: &[usize]) {
        for (i, w) in path.windows(2).enumerate() {
            if i % 2 == 0 {
                self.add(w[0], w[1]);
            } else {
                self.remove(w[0], w[1]);
            }
        }
    }

    fn to_solution<'g>(&self, g: &'g ColoredGraph) -> EdgeSubset<'g> {
        let edges = self
            .kept
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
        EdgeSubset::from_edges(g, edges).expect("forest only holds graph edges")
    }
}

/// One alternating-path search for color `c`. Ties are broken by minimum
/// vertex id everywhere.
fn search(
    g: &ColoredGraph,
    forest: &Forest,
    c: usize,
    class: &[usize],
    state: &mut SearchState,
) -> Result<Option<AlternatingPath>> {
    state.reset();
    for &v in class {
        if forest.kept[v].is_empty() {
            state.add_root(v);
        }
    }
    if state.reached.is_empty() {
        return Ok(None);
    }
    let roots = state.reached.clone();
    expand(g, c, &roots, state);

    while !state.frontier.is_empty() {
        state.frontier.sort_unstable();
        if let Some(&v) = state.frontier.iter().find(|&&v| forest.is_star_leaf(v)) {
            let mut vertices = path_from(v, state)?;
            vertices.push(forest.kept[v][0]);
            return Ok(Some(AlternatingPath { color: c, vertices }));
        }
        if let Some(&v) = state
            .frontier
            .iter()
            .find(|&&v| !forest.component_has_color(g, v, c))
        {
            let vertices = path_from(v, state)?;
            return Ok(Some(AlternatingPath { color: c, vertices }));
        }
        let frontier = std::mem::take(&mut state.frontier);
        let mut grown = Vec::new();
        for &v in &frontier {
            for &u in &forest.kept[v] {
                if g.color(u) == c && state.mark_reached(u) {
                    state.set_pred(u, v);
                    grown.push(u);
                }
            }
        }
        grown.sort_unstable();
        expand(g, c, &grown, state);
    }
    Ok(None)
}

/// Pushes the unvisited other-colored neighbors of `sources` onto the
/// frontier, each with the smallest source as predecessor.
fn expand(g: &ColoredGraph, c: usize, sources: &[usize], state: &mut SearchState) {
    for &s in sources {
        for w in g.neighbors(s) {
            if g.color(w) != c && state.visit(w) {
                state.set_pred(w, s);
                state.frontier.push(w);
            }
        }
    }
}

fn ensure_search_preconditions(sol: &EdgeSubset<'_>) -> Result<()> {
    sol.ensure_feasible()?;
    if let Some(block) = sol.first_shape_violation() {
        return Err(Error::Precondition(format!(
            "component {} is not a singleton, an edge or a star",
            crate::error::fmt_block(&block)
        )));
    }
    Ok(())
}

/// Searches for an alternating path that removes one singleton of color
/// `c` from `sol`. Returns `None` when no such path exists.
///
/// `sol` must be feasible with every component a singleton, an edge or a
/// star.
pub fn alternating_path(sol: &EdgeSubset<'_>, c: usize) -> Result<Option<AlternatingPath>> {
    let g = sol.graph();
    if c >= g.color_count() {
        return Err(Error::ColorOutOfRange {
            color: c,
            count: g.color_count(),
        });
    }
    ensure_search_preconditions(sol)?;
    let forest = Forest::from_solution(sol);
    let mut state = SearchState::new(g.vertex_count());
    search(g, &forest, c, &g.color_class(c), &mut state)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MsvOptions {
    /// Re-check feasibility, component shapes and singleton monotonicity
    /// after every applied path. Costs `O(|V| + |E|)` per path.
    pub check_invariants: bool,
    pub record_trace: bool,
}

impl Default for MsvOptions {
    fn default() -> Self {
        Self {
            check_invariants: false,
            record_trace: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MsvOutcome<'g> {
    pub solution: EdgeSubset<'g>,
    pub certificate: LowerBoundCertificate,
    pub trace: Vec<AlternatingPath>,
    pub paths_applied: usize,
}

impl MsvOutcome<'_> {
    pub fn singleton_counts(&self) -> Vec<usize> {
        self.solution.singleton_counts()
    }

    pub fn singleton_total(&self) -> usize {
        self.solution.singleton_total()
    }

    /// True when every color's singleton count meets its lower bound, which
    /// proves the solution optimal.
    pub fn is_certified(&self) -> bool {
        self.singleton_counts() == self.certificate.per_color
    }
}

/// Solves MSV exactly with default options.
pub fn msv_exact(g: &ColoredGraph) -> MsvOutcome<'_> {
    msv_exact_with(g, MsvOptions::default()).expect("unchecked solver run cannot fail")
}

/// Solves MSV exactly. With `check_invariants` every applied path is
/// validated and any violation is reported as [`Error::Invariant`].
pub fn msv_exact_with(g: &ColoredGraph, opts: MsvOptions) -> Result<MsvOutcome<'_>> {
    let n = g.vertex_count();
    let classes = g.color_classes();
    let mut forest = Forest {
        kept: vec![Vec::new(); n],
    };
    let mut state = SearchState::new(n);
    let mut trace = Vec::new();
    let mut applied = 0usize;

    for (c, class) in classes.iter().enumerate() {
        while let Some(path) = search(g, &forest, c, class, &mut state)? {
            applied += 1;
            if applied > n {
                return Err(Error::Invariant(format!("more than {n} paths applied")));
            }
            if opts.check_invariants {
                check_step(g, &mut forest, &path)?;
            } else {
                forest.apply(&path.vertices);
            }
            if opts.record_trace {
                trace.push(path);
            }
        }
    }

    let solution = forest.to_solution(g);
    let certificate = lower_bound_total(g);
    if opts.check_invariants {
        let counts = solution.singleton_counts();
        if counts != certificate.per_color {
            return Err(Error::Invariant(format!(
                "singleton counts {counts:?} differ from lower bounds {:?}",
                certificate.per_color
            )));
        }
    }
    Ok(MsvOutcome {
        solution,
        certificate,
        trace,
        paths_applied: applied,
    })
}

/// Applies `path` to `forest` and checks alternation, monotonicity,
/// feasibility and component shapes around it.
fn check_step(g: &ColoredGraph, forest: &mut Forest, path: &AlternatingPath) -> Result<()> {
    let before = forest.to_solution(g);
    path.check_against(&before)
        .map_err(|e| Error::Invariant(format!("returned path is not alternating: {e}")))?;
    let counts_before = before.singleton_counts();
    forest.apply(&path.vertices);
    let after = forest.to_solution(g);
    let counts_after = after.singleton_counts();
    for (color, (&b, &a)) in counts_before.iter().zip(&counts_after).enumerate() {
        let ok = if color == path.color {
            a + 1 == b
        } else {
            a <= b
        };
        if !ok {
            return Err(Error::Invariant(format!(
                "path {:?}: singletons of color {color} went from {b} to {a}",
                path.vertices
            )));
        }
    }
    if let Some(block) = after.first_violation() {
        return Err(Error::Invariant(format!(
            "path {:?} produced non-colorful component {}",
            path.vertices,
            crate::error::fmt_block(&block)
        )));
    }
    for block in after.components().blocks() {
        if after.classify_component(block) == ComponentShape::Other {
            return Err(Error::Invariant(format!(
                "path {:?} produced component {} that is not a singleton, edge or star",
                path.vertices,
                crate::error::fmt_block(block)
            )));
        }
    }
    Ok(())
}

/// `path c=<color> <v0> ... <vk>` per applied path.
pub fn format_trace(g: &ColoredGraph, trace: &[AlternatingPath]) -> String {
    let mut out = String::new();
    for p in trace {
        let _ = write!(out, "path c={}", g.color_name(p.color));
        for v in &p.vertices {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

/// `lb <color> <s_c>` per color followed by `lb-total <n>`.
pub fn format_certificate(g: &ColoredGraph, cert: &LowerBoundCertificate) -> String {
    let mut out = String::new();
    for (c, s) in cert.per_color.iter().enumerate() {
        let _ = writeln!(out, "lb {} {}", g.color_name(c), s);
    }
    let _ = writeln!(out, "lb-total {}", cert.total);
    out
}
