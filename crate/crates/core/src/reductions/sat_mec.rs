//! 3-CNF to MEC.
//!
//! Every clause becomes a vertex of color `c`. A variable occurring `n_x`
//! times becomes a cycle `a_1 v_1 b_1 w_1 a_2 ... w_{n_x} a_1` of length
//! `4 n_x` with colors `a`, `v`, `b`, `v`; the `v_j` stand for the literal
//! `x` and the `w_j` for `¬x`. Each clause vertex is joined to one unused
//! literal vertex per literal it contains. A satisfiable formula with `m`
//! clauses admits a solution with `12m` transitive-closure edges.

use std::fmt::Write as _;

use super::cnf::{Assignment, CnfFormula, Literal};
use crate::error::{parse_err, Error, Result};
use crate::graph::{transitive_closure_edges, ColoredGraph, EdgeSubset};

pub const COLOR_A: usize = 0;
pub const COLOR_B: usize = 1;
pub const COLOR_CLAUSE: usize = 2;
pub const COLOR_V: usize = 3;
pub const COLOR_NAMES: [&str; 4] = ["a", "b", "c", "v"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleRole {
    A,
    B,
    /// Positive literal vertex.
    V,
    /// Negative literal vertex.
    W,
}

impl CycleRole {
    fn tag(self) -> &'static str {
        match self {
            CycleRole::A => "a",
            CycleRole::B => "b",
            CycleRole::V => "v",
            CycleRole::W => "w",
        }
    }

    fn from_tag(s: &str) -> Option<Self> {
        Some(match s {
            "a" => CycleRole::A,
            "b" => CycleRole::B,
            "v" => CycleRole::V,
            "w" => CycleRole::W,
            _ => return None,
        })
    }
}

/// Vertex ids of one variable's cycle, each family indexed `0..n_x`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VariableCycle {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
}

impl VariableCycle {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Cycle edges `(a_i, v_i), (v_i, b_i), (b_i, w_i), (w_i, a_{i+1})`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| {
                [
                    (self.a[i], self.v[i]),
                    (self.v[i], self.b[i]),
                    (self.b[i], self.w[i]),
                    (self.w[i], self.a[(i + 1) % n]),
                ]
            })
            .collect()
    }

    fn family(&self, role: CycleRole) -> &[usize] {
        match role {
            CycleRole::A => &self.a,
            CycleRole::B => &self.b,
            CycleRole::V => &self.v,
            CycleRole::W => &self.w,
        }
    }

    fn family_mut(&mut self, role: CycleRole) -> &mut Vec<usize> {
        match role {
            CycleRole::A => &mut self.a,
            CycleRole::B => &mut self.b,
            CycleRole::V => &mut self.v,
            CycleRole::W => &mut self.w,
        }
    }
}

/// Correspondence between formula objects and gadget vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MecGadgetMap {
    pub clause_vertex: Vec<usize>,
    /// Indexed by variable; empty for variables that never occur.
    pub cycles: Vec<VariableCycle>,
    /// Literal vertex joined to each clause, by literal position.
    pub literal_attachment: Vec<[usize; 3]>,
}

impl MecGadgetMap {
    pub fn vertex_count(&self) -> usize {
        self.clause_vertex.len() + 4 * self.cycles.iter().map(VariableCycle::len).sum::<usize>()
    }

    /// `(variable, index, role)` of every cycle vertex; `None` for clause
    /// vertices.
    pub fn roles(&self) -> Vec<Option<(usize, usize, CycleRole)>> {
        let mut roles = vec![None; self.vertex_count()];
        for (x, cyc) in self.cycles.iter().enumerate() {
            for role in [CycleRole::A, CycleRole::B, CycleRole::V, CycleRole::W] {
                for (i, &vertex) in cyc.family(role).iter().enumerate() {
                    roles[vertex] = Some((x, i, role));
                }
            }
        }
        roles
    }

    /// The formula encoded by the attachments.
    pub fn formula(&self) -> Result<CnfFormula> {
        let roles = self.roles();
        let clauses = self
            .literal_attachment
            .iter()
            .map(|att| {
                att.iter()
                    .map(|&vertex| match roles.get(vertex).copied().flatten() {
                        Some((x, _, CycleRole::V)) => Ok(Literal::pos(x)),
                        Some((x, _, CycleRole::W)) => Ok(Literal::neg(x)),
                        _ => Err(Error::Precondition(format!(
                            "clause attached to vertex {vertex}, which is not a literal vertex"
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CnfFormula::new(self.cycles.len(), clauses)
    }

    /// Checks the map against a gadget graph: colors, cycle edges and
    /// clause attachments must all be present.
    pub fn validate(&self, g: &ColoredGraph) -> Result<()> {
        let bad = |msg: String| {
            Err(Error::Precondition(format!(
                "map does not match graph: {msg}"
            )))
        };
        if self.vertex_count() != g.vertex_count() {
            return bad(format!(
                "{} mapped vertices, graph has {}",
                self.vertex_count(),
                g.vertex_count()
            ));
        }
        let expect_color = |v: usize, c: usize| {
            if g.color_name(g.color(v)) != COLOR_NAMES[c] {
                return bad(format!("vertex {v} should have color {}", COLOR_NAMES[c]));
            }
            Ok(())
        };
        for &c in &self.clause_vertex {
            expect_color(c, COLOR_CLAUSE)?;
        }
        for cyc in &self.cycles {
            for (fam, color) in [
                (&cyc.a, COLOR_A),
                (&cyc.b, COLOR_B),
                (&cyc.v, COLOR_V),
                (&cyc.w, COLOR_V),
            ] {
                if fam.len() != cyc.len() {
                    return bad("cycle families differ in length".into());
                }
                for &v in fam {
                    expect_color(v, color)?;
                }
            }
            for (u, v) in cyc.edges() {
                if !g.has_edge(u, v) {
                    return bad(format!("missing cycle edge ({u}, {v})"));
                }
            }
        }
        for (i, att) in self.literal_attachment.iter().enumerate() {
            for &v in att {
                if !g.has_edge(self.clause_vertex[i], v) {
                    return bad(format!("missing attachment edge of clause {}", i + 1));
                }
            }
        }
        let edges = 4 * self.cycles.iter().map(VariableCycle::len).sum::<usize>()
            + 3 * self.literal_attachment.len();
        if edges != g.edge_count() {
            return bad(format!(
                "expected {edges} edges, graph has {}",
                g.edge_count()
            ));
        }
        self.formula().map(|_| ())
    }

    /// Sidecar text: `vars`, `clause`, `cyc` and `att` records, all indices
    /// 1-based except vertex ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vars {}", self.cycles.len());
        for (i, &v) in self.clause_vertex.iter().enumerate() {
            let _ = writeln!(out, "clause {} {}", i + 1, v);
        }
        for (x, cyc) in self.cycles.iter().enumerate() {
            for i in 0..cyc.len() {
                for role in [CycleRole::A, CycleRole::V, CycleRole::B, CycleRole::W] {
                    let _ = writeln!(
                        out,
                        "cyc {} {} {} {}",
                        x + 1,
                        i + 1,
                        role.tag(),
                        cyc.family(role)[i]
                    );
                }
            }
        }
        for (i, att) in self.literal_attachment.iter().enumerate() {
            for (pos, v) in att.iter().enumerate() {
                let _ = writeln!(out, "att {} {} {}", i + 1, pos + 1, v);
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut vars = None;
        let mut clause_vertex: Vec<Option<usize>> = Vec::new();
        let mut cycles: Vec<VariableCycle> = Vec::new();
        let mut attachment: Vec<[Option<usize>; 3]> = Vec::new();
        let slot = |list_len: usize, idx: usize, line: usize| -> Result<usize> {
            if idx == 0 || idx > list_len {
                Err(parse_err(line, format!("index {idx} out of range")))
            } else {
                Ok(idx - 1)
            }
        };
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let t: Vec<&str> = raw.split_whitespace().collect();
            let num = |i: usize| -> Result<usize> {
                t.get(i)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| parse_err(line, "expected a number"))
            };
            match t.first().copied() {
                None | Some("c") => {}
                Some("vars") if t.len() == 2 => {
                    let n = num(1)?;
                    vars = Some(n);
                    cycles.resize(n, VariableCycle::default());
                }
                Some("clause") if t.len() == 3 => {
                    let i = num(1)?;
                    if i == 0 {
                        return Err(parse_err(line, "clause indices start at 1"));
                    }
                    if i > clause_vertex.len() {
                        clause_vertex.resize(i, None);
                        attachment.resize(i, [None; 3]);
                    }
                    clause_vertex[i - 1] = Some(num(2)?);
                }
                Some("cyc") if t.len() == 5 => {
                    let x = slot(vars.unwrap_or(0), num(1)?, line)?;
                    let i = num(2)?;
                    let role = CycleRole::from_tag(t[3])
                        .ok_or_else(|| parse_err(line, "role must be a, b, v or w"))?;
                    let fam = cycles[x].family_mut(role);
                    if i != fam.len() + 1 {
                        return Err(parse_err(line, "cycle indices must be listed in order"));
                    }
                    fam.push(num(4)?);
                }
                Some("att") if t.len() == 4 => {
                    let i = slot(clause_vertex.len(), num(1)?, line)?;
                    let pos = num(2)?;
                    if !(1..=3).contains(&pos) {
                        return Err(parse_err(line, "literal position must be 1, 2 or 3"));
                    }
                    attachment[i][pos - 1] = Some(num(3)?);
                }
                _ => {
                    return Err(parse_err(
                        line,
                        format!("unrecognized record `{}`", raw.trim()),
                    ))
                }
            }
        }
        let clause_vertex = clause_vertex
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::Precondition(format!("clause {} has no vertex", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let literal_attachment = attachment
            .into_iter()
            .enumerate()
            .map(|(i, att)| match att {
                [Some(a), Some(b), Some(c)] => Ok([a, b, c]),
                _ => Err(Error::Precondition(format!(
                    "clause {} lacks attachments",
                    i + 1
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            clause_vertex,
            cycles,
            literal_attachment,
        })
    }
}

/// Builds the MEC gadget of `phi`. Clause vertices come first, followed by
/// each variable's cycle. The `j`-th use of `x` (of `¬x`) attaches to
/// `v_j` (to `w_j`), scanning clauses in order.
pub fn reduce_sat_to_mec(phi: &CnfFormula) -> (ColoredGraph, MecGadgetMap) {
    let m = phi.clause_count();
    let occurrences = phi.occurrences();
    let mut colors = vec![COLOR_CLAUSE; m];
    let mut cycles = Vec::with_capacity(phi.num_vars());
    for &n_x in &occurrences {
        let mut cyc = VariableCycle::default();
        for _ in 0..n_x {
            for (role, color) in [
                (CycleRole::A, COLOR_A),
                (CycleRole::V, COLOR_V),
                (CycleRole::B, COLOR_B),
                (CycleRole::W, COLOR_V),
            ] {
                cyc.family_mut(role).push(colors.len());
                colors.push(color);
            }
        }
        cycles.push(cyc);
    }

    let mut used_pos = vec![0; phi.num_vars()];
    let mut used_neg = vec![0; phi.num_vars()];
    let literal_attachment: Vec<[usize; 3]> = phi
        .clauses()
        .iter()
        .map(|clause| {
            clause.map(|l| {
                let (used, family) = if l.negated {
                    (&mut used_neg[l.var], &cycles[l.var].w)
                } else {
                    (&mut used_pos[l.var], &cycles[l.var].v)
                };
                *used += 1;
                family[*used - 1]
            })
        })
        .collect();

    let mut edges: Vec<(usize, usize)> = cycles.iter().flat_map(VariableCycle::edges).collect();
    for (i, att) in literal_attachment.iter().enumerate() {
        edges.extend(att.iter().map(|&v| (i, v)));
    }
    let names = COLOR_NAMES.iter().map(|s| s.to_string()).collect();
    let graph =
        ColoredGraph::with_color_names(colors, names, edges).expect("gadget construction is valid");
    let map = MecGadgetMap {
        clause_vertex: (0..m).collect(),
        cycles,
        literal_attachment,
    };
    (graph, map)
}

/// The solution induced by a satisfying assignment: each clause keeps the
/// edge to its first satisfied literal, and every literal vertex satisfied
/// by `f` keeps both of its cycle edges.
pub fn build_satisfying_solution<'g>(
    g: &'g ColoredGraph,
    phi: &CnfFormula,
    map: &MecGadgetMap,
    f: &Assignment,
) -> Result<EdgeSubset<'g>> {
    let mut sol = EdgeSubset::empty(g);
    for (i, clause) in phi.clauses().iter().enumerate() {
        let pos = clause
            .iter()
            .position(|l| l.is_satisfied_by(f))
            .ok_or_else(|| {
                Error::Precondition(format!("assignment does not satisfy clause {}", i + 1))
            })?;
        sol.insert(map.clause_vertex[i], map.literal_attachment[i][pos])?;
    }
    for (x, cyc) in map.cycles.iter().enumerate() {
        let n = cyc.len();
        for i in 0..n {
            if f.value(x) {
                sol.insert(cyc.a[i], cyc.v[i])?;
                sol.insert(cyc.v[i], cyc.b[i])?;
            } else {
                sol.insert(cyc.b[i], cyc.w[i])?;
                sol.insert(cyc.w[i], cyc.a[(i + 1) % n])?;
            }
        }
    }
    Ok(sol)
}

/// Quantities observed while extracting an assignment from a gadget solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionReport {
    /// `component_sizes[k]` counts components with `k + 1` vertices.
    pub component_sizes: Vec<usize>,
    pub transitive_closure: u64,
    /// Clause vertices joined to some literal vertex.
    pub attached_clauses: usize,
    /// Variables with clause vertices on both the `x` and the `¬x` side.
    pub inconsistent_variables: usize,
    pub satisfied_clauses: usize,
    pub clause_count: usize,
    pub beta: usize,
}

impl ExtractionReport {
    /// Number of components with exactly four vertices.
    pub fn size_four_components(&self) -> usize {
        self.component_sizes.get(3).copied().unwrap_or(0)
    }

    /// Lower bound `m - (12m - T)(β + 1)` on the satisfied clauses, where
    /// `T` is the closure size; the extraction satisfies at least
    /// `m(1 - ε(β + 1))` clauses whenever `T > 12m - εm`.
    pub fn guaranteed_satisfied(&self) -> i64 {
        let m = self.clause_count as i64;
        let deficit = 12 * m - self.transitive_closure as i64;
        m - deficit * (self.beta as i64 + 1)
    }
}

/// Reads an assignment off a feasible gadget solution. A variable is true
/// when every clause vertex joined to its cycle sits on a `v` vertex, false
/// when all sit on `w` vertices, and false when the variable is
/// inconsistent or has no joined clause.
pub fn extract_assignment(
    phi: &CnfFormula,
    map: &MecGadgetMap,
    sol: &EdgeSubset<'_>,
) -> Result<(Assignment, ExtractionReport)> {
    sol.ensure_feasible()?;
    let roles = map.roles();
    let mut positive = vec![false; phi.num_vars()];
    let mut negative = vec![false; phi.num_vars()];
    let mut attached = 0;
    for &c in &map.clause_vertex {
        let mut joined = false;
        for w in sol.kept_neighbors(c) {
            match roles.get(w).copied().flatten() {
                Some((x, _, CycleRole::V)) => positive[x] = true,
                Some((x, _, CycleRole::W)) => negative[x] = true,
                _ => {
                    return Err(Error::Precondition(format!(
                        "clause vertex {c} joined to non-literal {w}"
                    )))
                }
            }
            joined = true;
        }
        attached += usize::from(joined);
    }
    let mut f = Assignment::all_false(phi.num_vars());
    let mut inconsistent = 0;
    for x in 0..phi.num_vars() {
        match (positive[x], negative[x]) {
            (true, true) => inconsistent += 1,
            (true, false) => f.set(x, true),
            _ => {}
        }
    }
    let parts = sol.components();
    let mut component_sizes = vec![
        0;
        parts
            .blocks()
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .max(4)
    ];
    for b in parts.blocks() {
        component_sizes[b.len() - 1] += 1;
    }
    let report = ExtractionReport {
        component_sizes,
        transitive_closure: transitive_closure_edges(&parts),
        attached_clauses: attached,
        inconsistent_variables: inconsistent,
        satisfied_clauses: phi.satisfied_count(&f),
        clause_count: phi.clause_count(),
        beta: phi.beta(),
    };
    Ok((f, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::cnf::parse_dimacs;

    fn one_clause() -> CnfFormula {
        parse_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap()
    }

    /// (x ∨ y ∨ z) ∧ (¬x ∨ y ∨ ¬w) with x, y, z, w = 1, 2, 3, 4.
    fn two_clauses() -> CnfFormula {
        parse_dimacs("p cnf 4 2\n1 2 3 0\n-1 2 -4 0\n").unwrap()
    }

    #[test]
    fn gadget_sizes() {
        let (g, map) = reduce_sat_to_mec(&one_clause());
        assert_eq!((g.vertex_count(), g.edge_count()), (13, 15));
        assert_eq!(g.color_count(), 4);
        map.validate(&g).unwrap();
        let (g, map) = reduce_sat_to_mec(&two_clauses());
        assert_eq!((g.vertex_count(), g.edge_count()), (26, 30));
        map.validate(&g).unwrap();
        let (g, _) = reduce_sat_to_mec(&parse_dimacs("p cnf 0 0\n").unwrap());
        assert_eq!((g.vertex_count(), g.edge_count()), (0, 0));
    }

    #[test]
    fn attachments_follow_occurrence_order() {
        let phi = two_clauses();
        let (g, map) = reduce_sat_to_mec(&phi);
        // x occurs as x then ¬x: v_1 and w_1 of its cycle
        assert_eq!(map.literal_attachment[0][0], map.cycles[0].v[0]);
        assert_eq!(map.literal_attachment[1][0], map.cycles[0].w[0]);
        // y occurs twice positively: v_1 then v_2
        assert_eq!(map.literal_attachment[1][1], map.cycles[1].v[1]);
        for v in map.literal_attachment.iter().flatten() {
            let clause_nbrs = g.neighbors(*v).filter(|&w| w < 2).count();
            assert_eq!(clause_nbrs, 1);
        }
        assert_eq!(map.formula().unwrap(), phi);
    }

    #[test]
    fn satisfying_solution_scores_12m() {
        let phi = one_clause();
        let (g, map) = reduce_sat_to_mec(&phi);
        let f = Assignment::new(vec![true, false, false]);
        let sol = build_satisfying_solution(&g, &phi, &map, &f).unwrap();
        assert!(sol.is_feasible());
        assert_eq!(sol.transitive_closure_edges(), 12);
        let mut sizes = sol.components().block_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 3, 3, 4]);

        let phi = two_clauses();
        let (g, map) = reduce_sat_to_mec(&phi);
        let f = Assignment::new(vec![true, true, false, true]);
        let sol = build_satisfying_solution(&g, &phi, &map, &f).unwrap();
        assert_eq!(sol.transitive_closure_edges(), 24);
        // clause 2 picks y, its first satisfied literal
        assert!(sol.contains(map.clause_vertex[1], map.literal_attachment[1][1]));

        let unsat = Assignment::all_false(4);
        let phi1 = parse_dimacs("p cnf 4 1\n1 2 4 0\n").unwrap();
        let (g, map) = reduce_sat_to_mec(&phi1);
        assert!(build_satisfying_solution(&g, &phi1, &map, &unsat).is_err());
    }

    #[test]
    fn extraction_round_trip() {
        let phi = two_clauses();
        let (g, map) = reduce_sat_to_mec(&phi);
        let f = Assignment::new(vec![true, true, false, true]);
        let sol = build_satisfying_solution(&g, &phi, &map, &f).unwrap();
        let (got, report) = extract_assignment(&phi, &map, &sol).unwrap();
        assert!(phi.is_satisfied_by(&got));
        assert_eq!(report.size_four_components(), 2);
        assert_eq!(report.inconsistent_variables, 0);
        assert_eq!(report.guaranteed_satisfied(), 2);
    }

    #[test]
    fn extraction_without_attachments() {
        let phi = one_clause();
        let (g, map) = reduce_sat_to_mec(&phi);
        let (f, report) = extract_assignment(&phi, &map, &EdgeSubset::empty(&g)).unwrap();
        assert_eq!(f, Assignment::all_false(3));
        assert_eq!(report.attached_clauses, 0);
        assert_eq!(report.satisfied_clauses, 0);
        assert!(report.guaranteed_satisfied() <= 0);
    }

    #[test]
    fn inconsistent_variable_is_flagged() {
        // x appears in both polarities
        let phi = parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 2 3 0\n").unwrap();
        let (g, map) = reduce_sat_to_mec(&phi);
        let sol = EdgeSubset::from_edges(
            &g,
            [
                (map.clause_vertex[0], map.literal_attachment[0][0]),
                (map.clause_vertex[1], map.literal_attachment[1][0]),
            ],
        )
        .unwrap();
        let (f, report) = extract_assignment(&phi, &map, &sol).unwrap();
        assert_eq!(report.inconsistent_variables, 1);
        assert!(!f.value(0));
    }

    #[test]
    fn map_text_round_trip() {
        let (g, map) = reduce_sat_to_mec(&two_clauses());
        let parsed = MecGadgetMap::parse(&map.to_text()).unwrap();
        assert_eq!(parsed, map);
        parsed.validate(&g).unwrap();
        assert!(MecGadgetMap::parse("cyc 1 1 a 0\n").is_err());
        assert!(MecGadgetMap::parse("clause 1 0\n").is_err());
    }
}
