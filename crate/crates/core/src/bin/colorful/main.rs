//! `colorful`: solve, reduce, translate and verify colorful-component
//! instances from the command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 infeasible solution or
//! failed verification, 3 oracle budget exceeded.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use colorful::graph::{ColoredGraph, EdgeSubset};
use colorful::matching::mec_two_color;
use colorful::msv::{
    format_certificate, format_trace, lower_bound_total, msv_exact_with, MsvOptions,
};
use colorful::oracle::{self, OracleBudget};
use colorful::reductions::{
    build_satisfying_solution, extract_assignment, extract_clique_partition, parse_assignment,
    parse_dimacs, reduce_cp_to_mcc, reduce_sat_to_mec, MccGadgetMap, MecGadgetMap,
};
use colorful::{generate, par, parse_graph, parse_solution, write_graph, write_solution, Error};
use report::Report;

#[derive(Parser)]
#[command(
    name = "colorful",
    version,
    about = "Colorful components on vertex-colored graphs"
)]
struct Cli {
    /// Print reports as JSON objects instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one or more graph files; several files run in parallel.
    Solve(SolveArgs),
    /// Build a gadget graph and its map file.
    Reduce(ReduceArgs),
    /// Move a solution or assignment across a reduction.
    Translate(TranslateArgs),
    /// Check a solution file against a graph and optional expectations.
    Verify(VerifyArgs),
    /// Print the per-color singleton lower bound.
    Lb(LbArgs),
    /// Count colorful partitions by exhaustive enumeration.
    OracleEnum(OracleEnumArgs),
    /// Generate a random instance.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Msv,
    Mec2,
    BruteMsv,
    BruteMec,
    BruteMcc,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(value_enum)]
    problem: Problem,
    #[arg(required = true)]
    graphs: Vec<PathBuf>,
    /// Solution file (single input only).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory receiving `<stem>.sol` per input.
    #[arg(long, conflicts_with = "out")]
    out_dir: Option<PathBuf>,
    /// Write the applied alternating paths (msv, single input only).
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Vertex limit for the exhaustive solvers.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Sat2mec,
    Cp2mcc,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(value_enum)]
    kind: ReduceKind,
    input: PathBuf,
    /// Writes `<prefix>.graph` and `<prefix>.map`.
    prefix: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum TranslateKind {
    /// Gadget solution to truth assignment.
    Assignment,
    /// Gadget solution to clique partition.
    Cliques,
    /// Satisfying assignment to gadget solution.
    Satsol,
}

#[derive(Args)]
struct TranslateArgs {
    #[arg(value_enum)]
    kind: TranslateKind,
    /// Gadget graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Map file written by `reduce`.
    #[arg(long)]
    map: PathBuf,
    /// Solution file, or assignment file for `satsol`.
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    solution: PathBuf,
    /// Require every component to be a singleton, an edge or a star.
    #[arg(long)]
    shapes: bool,
    #[arg(long)]
    singletons: Option<usize>,
    /// Expected transitive-closure edge count.
    #[arg(long)]
    tc: Option<u64>,
    #[arg(long)]
    components: Option<usize>,
}

#[derive(Args)]
struct LbArgs {
    graph: PathBuf,
}

#[derive(Args)]
struct OracleEnumArgs {
    graph: PathBuf,
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Graph,
    Cnf,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    vertices: usize,
    #[arg(long, default_value_t = 15)]
    edges: usize,
    #[arg(long, default_value_t = 3)]
    colors: usize,
    #[arg(long, default_value_t = 5)]
    vars: usize,
    #[arg(long, default_value_t = 4)]
    clauses: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => 3,
            Error::Infeasible(_) | Error::Invariant(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

type Outcome = Result<Vec<Report>, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<ColoredGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn stats(r: &mut Report, g: &ColoredGraph) {
    r.put("vertices", g.vertex_count())
        .put("edges", g.edge_count())
        .put("colors", g.color_count());
}

fn budget(limit: Option<usize>) -> OracleBudget {
    match limit {
        Some(n) => OracleBudget::partitions().with_max_vertices(n),
        None => OracleBudget::partitions(),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let echo = args[1..].join(" ");
    let outcome = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Reduce(a) => reduce(a),
        Command::Translate(a) => translate(a),
        Command::Verify(a) => verify(a),
        Command::Lb(a) => lb(a),
        Command::OracleEnum(a) => oracle_enum(a),
        Command::Gen(a) => gen(a),
    };
    match outcome {
        Ok(reports) => {
            let mut code = 0;
            for (i, mut r) in reports.into_iter().enumerate() {
                if i > 0 && !cli.json {
                    println!();
                }
                r.prepend("command", echo.clone());
                print!("{}", r.render(cli.json));
                if r.get("verdict").and_then(|v| v.as_str()) == Some("FAIL") {
                    code = 2;
                }
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn solve(a: SolveArgs) -> Outcome {
    if a.graphs.len() > 1 && (a.out.is_some() || a.trace.is_some()) {
        return Err(usage(
            "--out and --trace take a single input; use --out-dir for several",
        ));
    }
    let graphs = a
        .graphs
        .iter()
        .map(|p| load_graph(p))
        .collect::<Result<Vec<_>, _>>()?;
    let jobs: Vec<(usize, &ColoredGraph)> = graphs.iter().enumerate().collect();
    let budget = budget(a.budget);
    let results = par::map(&jobs, |&(i, g)| {
        solve_one(a.problem, g, &a.graphs[i], &budget, a.trace.is_some())
    });
    let mut reports = Vec::new();
    for (i, res) in results.into_iter().enumerate() {
        let (report, sol_text, trace_text) = res?;
        if let Some(out) = &a.out {
            write(out, &sol_text)?;
        }
        if let Some(dir) = &a.out_dir {
            let stem = a.graphs[i].file_stem().unwrap_or_default();
            write(&dir.join(stem).with_extension("sol"), &sol_text)?;
        }
        if let (Some(path), Some(text)) = (&a.trace, trace_text) {
            write(path, &text)?;
        }
        reports.push(report);
    }
    Ok(reports)
}

fn solve_one(
    problem: Problem,
    g: &ColoredGraph,
    path: &Path,
    budget: &OracleBudget,
    want_trace: bool,
) -> Result<(Report, String, Option<String>), Failure> {
    let start = Instant::now();
    let mut r = Report::new();
    r.put("file", path.display().to_string());
    stats(&mut r, g);
    let mut trace = None;
    let sol: EdgeSubset<'_> = match problem {
        Problem::Msv => {
            let out = msv_exact_with(
                g,
                MsvOptions {
                    check_invariants: false,
                    record_trace: want_trace,
                },
            )?;
            if want_trace {
                trace = Some(format_trace(g, &out.trace));
            }
            r.put("problem", "msv")
                .put("singletons", out.singleton_total())
                .put("lb-total", out.certificate.total)
                .put("paths", out.paths_applied);
            let certified = out.is_certified();
            let sol = out.solution;
            r.put("wall_ms", start.elapsed().as_millis() as u64);
            r.put(
                "verdict",
                if sol.is_feasible() && certified {
                    "OPTIMAL-CERTIFIED"
                } else {
                    "FAIL"
                },
            );
            return Ok((r, write_solution(&sol), trace));
        }
        Problem::Mec2 => {
            let sol = mec_two_color(g)?;
            r.put("problem", "mec2")
                .put("tc", sol.transitive_closure_edges());
            sol
        }
        Problem::BruteMsv => {
            let res = oracle::brute_msv(g, budget)?;
            r.put("problem", "brute-msv").put("singletons", res.value);
            res.witness.intra_block_solution(g)
        }
        Problem::BruteMec => {
            let res = oracle::brute_mec(g, budget)?;
            r.put("problem", "brute-mec").put("tc", res.value);
            res.witness.intra_block_solution(g)
        }
        Problem::BruteMcc => {
            let res = oracle::brute_mcc(g, budget)?;
            r.put("problem", "brute-mcc").put("k", res.value);
            res.witness.intra_block_solution(g)
        }
    };
    r.put("components", sol.component_count());
    r.put("wall_ms", start.elapsed().as_millis() as u64);
    r.put(
        "verdict",
        if sol.is_feasible() { "OPTIMAL" } else { "FAIL" },
    );
    Ok((r, write_solution(&sol), trace))
}

fn reduce(a: ReduceArgs) -> Outcome {
    let text = read(&a.input)?;
    let (graph, map_text) = match a.kind {
        ReduceKind::Sat2mec => {
            let phi =
                parse_dimacs(&text).map_err(|e| usage(format!("{}: {e}", a.input.display())))?;
            let (g, map) = reduce_sat_to_mec(&phi);
            (g, map.to_text())
        }
        ReduceKind::Cp2mcc => {
            let src = load_graph(&a.input)?;
            let (g, map) = reduce_cp_to_mcc(&src);
            (g, map.to_text())
        }
    };
    let graph_path = a.prefix.with_extension("graph");
    let map_path = a.prefix.with_extension("map");
    write(&graph_path, &write_graph(&graph))?;
    write(&map_path, &map_text)?;
    let mut r = Report::new();
    stats(&mut r, &graph);
    r.put("graph", graph_path.display().to_string())
        .put("map", map_path.display().to_string());
    Ok(vec![r])
}

fn translate(a: TranslateArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let map_text = read(&a.map)?;
    let input = read(&a.input)?;
    let mut r = Report::new();
    let artifact = match a.kind {
        TranslateKind::Assignment | TranslateKind::Satsol => {
            let map = MecGadgetMap::parse(&map_text)?;
            map.validate(&g)?;
            let phi = map.formula()?;
            if let TranslateKind::Satsol = a.kind {
                let f = parse_assignment(&input)?;
                let sol = build_satisfying_solution(&g, &phi, &map, &f)?;
                sol.ensure_feasible()?;
                r.put("clauses", phi.clause_count())
                    .put("tc", sol.transitive_closure_edges())
                    .put("target", 12 * phi.clause_count() as u64)
                    .put("verdict", "FEASIBLE");
                write_solution(&sol)
            } else {
                let sol = parse_solution(&g, &input)?;
                let (f, rep) = extract_assignment(&phi, &map, &sol)?;
                let hist: Vec<String> = rep.component_sizes.iter().map(usize::to_string).collect();
                r.put("clauses", rep.clause_count)
                    .put("satisfied", rep.satisfied_clauses)
                    .put("tc", rep.transitive_closure)
                    .put("alpha", hist.join(","))
                    .put("alpha4", rep.size_four_components())
                    .put("inconsistent", rep.inconsistent_variables)
                    .put("beta", rep.beta)
                    .put("guaranteed", rep.guaranteed_satisfied().max(0));
                f.to_text()
            }
        }
        TranslateKind::Cliques => {
            let map = MccGadgetMap::parse(&map_text, &g)?;
            let sol = parse_solution(&g, &input)?;
            let ex = extract_clique_partition(&g, &map, &sol)?;
            r.put("components", ex.initial_components)
                .put("repairs", ex.steps.len())
                .put("k", ex.partition.k())
                .put(
                    "verdict",
                    if ex.partition.k() <= ex.initial_components {
                        "CLIQUES"
                    } else {
                        "FAIL"
                    },
                );
            ex.partition.to_text()
        }
    };
    match &a.out {
        Some(path) => write(path, &artifact)?,
        None => {
            r.put("output", artifact.trim_end().replace('\n', "; "));
        }
    }
    Ok(vec![r])
}

fn verify(a: VerifyArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let sol = parse_solution(&g, &read(&a.solution)?)?;
    let mut r = Report::new();
    stats(&mut r, &g);
    r.put("kept", sol.len())
        .put("singletons", sol.singleton_total())
        .put("tc", sol.transitive_closure_edges())
        .put("components", sol.component_count());
    let mut fail = None;
    if let Some(block) = sol.first_violation() {
        fail = Some(format!("feasibility: {}", Error::Infeasible(block)));
    }
    if fail.is_none() && a.shapes {
        if let Some(block) = sol.first_shape_violation() {
            let inner: Vec<String> = block.iter().map(usize::to_string).collect();
            fail = Some(format!(
                "shapes: component {{{}}} is not a singleton, edge or star",
                inner.join(",")
            ));
        }
    }
    let checks = [
        (
            "singletons",
            a.singletons.map(|x| x as u64),
            sol.singleton_total() as u64,
        ),
        ("tc", a.tc, sol.transitive_closure_edges()),
        (
            "components",
            a.components.map(|x| x as u64),
            sol.component_count() as u64,
        ),
    ];
    for (name, want, got) in checks {
        if let (None, Some(want)) = (&fail, want) {
            if want != got {
                fail = Some(format!("{name}: expected {want}, found {got}"));
            }
        }
    }
    match fail {
        Some(msg) => r.put("verdict", "FAIL").put("fail", msg),
        None => r.put("verdict", "PASS"),
    };
    Ok(vec![r])
}

fn lb(a: LbArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let cert = lower_bound_total(&g);
    let mut r = Report::new();
    stats(&mut r, &g);
    for line in format_certificate(&g, &cert).lines() {
        if let Some(rest) = line.strip_prefix("lb ") {
            let (name, value) = rest.rsplit_once(' ').unwrap_or((rest, ""));
            r.put(&format!("lb[{name}]"), value.parse::<u64>().unwrap_or(0));
        }
    }
    r.put("lb-total", cert.total);
    Ok(vec![r])
}

fn oracle_enum(a: OracleEnumArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let count = oracle::count_colorful_partitions(&g, &budget(a.budget))?;
    let mut r = Report::new();
    stats(&mut r, &g);
    r.put("partitions", count);
    Ok(vec![r])
}

fn gen(a: GenArgs) -> Outcome {
    let mut rng = generate::rng(a.seed);
    let mut r = Report::new();
    let text = match a.kind {
        GenKind::Graph => {
            if a.colors == 0 && a.vertices > 0 {
                return Err(usage("--colors must be positive"));
            }
            let g = generate::random_graph(&mut rng, a.vertices, a.edges, a.colors);
            stats(&mut r, &g);
            write_graph(&g)
        }
        GenKind::Cnf => {
            if a.vars < 3 && a.clauses > 0 {
                return Err(usage("clauses need at least 3 variables"));
            }
            let (phi, planted) = generate::planted_formula(&mut rng, a.vars, a.clauses);
            r.put("vars", phi.num_vars())
                .put("clauses", phi.clause_count())
                .put("planted", planted.to_text().trim_end().to_string());
            phi.to_dimacs()
        }
    };
    match &a.out {
        Some(path) => {
            write(path, &text)?;
            r.put("out", path.display().to_string());
        }
        None => {
            print!("{text}");
            return Ok(Vec::new());
        }
    }
    Ok(vec![r])
}
