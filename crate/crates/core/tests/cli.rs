use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colorful"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
}

fn setup() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::write(p.join("g1.graph"), "v 0 a\nv 1 b\nv 2 b\ne 0 1\ne 0 2\n").unwrap();
    fs::write(p.join("aba.graph"), "v 0 a\nv 1 b\nv 2 a\ne 0 1\ne 1 2\n").unwrap();
    fs::write(p.join("path3.graph"), "v 0 x\nv 1 x\nv 2 x\ne 0 1\ne 1 2\n").unwrap();
    fs::write(
        p.join("k3.graph"),
        "v 0 x\nv 1 x\nv 2 x\ne 0 1\ne 1 2\ne 0 2\n",
    )
    .unwrap();
    fs::write(p.join("one.cnf"), "p cnf 3 1\n1 2 3 0\n").unwrap();
    fs::write(p.join("empty.cnf"), "p cnf 0 0\n").unwrap();
    dir
}

#[test]
fn solve_msv_certifies_g1() {
    let dir = setup();
    let o = run(
        dir.path(),
        &[
            "solve", "msv", "g1.graph", "--out", "g1.sol", "--trace", "g1.trace",
        ],
    );
    assert!(o.status.success());
    let r = stdout(&o);
    assert_eq!(value(&r, "singletons"), Some("1"));
    assert_eq!(value(&r, "lb-total"), Some("1"));
    assert_eq!(value(&r, "verdict"), Some("OPTIMAL-CERTIFIED"));
    assert_eq!(
        fs::read_to_string(dir.path().join("g1.trace")).unwrap(),
        "path c=a 0 1\n"
    );

    let o = run(
        dir.path(),
        &[
            "verify",
            "g1.graph",
            "g1.sol",
            "--singletons",
            "1",
            "--shapes",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "verdict"), Some("PASS"));
}

#[test]
fn verify_reports_first_failure() {
    let dir = setup();
    fs::write(dir.path().join("bad.sol"), "keep 0 1\nkeep 0 2\n").unwrap();
    let o = run(dir.path(), &["verify", "g1.graph", "bad.sol"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        value(&stdout(&o), "fail"),
        Some("feasibility: component {0,1,2} is not colorful")
    );
    fs::write(dir.path().join("none.sol"), "").unwrap();
    let o = run(
        dir.path(),
        &["verify", "g1.graph", "none.sol", "--components", "2"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        value(&stdout(&o), "fail"),
        Some("components: expected 2, found 3")
    );
}

#[test]
fn solve_small_problems() {
    let dir = setup();
    let o = run(dir.path(), &["solve", "mec2", "aba.graph"]);
    assert_eq!(value(&stdout(&o), "tc"), Some("1"));
    fs::write(dir.path().join("rgb.graph"), "v 0 r\nv 1 g\nv 2 b\ne 0 1\n").unwrap();
    let o = run(dir.path(), &["solve", "mec2", "rgb.graph"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(dir.path(), &["reduce", "cp2mcc", "k3.graph", "k3gadget"]);
    assert!(o.status.success());
    let o = run(dir.path(), &["solve", "brute-mcc", "k3gadget.graph"]);
    assert_eq!(value(&stdout(&o), "k"), Some("1"));
    let o = run(dir.path(), &["solve", "brute-msv", "g1.graph", "aba.graph"]);
    let r = stdout(&o);
    assert_eq!(r.matches("verdict=OPTIMAL").count(), 2);
}

#[test]
fn budget_and_usage_exit_codes() {
    let dir = setup();
    assert_eq!(
        run(
            dir.path(),
            &["solve", "brute-msv", "g1.graph", "--budget", "2"]
        )
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        run(dir.path(), &["solve", "nope", "g1.graph"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(dir.path(), &["solve", "msv", "missing.graph"])
            .status
            .code(),
        Some(1)
    );
    fs::write(dir.path().join("loop.graph"), "v 0 a\ne 0 0\n").unwrap();
    let o = run(dir.path(), &["solve", "msv", "loop.graph"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("self-loop"));
    assert_eq!(run(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn reduce_is_deterministic() {
    let dir = setup();
    let o = run(dir.path(), &["reduce", "sat2mec", "one.cnf", "a"]);
    assert_eq!(value(&stdout(&o), "vertices"), Some("13"));
    run(dir.path(), &["reduce", "sat2mec", "one.cnf", "b"]);
    for ext in ["graph", "map"] {
        let a = fs::read(dir.path().join(format!("a.{ext}"))).unwrap();
        let b = fs::read(dir.path().join(format!("b.{ext}"))).unwrap();
        assert_eq!(a, b);
    }
    let o = run(dir.path(), &["reduce", "cp2mcc", "path3.graph", "out"]);
    assert_eq!(value(&stdout(&o), "vertices"), Some("5"));
    let o = run(dir.path(), &["reduce", "sat2mec", "empty.cnf", "e"]);
    assert_eq!(value(&stdout(&o), "vertices"), Some("0"));
    fs::write(dir.path().join("two.cnf"), "p cnf 3 1\n1 2 0\n").unwrap();
    assert_eq!(
        run(dir.path(), &["reduce", "sat2mec", "two.cnf", "t"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn sat_round_trip_through_files() {
    let dir = setup();
    run(dir.path(), &["reduce", "sat2mec", "one.cnf", "g"]);
    fs::write(dir.path().join("f.txt"), "v -1 -2 3 0\n").unwrap();
    let o = run(
        dir.path(),
        &[
            "translate",
            "satsol",
            "--graph",
            "g.graph",
            "--map",
            "g.map",
            "f.txt",
            "--out",
            "s.sol",
        ],
    );
    assert_eq!(value(&stdout(&o), "tc"), Some("12"));
    let o = run(dir.path(), &["verify", "g.graph", "s.sol", "--tc", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(
        dir.path(),
        &[
            "translate",
            "assignment",
            "--graph",
            "g.graph",
            "--map",
            "g.map",
            "s.sol",
        ],
    );
    let r = stdout(&o);
    assert_eq!(value(&r, "satisfied"), Some("1"));
    assert_eq!(value(&r, "clauses"), Some("1"));

    fs::write(dir.path().join("empty.sol"), "").unwrap();
    let o = run(
        dir.path(),
        &[
            "translate",
            "assignment",
            "--graph",
            "g.graph",
            "--map",
            "g.map",
            "empty.sol",
        ],
    );
    let r = stdout(&o);
    assert_eq!(value(&r, "guaranteed"), Some("0"));
    assert_eq!(value(&r, "output"), Some("v -1 -2 -3 0"));
}

#[test]
fn clique_translation_after_repair() {
    let dir = setup();
    run(dir.path(), &["reduce", "cp2mcc", "path3.graph", "p"]);
    // additional edge (0, 3) dropped: two components, one repair needed
    fs::write(dir.path().join("r.sol"), "keep 0 1\nkeep 1 2\nkeep 2 4\n").unwrap();
    let o = run(
        dir.path(),
        &[
            "translate",
            "cliques",
            "--graph",
            "p.graph",
            "--map",
            "p.map",
            "r.sol",
        ],
    );
    let r = stdout(&o);
    assert_eq!(value(&r, "components"), Some("2"));
    assert_eq!(value(&r, "repairs"), Some("1"));
    assert_eq!(value(&r, "k"), Some("2"));
    assert_eq!(value(&r, "verdict"), Some("CLIQUES"));
}

#[test]
fn lb_enum_gen_and_json() {
    let dir = setup();
    let o = run(dir.path(), &["lb", "g1.graph"]);
    assert_eq!(value(&stdout(&o), "lb[b]"), Some("1"));
    let o = run(dir.path(), &["oracle-enum", "g1.graph"]);
    assert_eq!(value(&stdout(&o), "partitions"), Some("3"));
    let o = run(dir.path(), &["--json", "solve", "msv", "g1.graph"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], "OPTIMAL-CERTIFIED");
    assert_eq!(v["singletons"], 1);

    let a = stdout(&run(
        dir.path(),
        &[
            "gen",
            "graph",
            "--seed",
            "9",
            "--vertices",
            "30",
            "--edges",
            "60",
        ],
    ));
    let b = stdout(&run(
        dir.path(),
        &[
            "gen",
            "graph",
            "--seed",
            "9",
            "--vertices",
            "30",
            "--edges",
            "60",
        ],
    ));
    assert_eq!(a, b);
    assert!(a.starts_with("c vertices 30 edges 60"));
    run(dir.path(), &["gen", "cnf", "--seed", "2", "--out", "r.cnf"]);
    assert!(run(dir.path(), &["reduce", "sat2mec", "r.cnf", "r"])
        .status
        .success());
}
