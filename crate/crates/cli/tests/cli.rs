use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qtw_core::graph::Graph;
use qtw_core::io::{parse_td, write_gr};
use qtw_core::ordering::validate_decomposition;

fn qtw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    out.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

fn write_graph(dir: &Path, name: &str, g: &Graph) -> String {
    let path = dir.join(name);
    fs::write(&path, write_gr(g)).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn petersen_with_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let g = Graph::petersen();
    let input = write_graph(dir.path(), "petersen.gr", &g);
    let td = dir.path().join("p.td");
    let o = qtw(&[
        "solve",
        "--input",
        &input,
        "--algorithm",
        "dp",
        "--emit-td",
        td.to_str().unwrap(),
        "--emit-ordering",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(value(&out, "width"), Some("4"));
    assert_eq!(value(&out, "ordering").unwrap().split(' ').count(), 10);
    let (decomp, n) = parse_td(&fs::read_to_string(td).unwrap()).unwrap();
    assert_eq!(n, 10);
    assert_eq!(validate_decomposition(&g, &decomp), Ok(4));
}

#[test]
fn complete_graph_every_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "k5.gr", &Graph::complete(5));
    for a in ["dp", "dnc", "fv-poly", "tradeoff", "q-poly", "q-dp", "q-main"] {
        let o = qtw(&["solve", "--input", &input, "--algorithm", a]);
        assert!(o.status.success(), "{a}");
        let out = stdout(&o);
        assert_eq!(value(&out, "width"), Some("4"), "{a}");
        assert_eq!(value(&out, "algorithm"), Some(a));
    }
    let o = qtw(&["solve", "--input", &input]);
    assert_eq!(value(&stdout(&o), "algorithm"), Some("dp"));
}

#[test]
fn ledger_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "grid.gr", &Graph::grid(3, 3));
    let ledger = dir.path().join("ledger.json");
    let o = qtw(&[
        "solve",
        "--input",
        &input,
        "--algorithm",
        "q-main",
        "--ledger",
        ledger.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&ledger).unwrap()).unwrap();
    let map = json.as_object().unwrap();
    let total = map["total"].as_u64().unwrap();
    let phases: u64 = map
        .iter()
        .filter(|(k, _)| k.starts_with("phase."))
        .map(|(_, v)| v.as_u64().unwrap())
        .sum();
    assert_eq!(phases, total);
    assert_eq!(
        map["charged_queries"].as_u64().unwrap() + map["classical_steps"].as_u64().unwrap(),
        total
    );
    assert_eq!(value(&stdout(&o), "ledger_total"), Some(total.to_string().as_str()));

    let o = qtw(&[
        "solve",
        "--input",
        &input,
        "--algorithm",
        "dp",
        "--ledger",
        ledger.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = Graph::random(
        9,
        0.4,
        &mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1),
    );
    let input = write_graph(dir.path(), "r.gr", &g);
    for a in ["fv-poly", "q-dp"] {
        let args = ["solve", "--input", &input, "--algorithm", a, "--emit-ordering"];
        assert_eq!(stdout(&qtw(&args)), stdout(&qtw(&args)));
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gr");
    fs::write(&bad, "p tw 3 1\n1 1\n").unwrap();
    assert_eq!(qtw(&["solve", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    let good = write_graph(dir.path(), "c.gr", &Graph::cycle(5));
    assert_eq!(
        qtw(&["solve", "--input", &good, "--algorithm", "magic"]).status.code(),
        Some(3)
    );
    assert_eq!(
        qtw(&["solve", "--input", &good, "--beta", "0.9"]).status.code(),
        Some(3)
    );
    assert_eq!(
        qtw(&["solve", "--input", &good, "--layers", "40"]).status.code(),
        Some(3)
    );
    assert_eq!(qtw(&["solve", "--bogus"]).status.code(), Some(3));
    assert_eq!(qtw(&["exponents", "--variant", "fast"]).status.code(), Some(3));
    assert_eq!(
        qtw(&["enumerate", "--input", &good, "--anchor", "0", "--b", "1", "--f", "1"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn exponent_reports() {
    let out = stdout(&qtw(&["exponents", "--variant", "classical"]));
    let num = |out: &str, key: &str| value(out, key).unwrap().parse::<f64>().unwrap();
    assert!((num(&out, "beta") - 0.38685).abs() < 2e-3);
    assert!((num(&out, "base") - 2.61508).abs() < 5e-4);
    assert_eq!(value(&out, "space"), Some("polynomial"));
    let out = stdout(&qtw(&["exponents", "--variant", "q-main", "--k", "3"]));
    assert!((num(&out, "base") - 1.53793).abs() < 5e-4);

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curve.csv");
    let o = qtw(&[
        "exponents",
        "--variant",
        "q-dp",
        "--curve",
        csv.to_str().unwrap(),
        "--grid-step",
        "0.05",
    ]);
    assert!(o.status.success());
    let grid = qtw_cli::curve_grid(0.05);
    let text = fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lambda1,k,T"));
    assert_eq!(lines.count(), 4 * grid.len());
    assert_eq!(
        value(&stdout(&o), "curve_rows"),
        Some((4 * grid.len()).to_string().as_str())
    );
}

#[test]
fn enumerate_star() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "star.gr", &Graph::star(3));
    let out = stdout(&qtw(&[
        "enumerate",
        "--input",
        &input,
        "--anchor",
        "1",
        "--b",
        "1",
        "--f",
        "2",
    ]));
    assert_eq!(out, "1 2\n1 3\n1 4\ncount=3 bound=3\n");
    let out = stdout(&qtw(&[
        "enumerate",
        "--input",
        &input,
        "--anchor",
        "2",
        "--b",
        "1",
        "--f",
        "0",
    ]));
    assert_eq!(out, "count=0 bound=1\n");
}
