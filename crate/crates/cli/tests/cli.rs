use std::path::Path;
use std::process::{Command, Output};

use newton_forge::ProblemInstance;
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_newton-forge"));
    cmd.env_remove("NEWTON_FORGE_BUDGET");
    cmd
}

fn instance(dir: &TempDir, name: &str, json: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (
        status.code().unwrap(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

fn json(stdout: &str) -> serde_json::Value {
    serde_json::from_str(stdout).unwrap()
}

#[test]
fn analyze_stable_cubic() {
    let dir = TempDir::new().unwrap();
    let f = instance(&dir, "a.json", r#"{"p":7,"matrix":[[3]]}"#);
    let (code, out, _) = run(bin().args(["--json", "analyze", &f]));
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["stable"], true);
    assert_eq!(r["newton_polygon"]["slopes"], serde_json::json!(["0", "1/3", "2/3"]));
    assert_eq!(r["hodge_polygon"], r["newton_polygon"]);
    assert_eq!(r["comparison"]["verdict"], "equal");
}

#[test]
fn analyze_unstable_cubic() {
    let dir = TempDir::new().unwrap();
    let f = instance(&dir, "a.json", r#"{"p":2,"matrix":[[3]]}"#);
    let (code, out, _) = run(bin().args(["analyze", &f, "--json"]));
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["stable"], false);
    assert_eq!(r["witness"]["u"], serde_json::json!([1]));
    assert_eq!(r["newton_polygon"]["slopes"], serde_json::json!(["0", "1/2", "1/2"]));
    assert_eq!(r["comparison"]["verdict"], "strictly_above");
    assert_eq!(r["comparison"]["max_gap"], "1/6");
}

#[test]
fn invalid_instances_exit_2() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (r#"{"p":3,"matrix":[[3]]}"#, "gcd(p, det J) != 1"),
        (r#"{"p":5,"matrix":[[1,2],[2,4]]}"#, "error:"),
        (r#"{"p":4,"matrix":[[3]]}"#, "error:"),
        (r#"{"p":5,"matrix":[[1,2]]}"#, "error:"),
        (r#"{"matrix":[[3]]}"#, "error:"),
        ("not json", "error:"),
    ];
    for (i, (src, msg)) in cases.iter().enumerate() {
        let f = instance(&dir, &format!("{i}.json"), src);
        let (code, out, err) = run(bin().args(["analyze", &f]));
        assert_eq!(code, 2, "{src}");
        assert!(out.is_empty());
        assert!(err.contains(msg), "{src}: {err}");
    }
    let (code, _, _) = run(bin().args(["analyze", "/nonexistent/instance.json"]));
    assert_eq!(code, 2);
}

#[test]
fn verify_golden_instances() {
    let dir = TempDir::new().unwrap();
    let f = instance(&dir, "a.json", r#"{"p":2,"matrix":[[3]]}"#);
    let (code, out, _) = run(bin().args(["--json", "verify", &f]));
    assert_eq!(code, 0);
    let e = &json(&out)["empirical"];
    assert_eq!(e["l_coefficients"], serde_json::json!([["1"], ["-1"], ["2"], ["-2"]]));
    assert_eq!(e["matches_theory"], true);

    let f = instance(&dir, "b.json", r#"{"p":3,"matrix":[[1,1],[0,2]]}"#);
    let (code, out, _) = run(bin().args(["--json", "verify", &f]));
    assert_eq!(code, 0);
    let r = json(&out);
    assert_eq!(r["stable"], true);
    assert_eq!(r["empirical"]["newton_polygon"]["slopes"], serde_json::json!(["0", "1"]));
    assert_eq!(r["empirical"]["sums"][0], serde_json::json!(["-2", "0"]));
}

#[test]
fn verify_over_budget_exits_4() {
    let dir = TempDir::new().unwrap();
    let f = instance(&dir, "a.json", r#"{"p":2,"matrix":[[25]],"budget":100}"#);
    let (code, out, _) = run(bin().args(["--json", "verify", &f]));
    assert_eq!(code, 4);
    let r = json(&out);
    assert!(r.get("empirical").is_none());
    assert_eq!(r["budget_exceeded"]["limit"], "100");

    let f = instance(&dir, "b.json", r#"{"p":2,"matrix":[[3]],"budget":1}"#);
    let (code, _, _) = run(bin().args(["verify", &f]));
    assert_eq!(code, 4);
    let (code, _, _) = run(bin().args(["verify", &f, "--budget", "1000"]));
    assert_eq!(code, 0);
}

#[test]
fn budget_from_environment() {
    let dir = TempDir::new().unwrap();
    let f = instance(&dir, "a.json", r#"{"p":2,"matrix":[[3]]}"#);
    let (code, _, _) = run(bin().env("NEWTON_FORGE_BUDGET", "10").args(["verify", &f]));
    assert_eq!(code, 4);
    let (code, _, _) = run(bin().env("NEWTON_FORGE_BUDGET", "10").args(["verify", &f, "--budget", "100"]));
    assert_eq!(code, 0);
    let (code, _, _) = run(bin().env("NEWTON_FORGE_BUDGET", "lots").args(["verify", &f]));
    assert_eq!(code, 2);
}

#[test]
fn scan_rows() {
    let dir = TempDir::new().unwrap();
    let f = instance(&dir, "m.json", r#"{"matrix":[[3]]}"#);
    let (code, out, _) = run(bin().args(["scan", &f, "--pmin", "2", "--pmax", "13"]));
    assert_eq!(code, 0);
    assert_eq!(out, "2\tfalse\t1/6\n5\tfalse\t1/6\n7\ttrue\t0\n11\tfalse\t1/6\n13\ttrue\t0\n");

    let f = instance(&dir, "id.json", r#"{"p":2,"matrix":[[1,0],[0,1]]}"#);
    let (code, out, _) = run(bin().args(["scan", &f, "--pmin", "2", "--pmax", "30"]));
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 10);
    assert!(out.lines().all(|l| l.split('\t').nth(1) == Some("true")));

    let f = instance(&dir, "bad.json", r#"{"matrix":[[0]]}"#);
    let (code, _, _) = run(bin().args(["scan", &f, "--pmin", "2", "--pmax", "13"]));
    assert_eq!(code, 2);
}

#[test]
fn emit_tsv() {
    let dir = TempDir::new().unwrap();
    let f = instance(&dir, "a.json", r#"{"p":2,"matrix":[[3]]}"#);
    let out = dir.path().join("hp.tsv");
    let (code, _, _) = run(bin().args(["emit", &f, "--what", "hp", "--format", "tsv", "--out"]).arg(&out));
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "0\t0\n1\t0\n2\t1/3\n3\t1\n");

    let (code, _, _) = run(bin().args(["emit", &f, "--what", "both", "--format", "tsv", "--out"]).arg(&out));
    assert_eq!(code, 0);
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        "# hp\n0\t0\n1\t0\n2\t1/3\n3\t1\n# np\n0\t0\n1\t0\n3\t1\n"
    );
}

#[test]
fn emit_svg_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = instance(&dir, "a.json", r#"{"p":2,"matrix":[[3]]}"#);
    let emit = |name: &str| {
        let out = dir.path().join(name);
        let (code, _, _) = run(bin().args(["emit", &f, "--what", "both", "--format", "svg", "--out"]).arg(&out));
        assert_eq!(code, 0);
        std::fs::read(out).unwrap()
    };
    let a = emit("a.svg");
    assert_eq!(a, emit("b.svg"));
    let s = String::from_utf8(a).unwrap();
    assert!(s.starts_with("<svg "));
    assert!(s.contains(r#"id="hp""#) && s.contains(r#"id="np""#));
    assert!(s.contains("<title>(2, 1/3)</title>"));
}

#[test]
fn emit_rejects_unknown_format_and_bad_path() {
    let dir = TempDir::new().unwrap();
    let f = instance(&dir, "a.json", r#"{"p":2,"matrix":[[3]]}"#);
    let (code, _, _) = run(bin().args(["emit", &f, "--format", "pdf", "--out", "x.pdf"]));
    assert_eq!(code, 2);
    let bad = Path::new("/nonexistent/dir/out.tsv");
    let (code, _, err) = run(bin().args(["emit", &f, "--out"]).arg(bad));
    assert_ne!(code, 0);
    assert!(err.contains("/nonexistent/dir/out.tsv"));
}

#[test]
fn reports_are_byte_identical_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let src = r#"{"p":3,"matrix":[[2,-1],[1,2]],"budget":5000000}"#;
    let f = instance(&dir, "a.json", src);
    let (c1, a, _) = run(bin().args(["--json", "verify", &f]));
    let (c2, b, _) = run(bin().args(["--json", "verify", &f]));
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let (_, t1, _) = run(bin().args(["verify", &f]));
    let (_, t2, _) = run(bin().args(["verify", &f]));
    assert_eq!(t1, t2);

    let echo: ProblemInstance = serde_json::from_value(json(&a)["instance"].clone()).unwrap();
    let original: ProblemInstance = serde_json::from_str(src).unwrap();
    assert_eq!(echo, original);
}

#[test]
fn reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = bin()
        .args(["--json", "analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"p":7,"matrix":[[3]]}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(json(std::str::from_utf8(&out.stdout).unwrap())["stable"], true);
}

#[test]
fn analyze_and_verify_agree() {
    let dir = TempDir::new().unwrap();
    let f = instance(&dir, "a.json", r#"{"p":3,"matrix":[[1,0,1],[0,-1,1],[1,1,2]]}"#);
    let (_, a, _) = run(bin().args(["--json", "analyze", &f]));
    let (code, v, _) = run(bin().args(["--json", "verify", &f]));
    assert_eq!(code, 0);
    assert_eq!(json(&a)["newton_polygon"], json(&v)["empirical"]["newton_polygon"]);
}
